#pragma once

// File formats.
//
// Trajectory CSVs are plain comma-separated tables with a header row, numbers
// printed with 17 significant digits. Field snapshots are one text header line
//
//   concnls-snapshot t=<t> L=<L> M=<M>\n
//
// followed by M complex values as (re, im) pairs of little-endian IEEE doubles.

#include <filesystem>
#include <span>

#include "concnls/core.hpp"
#include "concnls/diagnostics.hpp"
#include "concnls/point_solver.hpp"
#include "concnls/scaled_solver.hpp"

namespace concnls {

/// Columns: t, mass, energy, h1_norm, then trace<k>_re, trace<k>_im per defect.
void write_scaled_csv(const std::filesystem::path& path, const ScaledTrajectory& traj);

/// Columns: t, trace<k>_re, trace<k>_im, charge<k>_re, charge<k>_im, jump<k> per
/// defect, then mass and energy. Jump residuals, mass and energy are filled on
/// output steps (mass and energy also at t = 0) and left empty elsewhere.
void write_point_csv(const std::filesystem::path& path, const PointTrajectory& traj);

/// Columns: epsilon, err_pointwise, err_l2, err_h1, err_pointwise_site<k>...
void write_ladder_csv(const std::filesystem::path& path, std::span<const ErrorSample> samples);

/// Columns: norm, delta, prefactor, residual, eps_min, eps_max, samples, status.
void write_fits_csv(const std::filesystem::path& path, std::span<const RateFit> fits,
                    std::span<const ErrorNorm> norms);

void write_snapshot(const std::filesystem::path& path, const ComplexField& field);
ComplexField read_snapshot(const std::filesystem::path& path);

}  // namespace concnls

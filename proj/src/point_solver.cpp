#include "concnls/point_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "concnls/parallel.hpp"
#include "concnls/propagator.hpp"
#include "concnls/simd/kernels.hpp"
#include "concnls/special.hpp"

namespace concnls {

namespace {

constexpr cplx kI{0.0, 1.0};

// DFT of psi0, pruned to the bins that can matter in double precision.
struct FreeSpectrum {
  std::vector<std::size_t> bins;
  std::vector<cplx> coeff;  // F_j / M
  std::vector<double> k2;
};

FreeSpectrum free_spectrum(const Grid1D& grid, std::span<const cplx> psi0) {
  SpectralWorkspace ws(grid);
  auto buf = ws.buffer();
  std::copy(psi0.begin(), psi0.end(), buf.begin());
  ws.forward();
  double peak = 0.0;
  for (const cplx& z : buf) peak = std::max(peak, std::abs(z));
  FreeSpectrum fs;
  const double M = static_cast<double>(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    if (std::abs(buf[j]) <= 1e-20 * peak) continue;
    fs.bins.push_back(j);
    fs.coeff.push_back(buf[j] / M);
    fs.k2.push_back(ws.k2()[j]);
  }
  return fs;
}

// (U(t) psi0)(x_p) by direct summation over the retained modes.
cplx free_value(const FreeSpectrum& fs, std::size_t M, double t, std::size_t p) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < fs.bins.size(); ++i) {
    const double phase = 2.0 * std::numbers::pi * static_cast<double>((fs.bins[i] * p) % M) / static_cast<double>(M);
    s += fs.coeff[i] * std::polar(1.0, phase - fs.k2[i] * t);
  }
  return s;
}

// Duhamel sum sum_m w_{n,m} q(t_m) for one row, without forming the row.
cplx duhamel_sum(const LagWeights& lags, std::span<const cplx> q, std::size_t n) {
  cplx s = lags.lead[0] * q[n] + lags.trail[n - 1] * q[0];
  for (std::size_t l = 1; l < n; ++l) s += (lags.lead[l] + lags.trail[l - 1]) * q[n - l];
  if (!lags.start.empty()) s += lags.start[n - 1] * (q[1] - q[0]);
  return s;
}

std::vector<cplx> nodal_values(const PointProblem& problem, const ChargeTrajectory& charges, std::size_t n,
                               std::span<const std::size_t> nodes, const std::vector<std::size_t>& sites,
                               const FreeSpectrum& fs, LagWeightCache& cache) {
  const std::size_t M = problem.grid.size();
  const double t = charges.time(n);
  std::vector<cplx> out(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (n == 0) {
      out[i] = problem.psi0[nodes[i]];
      continue;
    }
    cplx v = free_value(fs, M, t, nodes[i]);
    for (std::size_t k = 0; k < sites.size(); ++k) {
      const LagWeights& lags = cache.between(nodes[i], sites[k]);
      v -= kI * problem.defects[k].strength * duhamel_sum(lags, charges.charges[k], n);
    }
    out[i] = v;
  }
  return out;
}

std::vector<std::size_t> site_indices(const PointProblem& problem) {
  std::vector<std::size_t> sites;
  for (const PointDefect& d : problem.defects) sites.push_back(problem.grid.index_of(d.site));
  return sites;
}

std::size_t step_of(const ChargeTrajectory& charges, double t) {
  const double s = t / charges.dt;
  const double r = std::round(s);
  if (r < 0.0 || std::abs(s - r) > 1e-9 * std::max(1.0, s)) throw ConfigError("time is not a charge time node");
  const auto n = static_cast<std::size_t>(r);
  if (n > charges.steps()) throw ConfigError("requested time lies beyond the charge trajectory");
  return n;
}

// Warm the cache for every (node, site) pair in parallel; lookups afterwards are read-only.
void warm_cache(LagWeightCache& cache, std::span<const std::size_t> nodes, const std::vector<std::size_t>& sites) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a : nodes) {
    for (std::size_t b : sites) pairs.emplace_back(a, b);
  }
  cache.prefetch(pairs);
}

}  // namespace

// ---------------------------------------------------------------------------

LagWeightCache::LagWeightCache(const Grid1D& grid, double dt, std::size_t count, std::size_t images)
    : grid_(grid), dt_(dt), count_(count), images_(images) {}

std::size_t LagWeightCache::offset_key(std::size_t a, std::size_t b) const {
  const std::size_t M = grid_.size();
  const std::size_t d = (a + M - b) % M;
  return std::min(d, M - d);
}

LagWeights LagWeightCache::compute(std::size_t key) const {
  return periodic_lag_weights(static_cast<double>(key) * grid_.spacing(), dt_, count_, grid_.period(), images_);
}

const LagWeights& LagWeightCache::between(std::size_t node_a, std::size_t node_b) {
  const std::size_t key = offset_key(node_a, node_b);
  auto it = by_offset_.find(key);
  if (it == by_offset_.end()) it = by_offset_.emplace(key, compute(key)).first;
  return it->second;
}

void LagWeightCache::prefetch(std::span<const std::pair<std::size_t, std::size_t>> pairs) {
  std::vector<std::size_t> missing;
  for (const auto& [a, b] : pairs) {
    const std::size_t key = offset_key(a, b);
    if (!by_offset_.contains(key)) missing.push_back(key);
  }
  std::sort(missing.begin(), missing.end());
  missing.erase(std::unique(missing.begin(), missing.end()), missing.end());
  std::vector<LagWeights> computed(missing.size());
  parallel_for(missing.size(), [&](std::size_t i) { computed[i] = compute(missing[i]); });
  for (std::size_t i = 0; i < missing.size(); ++i) by_offset_.emplace(missing[i], std::move(computed[i]));
}

// ---------------------------------------------------------------------------

ChargeTrajectory solve_charges(const PointProblem& problem) {
  validate(problem);
  const std::size_t N = problem.steps();
  const std::size_t K = problem.defects.size();
  const Grid1D& grid = problem.grid;
  const auto sites = site_indices(problem);
  const PointSolverOptions& opt = problem.options;

  ChargeTrajectory traj;
  traj.dt = problem.dt;
  traj.traces.assign(K, std::vector<cplx>(N + 1));
  traj.charges.assign(K, std::vector<cplx>(N + 1));
  for (const PointDefect& d : problem.defects) traj.powers.push_back(d.power);
  if (K == 0) return traj;

  std::vector<double> times(N + 1);
  for (std::size_t n = 0; n <= N; ++n) times[n] = traj.time(n);
  const ComplexField psi0(grid, problem.psi0);
  std::vector<std::vector<cplx>> g(K);
  for (std::size_t k = 0; k < K; ++k) g[k] = free_trace(psi0, times, problem.defects[k].site);

  LagWeightCache cache(grid, problem.dt, N, opt.images);
  warm_cache(cache, sites, sites);
  // hist[j][k][l] = weight of q_k at lag l in the equation for trace j.
  std::vector<std::vector<std::vector<cplx>>> hist(K, std::vector<std::vector<cplx>>(K));
  std::vector<std::vector<cplx>> lead0(K, std::vector<cplx>(K));
  std::vector<std::vector<const LagWeights*>> lags(K, std::vector<const LagWeights*>(K));
  for (std::size_t j = 0; j < K; ++j) {
    for (std::size_t k = 0; k < K; ++k) {
      lags[j][k] = &cache.between(sites[j], sites[k]);
      hist[j][k] = history_weights(*lags[j][k]);
      lead0[j][k] = lags[j][k]->lead[0];
    }
  }

  // q_k(t_m) is stored at rev[k][N - m], so the history sum is one contiguous dot.
  std::vector<std::vector<cplx>> rev(K, std::vector<cplx>(N + 1));
  for (std::size_t k = 0; k < K; ++k) {
    const cplx psi = problem.psi0[sites[k]];
    traj.traces[k][0] = psi;
    traj.charges[k][0] = charge(psi, problem.defects[k].power);
    rev[k][N] = traj.charges[k][0];
  }

  const auto& simd = simd::kernels();
  std::vector<cplx> known(K);
  std::vector<cplx> psi(K);
  std::vector<cplx> next(K);
  for (std::size_t n = 1; n <= N; ++n) {
    for (std::size_t j = 0; j < K; ++j) {
      cplx acc = 0.0;
      for (std::size_t k = 0; k < K; ++k) {
        const std::span<const cplx> c(hist[j][k].data() + 1, n - 1);
        const std::span<const cplx> q(rev[k].data() + (N - n + 1), n - 1);
        const LagWeights& w = *lags[j][k];
        cplx history = simd.dot(c, q) + w.trail[n - 1] * traj.charges[k][0];
        history += n == 1 ? -w.start[0] * traj.charges[k][0]
                          : w.start[n - 1] * (traj.charges[k][1] - traj.charges[k][0]);
        acc += problem.defects[k].strength * history;
      }
      known[j] = g[j][n] - kI * acc;
      psi[j] = traj.traces[j][n - 1];
    }

    bool converged = false;
    double residual = 0.0;
    for (std::size_t it = 0; it < opt.max_iterations; ++it) {
      residual = 0.0;
      double scale = 1.0;
      for (std::size_t j = 0; j < K; ++j) {
        cplx acc = 0.0;
        for (std::size_t k = 0; k < K; ++k) {
          const cplx implicit = n == 1 ? lead0[j][k] + lags[j][k]->start[0] : lead0[j][k];
          acc += problem.defects[k].strength * implicit * charge(psi[k], problem.defects[k].power);
        }
        next[j] = known[j] - kI * acc;
        residual = std::max(residual, std::abs(next[j] - psi[j]));
        scale = std::max(scale, std::abs(next[j]));
      }
      if (!std::isfinite(residual)) break;
      if (residual <= opt.tolerance * scale) {
        psi = next;
        converged = true;
        break;
      }
      for (std::size_t j = 0; j < K; ++j) psi[j] = (1.0 - opt.damping) * psi[j] + opt.damping * next[j];
    }
    if (!converged) {
      std::ostringstream os;
      os << "trace fixed point did not converge at step " << n << " (t = " << traj.time(n) << "): residual "
         << residual << " after " << opt.max_iterations << " iterations";
      throw SolverError(os.str());
    }

    for (std::size_t k = 0; k < K; ++k) {
      traj.traces[k][n] = psi[k];
      traj.charges[k][n] = charge(psi[k], problem.defects[k].power);
      rev[k][N - n] = traj.charges[k][n];
    }
  }
  return traj;
}

std::vector<cplx> reconstruct_nodes(const PointProblem& problem, const ChargeTrajectory& charges, std::size_t step,
                                    std::span<const std::size_t> nodes) {
  if (step > charges.steps()) throw ConfigError("requested step lies beyond the charge trajectory");
  const auto sites = site_indices(problem);
  const FreeSpectrum fs = free_spectrum(problem.grid, problem.psi0);
  LagWeightCache cache(problem.grid, charges.dt, std::max<std::size_t>(step, 1), problem.options.images);
  if (step > 0) warm_cache(cache, nodes, sites);
  return nodal_values(problem, charges, step, nodes, sites, fs, cache);
}

ComplexField reconstruct_field(const PointProblem& problem, const ChargeTrajectory& charges, double t) {
  const std::size_t n = step_of(charges, t);
  const std::size_t M = problem.grid.size();
  if (n == 0) return ComplexField(problem.grid, problem.psi0, 0.0);

  const auto sites = site_indices(problem);
  const FreeSpectrum fs = free_spectrum(problem.grid, problem.psi0);
  LagWeightCache cache(problem.grid, charges.dt, n, problem.options.images);
  std::vector<std::size_t> all(M);
  for (std::size_t m = 0; m < M; ++m) all[m] = m;
  warm_cache(cache, all, sites);

  ComplexField out(problem.grid, charges.time(n));
  parallel_for(M, [&](std::size_t m) {
    const std::size_t node[1] = {m};
    out.values[m] = nodal_values(problem, charges, n, node, sites, fs, cache)[0];
  });
  return out;
}

namespace {

// phi1(z) = (e^z - 1)/z and phi2(z) = (e^z (z - 1) + 1)/z^2.
void phi_functions(cplx z, cplx& phi1, cplx& phi2) {
  if (std::abs(z) < 0.5) {
    // phi1 = sum z^n/(n+1)!, phi2 = sum (n+1) z^n/(n+2)!
    cplx p = 1.0;
    double f1 = 1.0;  // 1/(n+1)!
    double f2 = 0.5;  // 1/(n+2)!
    phi1 = 0.0;
    phi2 = 0.0;
    for (int n = 0; n < 30; ++n) {
      phi1 += p * f1;
      phi2 += p * (static_cast<double>(n + 1) * f2);
      p *= z;
      f1 /= static_cast<double>(n + 2);
      f2 /= static_cast<double>(n + 3);
    }
    return;
  }
  const cplx e = std::exp(z);
  phi1 = (e - 1.0) / z;
  phi2 = (e * (z - 1.0) + 1.0) / (z * z);
}

// int_0^t e^{-i w (t - s)} sqrt(s) ds.
cplx sqrt_mode_moment(double w, double t) {
  const double x = w * t;
  if (x <= 4.0) {
    // t^{3/2} e^{-i x} sum_m (i x)^m / (m! (m + 3/2))
    cplx sum = 0.0;
    cplx p = 1.0;
    for (int m = 0; m < 60; ++m) {
      const cplx term = p / (m + 1.5);
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
      p *= cplx{0.0, x} / static_cast<double>(m + 1);
    }
    return std::pow(t, 1.5) * std::polar(1.0, -x) * sum;
  }
  // Integrate by parts down to int_0^t e^{i w s} s^{-1/2} ds, a Fresnel integral.
  const double pi = std::numbers::pi;
  const cplx z = std::sqrt(x) * std::polar(1.0, -0.25 * pi);
  const cplx fresnel = std::sqrt(pi / w) * std::polar(1.0, 0.25 * pi) * (1.0 - std::polar(1.0, x) * special::erfcx(z));
  return (std::sqrt(t) - 0.5 * std::polar(1.0, -x) * fresnel) / cplx{0.0, w};
}

}  // namespace

std::vector<ComplexField> reconstruct_spectral(const PointProblem& problem, const ChargeTrajectory& charges,
                                               std::span<const std::size_t> steps) {
  const Grid1D& grid = problem.grid;
  const std::size_t M = grid.size();
  const std::size_t K = problem.defects.size();
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (steps[i] > charges.steps() || (i > 0 && steps[i] <= steps[i - 1])) {
      throw ConfigError("snapshot steps must be ascending and within the charge trajectory");
    }
  }
  const auto sites = site_indices(problem);
  const double dt = charges.dt;
  const double h = grid.spacing();

  SpectralWorkspace ws(grid);
  auto buf = ws.buffer();
  std::copy(problem.psi0.begin(), problem.psi0.end(), buf.begin());
  ws.forward();
  const std::vector<cplx> f0(buf.begin(), buf.end());

  // Per mode: D(t_n) = int_0^{t_n} e^{-i k^2 (t_n - s)} q(s) ds with q piecewise linear,
  //   D(t_n) = e^{z} D(t_{n-1}) + dt (phi1 - phi2) q_n + dt phi2 q_{n-1},   z = -i k^2 dt.
  std::vector<cplx> decay(M), w_new(M), w_old(M);
  for (std::size_t j = 0; j < M; ++j) {
    const cplx z{0.0, -ws.k2()[j] * dt};
    cplx p1, p2;
    phi_functions(z, p1, p2);
    decay[j] = std::exp(z);
    w_new[j] = dt * (p1 - p2);
    w_old[j] = dt * p2;
  }
  // Fourier coefficients of the periodic kernel centred at y_k, scaled to the unnormalised DFT.
  std::vector<std::vector<cplx>> shift(K, std::vector<cplx>(M));
  for (std::size_t k = 0; k < K; ++k) {
    const cplx a = -kI * problem.defects[k].strength / h;
    for (std::size_t j = 0; j < M; ++j) {
      const double phase = -2.0 * std::numbers::pi * static_cast<double>((j * sites[k]) % M) / static_cast<double>(M);
      shift[k][j] = a * std::polar(1.0, phase);
    }
  }

  // The same recursion driven by sqrt(t_m) gives each mode's rule error on
  // sqrt(s); charges carry (q_1 - q_0) sqrt(t / dt) near t = 0.
  const auto& simd = simd::kernels();
  std::vector<std::vector<cplx>> d(K, std::vector<cplx>(M, cplx{}));
  std::vector<cplx> root(M, cplx{});
  std::vector<ComplexField> out;
  out.reserve(steps.size());
  std::size_t n = 0;
  for (std::size_t target : steps) {
    for (; n < target; ++n) {
      for (std::size_t k = 0; k < K; ++k) {
        simd.duhamel_update(d[k], decay, w_new, w_old, charges.charges[k][n + 1], charges.charges[k][n]);
      }
      simd.duhamel_update(root, decay, w_new, w_old, std::sqrt(charges.time(n + 1)), std::sqrt(charges.time(n)));
    }
    const double t = charges.time(target);
    std::copy(f0.begin(), f0.end(), buf.begin());
    simd.cmul(buf, ws.evolution_multiplier(t));
    std::vector<cplx> slope(K);
    if (target > 0) {
      for (std::size_t k = 0; k < K; ++k) slope[k] = (charges.charges[k][1] - charges.charges[k][0]) / std::sqrt(dt);
    }
    for (std::size_t j = 0; j < M; ++j) {
      const cplx start = target > 0 ? sqrt_mode_moment(ws.k2()[j], t) - root[j] : cplx{};
      for (std::size_t k = 0; k < K; ++k) buf[j] += shift[k][j] * (d[k][j] + start * slope[k]);
    }
    ws.backward();
    out.emplace_back(grid, std::vector<cplx>(buf.begin(), buf.end()), t);
  }
  return out;
}

double energy_point(const ComplexField& field, std::span<const cplx> traces, std::span<const PointDefect> defects) {
  if (traces.size() != defects.size()) throw ConfigError("one trace per defect is required");
  SpectralWorkspace ws(field.grid);
  double e = kinetic_energy(ws, field.values);
  for (std::size_t k = 0; k < defects.size(); ++k) {
    const double a2 = std::norm(traces[k]);
    const double mu = defects[k].power;
    const double density = (mu == 0.0) ? a2 : (a2 == 0.0 ? 0.0 : std::pow(a2, mu + 1.0));
    e += defects[k].strength * density / (mu + 1.0);
  }
  return e;
}

double kinetic_tail(const Grid1D& grid, std::span<const PointDefect> defects, std::span<const cplx> charges_now,
                    std::span<const cplx> charges_start) {
  if (charges_now.size() != defects.size() || charges_start.size() != defects.size()) {
    throw ConfigError("one charge per defect is required");
  }
  // sum_{j >= n} j^{-2} by Euler-Maclaurin
  const double n = 0.5 * static_cast<double>(grid.size());
  const double tail = 1.0 / n + 0.5 / (n * n) + 1.0 / (6.0 * n * n * n) - 1.0 / (30.0 * std::pow(n, 5));
  double weight = 0.0;
  for (std::size_t k = 0; k < defects.size(); ++k) {
    const double a = defects[k].strength;
    weight += a * a * (std::norm(charges_now[k]) + std::norm(charges_start[k]));
  }
  const double pi = std::numbers::pi;
  return grid.half_width() / (pi * pi) * tail * weight;
}

double jump_residual(std::span<const cplx> f, double h, double alpha, double mu) {
  if (f.size() != 9) throw ConfigError("jump residual needs the nine values psi(y + j h), j = -4..4");
  if (!(h > 0.0)) throw ConfigError("jump residual needs h > 0");
  const cplx right = (-25.0 * f[4] + 48.0 * f[5] - 36.0 * f[6] + 16.0 * f[7] - 3.0 * f[8]) / (12.0 * h);
  const cplx left = (25.0 * f[4] - 48.0 * f[3] + 36.0 * f[2] - 16.0 * f[1] + 3.0 * f[0]) / (12.0 * h);
  const cplx target = alpha * charge(f[4], mu);
  return std::abs(right - left - target) / std::max(1.0, std::abs(f[4]));
}

double jump_residual(const ComplexField& field, double site, double alpha, double mu) {
  const std::size_t M = field.grid.size();
  if (M < 9) throw ConfigError("jump residual needs at least four nodes on each side of the site");
  const std::size_t p = field.grid.index_of(site);
  std::vector<cplx> f(9);
  for (std::size_t i = 0; i < 9; ++i) f[i] = field.values[(p + M + i - 4) % M];
  return jump_residual(f, field.grid.spacing(), alpha, mu);
}

PointTrajectory run_point(const PointProblem& problem, std::span<const std::size_t> output_steps,
                          bool with_jump_residuals) {
  PointTrajectory out;
  out.charges = solve_charges(problem);
  out.output_steps.assign(output_steps.begin(), output_steps.end());
  for (std::size_t s : output_steps) {
    if (s == 0) throw ConfigError("output steps start at 1");
  }
  out.snapshots = reconstruct_spectral(problem, out.charges, output_steps);

  const std::size_t K = problem.defects.size();
  const auto sites = site_indices(problem);
  auto traces_at = [&](std::size_t n) {
    std::vector<cplx> tr(K);
    for (std::size_t k = 0; k < K; ++k) tr[k] = out.charges.traces[k][n];
    return tr;
  };

  const ComplexField psi0(problem.grid, problem.psi0);
  out.initial_mass = std::pow(psi0.l2_norm(), 2);
  out.initial_energy = energy_point(psi0, traces_at(0), problem.defects);
  for (std::size_t i = 0; i < output_steps.size(); ++i) {
    out.mass.push_back(std::pow(out.snapshots[i].l2_norm(), 2));
    const std::size_t n = output_steps[i];
    std::vector<cplx> q(K);
    std::vector<cplx> q0(K);
    for (std::size_t k = 0; k < K; ++k) {
      q[k] = out.charges.charges[k][n];
      q0[k] = out.charges.charges[k][0];
    }
    out.energy.push_back(energy_point(out.snapshots[i], traces_at(n), problem.defects) +
                         kinetic_tail(problem.grid, problem.defects, q, q0));
  }

  out.jump_residuals.assign(output_steps.size(), std::vector<double>(K, 0.0));
  if (!with_jump_residuals || K == 0 || output_steps.empty()) return out;
  const std::size_t M = problem.grid.size();
  if (M < 9) throw ConfigError("jump residual needs at least four nodes on each side of each site");

  // The stencil values use the whole-line kernel for the nearest image of
  // each defect. The far images add a function that is smooth near the site;
  // it is taken at the centre node and held constant over the stencil. Its
  // truncated image series oscillates at wavenumbers far above the grid's,
  // and differencing it would only measure that truncation.
  const double h = problem.grid.spacing();
  const FreeSpectrum fs = free_spectrum(problem.grid, problem.psi0);
  const std::size_t N = out.charges.steps();
  LagWeightCache periodic(problem.grid, problem.dt, N, problem.options.images);
  LagWeightCache nearest(problem.grid, problem.dt, N, 0);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t c : sites) {
    for (std::size_t i = 0; i < 9; ++i) {
      for (std::size_t s : sites) pairs.emplace_back((c + M + i - 4) % M, s);
    }
  }
  periodic.prefetch(pairs);
  nearest.prefetch(pairs);

  parallel_for(output_steps.size(), [&](std::size_t i) {
    const std::size_t n = output_steps[i];
    const double t = out.charges.time(n);
    for (std::size_t k = 0; k < K; ++k) {
      const std::size_t c = sites[k];
      std::vector<cplx> far(K);
      for (std::size_t s = 0; s < K; ++s) {
        far[s] = duhamel_sum(periodic.between(c, sites[s]), out.charges.charges[s], n) -
                 duhamel_sum(nearest.between(c, sites[s]), out.charges.charges[s], n);
      }
      std::vector<cplx> f(9);
      for (std::size_t j = 0; j < 9; ++j) {
        const std::size_t node = (c + M + j - 4) % M;
        cplx v = free_value(fs, M, t, node);
        for (std::size_t s = 0; s < K; ++s) {
          const cplx near = duhamel_sum(nearest.between(node, sites[s]), out.charges.charges[s], n);
          v -= kI * problem.defects[s].strength * (near + far[s]);
        }
        f[j] = v;
      }
      out.jump_residuals[i][k] = jump_residual(f, h, problem.defects[k].strength, problem.defects[k].power);
    }
  });
  return out;
}

}  // namespace concnls

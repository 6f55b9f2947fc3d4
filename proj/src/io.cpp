#include "concnls/io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

namespace concnls {

namespace {

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode = std::ios::out) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, mode | std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + path.string());
  out.precision(17);
  return out;
}

void put_double_le(std::ostream& out, double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xffu);
  out.write(bytes, 8);
}

double get_double_le(const unsigned char* bytes) {
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  return std::bit_cast<double>(bits);
}

}  // namespace

void write_scaled_csv(const std::filesystem::path& path, const ScaledTrajectory& traj) {
  auto out = open_out(path);
  out << "t,mass,energy,h1_norm";
  for (std::size_t k = 0; k < traj.traces.size(); ++k) out << ",trace" << k << "_re,trace" << k << "_im";
  out << '\n';
  for (std::size_t n = 0; n < traj.mass.size(); ++n) {
    out << traj.time(n) << ',' << traj.mass[n] << ',' << traj.energy[n] << ',' << traj.h1[n];
    for (const auto& tr : traj.traces) out << ',' << tr[n].real() << ',' << tr[n].imag();
    out << '\n';
  }
}

void write_point_csv(const std::filesystem::path& path, const PointTrajectory& traj) {
  const ChargeTrajectory& q = traj.charges;
  const std::size_t K = q.traces.size();
  auto out = open_out(path);
  out << 't';
  for (std::size_t k = 0; k < K; ++k) {
    out << ",trace" << k << "_re,trace" << k << "_im,charge" << k << "_re,charge" << k << "_im,jump" << k;
  }
  out << ",mass,energy\n";
  std::size_t next = 0;
  for (std::size_t n = 0; n <= q.steps(); ++n) {
    const bool is_output = next < traj.output_steps.size() && traj.output_steps[next] == n;
    out << q.time(n);
    for (std::size_t k = 0; k < K; ++k) {
      out << ',' << q.traces[k][n].real() << ',' << q.traces[k][n].imag() << ',' << q.charges[k][n].real() << ','
          << q.charges[k][n].imag() << ',';
      if (is_output) out << traj.jump_residuals[next][k];
    }
    if (n == 0) {
      out << ',' << traj.initial_mass << ',' << traj.initial_energy;
    } else if (is_output) {
      out << ',' << traj.mass[next] << ',' << traj.energy[next];
    } else {
      out << ",,";
    }
    out << '\n';
    if (is_output) ++next;
  }
}

void write_ladder_csv(const std::filesystem::path& path, std::span<const ErrorSample> samples) {
  auto out = open_out(path);
  const std::size_t K = samples.empty() ? 0 : samples.front().pointwise_per_site.size();
  out << "epsilon,err_pointwise,err_l2,err_h1";
  for (std::size_t k = 0; k < K; ++k) out << ",err_pointwise_site" << k;
  out << '\n';
  for (const ErrorSample& s : samples) {
    out << s.epsilon << ',' << s.pointwise << ',' << s.l2 << ',' << s.h1;
    for (double v : s.pointwise_per_site) out << ',' << v;
    out << '\n';
  }
}

void write_fits_csv(const std::filesystem::path& path, std::span<const RateFit> fits,
                    std::span<const ErrorNorm> norms) {
  auto out = open_out(path);
  out << "norm,delta,prefactor,residual,eps_min,eps_max,samples,status\n";
  for (std::size_t i = 0; i < fits.size(); ++i) {
    const RateFit& f = fits[i];
    out << norm_name(norms[i]) << ',' << f.delta << ',' << f.prefactor << ',' << f.residual << ',' << f.eps_min << ','
        << f.eps_max << ',' << f.samples << ',' << (f.degenerate ? "degenerate" : "fitted") << '\n';
  }
}

void write_snapshot(const std::filesystem::path& path, const ComplexField& field) {
  auto out = open_out(path, std::ios::out | std::ios::binary);
  out << "concnls-snapshot t=" << field.time << " L=" << field.grid.half_width() << " M=" << field.grid.size()
      << '\n';
  for (const cplx& z : field.values) {
    put_double_le(out, z.real());
    put_double_le(out, z.imag());
  }
  if (!out) throw ConfigError("failed writing " + path.string());
}

ComplexField read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open snapshot " + path.string());
  std::string header;
  std::getline(in, header);
  std::istringstream hs(header);
  std::string magic, ts, ls, ms;
  hs >> magic >> ts >> ls >> ms;
  if (magic != "concnls-snapshot" || ts.rfind("t=", 0) != 0 || ls.rfind("L=", 0) != 0 || ms.rfind("M=", 0) != 0) {
    throw ConfigError("not a snapshot file: " + path.string());
  }
  double t = 0.0, L = 0.0;
  std::size_t M = 0;
  try {
    t = std::stod(ts.substr(2));
    L = std::stod(ls.substr(2));
    M = std::stoull(ms.substr(2));
  } catch (const std::exception&) {
    throw ConfigError("malformed snapshot header in " + path.string());
  }
  const Grid1D grid(L, M);
  std::vector<unsigned char> raw(16 * M);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (in.gcount() != static_cast<std::streamsize>(raw.size())) throw ConfigError("truncated snapshot " + path.string());
  std::vector<cplx> values(M);
  for (std::size_t m = 0; m < M; ++m) {
    values[m] = {get_double_le(&raw[16 * m]), get_double_le(&raw[16 * m + 8])};
  }
  return ComplexField(grid, std::move(values), t);
}

}  // namespace concnls

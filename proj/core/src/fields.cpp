#include <g5/fields.hpp>

#include <cmath>
#include <stdexcept>

namespace g5 {

Complex GaussianPacket::eval(const Vec3& x, double t, int dims) const {
  const Complex i(0.0, 1.0);
  Complex val = 1.0;
  for (int d = 0; d < dims; ++d) {
    const double s2 = sigma[d] * sigma[d];
    const Complex alpha = 1.0 + i * hbar * t / (2.0 * m * s2);
    const double xi = x[d] - center[d] - momentum[d] * t / m;
    val *= std::pow(2.0 * M_PI * s2, -0.25) / std::sqrt(alpha) *
           std::exp(-xi * xi / (4.0 * s2 * alpha) +
                    i * (momentum[d] * (x[d] - center[d]) -
                         momentum[d] * momentum[d] * t / (2.0 * m)) /
                        hbar);
  }
  return val;
}

double GaussianPacket::width(int d, double t) const {
  const double s2 = sigma[d] * sigma[d];
  const double r = hbar * t / (2.0 * m * s2);
  return sigma[d] * std::sqrt(1.0 + r * r);
}

ScalarWavefunction make_gaussian(const Grid& grid, const GaussianPacket& packet) {
  ScalarWavefunction s{grid, std::vector<Complex>(grid.size()), 0.0, packet.m,
                       packet.hbar};
  for (std::size_t i = 0; i < grid.size(); ++i)
    s.amp[i] = packet.eval(grid.coords(i), 0.0, grid.dims());
  const double n = norm(s);
  if (!(n > 0.0)) throw std::runtime_error("make_gaussian: vanishing norm");
  for (auto& z : s.amp) z /= n;
  return s;
}

ScalarWavefunction make_gaussian(const Grid& grid, const Vec3& center,
                                 const Vec3& momentum, const Vec3& sigma, double m,
                                 double hbar) {
  return make_gaussian(grid, GaussianPacket{center, momentum, sigma, m, hbar});
}

ScalarWavefunction make_plane_wave(const Grid& grid, const Vec3& p, double m,
                                   double hbar) {
  // Momentum must be hbar times a lattice wavenumber.
  std::array<int, 3> idx{0, 0, 0};
  for (int d = 0; d < grid.dims(); ++d) {
    const double kd = p[d] / hbar;
    const double step = 2.0 * M_PI / grid.length(d);
    const double j = kd / step;
    const double jr = std::round(j);
    if (std::abs(j - jr) > 1e-9 || std::abs(jr) > grid.points(d) / 2 - 1)
      throw std::invalid_argument(
          "make_plane_wave: momentum not on the grid's Fourier lattice");
    idx[d] = static_cast<int>(jr);
  }
  ScalarWavefunction s{grid, std::vector<Complex>(grid.size()), 0.0, m, hbar};
  double volume = 1.0;
  for (int d = 0; d < grid.dims(); ++d) volume *= grid.length(d);
  const double amp0 = 1.0 / std::sqrt(volume);
  const Complex i(0.0, 1.0);
  for (std::size_t n = 0; n < grid.size(); ++n) {
    const Vec3 x = grid.coords(n);
    double phase = 0.0;
    for (int d = 0; d < grid.dims(); ++d) phase += p[d] * x[d] / hbar;
    s.amp[n] = amp0 * std::exp(i * phase);
  }
  return s;
}

namespace {
double norm_sq(const Grid& g, const std::vector<Complex>& a) {
  double acc = 0.0;
  for (const auto& z : a) acc += std::norm(z);
  return acc * g.cell_volume();
}
}  // namespace

double norm(const ScalarWavefunction& s) { return std::sqrt(norm_sq(s.grid, s.amp)); }

double norm(const PauliSpinor& s) {
  return std::sqrt(norm_sq(s.grid, s.up) + norm_sq(s.grid, s.dn));
}

double l2_distance(const ScalarWavefunction& a, const ScalarWavefunction& b) {
  if (!(a.grid == b.grid)) throw std::invalid_argument("l2_distance: grid mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.amp.size(); ++i) acc += std::norm(a.amp[i] - b.amp[i]);
  return std::sqrt(acc * a.grid.cell_volume());
}

double fidelity(const ScalarWavefunction& a, const ScalarWavefunction& b) {
  if (!(a.grid == b.grid)) throw std::invalid_argument("fidelity: grid mismatch");
  Complex ov = 0.0;
  for (std::size_t i = 0; i < a.amp.size(); ++i) ov += std::conj(a.amp[i]) * b.amp[i];
  return std::abs(ov) * a.grid.cell_volume() / (norm(a) * norm(b));
}

double max_density_diff(const ScalarWavefunction& a, const ScalarWavefunction& b) {
  if (!(a.grid == b.grid))
    throw std::invalid_argument("max_density_diff: grid mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.amp.size(); ++i)
    worst = std::max(worst, std::abs(std::norm(a.amp[i]) - std::norm(b.amp[i])));
  return worst;
}

std::vector<Complex> fourier_shift(const Grid& grid, const std::vector<Complex>& amp,
                                   const Vec3& d) {
  Fft fft(grid);
  std::vector<Complex> out = amp;
  fft.forward(out);
  const Complex i(0.0, 1.0);
  for (std::size_t n = 0; n < grid.size(); ++n) {
    const auto idx = grid.unravel(n);
    double kd = 0.0;
    for (int a = 0; a < grid.dims(); ++a) kd += grid.k(a, idx[a]) * d[a];
    out[n] *= std::exp(-i * kd);
  }
  fft.inverse(out);
  return out;
}

std::vector<Complex> gradient_axis(const Grid& grid, const std::vector<Complex>& amp,
                                   int axis) {
  Fft fft(grid);
  std::vector<Complex> out = amp;
  fft.forward_axis(out, axis);
  const Complex i(0.0, 1.0);
  const std::size_t stride = grid.stride(axis);
  const int n = grid.points(axis);
  for (std::size_t flat = 0; flat < grid.size(); ++flat) {
    const int j = static_cast<int>((flat / stride) % static_cast<std::size_t>(n));
    out[flat] *= i * grid.k(axis, j);
  }
  fft.inverse_axis(out, axis);
  return out;
}

std::vector<Complex> laplacian(const Grid& grid, const std::vector<Complex>& amp) {
  Fft fft(grid);
  std::vector<Complex> out = amp;
  fft.forward(out);
  for (std::size_t flat = 0; flat < grid.size(); ++flat) {
    const auto idx = grid.unravel(flat);
    double k2 = 0.0;
    for (int d = 0; d < grid.dims(); ++d) {
      const double kd = grid.k(d, idx[d]);
      k2 += kd * kd;
    }
    out[flat] *= -k2;
  }
  fft.inverse(out);
  return out;
}

}  // namespace g5

// Periodic spectral grid (1-3 dimensions, power-of-two points per axis) and a
// cached-plan FFT engine on top of FFTW. Storage is row-major with axis 0
// slowest; the momentum lattice is the standard discrete Fourier dual.
#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include <g5/linalg.hpp>

namespace g5 {

class Grid {
 public:
  Grid(std::vector<int> points, std::vector<double> lengths);

  int dims() const { return dims_; }
  int points(int axis) const { return n_[axis]; }
  double length(int axis) const { return len_[axis]; }
  std::size_t size() const { return total_; }
  double dx(int axis) const { return len_[axis] / n_[axis]; }
  double cell_volume() const;

  /// Coordinate of index i along an axis, centered box [-L/2, L/2).
  double x(int axis, int i) const { return -0.5 * len_[axis] + i * dx(axis); }
  /// Dual wavenumber of index i along an axis.
  double k(int axis, int i) const {
    const int n = n_[axis];
    const int j = (i < n / 2) ? i : i - n;
    return 2.0 * M_PI * j / len_[axis];
  }

  /// Stride of an axis in the flat row-major layout.
  std::size_t stride(int axis) const { return stride_[axis]; }
  /// Decompose a flat index into per-axis indices (unused axes zero).
  std::array<int, 3> unravel(std::size_t flat) const;
  Vec3 coords(std::size_t flat) const;

  bool operator==(const Grid& other) const {
    return dims_ == other.dims_ && n_ == other.n_ && len_ == other.len_;
  }

 private:
  int dims_;
  std::array<int, 3> n_{1, 1, 1};
  std::array<double, 3> len_{1.0, 1.0, 1.0};
  std::array<std::size_t, 3> stride_{1, 1, 1};
  std::size_t total_;
};

/// In-place complex FFTs over all axes or one axis of a grid-shaped array.
/// Forward is unnormalized; inverse carries the 1/N of the transformed axes.
/// Plans are cached per shape and safe for concurrent execute.
class Fft {
 public:
  explicit Fft(const Grid& grid);

  void forward(std::vector<Complex>& a) const;
  void inverse(std::vector<Complex>& a) const;
  void forward_axis(std::vector<Complex>& a, int axis) const;
  void inverse_axis(std::vector<Complex>& a, int axis) const;

 private:
  Grid grid_;
  void* plan_fwd_;
  void* plan_inv_;
  std::array<void*, 3> plan_axis_fwd_{};
  std::array<void*, 3> plan_axis_inv_{};

  void execute(void* plan, std::vector<Complex>& a) const;
};

}  // namespace g5

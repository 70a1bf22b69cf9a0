#include <g5/grid.hpp>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include <fftw3.h>

namespace g5 {

namespace {
bool power_of_two(int n) { return n >= 2 && (n & (n - 1)) == 0; }
}  // namespace

Grid::Grid(std::vector<int> points, std::vector<double> lengths) {
  if (points.empty() || points.size() > 3 || points.size() != lengths.size())
    throw std::invalid_argument("Grid: need 1-3 matching points/lengths");
  dims_ = static_cast<int>(points.size());
  total_ = 1;
  for (int d = 0; d < dims_; ++d) {
    if (!power_of_two(points[d]))
      throw std::invalid_argument("Grid: points per axis must be a power of two");
    if (!(lengths[d] > 0.0))
      throw std::invalid_argument("Grid: axis length must be positive");
    n_[d] = points[d];
    len_[d] = lengths[d];
    total_ *= points[d];
  }
  stride_ = {1, 1, 1};
  for (int d = dims_ - 2; d >= 0; --d)
    stride_[d] = stride_[d + 1] * static_cast<std::size_t>(n_[d + 1]);
}

double Grid::cell_volume() const {
  double v = 1.0;
  for (int d = 0; d < dims_; ++d) v *= dx(d);
  return v;
}

std::array<int, 3> Grid::unravel(std::size_t flat) const {
  std::array<int, 3> idx{0, 0, 0};
  for (int d = 0; d < dims_; ++d) {
    idx[d] = static_cast<int>(flat / stride_[d]);
    flat %= stride_[d];
  }
  return idx;
}

Vec3 Grid::coords(std::size_t flat) const {
  const auto idx = unravel(flat);
  Vec3 r = Vec3::Zero();
  for (int d = 0; d < dims_; ++d) r[d] = x(d, idx[d]);
  return r;
}

namespace {

// FFTW's planner is not thread safe; executing distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

using PlanKey = std::tuple<int, int, int, int, int, int>;  // n0,n1,n2,dims,axis,sign

fftw_plan cached_plan(const Grid& g, int axis, int sign) {
  static std::map<PlanKey, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(planner_mutex());
  const PlanKey key{g.points(0), g.dims() > 1 ? g.points(1) : 1,
                    g.dims() > 2 ? g.points(2) : 1, g.dims(), axis, sign};
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  std::vector<Complex> scratch(g.size());
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  fftw_plan plan = nullptr;
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;

  if (axis < 0) {
    int n[3] = {g.points(0), g.dims() > 1 ? g.points(1) : 1,
                g.dims() > 2 ? g.points(2) : 1};
    plan = fftw_plan_dft(g.dims(), n, buf, buf, sign, flags);
  } else {
    // Rank-1 transform along one axis, looping over the others.
    fftw_iodim dim;
    dim.n = g.points(axis);
    dim.is = dim.os = static_cast<int>(g.stride(axis));
    fftw_iodim loops[2];
    int nloops = 0;
    for (int d = 0; d < g.dims(); ++d) {
      if (d == axis) continue;
      loops[nloops].n = g.points(d);
      loops[nloops].is = loops[nloops].os = static_cast<int>(g.stride(d));
      ++nloops;
    }
    plan = fftw_plan_guru_dft(1, &dim, nloops, loops, buf, buf, sign, flags);
  }
  if (!plan) throw std::runtime_error("Fft: plan creation failed");
  cache.emplace(key, plan);
  return plan;
}

}  // namespace

Fft::Fft(const Grid& grid) : grid_(grid) {
  plan_fwd_ = cached_plan(grid_, -1, FFTW_FORWARD);
  plan_inv_ = cached_plan(grid_, -1, FFTW_BACKWARD);
  for (int d = 0; d < grid_.dims(); ++d) {
    plan_axis_fwd_[d] = cached_plan(grid_, d, FFTW_FORWARD);
    plan_axis_inv_[d] = cached_plan(grid_, d, FFTW_BACKWARD);
  }
}

void Fft::execute(void* plan, std::vector<Complex>& a) const {
  if (a.size() != grid_.size()) throw std::invalid_argument("Fft: size mismatch");
  auto* buf = reinterpret_cast<fftw_complex*>(a.data());
  fftw_execute_dft(static_cast<fftw_plan>(plan), buf, buf);
}

void Fft::forward(std::vector<Complex>& a) const { execute(plan_fwd_, a); }

void Fft::inverse(std::vector<Complex>& a) const {
  execute(plan_inv_, a);
  const double scale = 1.0 / static_cast<double>(grid_.size());
  for (auto& z : a) z *= scale;
}

void Fft::forward_axis(std::vector<Complex>& a, int axis) const {
  execute(plan_axis_fwd_[axis], a);
}

void Fft::inverse_axis(std::vector<Complex>& a, int axis) const {
  execute(plan_axis_inv_[axis], a);
  const double scale = 1.0 / grid_.points(axis);
  for (auto& z : a) z *= scale;
}

}  // namespace g5

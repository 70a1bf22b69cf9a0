#include <g5/evolve.hpp>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace g5 {

namespace {

constexpr double kProbeTimes[] = {0.0, 0.318309886, 0.636619772, 1.27323954, 2.0};

Complex phase_of(double theta) { return std::polar(1.0, theta); }

}  // namespace

Vec3 Evolver::omega_total(double t) const {
  Vec3 w = Vec3::Zero();
  for (const auto& r : spec_.rotation) w += r.omega_at(t);
  if (spec_.em) w += (spec_.em->e / (2.0 * m_ * spec_.em->c)) * spec_.em->B;
  return w;
}

Evolver::Evolver(const Grid& grid, HamiltonianSpec spec, double m, double hbar,
                 bool spinor)
    : grid_(grid), fft_(grid), spec_(std::move(spec)), m_(m), hbar_(hbar),
      spinor_(spinor) {
  if (!spinor_ && !spec_.spin.empty())
    throw std::invalid_argument("Evolver: spin terms require a spinor state");
  if (spec_.em && !spec_.kinetic)
    throw std::invalid_argument("Evolver: minimal coupling requires the kinetic term");

  for (const auto& r : spec_.rotation)
    if (r.time_dependent()) shears_static_ = false;

  // Decide which angular generator components are active, then lay the shear
  // factors out in a fixed order (reversed in the second half of the step).
  std::array<bool, 3> active{false, false, false};
  for (double t : kProbeTimes) {
    const Vec3 w = omega_total(t);
    for (int k = 0; k < 3; ++k)
      if (w[k] != 0.0) active[k] = true;
    if (shears_static_) break;
  }
  for (int k = 0; k < 3; ++k) {
    if (!active[k]) continue;
    const int i = (k + 1) % 3, j = (k + 2) % 3;
    if (i >= grid_.dims() || j >= grid_.dims())
      throw std::invalid_argument(
          "Evolver: angular term leaves the grid plane (unclassifiable)");
    shears_.push_back(Shear{i, j, i, {}});
    shears_.push_back(Shear{j, i, j, {}});
  }

  for (const auto& l : spec_.linear)
    if (l.time_dependent()) pos_static_ = false;
  if (spec_.em && (spec_.em->A0 || spec_.em->a_t)) pos_static_ = false;
  if (spec_.em && spec_.em->a_t) kinetic_static_ = false;

  // Static part of the position-diagonal potential.
  const bool any_pos =
      !spec_.linear.empty() || !spec_.potential.empty() || spec_.em.has_value();
  if (any_pos) {
    static_potential_.assign(grid_.size(), 0.0);
    for (std::size_t idx = 0; idx < grid_.size(); ++idx) {
      const Vec3 x = grid_.coords(idx);
      double v = 0.0;
      for (const auto& l : spec_.linear)
        if (!l.time_dependent()) v += l.w.dot(x) + l.c;
      for (const auto& p : spec_.potential) v += p.phi(x);
      if (spec_.em) {
        Vec3 a_vec = 0.5 * spec_.em->B.cross(x);
        if (!spec_.em->a_t) a_vec += spec_.em->a;
        v += spec_.em->e * spec_.em->e / (2.0 * m_ * spec_.em->c * spec_.em->c) *
             a_vec.squaredNorm();
      }
      static_potential_[idx] = v;
    }
  }
}

void Evolver::prepare_tables(double dt) {
  if (cached_dt_ == dt) return;
  cached_dt_ = dt;

  if (!static_potential_.empty()) {
    pos_table_.resize(grid_.size());
    for (std::size_t i = 0; i < grid_.size(); ++i)
      pos_table_[i] = phase_of(-0.5 * dt * static_potential_[i] / hbar_);
  }

  if (spec_.kinetic && kinetic_static_) {
    kinetic_table_.resize(grid_.size());
    const Vec3 a = spec_.em ? spec_.em->a : Vec3::Zero();
    const double drift = spec_.em ? spec_.em->e / (m_ * spec_.em->c) : 0.0;
    for (std::size_t i = 0; i < grid_.size(); ++i) {
      const auto idx = grid_.unravel(i);
      double k2 = 0.0, ak = 0.0;
      for (int d = 0; d < grid_.dims(); ++d) {
        const double kd = grid_.k(d, idx[d]);
        k2 += kd * kd;
        ak += a[d] * kd;
      }
      kinetic_table_[i] = phase_of(-dt * (hbar_ * k2 / (2.0 * m_) - drift * ak));
    }
  }

  if (shears_static_ && !shears_.empty()) {
    const Mat3 gen = -hat(omega_total(0.0));
    for (auto& sh : shears_) {
      const double c = gen(sh.mom_axis, sh.pos_axis);
      sh.table.resize(grid_.size());
      for (std::size_t i = 0; i < grid_.size(); ++i) {
        const auto idx = grid_.unravel(i);
        sh.table[i] = phase_of(-0.5 * dt * c * grid_.x(sh.pos_axis, idx[sh.pos_axis]) *
                               grid_.k(sh.mom_axis, idx[sh.mom_axis]));
      }
    }
  }
}

void Evolver::apply_pos_half(std::vector<Complex>* comps[2], int ncomp, double t_mid,
                             double dt) {
  if (static_potential_.empty()) return;
  const bool has_static = !pos_table_.empty();

  // Collect the time-dependent pieces at the midpoint.
  Vec3 w_dyn = Vec3::Zero();
  double c_dyn = 0.0;
  bool any_dyn = false;
  for (const auto& l : spec_.linear)
    if (l.time_dependent()) {
      w_dyn += l.w_at(t_mid);
      c_dyn += l.c_at(t_mid);
      any_dyn = true;
    }
  const bool em_a_dyn = spec_.em && static_cast<bool>(spec_.em->a_t);
  if (em_a_dyn) {
    const Vec3 a = spec_.em->a_at(t_mid);
    const double coef =
        spec_.em->e * spec_.em->e / (2.0 * m_ * spec_.em->c * spec_.em->c);
    w_dyn += coef * a.cross(spec_.em->B);
    c_dyn += coef * a.squaredNorm();
    any_dyn = true;
  }
  const bool has_a0 = spec_.em && static_cast<bool>(spec_.em->A0);

  if (!any_dyn && !has_a0) {
    for (int c = 0; c < ncomp; ++c)
      for (std::size_t i = 0; i < grid_.size(); ++i) (*comps[c])[i] *= pos_table_[i];
    return;
  }

  // Per-axis phases for the linear part keep the exp count at O(n) per axis.
  std::array<std::vector<Complex>, 3> axis_phase;
  for (int d = 0; d < grid_.dims(); ++d) {
    axis_phase[d].resize(grid_.points(d));
    for (int i = 0; i < grid_.points(d); ++i)
      axis_phase[d][i] = phase_of(-0.5 * dt * w_dyn[d] * grid_.x(d, i) / hbar_);
  }
  const Complex global = phase_of(-0.5 * dt * c_dyn / hbar_);

  for (std::size_t i = 0; i < grid_.size(); ++i) {
    const auto idx = grid_.unravel(i);
    Complex z = global;
    if (has_static) z *= pos_table_[i];
    for (int d = 0; d < grid_.dims(); ++d) z *= axis_phase[d][idx[d]];
    if (has_a0)
      z *= phase_of(-0.5 * dt * spec_.em->e * spec_.em->A0(grid_.coords(i), t_mid) /
                    hbar_);
    for (int c = 0; c < ncomp; ++c) (*comps[c])[i] *= z;
  }
}

void Evolver::apply_shears(std::vector<Complex>* comps[2], int ncomp, double t_mid,
                           double dt, bool reversed) {
  if (shears_.empty()) return;
  const Mat3 gen = shears_static_ ? Mat3::Zero() : (-hat(omega_total(t_mid))).eval();
  for (std::size_t s = 0; s < shears_.size(); ++s) {
    const Shear& sh = shears_[reversed ? shears_.size() - 1 - s : s];
    for (int c = 0; c < ncomp; ++c) {
      auto& amp = *comps[c];
      fft_.forward_axis(amp, sh.mom_axis);
      if (shears_static_) {
        for (std::size_t i = 0; i < grid_.size(); ++i) amp[i] *= sh.table[i];
      } else {
        const double coef = gen(sh.mom_axis, sh.pos_axis);
        for (std::size_t i = 0; i < grid_.size(); ++i) {
          const auto idx = grid_.unravel(i);
          amp[i] *= phase_of(-0.5 * dt * coef *
                             grid_.x(sh.pos_axis, idx[sh.pos_axis]) *
                             grid_.k(sh.mom_axis, idx[sh.mom_axis]));
        }
      }
      fft_.inverse_axis(amp, sh.mom_axis);
    }
  }
}

void Evolver::apply_kinetic(std::vector<Complex>* comps[2], int ncomp, double t_mid,
                            double dt) {
  if (!spec_.kinetic) return;
  for (int c = 0; c < ncomp; ++c) {
    auto& amp = *comps[c];
    fft_.forward(amp);
    if (kinetic_static_) {
      for (std::size_t i = 0; i < grid_.size(); ++i) amp[i] *= kinetic_table_[i];
    } else {
      const Vec3 a = spec_.em->a_at(t_mid);
      const double drift = spec_.em->e / (m_ * spec_.em->c);
      for (std::size_t i = 0; i < grid_.size(); ++i) {
        const auto idx = grid_.unravel(i);
        double k2 = 0.0, ak = 0.0;
        for (int d = 0; d < grid_.dims(); ++d) {
          const double kd = grid_.k(d, idx[d]);
          k2 += kd * kd;
          ak += a[d] * kd;
        }
        amp[i] *= phase_of(-dt * (hbar_ * k2 / (2.0 * m_) - drift * ak));
      }
    }
    fft_.inverse(amp);
  }
}

void Evolver::apply_spin(std::vector<Complex>& up, std::vector<Complex>& dn,
                         double t_mid, double dt) {
  if (spec_.spin.empty()) return;
  CMat2 mtot = CMat2::Zero();
  for (const auto& s : spec_.spin) mtot += s.at(t_mid);
  // Exact rotor for M = alpha I + b.sigma.
  const double alpha = 0.5 * std::real(mtot.trace());
  Vec3 b;
  const auto& sigma = pauli_matrices();
  for (int d = 0; d < 3; ++d) b[d] = 0.5 * std::real((mtot * sigma[d]).trace());
  const double beta = b.norm();
  const Complex i(0.0, 1.0);
  CMat2 u2 = std::cos(beta * dt / hbar_) * CMat2::Identity();
  if (beta > 0.0) u2 -= i * std::sin(beta * dt / hbar_) * pauli_dot(b / beta);
  u2 *= phase_of(-alpha * dt / hbar_);
  for (std::size_t j = 0; j < up.size(); ++j) {
    const Complex a = up[j], c = dn[j];
    up[j] = u2(0, 0) * a + u2(0, 1) * c;
    dn[j] = u2(1, 0) * a + u2(1, 1) * c;
  }
}

void Evolver::step(ScalarWavefunction& s, double dt) {
  if (!(s.grid == grid_)) throw std::invalid_argument("Evolver: grid mismatch");
  prepare_tables(dt);
  const double tm = s.t + 0.5 * dt;
  std::vector<Complex>* comps[2] = {&s.amp, nullptr};
  apply_pos_half(comps, 1, tm, dt);
  apply_shears(comps, 1, tm, dt, false);
  apply_kinetic(comps, 1, tm, dt);
  apply_shears(comps, 1, tm, dt, true);
  apply_pos_half(comps, 1, tm, dt);
  s.t += dt;
}

void Evolver::step(PauliSpinor& s, double dt) {
  if (!(s.grid == grid_)) throw std::invalid_argument("Evolver: grid mismatch");
  prepare_tables(dt);
  const double tm = s.t + 0.5 * dt;
  std::vector<Complex>* comps[2] = {&s.up, &s.dn};
  apply_pos_half(comps, 2, tm, dt);
  apply_shears(comps, 2, tm, dt, false);
  apply_kinetic(comps, 2, tm, dt);
  apply_spin(s.up, s.dn, tm, dt);
  apply_shears(comps, 2, tm, dt, true);
  apply_pos_half(comps, 2, tm, dt);
  s.t += dt;
}

namespace {

bool all_finite(const std::vector<Complex>& a) {
  for (const auto& z : a)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

bool state_finite(const ScalarWavefunction& s) { return all_finite(s.amp); }
bool state_finite(const PauliSpinor& s) { return all_finite(s.up) && all_finite(s.dn); }

template <typename State>
void evolve_impl(State& s, Evolver& ev, double t1, int nsteps,
                 const std::function<void(const State&)>& observer, int stride) {
  if (nsteps < 1) throw std::invalid_argument("evolve: nsteps must be >= 1");
  if (stride < 1) stride = 1;
  const double t0 = s.t;
  const double dt = (t1 - t0) / nsteps;
  if (observer) observer(s);
  for (int k = 1; k <= nsteps; ++k) {
    ev.step(s, dt);
    s.t = t0 + k * dt;
    if ((k % 64 == 0 || k == nsteps) && !state_finite(s)) {
      std::ostringstream msg;
      msg << "evolve: non-finite amplitudes at t = " << s.t << " (step " << k << "/"
          << nsteps << ")";
      throw std::runtime_error(msg.str());
    }
    if (observer && (k % stride == 0 || k == nsteps)) observer(s);
  }
}

}  // namespace

void evolve(ScalarWavefunction& s, Evolver& ev, double t1, int nsteps,
            const std::function<void(const ScalarWavefunction&)>& observer,
            int stride) {
  evolve_impl(s, ev, t1, nsteps, observer, stride);
}

void evolve(PauliSpinor& s, Evolver& ev, double t1, int nsteps,
            const std::function<void(const PauliSpinor&)>& observer, int stride) {
  evolve_impl(s, ev, t1, nsteps, observer, stride);
}

namespace {

struct MomentAccum {
  double nsq = 0.0;
  Vec3 mx = Vec3::Zero();
  Vec3 mx2 = Vec3::Zero();
};

void position_moments(const Grid& g, const std::vector<Complex>& amp, MomentAccum& acc) {
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double w = std::norm(amp[i]);
    if (w == 0.0) continue;
    const Vec3 x = g.coords(i);
    acc.nsq += w;
    acc.mx += w * x;
    acc.mx2 += w * x.cwiseProduct(x);
  }
}

void momentum_moments(const Grid& g, std::vector<Complex> amp, double hbar,
                      double& nsq, Vec3& mp, Vec3& mp2) {
  Fft fft(g);
  fft.forward(amp);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double w = std::norm(amp[i]);
    if (w == 0.0) continue;
    const auto idx = g.unravel(i);
    nsq += w;
    for (int d = 0; d < g.dims(); ++d) {
      const double p = hbar * g.k(d, idx[d]);
      mp[d] += w * p;
      mp2[d] += w * p * p;
    }
  }
}

double inner_real(const Grid& g, const std::vector<Complex>& a,
                  const std::vector<Complex>& b) {
  Complex acc = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) acc += std::conj(a[i]) * b[i];
  return std::real(acc) * g.cell_volume();
}

Observables assemble(const Grid& g, const MomentAccum& pos, double pnsq,
                     const Vec3& mp, const Vec3& mp2) {
  Observables o;
  o.norm = std::sqrt(pos.nsq * g.cell_volume());
  if (pos.nsq > 0.0) {
    o.mean_x = pos.mx / pos.nsq;
    const Vec3 vx = pos.mx2 / pos.nsq - o.mean_x.cwiseProduct(o.mean_x);
    o.var_x = vx.sum();
  }
  if (pnsq > 0.0) {
    o.mean_p = mp / pnsq;
    const Vec3 vp = mp2 / pnsq - o.mean_p.cwiseProduct(o.mean_p);
    o.var_p = vp.sum();
  }
  return o;
}

}  // namespace

Observables observables(const ScalarWavefunction& s, const HamiltonianSpec* h) {
  MomentAccum pos;
  position_moments(s.grid, s.amp, pos);
  double pnsq = 0.0;
  Vec3 mp = Vec3::Zero(), mp2 = Vec3::Zero();
  momentum_moments(s.grid, s.amp, s.hbar, pnsq, mp, mp2);
  Observables o = assemble(s.grid, pos, pnsq, mp, mp2);
  if (h) {
    const auto happ = apply_hamiltonian(s, *h, s.t);
    const double n2 = pos.nsq * s.grid.cell_volume();
    o.energy = inner_real(s.grid, s.amp, happ) / n2;
  }
  return o;
}

Observables observables(const PauliSpinor& s, const HamiltonianSpec* h) {
  MomentAccum pos;
  position_moments(s.grid, s.up, pos);
  position_moments(s.grid, s.dn, pos);
  double pnsq = 0.0;
  Vec3 mp = Vec3::Zero(), mp2 = Vec3::Zero();
  momentum_moments(s.grid, s.up, s.hbar, pnsq, mp, mp2);
  momentum_moments(s.grid, s.dn, s.hbar, pnsq, mp, mp2);
  Observables o = assemble(s.grid, pos, pnsq, mp, mp2);
  if (h) {
    const auto happ = apply_hamiltonian_spinor(s, *h, s.t);
    const double n2 = pos.nsq * s.grid.cell_volume();
    o.energy = (inner_real(s.grid, s.up, happ.first) +
                inner_real(s.grid, s.dn, happ.second)) /
               n2;
  }
  return o;
}

Vec3 spin_expectation(const PauliSpinor& s) {
  Complex updn = 0.0;
  double nup = 0.0, ndn = 0.0;
  for (std::size_t i = 0; i < s.grid.size(); ++i) {
    updn += std::conj(s.up[i]) * s.dn[i];
    nup += std::norm(s.up[i]);
    ndn += std::norm(s.dn[i]);
  }
  const double nsq = nup + ndn;
  if (nsq == 0.0) return Vec3::Zero();
  return Vec3(2.0 * std::real(updn), 2.0 * std::imag(updn), nup - ndn) / nsq;
}

namespace {

// Orbital part of H applied to one component.
std::vector<Complex> apply_orbital(const Grid& grid, const std::vector<Complex>& amp,
                                   const HamiltonianSpec& h, double t, double m,
                                   double hbar) {
  std::vector<Complex> out(grid.size(), Complex(0.0));
  const Complex i(0.0, 1.0);

  if (h.em) {
    const Vec3 a_unif = h.em->a_at(t);
    auto a_field = [&](const Vec3& x) { return (0.5 * h.em->B.cross(x) + a_unif).eval(); };
    const double ec = h.em->e / h.em->c;
    // (pi . pi) psi / 2m with pi_d = -i hbar d_d - (e/c) A_d.
    for (int d = 0; d < 3; ++d) {
      std::vector<Complex> pi1(grid.size(), Complex(0.0));
      if (d < grid.dims()) {
        const auto g1 = gradient_axis(grid, amp, d);
        for (std::size_t j = 0; j < grid.size(); ++j) pi1[j] = -i * hbar * g1[j];
      }
      for (std::size_t j = 0; j < grid.size(); ++j)
        pi1[j] -= ec * a_field(grid.coords(j))[d] * amp[j];
      std::vector<Complex> pi2(grid.size(), Complex(0.0));
      if (d < grid.dims()) {
        const auto g2 = gradient_axis(grid, pi1, d);
        for (std::size_t j = 0; j < grid.size(); ++j) pi2[j] = -i * hbar * g2[j];
      }
      for (std::size_t j = 0; j < grid.size(); ++j)
        pi2[j] -= ec * a_field(grid.coords(j))[d] * pi1[j];
      for (std::size_t j = 0; j < grid.size(); ++j) out[j] += pi2[j] / (2.0 * m);
    }
    if (h.em->A0)
      for (std::size_t j = 0; j < grid.size(); ++j)
        out[j] += h.em->e * h.em->A0(grid.coords(j), t) * amp[j];
  } else if (h.kinetic) {
    const auto lap = laplacian(grid, amp);
    for (std::size_t j = 0; j < grid.size(); ++j)
      out[j] = -hbar * hbar / (2.0 * m) * lap[j];
  }

  if (!h.linear.empty() || !h.potential.empty()) {
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const Vec3 x = grid.coords(j);
      double v = 0.0;
      for (const auto& l : h.linear) v += l.w_at(t).dot(x) + l.c_at(t);
      for (const auto& p : h.potential) v += p.phi(x);
      out[j] += v * amp[j];
    }
  }

  if (!h.rotation.empty()) {
    Vec3 w = Vec3::Zero();
    for (const auto& r : h.rotation) w += r.omega_at(t);
    std::array<std::vector<Complex>, 3> grad;
    for (int d = 0; d < grid.dims(); ++d) grad[d] = gradient_axis(grid, amp, d);
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const Vec3 x = grid.coords(j);
      Complex lw = 0.0;  // omega . (x cross p) psi
      for (int a = 0; a < 3; ++a) {
        const int b = (a + 1) % 3, c = (a + 2) % 3;
        const Complex pb = b < grid.dims() ? -i * hbar * grad[b][j] : Complex(0.0);
        const Complex pc = c < grid.dims() ? -i * hbar * grad[c][j] : Complex(0.0);
        lw += w[a] * (x[b] * pc - x[c] * pb);
      }
      out[j] -= lw;
    }
  }
  return out;
}

}  // namespace

std::vector<Complex> apply_hamiltonian(const ScalarWavefunction& s,
                                       const HamiltonianSpec& h, double t) {
  if (!h.spin.empty())
    throw std::invalid_argument("apply_hamiltonian: spin term on a scalar state");
  return apply_orbital(s.grid, s.amp, h, t, s.m, s.hbar);
}

std::pair<std::vector<Complex>, std::vector<Complex>> apply_hamiltonian_spinor(
    const PauliSpinor& s, const HamiltonianSpec& h, double t) {
  auto up = apply_orbital(s.grid, s.up, h, t, s.m, s.hbar);
  auto dn = apply_orbital(s.grid, s.dn, h, t, s.m, s.hbar);
  if (!h.spin.empty()) {
    CMat2 mtot = CMat2::Zero();
    for (const auto& sp : h.spin) mtot += sp.at(t);
    for (std::size_t j = 0; j < s.grid.size(); ++j) {
      up[j] += mtot(0, 0) * s.up[j] + mtot(0, 1) * s.dn[j];
      dn[j] += mtot(1, 0) * s.up[j] + mtot(1, 1) * s.dn[j];
    }
  }
  return {std::move(up), std::move(dn)};
}

}  // namespace g5

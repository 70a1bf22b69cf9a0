// Second-order split-step propagation: position-diagonal factors, exactly
// unitary mixed-basis shear factors for angular terms, an exact kinetic step
// in Fourier space, and exact 2x2 rotors for spin terms, composed as a
// palindrome with time-dependent pieces evaluated at interval midpoints.
#pragma once

#include <functional>

#include <g5/fields.hpp>
#include <g5/hamiltonian.hpp>

namespace g5 {

struct Observables {
  double norm = 0.0;
  Vec3 mean_x = Vec3::Zero();
  Vec3 mean_p = Vec3::Zero();
  double var_x = 0.0;
  double var_p = 0.0;
  double energy = 0.0;
};

Observables observables(const ScalarWavefunction& s,
                        const HamiltonianSpec* h = nullptr);
Observables observables(const PauliSpinor& s, const HamiltonianSpec* h = nullptr);
/// (<sigma_1>, <sigma_2>, <sigma_3>) normalized by the squared norm.
Vec3 spin_expectation(const PauliSpinor& s);

/// H applied to a state at time t (used for energies and operator tests).
std::vector<Complex> apply_hamiltonian(const ScalarWavefunction& s,
                                       const HamiltonianSpec& h, double t);
std::pair<std::vector<Complex>, std::vector<Complex>> apply_hamiltonian_spinor(
    const PauliSpinor& s, const HamiltonianSpec& h, double t);

class Evolver {
 public:
  /// Throws std::invalid_argument for term combinations the splitting cannot
  /// represent (spin terms on scalar states, angular terms leaving the grid
  /// plane, general vector potentials).
  Evolver(const Grid& grid, HamiltonianSpec spec, double m, double hbar,
          bool spinor);

  void step(ScalarWavefunction& s, double dt);
  void step(PauliSpinor& s, double dt);

  const HamiltonianSpec& spec() const { return spec_; }

 private:
  struct Shear {
    int mom_axis = 0;
    int pos_axis = 0;
    int omega_row = 0;  // entry (omega_row, pos_axis) of the generator
    std::vector<Complex> table;  // cached phases when time-independent
  };

  void apply_pos_half(std::vector<Complex>* comps[2], int ncomp, double t_mid,
                      double dt);
  void apply_shears(std::vector<Complex>* comps[2], int ncomp, double t_mid,
                    double dt, bool reversed);
  void apply_kinetic(std::vector<Complex>* comps[2], int ncomp, double t_mid,
                     double dt);
  void apply_spin(std::vector<Complex>& up, std::vector<Complex>& dn, double t_mid,
                  double dt);
  void prepare_tables(double dt);
  Vec3 omega_total(double t) const;

  Grid grid_;
  Fft fft_;
  HamiltonianSpec spec_;
  double m_;
  double hbar_;
  bool spinor_;

  bool pos_static_ = true;
  bool kinetic_static_ = true;
  bool shears_static_ = true;
  std::vector<Shear> shears_;
  double cached_dt_ = 0.0;
  std::vector<Complex> pos_table_;      // static position factor, half step
  std::vector<Complex> kinetic_table_;  // full kinetic step
  std::vector<double> static_potential_;  // static part of V(x)
};

/// March a state to time t1 in nsteps equal steps, invoking the observer
/// every `stride` steps (and at the end). Aborts with a diagnostic when the
/// state stops being finite.
void evolve(ScalarWavefunction& s, Evolver& ev, double t1, int nsteps,
            const std::function<void(const ScalarWavefunction&)>& observer = {},
            int stride = 1);
void evolve(PauliSpinor& s, Evolver& ev, double t1, int nsteps,
            const std::function<void(const PauliSpinor&)>& observer = {},
            int stride = 1);

}  // namespace g5

#pragma once

// eigensolvers and spectral tables: dense diagonalization with automatic
// real-symmetric shortcut, Lanczos with full reorthogonalization for larger
// sector blocks, per-sector level tables, inter-sector splittings delta_m,
// and the exact excitation ladder at the free point

#include <array>
#include <functional>

#include "pf/linop.hpp"
#include "pf/model.hpp"

namespace pf {

struct EigenOptions {
  int nev = -1;          // -1: full spectrum (dense only)
  bool vectors = false;
  int max_iter = 400;    // lanczos restart cap
  double tol = 1e-12;    // lanczos residual target
  std::uint64_t seed = 0x9e3779b97f4a7c15ull;
};

struct EigenResult {
  Eigen::VectorXd values;  // ascending
  MatC vectors;            // columns, empty unless requested
  int iterations = 0;      // 0 for dense
  double max_residual = 0; // ||A v - lambda v|| over returned pairs
};

// dense path; detects real-symmetric matrices and solves them in real
// arithmetic. Always computes the full spectrum, truncates to nev if set.
EigenResult eigensolve_dense(const LinOp& op, EigenOptions opt = {});

// lowest-nev Lanczos with full reorthogonalization; throws std::runtime_error
// on non-convergence (message carries the iteration count)
EigenResult eigensolve_lanczos(const std::function<VecC(const VecC&)>& apply,
                               Eigen::Index dim, EigenOptions opt);

// dispatches on dimension: dense below the threshold, Lanczos above
EigenResult eigensolve(const LinOp& op, EigenOptions opt = {},
                       Eigen::Index dense_threshold = 2188);

// per-charge-sector levels of the chain Hamiltonian
struct SpectrumTable {
  int L = 0;
  double phi = 0;
  bool with_boundary = true;
  int levels = 0;
  std::array<Eigen::VectorXd, 3> sector_levels{};

  double level(int m, int q) const;
  double gap() const;  // min_q level(1, q) - min_q level(0, q)
};

SpectrumTable sector_spectra(const ModelParams& p, int levels);
SpectrumTable sector_spectra(int L, double phi, int levels, bool with_boundary = true);

// rms splitting of the m-th levels across the three sectors,
// sqrt(sum over ordered pairs (e_{m,q} - e_{m,q'})^2), m zero-based
double delta_m(const SpectrumTable& t, int m);

// at phi = 0 the spectrum is an exact ladder: applying bond raising operators
// to a ground state adds 3J per unit excitation. Verifies H psi = E psi for
// every multi-index over the bonds, on top of each sector ground state.
struct LadderReport {
  int states = 0;
  double max_residual = 0;   // ||(H - E) psi|| / ||psi||
  double max_energy_dev = 0; // |<H> - E|
};

LadderReport excitation_ladder_check(int L, double J = 1.0);

}  // namespace pf

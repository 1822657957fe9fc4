#pragma once

// variational matrix-product ground and first-excited states with explicit
// charge-labeled bonds: two-site sweeps, per-charge SVD splits with discarded
// weight control, penalty-projector excited states, and the sector-resolved
// gap. Real arithmetic throughout (the Hamiltonian is real symmetric in the
// occupation basis and the target states are real).

#include <array>
#include <cstdint>
#include <vector>

#include "pf/model.hpp"

namespace pf {

struct DmrgOptions {
  int chi_max = 60;
  int max_sweeps = 40;       // full back-and-forth cycles
  double tol = 1e-10;        // energy change per cycle
  double cutoff = 1e-12;     // relative discarded weight per split
  double penalty_w = 10.0;   // in units of J
  int lanczos_max = 10;  // per-bond Krylov budget; more overfits stale envs
  double lanczos_tol = 1e-12;
  int ramp_cycles = 3;       // bond-dimension warmup for random starts
  bool trace = false;        // per-cycle line on stderr
  std::uint64_t seed = 0x9e3779b9ull;
};

// open-chain MPS with a charge label per bond index; tensor A[site][n] maps
// left bond to right bond, and every nonzero entry satisfies
// charge(right) == charge(left) + n (mod 3)
struct QnMps {
  int L = 0;
  int q = 0;  // total charge: bond charge vector at the right edge is {q}
  std::vector<std::vector<int>> bond_q;           // L + 1 vectors
  std::vector<std::array<Eigen::MatrixXd, 3>> A;  // [site - 1][n]

  int max_chi() const;
};

// chi = 3 product of the exact-line site factors, projected on sector q;
// equals the exact ground state of H + boundary term at the solvable point
QnMps exact_line_mps(int L, double phi, int q);
QnMps random_mps(int L, int q, int chi_per_charge, std::uint64_t seed);

VecC mps_to_dense(const QnMps& m);        // small L only
double mps_overlap(const QnMps& a, const QnMps& b);

struct SweepRecord {
  double energy = 0;
  double dE = 0;
  double max_trunc = 0;
  int max_chi = 0;
};

struct VarMps {
  QnMps mps;
  double energy = 0;
  bool converged = false;
  double max_truncation = 0;
  std::vector<SweepRecord> log;
};

VarMps dmrg_ground(const ModelParams& p, int q, const DmrgOptions& opt = {});
VarMps dmrg_ground(int L, double phi, int q, int chi_max, int sweeps,
                   bool with_boundary = true);

// lowest state of H + w |gs><gs| in the same sector; the second form seeds
// the sweeps from a caller-provided state (e.g. a neighboring grid point)
VarMps dmrg_excited(const ModelParams& p, const VarMps& gs,
                    const DmrgOptions& opt = {});
VarMps dmrg_excited(const ModelParams& p, const VarMps& gs, QnMps start,
                    const DmrgOptions& opt = {});

struct GapResult {
  double gap = 0;
  std::array<double, 3> e0{}, e1{};
  double max_truncation = 0;
};

// sector-resolved gap of H + boundary term at the solvable point:
// min_q e1_q - min_q e0_q
GapResult dmrg_gap(int L, double phi, int chi_max, DmrgOptions opt = {});

}  // namespace pf

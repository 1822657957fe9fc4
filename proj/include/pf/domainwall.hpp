#pragma once

// low-energy effective blocks from projecting H onto the zero- and one-wall
// product states of the shift-diagonal (tilde) single-site basis. Matrix
// elements are computed segment-wise in O(1) each, so chains with thousands
// of sites stay cheap. Extended precision keeps splittings ~1e-10 resolvable
// on top of extensive energies.

#include <array>
#include <vector>

#include "pf/linop.hpp"

namespace pf {

using ldbl = long double;
using cplxl = std::complex<ldbl>;
using MatXcl = Eigen::Matrix<cplxl, Eigen::Dynamic, Eigen::Dynamic>;
using VecXl = Eigen::Matrix<ldbl, Eigen::Dynamic, 1>;

// piecewise-constant tilde-label configuration: sites 1..wall carry `left`,
// sites wall+1..L carry `right`; uniform states are normalized to wall = 0
struct DwConfig {
  int wall = 0;
  int left = 0;
  int right = 0;
};

struct DwBasis {
  int L = 0;
  std::vector<DwConfig> reps;  // 1 uniform + 2(L-1) one-wall orbit representatives
};

DwBasis build_dw_basis(int L);

// dense full-space vector of the charge-symmetrized combination
// (1/sqrt(3)) sum_h w^{qh} (global shift)^h |config>; small L only
VecC dw_state_vector(int L, const DwConfig& c, int q);

struct DwBlocks {
  int L = 0;
  double phi = 0;
  bool with_boundary = false;
  double herm_residual = 0;          // max |H - H^dag| before symmetrization
  std::array<MatXcl, 3> block{};     // symmetrization label q = 0, 1, 2
  std::array<VecXl, 3> levels{};     // ascending, filled by diagonalize()
};

// effective Hamiltonian blocks over the symmetrized wall states
DwBlocks project_H(int L, double phi, bool with_boundary = false, double J = 1.0);

void diagonalize(DwBlocks& b);

// rms splitting of the m-th levels across the three blocks (same reduction as
// the exact-diagonalization tables)
double dw_delta(const DwBlocks& b, int m);

struct DwScalingRow {
  int L = 0;
  std::vector<double> delta;  // delta[m] for m = 0..deltas-1
};

std::vector<DwScalingRow> dw_delta_scaling(double phi, const std::vector<int>& Ls,
                                           int deltas = 6, int threads = 0);

}  // namespace pf

#pragma once

// perturbative edge zero modes: the left-edge operator chi1 to first order in
// alpha = f/J - w b, its mirrored right-edge partner chi2, their approximate
// parafermion algebra, ground-manifold matrix elements, and the closed
// commutator algebra of the edge operator triple under the pure bond term

#include <array>
#include <vector>

#include "pf/linop.hpp"

namespace pf {

struct EdgeMode {
  enum class Side { left, right };
  cplx alpha = 0;
  Side side = Side::left;
  LinOp op;
};

// chi1 = g1 + alpha (w g3 - g2^dag g3^dag) + conj(alpha) (w g1^dag g3 g2 - g1^dag g3^dag)
EdgeMode chi1_perturbative(int L, double f, double J, double b);
// mirror image: global phase w^N times the site-reversed chi1
EdgeMode chi2_perturbative(int L, double f, double J, double b);

// algebra residuals |chi^3 - 1| and |chi^2 - chi^dag| (Frobenius) over an
// alpha sweep at b = 0, f = alpha J, with the log-log scaling slopes
struct AlgebraScaling {
  std::vector<double> alpha;
  std::vector<double> cube_residual;   // |chi^3 - 1|
  std::vector<double> conj_residual;   // |chi^2 - chi^dag|
  double cube_slope = 0, conj_slope = 0;
};

AlgebraScaling chi1_algebra_scaling(int L, const std::vector<double>& alphas);

// ground-manifold tables M[i][j] = <g_i| chi |g_j> at the solvable point phi
struct GsMatrixTables {
  double phi = 0;
  cplx alpha = 0;
  Eigen::Matrix3cd chi1, chi2;
  // largest deviation of the cyclic elements <g_i| chi |g_{i+1}> from their
  // phi = 0 values (w for chi1, w^{1+i} for chi2)
  double cyclic_dev1 = 0, cyclic_dev2 = 0;
  // largest matrix element outside the cyclic diagonal
  double off_cyclic1 = 0, off_cyclic2 = 0;
};

GsMatrixTables gs_matrix_elements(int L, double phi);

// commutator algebra of B = (g2, g3, g2^dag g3^dag) under the f = 0, b = 0
// bond Hamiltonian: [H, B_m] = 3 sum_m' M[m', m] B_m', with eigencombinations
// v_j = (g2 + w^{j+1} g3 + w^{2j} g2^dag g3^dag)/sqrt(3), [H, v_j] = 3 eps_j v_j
struct VjReport {
  std::array<double, 3> vj_residual{};   // |[H, v_j] - 3 eps_j v_j|
  std::array<double, 3> eps{};           // (0, -1, +1)
  Eigen::Matrix3cd closure;              // measured M
  double closure_residual = 0;           // out-of-span part of [H, B_m]
  std::array<cplx, 3> closure_eigs{};    // eigenvalues of M
};

VjReport vj_eigenoperator_check(int L);

}  // namespace pf

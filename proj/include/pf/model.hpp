#pragma once
// chain Hamiltonian assembly: H = H0 + b H1 + b^2 H2 (+ boundary term),
// the solvable-line parametrization, bond operators ell_j, the normalized
// parent Hamiltonian, clock-representation builds and symmetry checks

#include <array>

#include "pf/linop.hpp"

namespace pf {

struct ModelParams {
  int L = 2;
  double f = 0, J = 1, b = 0;
  bool with_boundary = false;
};

struct SolvablePoint {
  double phi = 0;
  double f_over_J = 0;
  double b = 0;
};

// f/J = -6 (1 - e^{-2 phi}) / (1 + 2 e^{-phi})^2,  b = (1 - e^{-phi}) / (1 + 2 e^{-phi})
SolvablePoint solvable_line(double phi);

inline ModelParams solvable_params(int L, double phi, double J = 1.0,
                                   bool with_boundary = true) {
  const SolvablePoint p = solvable_line(phi);
  return {L, p.f_over_J * J, J, p.b, with_boundary};
}

struct HamiltonianTerms {
  ModelParams p;
  LinOp H0, H1, H2, HB;
  LinOp H;  // H0 + b H1 + b^2 H2, plus HB when p.with_boundary
};

HamiltonianTerms build_H_terms(const ModelParams& p);
LinOp build_H(const ModelParams& p);

// bond operator ell_j = gamma_{2j}^dag - w gamma_{2j+1}^dag, j = 1..L-1
LinOp build_ell(int L, int j);
// its ladder-operator expansion w^{-N_j} C_j^dag - C_{j+1}^dag + C_j^2 - C_{j+1}^2
LinOp build_ell_expansion(int L, int j);

// Parent Hamiltonian sum_j Lhat_j^dag Lhat_j (J = 1 units) built from
// generators normalized so that it equals H + H_B + c(L,phi) * identity.
// The raw conjugated generator Z_{-phi} ell_j Z_phi squares to
// parent_scale(phi) * (H + H_B) + const, so Lhat_j divides out sqrt(scale).
double parent_scale(double phi);  // e^{4 phi/3} (1 + 2 e^{-phi})^2 / 9
enum class ParentForm { z_conjugation, dressed_bond };
LinOp build_parent_generator(int L, int j, double phi, ParentForm form);
LinOp build_parent(int L, double phi, ParentForm form = ParentForm::z_conjugation);

// clock-representation Hamiltonian sum_j [-f tau_j - J w* v_j^dag v_{j+1} + h.c.]
// with v_j = sigma_j^dag + b (w* tau_j sigma_j^dag + w tau_j^dag sigma_j^dag);
// gauged variant substitutes sigma_j -> w^{-j} sigma_j
LinOp build_H_clock(const ModelParams& p, bool gauged);

// site-local unitary relabeling connecting the clock-basis form to the
// occupation-basis H: |c> -> w^{-c} |(c+2) mod 3>  on every site
LinOp clock_relabel_unitary(int L);

struct TimeReversalReport {
  double gauged_max_imag = 0;       // conjugation invariance of the gauged clock H
  double charge_conj_residual = 0;  // |C[H] - H|, zero iff b == 0
  double tc_residual = 0;           // |T[C[H]] - H|
  bool time_reversal_ok = false;
  bool charge_conj_ok = false;
  bool tc_ok = false;
};
TimeReversalReport check_time_reversal(const ModelParams& p);

// spatial inversion: permutation reversing the site order
LinOp site_reversal(int L);

// two-site structure of H (used by the projection and MPS code; tests pin
// these against the gamma-operator assembly):
//   site term  = diag(f, f, -2f)
//   bond term  = -J [ X (x) X^T + X^T (x) X ],  X = cyclic_lower * diag(1+2b, 1-b, 1-b)
Eigen::Matrix3d local_site_term(double f);
Eigen::Matrix<double, 9, 9> local_bond_term(double J, double b);
Eigen::Matrix3d bond_factor_X(double J, double b);  // includes no J; pure X

// same matrices extracted numerically from the L=1 / L=2 operator assembly
Eigen::Matrix3cd local_site_term_from_ops(double f);
Eigen::Matrix<cplx, 9, 9> local_bond_term_from_ops(double J, double b);

}  // namespace pf

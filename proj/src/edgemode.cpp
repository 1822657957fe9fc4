#include "pf/edgemode.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

#include "pf/groundstate.hpp"
#include "pf/model.hpp"

namespace pf {

namespace {

cplx edge_alpha(double f, double J, double b) { return f / J - omega_c(1) * b; }

VecC flatten(const SpMat& m) {
  MatC d(m);
  return Eigen::Map<VecC>(d.data(), d.size());
}

}  // namespace

EdgeMode chi1_perturbative(int L, double f, double J, double b) {
  if (L < 2) throw std::invalid_argument("chi1_perturbative: need L >= 2");
  const cplx a = edge_alpha(f, J, b);
  const cplx w = omega_c(1);
  const LinOp g1 = build_parafermion(L, 1);
  const LinOp g2 = build_parafermion(L, 2);
  const LinOp g3 = build_parafermion(L, 3);
  LinOp chi = g1 + a * (w * g3 - g2.dagger() * g3.dagger()) +
              std::conj(a) * (w * (g1.dagger() * g3 * g2) - g1.dagger() * g3.dagger());
  EdgeMode m;
  m.alpha = a;
  m.side = EdgeMode::Side::left;
  m.op = std::move(chi);
  return m;
}

EdgeMode chi2_perturbative(int L, double f, double J, double b) {
  EdgeMode left = chi1_perturbative(L, f, J, b);
  const LinOp R = site_reversal(L);
  const LinOp Qd = build_charge(L).dagger();  // w^{total N}
  EdgeMode m;
  m.alpha = left.alpha;
  m.side = EdgeMode::Side::right;
  m.op = Qd * (R * left.op * R);
  m.op.support = {L - 1, L};  // mirrored locality; pinned by tests
  return m;
}

AlgebraScaling chi1_algebra_scaling(int L, const std::vector<double>& alphas) {
  AlgebraScaling s;
  const LinOp one = identity_op(L);
  for (double a : alphas) {
    const EdgeMode m = chi1_perturbative(L, a, 1.0, 0.0);
    const LinOp c2 = m.op * m.op;
    s.alpha.push_back(a);
    s.cube_residual.push_back((c2 * m.op - one).norm());
    s.conj_residual.push_back((c2 - m.op.dagger()).norm());
  }
  std::vector<double> la, lc, lj;
  for (std::size_t k = 0; k < s.alpha.size(); ++k) {
    la.push_back(std::log(s.alpha[k]));
    lc.push_back(std::log(s.cube_residual[k]));
    lj.push_back(std::log(s.conj_residual[k]));
  }
  s.cube_slope = linear_fit(la, lc).slope;
  s.conj_slope = linear_fit(la, lj).slope;
  return s;
}

GsMatrixTables gs_matrix_elements(int L, double phi) {
  const ModelParams p = solvable_params(L, phi);
  GsMatrixTables t;
  t.phi = phi;
  const EdgeMode m1 = chi1_perturbative(L, p.f, p.J, p.b);
  const EdgeMode m2 = chi2_perturbative(L, p.f, p.J, p.b);
  t.alpha = m1.alpha;

  std::array<VecC, 3> g;
  for (int i = 0; i < 3; ++i) g[i] = build_gs_vector(L, phi, i).amp;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      t.chi1(i, j) = g[i].dot(m1.op.mat * g[j]);
      t.chi2(i, j) = g[i].dot(m2.op.mat * g[j]);
    }
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    t.cyclic_dev1 = std::max(t.cyclic_dev1, std::abs(t.chi1(i, j) - omega_c(1)));
    t.cyclic_dev2 = std::max(t.cyclic_dev2, std::abs(t.chi2(i, j) - omega_c(1 + i)));
    for (int k = 0; k < 3; ++k) {
      if (k == j) continue;
      t.off_cyclic1 = std::max(t.off_cyclic1, std::abs(t.chi1(i, k)));
      t.off_cyclic2 = std::max(t.off_cyclic2, std::abs(t.chi2(i, k)));
    }
  }
  return t;
}

VjReport vj_eigenoperator_check(int L) {
  if (L < 2) throw std::invalid_argument("vj_eigenoperator_check: need L >= 2");
  const LinOp H = build_H({L, 0.0, 1.0, 0.0, false});
  const LinOp g2 = build_parafermion(L, 2);
  const LinOp g3 = build_parafermion(L, 3);
  const std::array<LinOp, 3> B = {g2, g3, g2.dagger() * g3.dagger()};

  VjReport rep;
  rep.eps = {0.0, -1.0, 1.0};
  const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
  for (int j = 0; j < 3; ++j) {
    LinOp v = inv_sqrt3 * (B[0] + omega_c(j + 1) * B[1] + omega_c(2 * j) * B[2]);
    LinOp lhs = H * v - v * H - (3.0 * rep.eps[j]) * v;
    rep.vj_residual[j] = lhs.norm();
  }

  // measured closure matrix: least squares of [H, B_m] on span{B_m'}
  MatC basis(B[0].mat.rows() * B[0].mat.cols(), 3);
  for (int m = 0; m < 3; ++m) basis.col(m) = flatten(B[m].mat);
  for (int m = 0; m < 3; ++m) {
    const LinOp comm = H * B[m] - B[m] * H;
    const VecC rhs = flatten(comm.mat);
    const VecC x = basis.colPivHouseholderQr().solve(rhs);
    rep.closure.col(m) = x / 3.0;
    rep.closure_residual =
        std::max(rep.closure_residual, (basis * x - rhs).norm());
  }
  Eigen::ComplexEigenSolver<Eigen::Matrix3cd> es(rep.closure);
  for (int k = 0; k < 3; ++k) rep.closure_eigs[k] = es.eigenvalues()(k);
  return rep;
}

}  // namespace pf

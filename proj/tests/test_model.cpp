// Hamiltonian assembly: coupling-line parametrization, term structure, bond
// operators and the parent Hamiltonian, clock representation, and the
// symmetry content of the chain.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "pf/groundstate.hpp"
#include "pf/linop.hpp"
#include "pf/model.hpp"

using namespace pf;

namespace {
double dev(const LinOp& a, const LinOp& b) { return max_abs((a - b).mat); }
}  // namespace

TEST_CASE("coupling line parametrization") {
  const SolvablePoint z = solvable_line(0.0);
  CHECK(z.f_over_J == 0.0);
  CHECK(z.b == 0.0);
  // frozen samples of the two closed forms
  const SolvablePoint p = solvable_line(0.5);
  CHECK(p.f_over_J == doctest::Approx(-0.77439808570527957).epsilon(1e-14));
  CHECK(p.b == doctest::Approx(0.17779414281640907).epsilon(1e-14));
  const SolvablePoint m = solvable_line(-1.0);
  CHECK(m.f_over_J == doctest::Approx(0.92529414561751921).epsilon(1e-14));
  CHECK(m.b == doctest::Approx(-0.26695639475455457).epsilon(1e-14));
  // limits: large phi drives b -> 1 and f/J -> -6
  const SolvablePoint inf = solvable_line(40.0);
  CHECK(inf.b == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(inf.f_over_J == doctest::Approx(-6.0).epsilon(1e-12));
}

TEST_CASE("term assembly H = H0 + b H1 + b^2 H2 (+ boundary)") {
  ModelParams p{4, -0.3, 1.1, 0.2, true};
  const HamiltonianTerms t = build_H_terms(p);
  LinOp sum = t.H0 + cplx(p.b) * t.H1 + cplx(p.b * p.b) * t.H2 + t.HB;
  CHECK(dev(t.H, sum) < 1e-13);
  CHECK(dev(t.H, build_H(p)) < 1e-14);
  CHECK(t.H.is_hermitian(1e-12));

  // the boundary correction subtracts half the site term on both edge sites
  ModelParams open = p;
  open.with_boundary = false;
  const LinOp diff = build_H(p) - build_H(open);
  CHECK(diff.is_hermitian(1e-12));
  const Eigen::Matrix3d site = local_site_term(p.f);
  for (std::uint64_t idx = 0; idx < pow3(p.L); ++idx) {
    const FockState s{p.L, idx};
    const double expected = -0.5 * (site(s.occ(1), s.occ(1)) + site(s.occ(4), s.occ(4)));
    CHECK(std::abs(diff.mat.coeff(idx, idx) - cplx(expected)) < 1e-13);
  }
}

TEST_CASE("local matrices match the operator assembly") {
  const double f = -0.7, J = 1.3, b = 0.25;
  const Eigen::Matrix3d site = local_site_term(f);
  CHECK(site(0, 0) == doctest::Approx(f));
  CHECK(site(1, 1) == doctest::Approx(f));
  CHECK(site(2, 2) == doctest::Approx(-2 * f));
  CHECK((local_site_term_from_ops(f) - site.cast<cplx>()).cwiseAbs().maxCoeff() < 1e-13);

  const Eigen::Matrix3d X = bond_factor_X(J, b);
  // X = M diag(1+2b, 1-b, 1-b) with the cyclic pattern M(0,1) = M(1,2) = M(2,0) = 1
  CHECK(X(0, 1) == doctest::Approx(1 - b));
  CHECK(X(1, 2) == doctest::Approx(1 - b));
  CHECK(X(2, 0) == doctest::Approx(1 + 2 * b));
  CHECK(std::abs(X(0, 0)) + std::abs(X(1, 1)) + std::abs(X(2, 2)) == doctest::Approx(0.0));

  const auto bond = local_bond_term(J, b);
  CHECK((local_bond_term_from_ops(J, b) - bond.cast<cplx>()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((bond - bond.transpose()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("bond operators and their ladder expansion") {
  const int L = 4;
  for (int j = 1; j < L; ++j) {
    const LinOp ell = build_ell(L, j);
    CHECK(dev(ell, build_ell_expansion(L, j)) < 1e-13);
  }
  // each bond operator kills every uniform-superposition ground state
  for (int j = 1; j < L; ++j)
    for (int i = 0; i < 3; ++i) {
      const GroundState g = build_gs_vector(L, 0.0, i);
      CHECK((build_ell(L, j).mat * g.amp).norm() < 1e-13);
    }
}

TEST_CASE("parent Hamiltonian is H + H_B shifted by a constant") {
  for (double phi : {-1.0, 0.5, 2.0}) {
    const int L = 3;
    const LinOp P = build_parent(L, phi);
    CHECK(P.is_hermitian(1e-12));
    const LinOp D = P - build_H(solvable_params(L, phi));
    const double c = D.mat.coeff(0, 0).real();
    CHECK(max_abs((D - c * identity_op(L)).mat) < 1e-10);
    // frozen offsets at L = 3, J = 1
    const double expected = phi == -1.0   ? 4.570125733602795
                            : phi == 0.5  ? 4.252886057758573
                                          : 7.704414044090009;
    CHECK(c == doctest::Approx(expected).epsilon(1e-9));
  }
  // both generator forms produce the same parent
  const LinOp a = build_parent(3, 0.7, ParentForm::z_conjugation);
  const LinOp b = build_parent(3, 0.7, ParentForm::dressed_bond);
  CHECK(dev(a, b) < 1e-10);
  CHECK(parent_scale(0.0) == doctest::Approx(1.0));
}

TEST_CASE("parent annihilates all three zero modes") {
  for (double phi : {-1.0, 0.5, 2.0})
    for (int L = 2; L <= 5; ++L) {
      const LinOp P = build_parent(L, phi);
      for (int i = 0; i < 3; ++i)
        CHECK((P.mat * build_gs_vector(L, phi, i).amp).norm() < 1e-10);
    }
}

TEST_CASE("clock representation agrees after relabeling") {
  // the clock-basis sum has a uniform field term, so it reproduces the chain
  // without the boundary correction; the gauged variant absorbs the
  // site-dependent bond phase
  const LinOp U = clock_relabel_unitary(3);
  CHECK(dev(U * U.dagger(), identity_op(3)) < 1e-14);
  for (double phi : {0.0, 0.7}) {
    const ModelParams open = solvable_params(3, phi, 1.0, false);
    const LinOp Hc = build_H_clock(open, true);
    CHECK(dev(U * Hc * U.dagger(), build_H(open)) < 1e-13);
  }
}

TEST_CASE("symmetries: charge, reflection, conjugation") {
  const ModelParams p = solvable_params(3, 0.7);
  const LinOp H = build_H(p);
  const LinOp Q = build_charge(p.L);
  CHECK(max_abs((H * Q - Q * H).mat) < 1e-12);

  const LinOp R = site_reversal(p.L);
  CHECK(dev(R * R, identity_op(p.L)) == 0.0);
  CHECK(dev(R * H * R, H) < 1e-12);

  const TimeReversalReport tr = check_time_reversal(p);
  CHECK(tr.time_reversal_ok);
  CHECK(tr.gauged_max_imag < 1e-12);
  // charge conjugation is broken along the line except at b = 0; frozen value
  CHECK(!tr.charge_conj_ok);
  CHECK(tr.charge_conj_residual == doctest::Approx(1.7067932908233).epsilon(1e-9));
  CHECK(tr.tc_residual == doctest::Approx(1.7067932908233).epsilon(1e-9));

  const TimeReversalReport tr0 = check_time_reversal(solvable_params(3, 0.0));
  CHECK(tr0.charge_conj_ok);
  CHECK(tr0.tc_ok);
}

// Zero-mode representations: norm constants against brute-force sector sums,
// dense amplitudes, the diagonal matrix-product form, the three-product
// factorized form, and the pairwise fidelities between them.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <vector>

#include "pf/fock.hpp"
#include "pf/groundstate.hpp"
#include "pf/linop.hpp"
#include "pf/model.hpp"

using namespace pf;

namespace {

// independent oracle: norm_i = sum over the charge-i sector of x^N, x = e^{-2 phi/3}
double brute_norm(int L, double phi, int i) {
  const double x = std::exp(-2.0 * phi / 3.0);
  double s = 0;
  for (std::uint64_t idx = 0; idx < pow3(L); ++idx) {
    FockState st{L, idx};
    if (st.charge() == i) s += std::pow(x, st.total_N());
  }
  return s;
}

}  // namespace

TEST_CASE("norm constants match brute-force sector sums") {
  for (int L = 2; L <= 6; ++L)
    for (double phi : {-2.0, -0.5, 0.0, 1.0, 3.0}) {
      const NormTable t = norm_constants(L, phi);
      for (int i = 0; i < 3; ++i) {
        const double n = brute_norm(L, phi, i);
        CHECK(t.norm(i) > 0);
        CHECK(t.norm(i) == doctest::Approx(n).epsilon(1e-13));
        CHECK(t.log_norm[i] == doctest::Approx(std::log(n)).epsilon(1e-13));
      }
    }
}

TEST_CASE("norm constants at frozen points") {
  const NormTable t = norm_constants(3, -1.0);
  CHECK(t.log_norm[0] == doctest::Approx(4.675829400460241).epsilon(1e-14));
  CHECK(t.log_norm[1] == doctest::Approx(4.5239026310142885).epsilon(1e-14));
  CHECK(t.log_norm[2] == doctest::Approx(4.671490388223327).epsilon(1e-14));

  // far beyond dense sizes the log-domain arithmetic must stay finite and
  // sector-independent (the k = 0 branch dominates)
  const NormTable big = norm_constants(2000, -3.0);
  for (int i = 0; i < 3; ++i)
    CHECK(big.log_norm[i] == doctest::Approx(8284.764644711133).epsilon(1e-13));

  // at phi = 0 every sector state enters with weight 1: norm = 3^{L-1}
  const NormTable flat = norm_constants(2000, 0.0);
  for (int i = 0; i < 3; ++i)
    CHECK(flat.log_norm[i] == doctest::Approx(1999.0 * std::log(3.0)).epsilon(1e-14));
}

TEST_CASE("dense zero-mode vectors: support, norm, amplitude law") {
  for (double phi : {-1.0, 0.5, 2.0})
    for (int i = 0; i < 3; ++i) {
      const int L = 4;
      const GroundState g = build_gs_vector(L, phi, i);
      CHECK(g.sector == i);
      CHECK(std::abs(g.amp.norm() - 1.0) < 1e-14);

      const NormTable t = norm_constants(L, phi);
      for (std::uint64_t idx = 0; idx < pow3(L); ++idx) {
        FockState st{L, idx};
        if (st.charge() != i) {
          CHECK(std::abs(g.amp(idx)) == 0.0);
          continue;
        }
        const double want = std::exp(-phi * st.total_N() / 3.0 - 0.5 * t.log_norm[i]);
        CHECK(std::abs(g.amp(idx) - want) < 1e-14);
      }
    }

  // phi = 0: uniform weight over the sector
  const GroundState u = build_gs_vector(5, 0.0, 2);
  const double w = 1.0 / std::sqrt(static_cast<double>(pow3(4)));
  for (std::uint64_t idx = 0; idx < pow3(5); ++idx) {
    FockState st{5, idx};
    const double want = (st.charge() == 2) ? w : 0.0;
    CHECK(std::abs(u.amp(idx) - want) < 1e-15);
  }
}

TEST_CASE("the three zero modes are a degenerate eigentriplet of the chain") {
  for (double phi : {-1.0, 0.5, 2.0}) {
    const ModelParams p = solvable_params(5, phi);
    const LinOp H = build_H(p);
    double e[3];
    for (int i = 0; i < 3; ++i) {
      const GroundState g = build_gs_vector(p.L, phi, i);
      const VecC Hg = H.mat * g.amp;
      e[i] = g.amp.dot(Hg).real();
      CHECK((Hg - e[i] * g.amp).norm() < 1e-10);
    }
    CHECK(std::abs(e[0] - e[1]) < 1e-10);
    CHECK(std::abs(e[0] - e[2]) < 1e-10);
  }
}

TEST_CASE("diagonal matrix-product amplitudes reproduce the dense vector") {
  for (double phi : {-1.0, 0.0, 0.5, 2.0})
    for (int i = 0; i < 3; ++i) {
      const int L = 5;
      const GroundState g = build_gs_vector(L, phi, i);
      const DiagMps m = build_gs_mps(L, phi, i);
      CHECK(m.sector == i);
      for (std::uint64_t idx = 0; idx < pow3(L); ++idx) {
        FockState st{L, idx};
        CHECK(std::abs(m.amplitude(st).value() - g.amp(idx)) < 1e-14);
      }
    }
}

TEST_CASE("factorized three-product amplitudes reproduce the dense vector") {
  for (double phi : {-1.0, 0.0, 0.5, 2.0})
    for (int i = 0; i < 3; ++i) {
      const int L = 5;
      const GroundState g = build_gs_vector(L, phi, i);
      const FactorizedForm f = factorized_form(L, phi, i);
      CHECK(f.sector == i);
      for (int t = 0; t < 3; ++t)
        CHECK(std::abs(f.site_state[t].norm() - 1.0) < 1e-14);
      for (std::uint64_t idx = 0; idx < pow3(L); ++idx) {
        FockState st{L, idx};
        CHECK(std::abs(f.amplitude(st).value() - g.amp(idx)) < 1e-14);
      }
    }
}

TEST_CASE("pairwise representation fidelities") {
  for (int L : {2, 3, 5, 8})
    for (double phi : {-1.0, 0.5, 2.0})
      for (int i = 0; i < 3; ++i) {
        const GroundState g = build_gs_vector(L, phi, i);
        CHECK(representation_fidelity(g, build_gs_mps(L, phi, i)) > 1.0 - 1e-12);
        CHECK(representation_fidelity(g, factorized_form(L, phi, i)) > 1.0 - 1e-12);
      }
}

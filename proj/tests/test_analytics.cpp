// Closed-form observables: correlation length, densities, the two-point
// correlator G, the sector-mixing amplitude F, entanglement spectra, and the
// decay fit. Every closed form is checked against the independent dense-vector
// path at small L and against frozen values.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "pf/analytics.hpp"
#include "pf/groundstate.hpp"

using namespace pf;

namespace {
const cplx w = omega_c(1);
}

TEST_CASE("correlation length: frozen values, symmetry, monotonicity") {
  CHECK(xi(0.0) == 0.0);
  CHECK(xi(0.5) == doctest::Approx(0.601814047630567).epsilon(1e-14));
  CHECK(xi(1.0) == doctest::Approx(0.992245289204345).epsilon(1e-14));
  CHECK(xi(2.0) == doctest::Approx(2.223585074528183).epsilon(1e-14));
  CHECK(xi(-1.0) == xi(1.0));

  double prev = 0;
  for (int k = 1; k <= 12; ++k) {
    const double phi = 0.25 * k;
    CHECK(xi(phi) > prev);
    CHECK(xi(-phi) == doctest::Approx(xi(phi)).epsilon(1e-12));
    CHECK(xi_inverse(phi) == doctest::Approx(1.0 / xi(phi)).epsilon(1e-13));
    prev = xi(phi);
  }
}

TEST_CASE("site density: frozen values, free point, thermodynamic limit") {
  CHECK(density(6, 0.7, 0) == doctest::Approx(0.700482236971953).epsilon(1e-13));
  CHECK(density_thermo(0.7) == doctest::Approx(0.699673153716340).epsilon(1e-13));
  CHECK(density_thermo(0.0) == 1.0);
  for (int L = 2; L <= 6; ++L)
    for (int i = 0; i < 3; ++i) CHECK(std::abs(density(L, 0.0, i) - 1.0) < 1e-14);

  // finite-size corrections die off exponentially
  for (int i = 0; i < 3; ++i)
    CHECK(std::abs(density(400, 0.7, i) - density_thermo(0.7)) < 1e-12);

  for (double phi : {-1.0, 0.5, 2.0})
    for (int i = 0; i < 3; ++i) {
      const auto p = occupation_dist(8, phi, i);
      CHECK(std::abs(p[0] + p[1] + p[2] - 1.0) < 1e-14);
      CHECK(std::abs(p[1] + 2.0 * p[2] - density(8, phi, i)) < 1e-13);
    }
}

TEST_CASE("closed forms match the dense-vector path") {
  for (int L : {2, 3, 5, 6})
    for (double phi : {-1.0, 0.0, 0.5, 2.0})
      for (int i = 0; i < 3; ++i) {
        const GroundState g = build_gs_vector(L, phi, i);
        const GroundState gprev = build_gs_vector(L, phi, (i + 2) % 3);
        for (int j = 1; j <= L; ++j)
          CHECK(std::abs(density(L, phi, i) - density_numeric(g, j)) < 1e-12);
        for (int ell = 1; ell <= L; ++ell) {
          CHECK(std::abs(corr_G(L, phi, i, ell) - corr_G_numeric(g, 1, ell)) < 1e-12);
          CHECK(std::abs(F_func(L, phi, i, ell) - F_func_numeric(g, gprev, ell)) < 1e-12);
        }
      }
}

TEST_CASE("free-point correlator anchors") {
  for (int L : {5, 6})
    for (int i = 0; i < 3; ++i) {
      CHECK(std::abs(corr_G(L, 0.0, i, 1) - 1.0 / 3.0) < 1e-14);
      CHECK(std::abs(corr_G(L, 0.0, i, 2) - 1.0 / 9.0) < 1e-14);
      for (int ell = 3; ell < L; ++ell) CHECK(std::abs(corr_G(L, 0.0, i, ell)) < 1e-15);
      const cplx end = std::pow(w, 2 - i) / 9.0;
      CHECK(std::abs(corr_G(L, 0.0, i, L) - end) < 1e-14);
      CHECK(std::abs(corr_G(L, 0.0, i, L) / corr_G(L, 0.0, i, 2) - std::pow(w, 2 - i)) < 1e-13);
    }
}

TEST_CASE("sector amplitude ratio: magnitude e^{-L/xi}, frozen phase") {
  CHECK(theta_phase(12, 0.7) == doctest::Approx(-1.578696672240904).epsilon(1e-13));
  for (double phi : {0.7, 0.8, 2.0})
    for (int L : {12, 30}) {
      const LogComplex r = sector_amplitude_ratio(L, phi);
      CHECK(r.lm == doctest::Approx(-L * xi_inverse(phi)).epsilon(1e-12));
      CHECK(std::abs(r.ph - std::polar(1.0, theta_phase(L, phi))) < 1e-12);
    }
}

TEST_CASE("transfer-matrix correlator agrees with the closed form") {
  // translation invariance: pair (j, l) maps to separation index l - j + 1
  for (double phi : {0.5, 2.0})
    for (int i = 0; i < 3; ++i) {
      const int L = 120;
      const int pair[4][2] = {{1, 2}, {3, 17}, {40, 80}, {1, 120}};
      for (const auto& jl : pair)
        CHECK(std::abs(corr_G_mps(L, phi, i, jl[0], jl[1]) -
                       corr_G(L, phi, i, jl[1] - jl[0] + 1)) < 1e-12);
    }

  const GroundState g = build_gs_vector(6, 0.7, 0);
  CHECK(std::abs(corr_G_mps(6, 0.7, 0, 2, 5) - corr_G_numeric(g, 2, 5)) < 1e-12);
}

TEST_CASE("entanglement spectrum: closed form vs Schmidt decomposition") {
  for (double phi : {-1.0, 0.5, 2.0})
    for (int i = 0; i < 3; ++i) {
      const GroundState g = build_gs_vector(6, phi, i);
      for (int ell = 1; ell <= 5; ++ell) {
        const EntSpectrum a = ent_spectrum(6, phi, i, ell);
        const EntSpectrumNumeric b = ent_spectrum_numeric(g, ell);
        double sum = 0;
        for (int p = 0; p < 3; ++p) {
          CHECK(std::abs(a.lambda[p] - b.lambda[p]) < 1e-12);
          sum += a.lambda[p];
        }
        CHECK(std::abs(sum - 1.0) < 1e-12);
        CHECK(std::abs(a.entropy - b.entropy) < 1e-12);
        CHECK(b.beyond_rank3 < 1e-14);  // the state is exactly rank three
      }
    }

  // free point: flat spectrum, maximal entropy
  const EntSpectrum flat = ent_spectrum(6, 0.0, 1, 3);
  for (int p = 0; p < 3; ++p) CHECK(std::abs(flat.lambda[p] - 1.0 / 3.0) < 1e-14);
  CHECK(std::abs(flat.entropy - std::log(3.0)) < 1e-13);
}

TEST_CASE("decay fit recovers the correlation length") {
  for (double phi : {0.5, 1.0, 2.0, -1.0}) {
    const DecayFit f = fit_correlation_decay(120, phi, 0);
    CHECK(f.lo >= 5);
    CHECK(f.hi <= 58);
    CHECK(f.hi > f.lo);
    CHECK(f.fit.r2 > 0.999);
    CHECK(std::abs(f.xi_fitted / xi(phi) - 1.0) < 0.01);
  }
}

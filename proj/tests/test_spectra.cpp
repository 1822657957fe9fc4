// Spectral machinery: free-point triplet and gap, the exact excitation
// ladder, frozen interacting-point levels, sector splittings, and agreement
// between the dense and Lanczos eigensolvers.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "pf/fock.hpp"
#include "pf/linop.hpp"
#include "pf/model.hpp"
#include "pf/spectra.hpp"

using namespace pf;

TEST_CASE("free point: degenerate triplet at -2J(L-1) and gap 3J") {
  for (int L = 3; L <= 6; ++L) {
    const SpectrumTable t = sector_spectra(L, 0.0, 2);
    for (int q = 0; q < 3; ++q) {
      CHECK(t.sector_levels[q].size() == 2);
      CHECK(std::abs(t.level(0, q) + 2.0 * (L - 1)) < 1e-12);
    }
    CHECK(std::abs(t.gap() - 3.0) < 1e-10);
    CHECK(delta_m(t, 0) < 1e-12);
  }

  // J rescales every level
  const SpectrumTable t2 = sector_spectra(solvable_params(4, 0.0, 2.0), 2);
  for (int q = 0; q < 3; ++q) CHECK(std::abs(t2.level(0, q) + 12.0) < 1e-12);
  CHECK(std::abs(t2.gap() - 6.0) < 1e-10);
}

TEST_CASE("free-point excitation ladder closes exactly") {
  for (int L = 3; L <= 5; ++L) {
    const LadderReport r = excitation_ladder_check(L);
    CHECK(r.states == static_cast<int>(3 * pow3(L - 1)));
    CHECK(r.max_residual < 1e-12);
    CHECK(r.max_energy_dev < 1e-12);
  }
}

TEST_CASE("frozen interacting spectrum at L = 6") {
  const SpectrumTable t = sector_spectra(6, 0.7, 2);
  const double e0[3] = {-11.275830049489832, -11.275830049489690, -11.275830049489755};
  const double e1[3] = {-9.726800700575582, -9.696773470669502, -9.705427411201368};
  for (int q = 0; q < 3; ++q) {
    CHECK(std::abs(t.level(0, q) - e0[q]) < 1e-9);
    CHECK(std::abs(t.level(1, q) - e1[q]) < 1e-9);
  }
  CHECK(delta_m(t, 0) < 1e-9);

  // gap() reduces over sectors the same way a manual min does
  double lo0 = t.level(0, 0), lo1 = t.level(1, 0);
  for (int q = 1; q < 3; ++q) {
    lo0 = std::min(lo0, t.level(0, q));
    lo1 = std::min(lo1, t.level(1, q));
  }
  CHECK(t.gap() == lo1 - lo0);
  CHECK(std::abs(t.gap() - 1.549029348914250) < 1e-9);
}

TEST_CASE("one-wall splitting sits far below the four-wall one near phi = 0") {
  const SpectrumTable t = sector_spectra(8, 1e-3, 6, false);
  const double d1 = delta_m(t, 1), d4 = delta_m(t, 4);
  CHECK(d1 > 0);
  CHECK(d1 < 0.25 * d4);
}

TEST_CASE("dense and Lanczos eigensolvers agree on a sector block") {
  const ModelParams p = solvable_params(6, 0.7);
  const LinOp A = restrict_to_sector(build_H(p), enumerate_sector(p.L, 0));

  EigenOptions od;
  od.nev = 4;
  od.vectors = true;
  const EigenResult dense = eigensolve_dense(A, od);
  CHECK(dense.iterations == 0);
  CHECK(dense.max_residual < 1e-12);
  for (int m = 0; m + 1 < dense.values.size(); ++m)
    CHECK(dense.values(m) <= dense.values(m + 1));

  EigenOptions ol;
  ol.nev = 4;
  ol.vectors = true;
  const EigenResult lz = eigensolve_lanczos(
      [&](const VecC& v) { return VecC(A.mat * v); }, A.mat.rows(), ol);
  CHECK(lz.iterations > 0);
  CHECK(lz.max_residual < 1e-9);
  for (int m = 0; m < 4; ++m) CHECK(std::abs(lz.values(m) - dense.values(m)) < 1e-10);
}

TEST_CASE("eigensolve dispatches on dimension") {
  const LinOp A = restrict_to_sector(build_H(solvable_params(4, 0.7)),
                                     enumerate_sector(4, 1));
  const EigenResult dense = eigensolve(A);  // dim 27: dense path
  CHECK(dense.iterations == 0);
  CHECK(dense.values.size() == 27);

  EigenOptions o;
  o.nev = 3;
  const EigenResult lz = eigensolve(A, o, 10);  // forced low threshold
  CHECK(lz.iterations > 0);
  for (int m = 0; m < 3; ++m) CHECK(std::abs(lz.values(m) - dense.values(m)) < 1e-10);
}

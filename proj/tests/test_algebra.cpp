// exact-arithmetic checks: the cyclotomic field, the occupation-basis
// indexing, and the operator identities tying mode operators, edge operators,
// clock operators and the global charge together. Everything here is checked
// in Q(w), so equality means equality.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pf/exact.hpp"
#include "pf/fock.hpp"

using namespace pf;

namespace {
const Cyclotomic w = Cyclotomic::omega(1);
const Cyclotomic w2 = Cyclotomic::omega(2);
const Cyclotomic third(mpq_class(1, 3));
const Cyclotomic two_thirds(mpq_class(2, 3));
}  // namespace

TEST_CASE("cyclotomic field arithmetic") {
  CHECK(w * w == w2);
  CHECK(w * w2 == Cyclotomic(1));
  CHECK(Cyclotomic::omega(3) == Cyclotomic(1));
  CHECK(Cyclotomic::omega(-1) == w2);
  CHECK(Cyclotomic(1) + w + w2 == Cyclotomic(0));
  CHECK(w.conj() == w2);
  CHECK(w2.conj() == w);
  CHECK((w - w2) * (w - w2) == Cyclotomic(-3));  // (i sqrt 3)^2 = -3
  const Cyclotomic z(mpq_class(2, 5), mpq_class(-1, 3));
  CHECK(z - z == Cyclotomic(0));
  CHECK(z * Cyclotomic(1) == z);
  CHECK(z.conj().conj() == z);
  CHECK(std::abs(w.eval() - cplx(-0.5, std::sqrt(3.0) / 2)) < 1e-15);
}

TEST_CASE("occupation basis indexing is lexicographic, site 1 most significant") {
  // index = sum_j n_j 3^{L-j}
  FockState s{4, 0};
  for (int j = 1; j <= 4; ++j) CHECK(s.occ(j) == 0);
  FockState t{4, 2 * 27 + 1 * 9 + 0 * 3 + 2};
  CHECK(t.occ(1) == 2);
  CHECK(t.occ(2) == 1);
  CHECK(t.occ(3) == 0);
  CHECK(t.occ(4) == 2);
  CHECK(pow3(4) == 81);
  SectorBasis b = enumerate_sector(3, 1);
  CHECK(b.states.size() == 9);  // 3^{L-1} per charge sector
  for (auto idx : b.states) {
    FockState f{3, idx};
    CHECK((f.occ(1) + f.occ(2) + f.occ(3)) % 3 == 1);
  }
}

TEST_CASE("elementary exact operators") {
  const int L = 2;
  const CycSparse one = ex_identity(L);
  const CycSparse B = ex_lower(L, 1);
  CHECK((B * B * B).is_zero());               // hard-core cutoff at occupation 3
  CHECK(!(B * B).is_zero());
  const CycSparse X = ex_lower_cyclic(L, 1);  // cyclic ladder is invertible
  CHECK(X * X * X == one);
  const CycSparse N = ex_number(L, 1);
  CHECK(N == B.dagger() * B + B.dagger() * B.dagger() * B * B);
  CHECK(ex_phase_string(L, 1) == one);        // empty string on the first site
}

TEST_CASE("edge-operator algebra: cube, conjugate, ordered exchange") {
  for (int L = 2; L <= 4; ++L) {
    const CycSparse one = ex_identity(L);
    std::vector<CycSparse> g;
    for (int a = 1; a <= 2 * L; ++a) g.push_back(ex_parafermion(L, a));
    for (const auto& ga : g) {
      CHECK(ga * ga * ga == one);
      CHECK(ga.dagger() == ga * ga);
    }
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = i + 1; j < g.size(); ++j)
        CHECK(g[i] * g[j] == w * (g[j] * g[i]));
  }
}

TEST_CASE("mode operators against edge operators, site by site") {
  for (int L = 2; L <= 4; ++L) {
    const CycSparse one = ex_identity(L);
    for (int j = 1; j <= L; ++j) {
      const CycSparse C = ex_fock_annihilator(L, j);
      const CycSparse Cd = C.dagger();
      const CycSparse C2 = C * C, Cd2 = Cd * Cd;
      const CycSparse N = ex_number(L, j);
      const CycSparse g1 = ex_parafermion(L, 2 * j - 1);
      const CycSparse g2 = ex_parafermion(L, 2 * j);
      const CycSparse g1d = g1.dagger(), g2d = g2.dagger();

      // definitions of the two edge operators on site j
      CHECK(g1 == w * (C + Cd2));
      CHECK(g2 == C * ex_clock_tau(L, j) + Cd2);

      // string-dressed mode operator and its cutoff
      CHECK(C == ex_phase_string(L, j) * ex_lower(L, j));
      CHECK((C * C2).is_zero());
      CHECK(N == Cd * C + Cd2 * C2);

      // inversion: every mode monomial is a short edge-operator combination
      CHECK(C == (two_thirds * w2) * g1 - third * g2 - (third * w2) * (g1d * g2d));
      CHECK(Cd == (two_thirds * w) * g1d - third * g2d - (third * w) * (g2 * g1));
      CHECK(C2 == (third * w) * g1d + third * g2d + (third * w) * (g2 * g1));
      CHECK(Cd2 == (third * w2) * g1 + third * g2 + (third * w2) * (g1d * g2d));

      // ladder bilinears and the occupation written in edge bilinears;
      // i sqrt 3 = w - w^2 keeps the last one inside the field
      CHECK(Cd * C == two_thirds * one - (third * w) * (g1d * g2) - (third * w2) * (g2d * g1));
      CHECK(Cd2 * C2 == third * one + (third * w2) * (g1d * g2) + (third * w) * (g2d * g1));
      CHECK(N == one + (third * (w2 - w)) * (g1d * g2) + (third * (w - w2)) * (g2d * g1));
    }
  }
}

TEST_CASE("mode operators on different sites exchange with a phase") {
  const int L = 4;
  for (int j = 1; j <= L; ++j)
    for (int k = j + 1; k <= L; ++k) {
      const CycSparse Cj = ex_fock_annihilator(L, j);
      const CycSparse Ck = ex_fock_annihilator(L, k);
      CHECK(Cj * Ck == w * (Ck * Cj));
      CHECK(Cj * Ck.dagger() == w2 * (Ck.dagger() * Cj));
    }
}

TEST_CASE("clock operators and the global charge") {
  const int L = 3;
  const CycSparse one = ex_identity(L);
  for (int j = 1; j <= L; ++j) {
    const CycSparse s = ex_clock_sigma(L, j), t = ex_clock_tau(L, j);
    CHECK(s * s * s == one);
    CHECK(t * t * t == one);
    CHECK(s * t == w * (t * s));
    CHECK(t.dagger() * t == one);
  }
  CycSparse Q = ex_charge(L);
  CHECK(Q * Q * Q == one);
  CycSparse prod = ex_identity(L);
  for (int j = 1; j <= L; ++j) prod = prod * ex_clock_tau(L, j).dagger();
  CHECK(Q == prod);
  for (int a = 1; a <= 2 * L; ++a) {
    const CycSparse ga = ex_parafermion(L, a);
    CHECK(Q * ga == w * (ga * Q));  // every edge operator lowers the charge once
  }
}

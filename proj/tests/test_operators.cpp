// numeric operator layer: the sparse complex operators must agree with their
// exact-arithmetic counterparts to rounding, and the sector machinery must
// partition the full space cleanly.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "pf/exact.hpp"
#include "pf/fock.hpp"
#include "pf/linop.hpp"

using namespace pf;

namespace {
double dev(const LinOp& a, const LinOp& b) { return max_abs((a - b).mat); }
}  // namespace

TEST_CASE("numeric builders match the exact ones") {
  const int L = 3;
  for (int j = 1; j <= L; ++j) {
    CHECK(dev(build_fock_annihilator(L, j), from_exact(ex_fock_annihilator(L, j), L, {})) <
          1e-15);
    CHECK(dev(build_number(L, j), from_exact(ex_number(L, j), L, {})) < 1e-15);
    CHECK(dev(build_clock(L, j, Clock::sigma), from_exact(ex_clock_sigma(L, j), L, {})) <
          1e-15);
    CHECK(dev(build_clock(L, j, Clock::tau), from_exact(ex_clock_tau(L, j), L, {})) < 1e-15);
  }
  for (int a = 1; a <= 2 * L; ++a)
    CHECK(dev(build_parafermion(L, a), from_exact(ex_parafermion(L, a), L, {})) < 1e-15);
  CHECK(dev(build_charge(L), from_exact(ex_charge(L), L, {})) < 1e-15);
}

TEST_CASE("numeric edge operators are unitary and of order three") {
  const int L = 3;
  const LinOp one = identity_op(L);
  for (int a = 1; a <= 2 * L; ++a) {
    const LinOp g = build_parafermion(L, a);
    CHECK(dev(g * g.dagger(), one) < 1e-14);
    CHECK(dev(g * g * g, one) < 1e-14);
    CHECK(!g.is_hermitian());
  }
}

TEST_CASE("diagonal operators carry the expected entries") {
  const int L = 3;
  const LinOp N2 = build_number(L, 2);
  CHECK(N2.is_hermitian());
  CHECK(N2.support == std::vector<int>{2});
  const LinOp Q = build_charge(L);
  const LinOp Z = build_Z(L, 0.9);
  const cplx wc = omega_c();
  for (std::uint64_t idx = 0; idx < pow3(L); ++idx) {
    const FockState s{L, idx};
    CHECK(std::abs(N2.mat.coeff(idx, idx) - cplx(s.occ(2))) < 1e-15);
    CHECK(std::abs(Q.mat.coeff(idx, idx) - std::pow(wc, -s.charge())) < 1e-14);
    CHECK(std::abs(Z.mat.coeff(idx, idx) - std::exp(0.9 * s.total_N() / 3.0)) < 1e-13);
  }
}

TEST_CASE("operator arithmetic bookkeeping") {
  const int L = 3;
  const LinOp C1 = build_fock_annihilator(L, 1);
  const LinOp N3 = build_number(L, 3);
  CHECK(dev(C1.dagger().dagger(), C1) == 0.0);
  CHECK((C1 * N3).support == std::vector<int>{1, 3});
  CHECK((N3 + C1).support == std::vector<int>{1, 3});
  CHECK(identity_op(L).norm() == doctest::Approx(std::sqrt(27.0)).epsilon(1e-14));
  // scalar multiply
  CHECK(dev(cplx(2, 0) * C1, C1 + C1) < 1e-15);
}

TEST_CASE("sector restriction partitions the space") {
  const int L = 4;
  const std::uint64_t dim = pow3(L);
  std::size_t total = 0;
  for (int q = 0; q < 3; ++q) {
    const SectorBasis b = enumerate_sector(L, q);
    total += b.size();
    CHECK(b.size() == pow3(L - 1));
    for (std::size_t r = 0; r < b.size(); ++r) {
      CHECK(b.state(r).charge() == q);
      CHECK(b.index_of(b.states[r]) == static_cast<std::int64_t>(r));
    }
  }
  CHECK(total == dim);

  // a charge-conserving operator restricts and re-embeds losslessly
  LinOp Nsum = build_number(L, 1);
  for (int j = 2; j <= L; ++j) Nsum += build_number(L, j);
  const SectorBasis b1 = enumerate_sector(L, 1);
  const LinOp r = restrict_to_sector(Nsum, b1);
  CHECK(r.dim() == b1.size());
  CHECK(r.tag == BasisTag::sector);
  CHECK(r.q == 1);
  const LinOp back = embed_sector(r, b1);
  // the embedded block must match the original on its sector columns
  for (std::size_t c = 0; c < b1.size(); ++c) {
    const auto col = b1.states[c];
    for (std::uint64_t row = 0; row < dim; ++row)
      CHECK(std::abs(back.mat.coeff(row, col) - Nsum.mat.coeff(row, col)) < 1e-15);
  }
}

TEST_CASE("vector restriction and embedding round-trip") {
  const int L = 3;
  const SectorBasis b = enumerate_sector(L, 2);
  VecC v = VecC::Zero(b.size());
  for (std::size_t k = 0; k < b.size(); ++k) v(k) = cplx(0.3 * k, -0.1 * k);
  const VecC full = embed_vector(v, b);
  CHECK(full.size() == static_cast<Eigen::Index>(pow3(L)));
  CHECK((restrict_vector(full, b) - v).norm() == 0.0);
  // embedded vector is supported on the sector only
  for (std::uint64_t idx = 0; idx < pow3(L); ++idx)
    if (charge_of_index(idx, L) != 2) CHECK(std::abs(full(idx)) == 0.0);
}

TEST_CASE("mode operator moves between adjacent sectors") {
  const int L = 3;
  const LinOp C2 = build_fock_annihilator(L, 2);
  // every nonzero entry maps charge q to q-1 mod 3
  for (int k = 0; k < C2.mat.outerSize(); ++k)
    for (SpMat::InnerIterator it(C2.mat, k); it; ++it)
      CHECK(charge_of_index(it.row(), L) ==
            (charge_of_index(it.col(), L) + 2) % 3);
}

#include "pf/linop.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pf {

namespace {
std::vector<int> support_union(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> u;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(u));
  return u;
}

void check_compatible(const LinOp& a, const LinOp& b) {
  if (a.tag != b.tag || a.L != b.L || a.dim() != b.dim() ||
      (a.tag == BasisTag::sector && a.q != b.q))
    throw std::invalid_argument("operator basis mismatch");
}

std::vector<int> all_sites(int L) {
  std::vector<int> s(L);
  for (int j = 0; j < L; ++j) s[j] = j + 1;
  return s;
}
}  // namespace

LinOp LinOp::dagger() const {
  LinOp r = *this;
  r.mat = mat.adjoint();
  return r;
}

bool LinOp::is_hermitian(double tol) const {
  return max_abs(SpMat(mat - SpMat(mat.adjoint()))) < tol;
}

double LinOp::norm() const { return mat.norm(); }

LinOp& LinOp::operator+=(const LinOp& o) {
  check_compatible(*this, o);
  mat = (mat + o.mat).eval();
  support = support_union(support, o.support);
  return *this;
}

LinOp& LinOp::operator-=(const LinOp& o) {
  check_compatible(*this, o);
  mat = (mat - o.mat).eval();
  support = support_union(support, o.support);
  return *this;
}

LinOp operator*(const LinOp& a, const LinOp& b) {
  check_compatible(a, b);
  LinOp r = a;
  r.mat = (a.mat * b.mat).eval();
  r.support = support_union(a.support, b.support);
  return r;
}

LinOp identity_op(int L) {
  LinOp r;
  r.L = L;
  const std::uint64_t dim = pow3(L);
  r.mat.resize(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  r.mat.setIdentity();
  return r;
}

LinOp from_exact(const CycSparse& m, int L, std::vector<int> support) {
  LinOp r;
  r.L = L;
  r.support = std::move(support);
  std::vector<Eigen::Triplet<cplx>> trip;
  trip.reserve(m.nnz());
  for (std::uint64_t c = 0; c < m.dim; ++c)
    for (const auto& [row, v] : m.cols[c])
      trip.emplace_back(static_cast<int>(row), static_cast<int>(c), v.eval());
  r.mat.resize(static_cast<Eigen::Index>(m.dim), static_cast<Eigen::Index>(m.dim));
  r.mat.setFromTriplets(trip.begin(), trip.end());
  return r;
}

LinOp build_fock_annihilator(int L, int j) {
  std::vector<int> sup(j);
  for (int k = 0; k < j; ++k) sup[k] = k + 1;
  return from_exact(ex_fock_annihilator(L, j), L, sup);
}

LinOp build_number(int L, int j) { return from_exact(ex_number(L, j), L, {j}); }

LinOp build_parafermion(int L, int a) {
  const int j = (a + 1) / 2;
  std::vector<int> sup(j);
  for (int k = 0; k < j; ++k) sup[k] = k + 1;
  return from_exact(ex_parafermion(L, a), L, sup);
}

LinOp build_clock(int L, int j, Clock which) {
  return from_exact(which == Clock::sigma ? ex_clock_sigma(L, j) : ex_clock_tau(L, j),
                    L, {j});
}

LinOp build_Z(int L, double phi) {
  if (L > kMaxDenseSites) throw std::length_error("build_Z: 3^L too large");
  LinOp r;
  r.L = L;
  r.support = [&] { std::vector<int> s(L); for (int j = 0; j < L; ++j) s[j] = j + 1; return s; }();
  const std::uint64_t dim = pow3(L);
  std::vector<Eigen::Triplet<cplx>> trip;
  trip.reserve(dim);
  for (std::uint64_t idx = 0; idx < dim; ++idx) {
    const double ntot = FockState{L, idx}.total_N();
    trip.emplace_back(static_cast<int>(idx), static_cast<int>(idx),
                      std::exp(phi * ntot / 3.0));
  }
  r.mat.resize(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  r.mat.setFromTriplets(trip.begin(), trip.end());
  return r;
}

LinOp build_charge(int L) {
  LinOp r = from_exact(ex_charge(L), L, {});
  r.support = all_sites(L);
  return r;
}

LinOp restrict_to_sector(const LinOp& op, const SectorBasis& basis) {
  if (op.tag != BasisTag::full || op.L != basis.L)
    throw std::invalid_argument("restrict_to_sector: need full-space operator of same L");
  LinOp r;
  r.L = op.L;
  r.tag = BasisTag::sector;
  r.q = basis.q;
  r.support = op.support;
  std::vector<Eigen::Triplet<cplx>> trip;
  for (int c = 0; c < op.mat.outerSize(); ++c) {
    const std::int64_t cc = basis.position[static_cast<std::uint64_t>(c)];
    if (cc < 0) continue;
    for (SpMat::InnerIterator it(op.mat, c); it; ++it) {
      const std::int64_t rr = basis.position[static_cast<std::uint64_t>(it.row())];
      if (rr >= 0) trip.emplace_back(static_cast<int>(rr), static_cast<int>(cc), it.value());
    }
  }
  const auto n = static_cast<Eigen::Index>(basis.size());
  r.mat.resize(n, n);
  r.mat.setFromTriplets(trip.begin(), trip.end());
  return r;
}

LinOp embed_sector(const LinOp& op, const SectorBasis& basis) {
  if (op.tag != BasisTag::sector || op.q != basis.q)
    throw std::invalid_argument("embed_sector: operator/basis mismatch");
  LinOp r;
  r.L = op.L;
  r.support = op.support;
  std::vector<Eigen::Triplet<cplx>> trip;
  for (int c = 0; c < op.mat.outerSize(); ++c)
    for (SpMat::InnerIterator it(op.mat, c); it; ++it)
      trip.emplace_back(static_cast<int>(basis.states[it.row()]),
                        static_cast<int>(basis.states[c]), it.value());
  const auto dim = static_cast<Eigen::Index>(pow3(op.L));
  r.mat.resize(dim, dim);
  r.mat.setFromTriplets(trip.begin(), trip.end());
  return r;
}

VecC embed_vector(const VecC& v, const SectorBasis& basis) {
  VecC full = VecC::Zero(static_cast<Eigen::Index>(pow3(basis.L)));
  for (std::size_t k = 0; k < basis.size(); ++k)
    full[static_cast<Eigen::Index>(basis.states[k])] = v[static_cast<Eigen::Index>(k)];
  return full;
}

VecC restrict_vector(const VecC& full, const SectorBasis& basis) {
  VecC v(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k)
    v[static_cast<Eigen::Index>(k)] = full[static_cast<Eigen::Index>(basis.states[k])];
  return v;
}

double max_abs(const SpMat& m) {
  double mx = 0;
  for (int c = 0; c < m.outerSize(); ++c)
    for (SpMat::InnerIterator it(m, c); it; ++it) mx = std::max(mx, std::abs(it.value()));
  return mx;
}

}  // namespace pf

#include "pf/domainwall.hpp"

#include <cmath>
#include <stdexcept>

#include "pf/util.hpp"

namespace pf {

namespace {

using Mat3l = Eigen::Matrix<cplxl, 3, 3>;
using Mat9l = Eigen::Matrix<cplxl, 9, 9>;

cplxl omega_l(int k) {
  k = ((k % 3) + 3) % 3;
  constexpr ldbl h = 0.866025403784438646763723170752936L;
  constexpr cplxl w[3] = {cplxl(1.0L, 0.0L), cplxl(-0.5L, h), cplxl(-0.5L, -h)};
  return w[k];
}

// local H pieces in the tilde basis |~t> = (1/sqrt3) sum_n w^{tn} |n>
struct LocalTerms {
  Mat3l site;   // tilde-basis f diag(1,1,-2) term
  Mat9l bond;   // tilde-basis -J (X (x) X^T + X^T (x) X)
};

LocalTerms tilde_terms(double phi, double J) {
  const ldbl p = static_cast<ldbl>(phi);
  const ldbl e1 = std::exp(-p), e2 = std::exp(-2.0L * p);
  const ldbl den = 1.0L + 2.0L * e1;
  const ldbl f = static_cast<ldbl>(J) * (-6.0L) * (1.0L - e2) / (den * den);
  const ldbl b = (1.0L - e1) / den;

  Mat3l T;
  for (int n = 0; n < 3; ++n)
    for (int t = 0; t < 3; ++t) T(n, t) = omega_l(t * n) / std::sqrt(3.0L);

  Mat3l S = Mat3l::Zero();
  S(0, 0) = f;
  S(1, 1) = f;
  S(2, 2) = -2.0L * f;

  Mat3l X = Mat3l::Zero();  // cyclic lowering times diag(1+2b, 1-b, 1-b)
  X(0, 1) = 1.0L - b;
  X(1, 2) = 1.0L - b;
  X(2, 0) = 1.0L + 2.0L * b;

  Mat9l B = Mat9l::Zero();
  const Mat3l Xt = X.transpose();
  for (int r1 = 0; r1 < 3; ++r1)
    for (int c1 = 0; c1 < 3; ++c1)
      for (int r2 = 0; r2 < 3; ++r2)
        for (int c2 = 0; c2 < 3; ++c2)
          B(r1 * 3 + r2, c1 * 3 + c2) =
              -static_cast<ldbl>(J) * (X(r1, c1) * Xt(r2, c2) + Xt(r1, c1) * X(r2, c2));

  Mat9l TT = Mat9l::Zero();
  for (int r1 = 0; r1 < 3; ++r1)
    for (int c1 = 0; c1 < 3; ++c1)
      for (int r2 = 0; r2 < 3; ++r2)
        for (int c2 = 0; c2 < 3; ++c2)
          TT(r1 * 3 + r2, c1 * 3 + c2) = T(r1, c1) * T(r2, c2);

  LocalTerms lt;
  lt.site = T.adjoint() * S * T;
  lt.bond = TT.adjoint() * B * TT;
  return lt;
}

int label_at(const DwConfig& c, int j) { return j <= c.wall ? c.left : c.right; }

DwConfig shifted(const DwConfig& c, int g) {
  return {c.wall, (c.left + g) % 3, (c.right + g) % 3};
}

// <c1| H |c2> for product states in the orthonormal tilde basis; every H term
// touches at most two adjacent sites, so only configurations whose mismatch
// region fits under one term contribute. Segment bookkeeping keeps this O(1).
cplxl element(int L, const LocalTerms& lt, bool with_boundary, const DwConfig& c1,
              const DwConfig& c2) {
  const int p1 = std::min(c1.wall, c2.wall);
  const int p2 = std::max(c1.wall, c2.wall);

  struct Seg {
    int lo, hi, u, v;
  };
  Seg segs[3] = {
      {1, p1, c1.left, c2.left},
      {p1 + 1, p2, c1.wall < c2.wall ? c1.right : c1.left,
       c1.wall < c2.wall ? c2.left : c2.right},
      {p2 + 1, L, c1.right, c2.right},
  };

  // merged mismatch intervals (consecutive segments stay contiguous)
  int mlo[3], mhi[3];
  int nm = 0;
  for (const Seg& s : segs) {
    if (s.lo > s.hi || s.u == s.v) continue;
    if (nm > 0 && mhi[nm - 1] + 1 == s.lo)
      mhi[nm - 1] = s.hi;
    else {
      mlo[nm] = s.lo;
      mhi[nm] = s.hi;
      ++nm;
    }
  }

  auto site_w = [&](int j) { return with_boundary && (j == 1 || j == L) ? 0.5L : 1.0L; };
  auto bdiag = [&](int u, int v) {
    const int k = u * 3 + v;
    return lt.bond(k, k);
  };

  if (nm == 0) {
    // identical configurations: diagonal expectation from segment counts
    const int k = c1.wall;
    const int a = c1.left, b = c1.right;
    cplxl val = static_cast<ldbl>(k) * lt.site(a, a) +
                static_cast<ldbl>(L - k) * lt.site(b, b);
    if (with_boundary)
      val -= 0.5L * (lt.site(label_at(c1, 1), label_at(c1, 1)) +
                     lt.site(label_at(c1, L), label_at(c1, L)));
    if (k == 0)
      val += static_cast<ldbl>(L - 1) * bdiag(b, b);
    else
      val += static_cast<ldbl>(k - 1) * bdiag(a, a) + bdiag(a, b) +
             static_cast<ldbl>(L - k - 1) * bdiag(b, b);
    return val;
  }
  if (nm > 1) return 0.0L;  // disjoint mismatch intervals: no term covers both

  const int lo = mlo[0], hi = mhi[0];
  if (hi == lo) {
    // single differing site: its site term plus the two bonds touching it
    cplxl val = site_w(lo) * lt.site(label_at(c1, lo), label_at(c2, lo));
    if (lo > 1)
      val += lt.bond(label_at(c1, lo - 1) * 3 + label_at(c1, lo),
                     label_at(c2, lo - 1) * 3 + label_at(c2, lo));
    if (lo < L)
      val += lt.bond(label_at(c1, lo) * 3 + label_at(c1, lo + 1),
                     label_at(c2, lo) * 3 + label_at(c2, lo + 1));
    return val;
  }
  if (hi == lo + 1)  // adjacent pair: only the bond covering both
    return lt.bond(label_at(c1, lo) * 3 + label_at(c1, hi),
                   label_at(c2, lo) * 3 + label_at(c2, hi));
  return 0.0L;
}

}  // namespace

DwBasis build_dw_basis(int L) {
  if (L < 3) throw std::invalid_argument("build_dw_basis: need L >= 3");
  DwBasis b;
  b.L = L;
  b.reps.push_back({0, 0, 0});
  for (int k = 1; k < L; ++k)
    for (int d = 1; d <= 2; ++d) b.reps.push_back({k, 0, d});
  return b;
}

VecC dw_state_vector(int L, const DwConfig& c, int q) {
  if (L > kMaxDenseSites) throw std::length_error("dw_state_vector: 3^L too large");
  const std::uint64_t dim = pow3(L);
  VecC v = VecC::Zero(static_cast<Eigen::Index>(dim));
  const double amp = std::pow(3.0, -0.5 * (L + 1));  // (1/sqrt3) * 3^{-L/2}
  for (int h = 0; h < 3; ++h) {
    const DwConfig cs = shifted(c, h);
    for (std::uint64_t idx = 0; idx < dim; ++idx) {
      const FockState s{L, idx};
      int phase = 0;
      for (int j = 1; j <= L; ++j) phase += label_at(cs, j) * s.occ(j);
      v(static_cast<Eigen::Index>(idx)) += amp * omega_c(q * h) * omega_c(phase);
    }
  }
  return v;
}

DwBlocks project_H(int L, double phi, bool with_boundary, double J) {
  const DwBasis basis = build_dw_basis(L);
  const LocalTerms lt = tilde_terms(phi, J);
  const int n = static_cast<int>(basis.reps.size());

  DwBlocks out;
  out.L = L;
  out.phi = phi;
  out.with_boundary = with_boundary;
  for (int q = 0; q < 3; ++q) {
    MatXcl h(n, n);
    for (int r = 0; r < n; ++r)
      for (int s = 0; s < n; ++s) {
        cplxl acc = 0.0L;
        for (int g = 0; g < 3; ++g)
          acc += omega_l(q * g) *
                 element(L, lt, with_boundary, basis.reps[r], shifted(basis.reps[s], g));
        h(r, s) = acc;
      }
    const ldbl res = (h - h.adjoint().eval()).cwiseAbs().maxCoeff();
    out.herm_residual = std::max(out.herm_residual, static_cast<double>(res));
    out.block[q] = 0.5L * (h + h.adjoint().eval());
  }
  return out;
}

void diagonalize(DwBlocks& b) {
  for (int q = 0; q < 3; ++q) {
    Eigen::SelfAdjointEigenSolver<MatXcl> es(b.block[q], Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
      throw std::runtime_error("domainwall: eigensolver failed");
    b.levels[q] = es.eigenvalues();
  }
}

double dw_delta(const DwBlocks& b, int m) {
  for (int q = 0; q < 3; ++q)
    if (m < 0 || m >= b.levels[q].size())
      throw std::out_of_range("dw_delta: level index");
  ldbl s = 0.0L;
  for (int q = 0; q < 3; ++q)
    for (int r = 0; r < 3; ++r) {
      if (q == r) continue;
      const ldbl d = b.levels[q](m) - b.levels[r](m);
      s += d * d;
    }
  return static_cast<double>(std::sqrt(s));
}

std::vector<DwScalingRow> dw_delta_scaling(double phi, const std::vector<int>& Ls,
                                           int deltas, int threads) {
  std::vector<DwScalingRow> rows(Ls.size());
  parallel_for(static_cast<int>(Ls.size()), thread_count(threads), [&](int idx) {
    DwBlocks b = project_H(Ls[idx], phi);
    diagonalize(b);
    DwScalingRow row;
    row.L = Ls[idx];
    for (int m = 0; m < deltas; ++m) row.delta.push_back(dw_delta(b, m));
    rows[idx] = std::move(row);
  });
  return rows;
}

}  // namespace pf

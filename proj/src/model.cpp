#include "pf/model.hpp"

#include <cmath>
#include <stdexcept>

namespace pf {

namespace {

LinOp plus_hc(const LinOp& t) { return t + t.dagger(); }

std::vector<int> all_sites(int L) {
  std::vector<int> s(L);
  for (int j = 0; j < L; ++j) s[j] = j + 1;
  return s;
}

void check_params(const ModelParams& p) {
  if (p.L < 2) throw std::invalid_argument("model: L must be >= 2");
  if (!(p.J > 0)) throw std::invalid_argument("model: J must be > 0");
  if (p.L > kMaxDenseSites) throw std::length_error("model: 3^L above cap");
}

// dense kron with the left factor on the slower (more significant) index
template <int NA, int NB>
Eigen::Matrix<double, NA * NB, NA * NB> kron(const Eigen::Matrix<double, NA, NA>& A,
                                             const Eigen::Matrix<double, NB, NB>& B) {
  Eigen::Matrix<double, NA * NB, NA * NB> K;
  for (int i = 0; i < NA; ++i)
    for (int j = 0; j < NA; ++j) K.template block<NB, NB>(i * NB, j * NB) = A(i, j) * B;
  return K;
}

}  // namespace

SolvablePoint solvable_line(double phi) {
  if (!std::isfinite(phi)) throw std::invalid_argument("solvable_line: phi must be finite");
  const double e = std::exp(-phi), e2 = std::exp(-2 * phi);
  const double d = 1 + 2 * e;
  return {phi, -6 * (1 - e2) / (d * d), (1 - e) / d};
}

HamiltonianTerms build_H_terms(const ModelParams& p) {
  check_params(p);
  const int L = p.L;
  const cplx w = omega_c(), wc = omega_c(-1);

  std::vector<LinOp> g(2 * L + 1), gd(2 * L + 1);
  for (int a = 1; a <= 2 * L; ++a) {
    g[a] = build_parafermion(L, a);
    gd[a] = g[a].dagger();
  }

  HamiltonianTerms t;
  t.p = p;

  LinOp H0 = (-p.f * wc) * (gd[1] * g[2]);
  for (int j = 2; j <= L; ++j) H0 += (-p.f * wc) * (gd[2 * j - 1] * g[2 * j]);
  for (int j = 1; j <= L - 1; ++j) H0 += (-p.J * w) * (g[2 * j] * gd[2 * j + 1]);
  t.H0 = plus_hc(H0);

  std::vector<LinOp> A(L + 1), B(L + 1);
  for (int j = 1; j <= L; ++j) {
    A[j] = g[2 * j - 1] + gd[2 * j - 1] * gd[2 * j];
    B[j] = g[2 * j] + gd[2 * j] * gd[2 * j - 1];
  }

  LinOp H1 = (-p.J) * (A[1] * gd[3] + g[2] * B[2].dagger());
  for (int j = 2; j <= L - 1; ++j)
    H1 += (-p.J) * (A[j] * gd[2 * j + 1] + g[2 * j] * B[j + 1].dagger());
  t.H1 = plus_hc(H1);

  LinOp H2 = (-p.J * wc) * (A[1] * B[2].dagger());
  for (int j = 2; j <= L - 1; ++j) H2 += (-p.J * wc) * (A[j] * B[j + 1].dagger());
  t.H2 = plus_hc(H2);

  t.HB = plus_hc((p.f / 2 * wc) * (gd[1] * g[2] + gd[2 * L - 1] * g[2 * L]));

  t.H = t.H0 + p.b * t.H1 + (p.b * p.b) * t.H2;
  if (p.with_boundary) t.H += t.HB;
  t.H0.support = t.H1.support = t.H2.support = t.H.support = all_sites(L);
  return t;
}

LinOp build_H(const ModelParams& p) { return build_H_terms(p).H; }

LinOp build_ell(int L, int j) {
  if (j < 1 || j > L - 1) throw std::out_of_range("build_ell: bond out of range");
  return build_parafermion(L, 2 * j).dagger() +
         (-omega_c()) * build_parafermion(L, 2 * j + 1).dagger();
}

LinOp build_ell_expansion(int L, int j) {
  if (j < 1 || j > L - 1) throw std::out_of_range("build_ell_expansion: bond out of range");
  // w^{-N_j} as a local diagonal
  CycSparse wmn = ex_diagonal(L, [L, j](std::uint64_t idx) {
    return Cyclotomic::omega(-FockState{L, idx}.occ(j));
  });
  LinOp wmn_op = from_exact(wmn, L, {j});
  LinOp Cj = build_fock_annihilator(L, j), Cj1 = build_fock_annihilator(L, j + 1);
  return wmn_op * Cj.dagger() + (-1.0) * Cj1.dagger() + Cj * Cj + (-1.0) * (Cj1 * Cj1);
}

double parent_scale(double phi) {
  const double d = 1 + 2 * std::exp(-phi);
  return std::exp(4 * phi / 3) * d * d / 9.0;
}

LinOp build_parent_generator(int L, int j, double phi, ParentForm form) {
  if (j < 1 || j > L - 1) throw std::out_of_range("parent generator: bond out of range");
  const double s = std::sqrt(parent_scale(phi));
  if (form == ParentForm::z_conjugation) {
    LinOp Zm = build_Z(L, -phi), Zp = build_Z(L, phi);
    return (1.0 / s) * (Zm * build_ell(L, j) * Zp);
  }
  // dressed-bond form: [W_j g_{2j}^dag - w W_{j+1} g_{2j+1}^dag] / (1 + 2 e^{-phi})
  const double e = std::exp(-phi);
  auto W = [&](int k) {
    LinOp go = build_parafermion(L, 2 * k - 1), ge = build_parafermion(L, 2 * k);
    LinOp dress = plus_hc(omega_c() * (go.dagger() * ge));
    return (1 + 2 * e) * identity_op(L) + (1 - e) * dress;
  };
  LinOp gen = W(j) * build_parafermion(L, 2 * j).dagger() +
              (-omega_c()) * (W(j + 1) * build_parafermion(L, 2 * j + 1).dagger());
  return (1.0 / (1 + 2 * e)) * gen;
}

LinOp build_parent(int L, double phi, ParentForm form) {
  LinOp g1 = build_parent_generator(L, 1, phi, form);
  LinOp Hp = g1.dagger() * g1;
  for (int j = 2; j <= L - 1; ++j) {
    LinOp gj = build_parent_generator(L, j, phi, form);
    Hp += gj.dagger() * gj;
  }
  Hp.support = all_sites(L);
  return Hp;
}

namespace {
// clock operators in the clock-label basis: sigma is the real cyclic
// permutation |c> -> |c-1 mod 3>, tau = diag(1, w, w^2); they satisfy
// sigma tau = w tau sigma with sigma real, which is the basis where
// time reversal acts as plain complex conjugation
LinOp clock_sigma_label_basis(int L, int j) {
  Cyclotomic m[3][3] = {};
  m[0][1] = Cyclotomic(1);
  m[1][2] = Cyclotomic(1);
  m[2][0] = Cyclotomic(1);
  return from_exact(ex_embed_local(L, j, m), L, {j});
}

// conj_ops substitutes sigma -> sigma^dag, tau -> tau^dag in the assembly
// while keeping all coefficients, i.e. applies charge conjugation formally
LinOp assemble_clock(const ModelParams& p, bool gauged, bool conj_ops) {
  const int L = p.L;
  const cplx w = omega_c(), wc = omega_c(-1);
  std::vector<LinOp> sig(L + 1), tau(L + 1);
  for (int j = 1; j <= L; ++j) {
    sig[j] = clock_sigma_label_basis(L, j);
    tau[j] = build_clock(L, j, Clock::tau);
    if (conj_ops) {
      sig[j] = sig[j].dagger();
      tau[j] = tau[j].dagger();
    }
    if (gauged) sig[j] = omega_c(-j) * sig[j];
  }
  auto v = [&](int j) {
    return sig[j].dagger() + p.b * (wc * (tau[j] * sig[j].dagger()) +
                                    w * (tau[j].dagger() * sig[j].dagger()));
  };
  LinOp H = (-p.f) * tau[1];
  for (int j = 2; j <= L; ++j) H += (-p.f) * tau[j];
  for (int j = 1; j <= L - 1; ++j) H += (-p.J * wc) * (v(j).dagger() * v(j + 1));
  H = plus_hc(H);
  H.support = all_sites(L);
  return H;
}
}  // namespace

LinOp build_H_clock(const ModelParams& p, bool gauged) {
  check_params(p);
  return assemble_clock(p, gauged, false);
}

LinOp clock_relabel_unitary(int L) {
  // per site: |c> -> w^{-c} |(c+2) mod 3>
  const std::uint64_t dim = pow3(L);
  std::vector<Eigen::Triplet<cplx>> trip;
  trip.reserve(dim);
  for (std::uint64_t idx = 0; idx < dim; ++idx) {
    std::uint64_t out = 0;
    int phase = 0;
    std::uint64_t v = idx;
    std::uint64_t place = 1;
    for (int k = 0; k < L; ++k) {
      const int c = static_cast<int>(v % 3);
      v /= 3;
      phase -= c;
      out += static_cast<std::uint64_t>((c + 2) % 3) * place;
      place *= 3;
    }
    trip.emplace_back(static_cast<int>(out), static_cast<int>(idx), omega_c(phase));
  }
  LinOp U;
  U.L = L;
  U.support = all_sites(L);
  U.mat.resize(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  U.mat.setFromTriplets(trip.begin(), trip.end());
  return U;
}

TimeReversalReport check_time_reversal(const ModelParams& p) {
  check_params(p);
  TimeReversalReport r;
  LinOp Hg = assemble_clock(p, true, false);
  double mi = 0;
  for (int c = 0; c < Hg.mat.outerSize(); ++c)
    for (SpMat::InnerIterator it(Hg.mat, c); it; ++it)
      mi = std::max(mi, std::abs(it.value().imag()));
  r.gauged_max_imag = mi;
  r.time_reversal_ok = mi < 1e-12;

  LinOp Hc = assemble_clock(p, true, true);
  r.charge_conj_residual = max_abs(SpMat(Hc.mat - Hg.mat));
  r.charge_conj_ok = r.charge_conj_residual < 1e-12;

  // T after C: conjugate the charge-conjugated build in the gauged basis
  r.tc_residual = max_abs(SpMat(SpMat(Hc.mat.conjugate()) - Hg.mat));
  r.tc_ok = r.tc_residual < 1e-12;
  return r;
}

LinOp site_reversal(int L) {
  const std::uint64_t dim = pow3(L);
  std::vector<Eigen::Triplet<cplx>> trip;
  trip.reserve(dim);
  for (std::uint64_t idx = 0; idx < dim; ++idx) {
    std::uint64_t out = 0;
    std::uint64_t v = idx;
    for (int k = 0; k < L; ++k) {
      out = out * 3 + v % 3;
      v /= 3;
    }
    trip.emplace_back(static_cast<int>(out), static_cast<int>(idx), cplx(1.0));
  }
  LinOp R;
  R.L = L;
  R.support = all_sites(L);
  R.mat.resize(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  R.mat.setFromTriplets(trip.begin(), trip.end());
  return R;
}

Eigen::Matrix3d local_site_term(double f) {
  Eigen::Matrix3d h = Eigen::Matrix3d::Zero();
  h(0, 0) = f;
  h(1, 1) = f;
  h(2, 2) = -2 * f;
  return h;
}

Eigen::Matrix3d bond_factor_X(double /*J*/, double b) {
  Eigen::Matrix3d M = Eigen::Matrix3d::Zero();
  M(0, 1) = M(1, 2) = M(2, 0) = 1.0;
  Eigen::Matrix3d D = Eigen::Vector3d(1 + 2 * b, 1 - b, 1 - b).asDiagonal();
  return M * D;
}

Eigen::Matrix<double, 9, 9> local_bond_term(double J, double b) {
  const Eigen::Matrix3d X = bond_factor_X(J, b);
  const Eigen::Matrix3d Xt = X.transpose();
  return -J * (kron<3, 3>(X, Xt) + kron<3, 3>(Xt, X));
}

Eigen::Matrix3cd local_site_term_from_ops(double f) {
  LinOp g1 = build_parafermion(1, 1), g2 = build_parafermion(1, 2);
  LinOp h = plus_hc((-f * omega_c(-1)) * (g1.dagger() * g2));
  return Eigen::Matrix3cd(MatC(h.mat));
}

Eigen::Matrix<cplx, 9, 9> local_bond_term_from_ops(double J, double b) {
  ModelParams p{2, 0.0, J, b, false};
  return Eigen::Matrix<cplx, 9, 9>(MatC(build_H(p).mat));
}

}  // namespace pf

#include "pf/spectra.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "pf/groundstate.hpp"

namespace pf {

namespace {

// H is real symmetric in the occupation basis; detect that and solve in real
// arithmetic, which is several times faster and keeps eigenvectors real
bool effectively_real(const SpMat& m) {
  double scale = 0, imax = 0;
  for (int k = 0; k < m.outerSize(); ++k)
    for (SpMat::InnerIterator it(m, k); it; ++it) {
      scale = std::max(scale, std::abs(it.value()));
      imax = std::max(imax, std::abs(it.value().imag()));
    }
  return imax <= 1e-13 * std::max(1.0, scale);
}

}  // namespace

EigenResult eigensolve_dense(const LinOp& op, EigenOptions opt) {
  const Eigen::Index n = op.mat.rows();
  if (n == 0) throw std::invalid_argument("eigensolve_dense: empty operator");
  const auto mode = opt.vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly;
  EigenResult r;
  if (effectively_real(op.mat)) {
    Eigen::MatrixXd a = Eigen::MatrixXd(op.mat.real());
    a = 0.5 * (a + a.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, mode);
    if (es.info() != Eigen::Success)
      throw std::runtime_error("eigensolve_dense: real solver failed");
    r.values = es.eigenvalues();
    if (opt.vectors) r.vectors = es.eigenvectors().cast<cplx>();
  } else {
    MatC a = MatC(op.mat);
    a = 0.5 * (a + a.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<MatC> es(a, mode);
    if (es.info() != Eigen::Success)
      throw std::runtime_error("eigensolve_dense: complex solver failed");
    r.values = es.eigenvalues();
    if (opt.vectors) r.vectors = es.eigenvectors();
  }
  if (opt.nev > 0 && opt.nev < r.values.size()) {
    r.values = r.values.head(opt.nev).eval();
    if (opt.vectors) r.vectors = r.vectors.leftCols(opt.nev).eval();
  }
  if (opt.vectors) {
    for (Eigen::Index k = 0; k < r.vectors.cols(); ++k)
      r.max_residual = std::max(
          r.max_residual,
          (op.mat * r.vectors.col(k) - r.values(k) * r.vectors.col(k)).norm());
  }
  return r;
}

EigenResult eigensolve_lanczos(const std::function<VecC(const VecC&)>& apply,
                               Eigen::Index dim, EigenOptions opt) {
  const int nev = opt.nev;
  if (nev < 1) throw std::invalid_argument("eigensolve_lanczos: nev must be >= 1");
  if (dim < nev) throw std::invalid_argument("eigensolve_lanczos: dim < nev");
  const int mmax = std::min<Eigen::Index>(opt.max_iter, dim);

  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> nd;
  VecC v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = cplx(nd(rng), nd(rng));
  v /= v.norm();

  std::vector<VecC> basis;
  basis.reserve(mmax);
  std::vector<double> alpha, beta;  // beta[k] couples v_k and v_{k+1}
  alpha.reserve(mmax);
  beta.reserve(mmax);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
  double scale = 1.0;
  int m = 0;
  bool invariant = false;
  for (; m < mmax; ++m) {
    basis.push_back(v);
    VecC w = apply(v);
    const double a = w.dot(v).real();  // dot conjugates the left argument
    alpha.push_back(a);
    w -= a * v;
    if (m > 0) w -= beta[m - 1] * basis[m - 1];
    // full reorthogonalization, two classical Gram-Schmidt passes
    for (int pass = 0; pass < 2; ++pass)
      for (const VecC& u : basis) w -= u.dot(w) * u;
    const double bnorm = w.norm();
    scale = std::max({scale, std::abs(a), bnorm});

    Eigen::Map<const Eigen::VectorXd> ad(alpha.data(), m + 1);
    Eigen::VectorXd bd(std::max(m, 1));
    for (int k = 0; k < m; ++k) bd(k) = beta[k];
    tri.computeFromTridiagonal(ad, bd.head(std::max(m, 0)), Eigen::ComputeEigenvectors);
    if (tri.info() != Eigen::Success)
      throw std::runtime_error("eigensolve_lanczos: tridiagonal solve failed");

    if (bnorm <= 1e-14 * scale) {
      invariant = true;  // exact invariant subspace; every Ritz pair is converged
      ++m;
      break;
    }
    if (m + 1 >= nev) {
      double worst = 0;
      for (int k = 0; k < nev; ++k)
        worst = std::max(worst, bnorm * std::abs(tri.eigenvectors()(m, k)));
      if (worst <= opt.tol * scale) {
        ++m;
        break;
      }
    }
    beta.push_back(bnorm);
    v = w / bnorm;
  }

  const int got = static_cast<int>(tri.eigenvalues().size());
  if (!invariant && got >= nev) {
    // re-check convergence in case the loop ended by hitting mmax
    const double blast = beta.size() >= static_cast<std::size_t>(got) ? beta[got - 1] : 0.0;
    double worst = 0;
    for (int k = 0; k < nev; ++k)
      worst = std::max(worst, blast * std::abs(tri.eigenvectors()(got - 1, k)));
    if (m >= mmax && worst > opt.tol * scale)
      throw std::runtime_error("eigensolve_lanczos: no convergence after " +
                               std::to_string(m) + " iterations");
  }
  if (got < nev)
    throw std::runtime_error("eigensolve_lanczos: Krylov space exhausted at dimension " +
                             std::to_string(got));

  EigenResult r;
  r.iterations = m;
  r.values = tri.eigenvalues().head(nev);
  MatC ritz(dim, nev);
  for (int k = 0; k < nev; ++k) {
    VecC y = VecC::Zero(dim);
    for (int i = 0; i < got; ++i) y += tri.eigenvectors()(i, k) * basis[i];
    y /= y.norm();
    ritz.col(k) = y;
    r.max_residual = std::max(r.max_residual, (apply(y) - r.values(k) * y).norm());
  }
  if (opt.vectors) r.vectors = std::move(ritz);
  return r;
}

EigenResult eigensolve(const LinOp& op, EigenOptions opt, Eigen::Index dense_threshold) {
  if (op.mat.rows() <= dense_threshold) return eigensolve_dense(op, opt);
  if (opt.nev < 1)
    throw std::invalid_argument("eigensolve: full spectrum needs the dense path");
  const SpMat& m = op.mat;
  return eigensolve_lanczos([&m](const VecC& x) { return VecC(m * x); }, m.rows(), opt);
}

double SpectrumTable::level(int m, int q) const {
  if (q < 0 || q > 2 || m < 0 || m >= sector_levels[q].size())
    throw std::out_of_range("SpectrumTable::level");
  return sector_levels[q](m);
}

double SpectrumTable::gap() const {
  double e0 = sector_levels[0](0), e1 = sector_levels[0](1);
  for (int q = 1; q < 3; ++q) {
    e0 = std::min(e0, sector_levels[q](0));
    e1 = std::min(e1, sector_levels[q](1));
  }
  return e1 - e0;
}

SpectrumTable sector_spectra(const ModelParams& p, int levels) {
  SpectrumTable t;
  t.L = p.L;
  t.with_boundary = p.with_boundary;
  t.levels = levels;
  const LinOp H = build_H(p);
  for (int q = 0; q < 3; ++q) {
    const SectorBasis basis = enumerate_sector(p.L, q);
    const LinOp Hq = restrict_to_sector(H, basis);
    EigenOptions opt;
    opt.nev = levels;
    t.sector_levels[q] = eigensolve(Hq, opt).values;
  }
  return t;
}

SpectrumTable sector_spectra(int L, double phi, int levels, bool with_boundary) {
  SpectrumTable t = sector_spectra(solvable_params(L, phi, 1.0, with_boundary), levels);
  t.phi = phi;
  return t;
}

double delta_m(const SpectrumTable& t, int m) {
  double s = 0;
  for (int q = 0; q < 3; ++q)
    for (int r = 0; r < 3; ++r) {
      if (q == r) continue;
      const double d = t.level(m, q) - t.level(m, r);
      s += d * d;
    }
  return std::sqrt(s);
}

LadderReport excitation_ladder_check(int L, double J) {
  const ModelParams p = solvable_params(L, 0.0, J, true);
  const LinOp H = build_H(p);
  std::vector<SpMat> raise(L - 1);
  for (int j = 1; j < L; ++j) raise[j - 1] = build_ell(L, j).dagger().mat;

  LadderReport rep;
  const double e_unit = 3.0 * J;  // each nonzero bond index costs 3J
  std::vector<int> m(L - 1, 0);
  for (std::uint64_t c = 0; c < pow3(L - 1); ++c) {
    int excited = 0;
    for (int v : m) excited += (v != 0);
    const double energy = -2.0 * J * (L - 1) + e_unit * excited;
    for (int i = 0; i < 3; ++i) {
      VecC psi = build_gs_vector(L, 0.0, i).amp;
      for (int j = L - 2; j >= 0; --j)
        for (int k = 0; k < m[j]; ++k) psi = raise[j] * psi;
      const double nrm = psi.norm();
      if (nrm < 1e-12) {
        rep.max_residual = std::max(rep.max_residual, 1.0);
        continue;
      }
      psi /= nrm;
      const VecC hpsi = H.mat * psi;
      const double e = hpsi.dot(psi).real();
      rep.max_residual = std::max(rep.max_residual, (hpsi - energy * psi).norm());
      rep.max_energy_dev = std::max(rep.max_energy_dev, std::abs(e - energy));
      ++rep.states;
    }
    for (int j = L - 2; j >= 0; --j) {  // odometer over bond indices
      if (m[j] < 2) {
        ++m[j];
        break;
      }
      m[j] = 0;
    }
  }
  return rep;
}

}  // namespace pf

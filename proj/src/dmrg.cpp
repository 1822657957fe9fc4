#include "pf/dmrg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

#include "pf/fock.hpp"

namespace pf {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using A3 = std::array<MatrixXd, 3>;

constexpr int kW = 4;  // MPO bond dimension

struct SiteMpo {
  std::array<std::array<Eigen::Matrix3d, kW>, kW> w{};
  std::array<std::array<bool, kW>, kW> nz{};
  void set(int a, int b, const Eigen::Matrix3d& m) {
    w[a][b] = m;
    nz[a][b] = true;
  }
};

// W = [[I, X, Xt, h], [., ., ., -J Xt], [., ., ., -J X], [., ., ., I]]
// reproduces sum_j h_j - J sum_j (X_j Xt_{j+1} + Xt_j X_{j+1}); the boundary
// term halves the site term on the first and last site
std::vector<SiteMpo> chain_mpo(const ModelParams& p) {
  const Eigen::Matrix3d X = bond_factor_X(p.J, p.b);
  const Eigen::Matrix3d Xt = X.transpose();
  const Eigen::Matrix3d I = Eigen::Matrix3d::Identity();
  std::vector<SiteMpo> out(p.L);
  for (int j = 1; j <= p.L; ++j) {
    Eigen::Matrix3d h = local_site_term(p.f);
    if (p.with_boundary && (j == 1 || j == p.L)) h *= 0.5;
    SiteMpo& m = out[j - 1];
    m.set(0, 0, I);
    m.set(0, 1, X);
    m.set(0, 2, Xt);
    m.set(0, 3, h);
    m.set(1, 3, -p.J * Xt);
    m.set(2, 3, -p.J * X);
    m.set(3, 3, I);
  }
  return out;
}

// environment legs; an empty matrix stands for a structurally zero leg
using Env = std::array<MatrixXd, kW>;

void acc(MatrixXd& dst, const MatrixXd& add) {
  if (dst.size() == 0)
    dst = add;
  else
    dst += add;
}

Env left_edge() {
  Env e;
  e[0] = MatrixXd::Ones(1, 1);
  return e;
}

Env right_edge() {
  Env e;
  e[kW - 1] = MatrixXd::Ones(1, 1);
  return e;
}

// le'[b](r, r') = sum W[a][b](nb, nk) (A[nb]^T le[a] A[nk])   (bra, ket)
Env left_env_step(const Env& le, const SiteMpo& w, const A3& A) {
  Env out;
  for (int a = 0; a < kW; ++a) {
    if (le[a].size() == 0) continue;
    A3 p;  // le[a] * A[nk]
    for (int nk = 0; nk < 3; ++nk) p[nk].noalias() = le[a] * A[nk];
    for (int b = 0; b < kW; ++b) {
      if (!w.nz[a][b]) continue;
      for (int nb = 0; nb < 3; ++nb)
        for (int nk = 0; nk < 3; ++nk) {
          const double c = w.w[a][b](nb, nk);
          if (c == 0.0) continue;
          acc(out[b], c * (A[nb].transpose() * p[nk]));
        }
    }
  }
  return out;
}

Env right_env_step(const Env& re, const SiteMpo& w, const A3& A) {
  Env out;
  for (int b = 0; b < kW; ++b) {
    if (re[b].size() == 0) continue;
    A3 p;  // A[nk] * re[b]^T ... keep (bra, ket): re[b](r, r'), A[nk](l', r')
    for (int nk = 0; nk < 3; ++nk) p[nk].noalias() = A[nk] * re[b].transpose();
    for (int a = 0; a < kW; ++a) {
      if (!w.nz[a][b]) continue;
      for (int nb = 0; nb < 3; ++nb)
        for (int nk = 0; nk < 3; ++nk) {
          const double c = w.w[a][b](nb, nk);
          if (c == 0.0) continue;
          acc(out[a], c * (A[nb] * p[nk].transpose()));
        }
    }
  }
  return out;
}

// overlap environments against a fixed reference state (rows: current state)
MatrixXd ov_left_step(const MatrixXd& e, const A3& Acur, const A3& Aref) {
  MatrixXd out = MatrixXd::Zero(Acur[0].cols(), Aref[0].cols());
  for (int n = 0; n < 3; ++n)
    out.noalias() += Acur[n].transpose() * e * Aref[n];
  return out;
}

MatrixXd ov_right_step(const MatrixXd& e, const A3& Acur, const A3& Aref) {
  MatrixXd out = MatrixXd::Zero(Acur[0].rows(), Aref[0].rows());
  for (int n = 0; n < 3; ++n)
    out.noalias() += Acur[n] * e * Aref[n].transpose();
  return out;
}

// two-site wavefunction, m[n1][n2](a, b)
struct Theta {
  std::array<std::array<MatrixXd, 3>, 3> m;
  int rows() const { return static_cast<int>(m[0][0].rows()); }
  int cols() const { return static_cast<int>(m[0][0].cols()); }

  void from_vec(const VectorXd& v, int chil, int chir) {
    int off = 0;
    for (int n1 = 0; n1 < 3; ++n1)
      for (int n2 = 0; n2 < 3; ++n2) {
        m[n1][n2].resize(chil, chir);
        for (int a = 0; a < chil; ++a)
          for (int b = 0; b < chir; ++b) m[n1][n2](a, b) = v(off++);
      }
  }
  void to_vec(VectorXd& v) const {
    const int chil = rows(), chir = cols();
    v.resize(9 * chil * chir);
    int off = 0;
    for (int n1 = 0; n1 < 3; ++n1)
      for (int n2 = 0; n2 < 3; ++n2)
        for (int a = 0; a < chil; ++a)
          for (int b = 0; b < chir; ++b) v(off++) = m[n1][n2](a, b);
  }
};

Theta make_theta(const A3& A1, const A3& A2) {
  Theta t;
  for (int n1 = 0; n1 < 3; ++n1)
    for (int n2 = 0; n2 < 3; ++n2) t.m[n1][n2].noalias() = A1[n1] * A2[n2];
  return t;
}

double theta_dot(const Theta& x, const Theta& y) {
  double s = 0;
  for (int n1 = 0; n1 < 3; ++n1)
    for (int n2 = 0; n2 < 3; ++n2)
      s += x.m[n1][n2].cwiseProduct(y.m[n1][n2]).sum();
  return s;
}

struct BondCtx {
  const Env* le = nullptr;
  const Env* re = nullptr;
  const SiteMpo* w1 = nullptr;
  const SiteMpo* w2 = nullptr;
  bool has_penalty = false;
  double wpen = 0;
  Theta pen;  // reference state mapped into the local two-site basis
};

// out = (le . W1 . W2 . re) theta  [+ wpen <pen|theta> pen]
void apply_heff(const BondCtx& c, const Theta& t, Theta& out) {
  const int chil = t.rows(), chir = t.cols();
  std::array<std::array<std::array<MatrixXd, 3>, 3>, kW> t1;  // [w0][n1][n2]
  for (int w0 = 0; w0 < kW; ++w0) {
    if ((*c.le)[w0].size() == 0) continue;
    for (int n1 = 0; n1 < 3; ++n1)
      for (int n2 = 0; n2 < 3; ++n2)
        t1[w0][n1][n2].noalias() = (*c.le)[w0] * t.m[n1][n2];
  }
  std::array<std::array<std::array<MatrixXd, 3>, 3>, kW> t2;  // [w1][n1'][n2]
  for (int w0 = 0; w0 < kW; ++w0) {
    if ((*c.le)[w0].size() == 0) continue;
    for (int w1 = 0; w1 < kW; ++w1) {
      if (!c.w1->nz[w0][w1]) continue;
      const Eigen::Matrix3d& op = c.w1->w[w0][w1];
      for (int nb = 0; nb < 3; ++nb)
        for (int nk = 0; nk < 3; ++nk) {
          const double x = op(nb, nk);
          if (x == 0.0) continue;
          for (int n2 = 0; n2 < 3; ++n2) {
            if (t2[w1][nb][n2].size() == 0)
              t2[w1][nb][n2] = x * t1[w0][nk][n2];
            else
              t2[w1][nb][n2] += x * t1[w0][nk][n2];
          }
        }
    }
  }
  std::array<std::array<std::array<MatrixXd, 3>, 3>, kW> t3;  // [w2][n1'][n2']
  for (int w1 = 0; w1 < kW; ++w1) {
    for (int w2 = 0; w2 < kW; ++w2) {
      if (!c.w2->nz[w1][w2]) continue;
      const Eigen::Matrix3d& op = c.w2->w[w1][w2];
      for (int nb = 0; nb < 3; ++nb)
        for (int nk = 0; nk < 3; ++nk) {
          const double x = op(nb, nk);
          if (x == 0.0) continue;
          for (int n1 = 0; n1 < 3; ++n1) {
            if (t2[w1][n1][nk].size() == 0) continue;
            if (t3[w2][n1][nb].size() == 0)
              t3[w2][n1][nb] = x * t2[w1][n1][nk];
            else
              t3[w2][n1][nb] += x * t2[w1][n1][nk];
          }
        }
    }
  }
  for (int n1 = 0; n1 < 3; ++n1)
    for (int n2 = 0; n2 < 3; ++n2) out.m[n1][n2] = MatrixXd::Zero(chil, chir);
  for (int w2 = 0; w2 < kW; ++w2) {
    if ((*c.re)[w2].size() == 0) continue;
    for (int n1 = 0; n1 < 3; ++n1)
      for (int n2 = 0; n2 < 3; ++n2) {
        if (t3[w2][n1][n2].size() == 0) continue;
        out.m[n1][n2].noalias() += t3[w2][n1][n2] * (*c.re)[w2].transpose();
      }
  }
  if (c.has_penalty) {
    const double ov = theta_dot(c.pen, t);
    const double s = c.wpen * ov;
    for (int n1 = 0; n1 < 3; ++n1)
      for (int n2 = 0; n2 < 3; ++n2) out.m[n1][n2] += s * c.pen.m[n1][n2];
  }
}

// lowest eigenpair of the symmetric operator `mul`, full-reorthogonalized
// Lanczos warm-started from v; returns the Ritz value, v holds the vector
double lanczos_lowest(int dim,
                      const std::function<void(const VectorXd&, VectorXd&)>& mul,
                      VectorXd& v, int maxit, double tol) {
  const int m = std::max(2, std::min(maxit, dim));
  std::vector<VectorXd> basis;
  basis.reserve(m);
  std::vector<double> alpha, beta;
  const double v0n = v.norm();
  if (!(v0n > 0)) throw std::runtime_error("lanczos: zero start vector");
  basis.push_back(v / v0n);
  VectorXd w(dim);
  double ritz = 0;
  VectorXd s;
  for (int j = 0; j < m; ++j) {
    mul(basis[j], w);
    const double a = basis[j].dot(w);
    alpha.push_back(a);
    w -= a * basis[j];
    if (j > 0) w -= beta[j - 1] * basis[j - 1];
    for (int pass = 0; pass < 2; ++pass)
      for (int i = 0; i <= j; ++i) w -= basis[i].dot(w) * basis[i];
    const double bn = w.norm();
    const int k = j + 1;
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(k, k);
    for (int i = 0; i < k; ++i) T(i, i) = alpha[i];
    for (int i = 0; i + 1 < k; ++i) T(i, i + 1) = T(i + 1, i) = beta[i];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    ritz = es.eigenvalues()(0);
    s = es.eigenvectors().col(0);
    double scale = std::abs(es.eigenvalues()(k - 1)) + std::abs(ritz);
    scale = std::max(scale, 1.0);
    const bool small_resid = bn * std::abs(s(k - 1)) <= tol * scale;
    const bool invariant = bn <= 1e-14 * scale;
    if (small_resid || invariant || j == m - 1 || k == dim) break;
    beta.push_back(bn);
    basis.push_back(w / bn);
  }
  v = VectorXd::Zero(dim);
  for (int i = 0; i < static_cast<int>(s.size()); ++i) v += s(i) * basis[i];
  v.normalize();
  return ritz;
}

struct SplitOut {
  double trunc = 0;
  int chi = 0;
};

// per-charge SVD of theta across the middle bond; row (a, n1) carries charge
// cl[a] + n1, column (n2, b) carries cr[b] - n2 (mod 3), and theta is block
// diagonal in that label. Truncation: drop the smallest singular values while
// the discarded relative weight stays below cutoff, then cap at chi_max.
SplitOut split_theta(const Theta& t, const std::vector<int>& cl,
                     const std::vector<int>& cr, double cutoff, int chi_max,
                     bool absorb_right, A3& out_left, A3& out_right,
                     std::vector<int>& mid_q) {
  const int chil = static_cast<int>(cl.size()),
            chir = static_cast<int>(cr.size());
  std::array<std::vector<std::pair<int, int>>, 3> rows, cols;  // (a, n1), (n2, b)
  for (int a = 0; a < chil; ++a)
    for (int n1 = 0; n1 < 3; ++n1)
      rows[(cl[a] + n1) % 3].push_back({a, n1});
  for (int b = 0; b < chir; ++b)
    for (int n2 = 0; n2 < 3; ++n2)
      cols[((cr[b] - n2) % 3 + 3) % 3].push_back({n2, b});

  struct Block {
    Eigen::BDCSVD<MatrixXd> svd;
    int charge = 0;
  };
  std::vector<Block> blocks;
  struct Val {
    double s;
    int blk, col;
  };
  std::vector<Val> vals;
  double total = 0;
  for (int c = 0; c < 3; ++c) {
    if (rows[c].empty() || cols[c].empty()) continue;
    MatrixXd blk(rows[c].size(), cols[c].size());
    for (size_t r = 0; r < rows[c].size(); ++r)
      for (size_t cc = 0; cc < cols[c].size(); ++cc)
        blk(r, cc) =
            t.m[rows[c][r].second][cols[c][cc].first](rows[c][r].first,
                                                      cols[c][cc].second);
    blocks.push_back(Block{
        Eigen::BDCSVD<MatrixXd>(blk,
                                Eigen::ComputeThinU | Eigen::ComputeThinV),
        c});
    const int bi = static_cast<int>(blocks.size()) - 1;
    const VectorXd& sv = blocks[bi].svd.singularValues();
    for (int i = 0; i < sv.size(); ++i) {
      vals.push_back({sv(i), bi, i});
      total += sv(i) * sv(i);
    }
  }
  if (vals.empty() || !(total > 0))
    throw std::runtime_error("split_theta: zero wavefunction");
  std::sort(vals.begin(), vals.end(),
            [](const Val& x, const Val& y) { return x.s > y.s; });
  int keep = static_cast<int>(vals.size());
  double tail = 0;
  while (keep > 1) {
    const double w = vals[keep - 1].s * vals[keep - 1].s;
    if (tail + w > cutoff * total) break;
    tail += w;
    --keep;
  }
  keep = std::min(keep, chi_max);
  SplitOut res;
  res.chi = keep;
  double kept = 0;
  for (int i = 0; i < keep; ++i) kept += vals[i].s * vals[i].s;
  res.trunc = 1.0 - kept / total;

  mid_q.resize(keep);
  for (int n = 0; n < 3; ++n) {
    out_left[n] = MatrixXd::Zero(chil, keep);
    out_right[n] = MatrixXd::Zero(keep, chir);
  }
  const double renorm = 1.0 / std::sqrt(kept);
  for (int i = 0; i < keep; ++i) {
    const Block& B = blocks[vals[i].blk];
    mid_q[i] = B.charge;
    const int col = vals[i].col;
    const double s = vals[i].s * renorm;
    const double sl = absorb_right ? 1.0 : s;
    const double sr = absorb_right ? s : 1.0;
    const auto& rlist = rows[B.charge];
    const auto& clist = cols[B.charge];
    for (size_t r = 0; r < rlist.size(); ++r)
      out_left[rlist[r].second](rlist[r].first, i) =
          sl * B.svd.matrixU()(r, col);
    for (size_t cc = 0; cc < clist.size(); ++cc)
      out_right[clist[cc].first](i, clist[cc].second) =
          sr * B.svd.matrixV()(cc, col);
  }
  return res;
}

struct Runner {
  ModelParams p;
  DmrgOptions opt;
  std::vector<SiteMpo> W;
  QnMps psi;
  std::vector<Env> le, re;
  const QnMps* ref = nullptr;  // penalty state
  double wpen = 0;
  std::vector<MatrixXd> lov, rov;
  double cycle_trunc = 0, run_trunc = 0;
  int cycle_chi = 0;
  int cur_chi = 0;
  double cur_tol = 0;
  long applies = 0;

  Runner(const ModelParams& pp, const DmrgOptions& o, QnMps start,
         const QnMps* pen, double wp)
      : p(pp), opt(o), W(chain_mpo(pp)), psi(std::move(start)), ref(pen),
        wpen(wp), cur_chi(o.chi_max), cur_tol(o.lanczos_tol) {
    le.resize(p.L + 1);
    re.resize(p.L + 1);
    le[0] = left_edge();
    re[p.L] = right_edge();
    if (ref) {
      lov.resize(p.L + 1);
      rov.resize(p.L + 1);
      lov[0] = MatrixXd::Ones(1, 1);
      rov[p.L] = MatrixXd::Ones(1, 1);
    }
    for (int k = p.L - 1; k >= 1; --k) bond_update(k, false, false);
  }

  // theta on sites (k, k+1); when solve, minimize the effective energy first;
  // split and refresh the environment on the trailing side. Returns <H>.
  double bond_update(int k, bool solve, bool l2r) {
    BondCtx ctx;
    ctx.le = &le[k - 1];
    ctx.re = &re[k + 1];
    ctx.w1 = &W[k - 1];
    ctx.w2 = &W[k];
    Theta t = make_theta(psi.A[k - 1], psi.A[k]);
    if (ref && solve) {
      ctx.has_penalty = true;
      ctx.wpen = wpen;
      for (int n1 = 0; n1 < 3; ++n1)
        for (int n2 = 0; n2 < 3; ++n2)
          ctx.pen.m[n1][n2] = lov[k - 1] * ref->A[k - 1][n1] *
                              ref->A[k][n2] * rov[k + 1].transpose();
    }
    double energy = 0;
    if (solve) {
      const int chil = t.rows(), chir = t.cols();
      VectorXd v;
      t.to_vec(v);
      Theta tin, tout;
      auto mul = [&](const VectorXd& x, VectorXd& y) {
        tin.from_vec(x, chil, chir);
        apply_heff(ctx, tin, tout);
        tout.to_vec(y);
        ++applies;
      };
      const double ritz =
          lanczos_lowest(9 * chil * chir, mul, v, opt.lanczos_max, cur_tol);
      t.from_vec(v, chil, chir);
      energy = ritz;
      if (ctx.has_penalty) {
        const double ov = theta_dot(ctx.pen, t);
        energy -= wpen * ov * ov;
      }
    } else {
      const double nrm = std::sqrt(theta_dot(t, t));
      if (!(nrm > 0)) throw std::runtime_error("dmrg: zero state");
      for (int n1 = 0; n1 < 3; ++n1)
        for (int n2 = 0; n2 < 3; ++n2) t.m[n1][n2] /= nrm;
      energy = 0;
    }
    A3 al, ar;
    std::vector<int> mid;
    const SplitOut sp =
        split_theta(t, psi.bond_q[k - 1], psi.bond_q[k + 1], opt.cutoff,
                    cur_chi, /*absorb_right=*/l2r, al, ar, mid);
    psi.A[k - 1] = al;
    psi.A[k] = ar;
    psi.bond_q[k] = mid;
    cycle_trunc = std::max(cycle_trunc, sp.trunc);
    run_trunc = std::max(run_trunc, sp.trunc);
    cycle_chi = std::max(cycle_chi, sp.chi);
    if (l2r) {
      le[k] = left_env_step(le[k - 1], W[k - 1], psi.A[k - 1]);
      if (ref)
        lov[k] = ov_left_step(lov[k - 1], psi.A[k - 1], ref->A[k - 1]);
    } else {
      re[k] = right_env_step(re[k + 1], W[k], psi.A[k]);
      if (ref) rov[k] = ov_right_step(rov[k + 1], psi.A[k], ref->A[k]);
    }
    return energy;
  }

  // gradual bond-dimension opening for random starts keeps the first cycles
  // cheap; the inner solver tolerance tracks the outer energy progress
  void set_schedule(int cycle, bool ramped, double last_dE) {
    cur_chi = opt.chi_max;
    cur_tol = std::max(opt.lanczos_tol,
                       std::min(1e-8, std::abs(last_dE) * 1e-3));
    if (cycle == 0) cur_tol = std::max(opt.lanczos_tol, 1e-8);
    if (ramped && cycle < opt.ramp_cycles) {
      int chi = 8 << cycle;
      cur_chi = std::min(opt.chi_max, chi);
      cur_tol = std::max(opt.lanczos_tol, 1e-8);
    }
  }

  double cycle() {
    cycle_trunc = 0;
    cycle_chi = 0;
    double e = 0;
    for (int k = 1; k <= p.L - 1; ++k) e = bond_update(k, true, true);
    for (int k = p.L - 1; k >= 1; --k) e = bond_update(k, true, false);
    return e;
  }
};

VarMps run_dmrg(const ModelParams& p, QnMps start, const DmrgOptions& opt,
                const QnMps* pen, double wpen, bool ramped) {
  if (p.L < 3) throw std::invalid_argument("dmrg: L < 3");
  Runner r(p, opt, std::move(start), pen, wpen);
  VarMps out;
  double eprev = 0, last_dE = 1.0;
  for (int s = 0; s < opt.max_sweeps; ++s) {
    r.set_schedule(s, ramped, last_dE);
    const long applies0 = r.applies;
    const double e = r.cycle();
    SweepRecord rec;
    rec.energy = e;
    rec.dE = s == 0 ? 0 : e - eprev;
    rec.max_trunc = r.cycle_trunc;
    rec.max_chi = r.cycle_chi;
    out.log.push_back(rec);
    if (s > 0) last_dE = rec.dE;
    if (opt.trace)
      std::fprintf(stderr,
                   "dmrg cycle %2d  E=%.12f  dE=%+.3e  chi=%d  trunc=%.1e  applies=%ld\n",
                   s, e, rec.dE, rec.max_chi, rec.max_trunc,
                   r.applies - applies0);
    const bool comparable = ramped ? s > opt.ramp_cycles : s > 0;
    if (comparable && std::abs(e - eprev) < opt.tol) {
      out.converged = true;
      eprev = e;
      break;
    }
    eprev = e;
  }
  out.energy = eprev;
  out.max_truncation = r.run_trunc;
  out.mps = std::move(r.psi);
  return out;
}

double phi_from_params(const ModelParams& p, bool& ok) {
  const double ratio = (1.0 - p.b) / (1.0 + 2.0 * p.b);
  ok = ratio > 0;
  return ok ? -std::log(ratio) : 0.0;
}

}  // namespace

int QnMps::max_chi() const {
  int m = 0;
  for (const auto& v : bond_q) m = std::max(m, static_cast<int>(v.size()));
  return m;
}

QnMps exact_line_mps(int L, double phi, int q) {
  if (L < 2) throw std::invalid_argument("exact_line_mps: L < 2");
  const double y = std::exp(-phi / 3.0);
  QnMps m;
  m.L = L;
  m.q = ((q % 3) + 3) % 3;
  m.bond_q.assign(L + 1, {0, 1, 2});
  m.bond_q[0] = {0};
  m.bond_q[L] = {m.q};
  m.A.resize(L);
  const double yn[3] = {1.0, y, y * y};
  for (int n = 0; n < 3; ++n) {
    m.A[0][n] = MatrixXd::Zero(1, 3);
    m.A[0][n](0, n) = yn[n];
  }
  for (int k = 1; k < L - 1; ++k)
    for (int n = 0; n < 3; ++n) {
      m.A[k][n] = MatrixXd::Zero(3, 3);
      for (int c = 0; c < 3; ++c) m.A[k][n](c, (c + n) % 3) = yn[n];
    }
  for (int n = 0; n < 3; ++n) {
    m.A[L - 1][n] = MatrixXd::Zero(3, 1);
    for (int c = 0; c < 3; ++c)
      if ((c + n) % 3 == m.q) m.A[L - 1][n](c, 0) = yn[n];
  }
  return m;
}

QnMps random_mps(int L, int q, int chi_per_charge, std::uint64_t seed) {
  if (L < 2) throw std::invalid_argument("random_mps: L < 2");
  QnMps m;
  m.L = L;
  m.q = ((q % 3) + 3) % 3;
  m.bond_q.resize(L + 1);
  m.bond_q[0] = {0};
  m.bond_q[L] = {m.q};
  for (int k = 1; k < L; ++k) {
    m.bond_q[k].clear();
    for (int c = 0; c < 3; ++c)
      for (int i = 0; i < chi_per_charge; ++i) m.bond_q[k].push_back(c);
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  m.A.resize(L);
  for (int k = 0; k < L; ++k) {
    const auto& cl = m.bond_q[k];
    const auto& cr = m.bond_q[k + 1];
    for (int n = 0; n < 3; ++n) {
      m.A[k][n] = MatrixXd::Zero(cl.size(), cr.size());
      for (size_t a = 0; a < cl.size(); ++a)
        for (size_t b = 0; b < cr.size(); ++b)
          if (cr[b] == (cl[a] + n) % 3) m.A[k][n](a, b) = gauss(rng);
    }
  }
  return m;
}

VecC mps_to_dense(const QnMps& m) {
  if (m.L > kMaxDenseSites)
    throw std::invalid_argument("mps_to_dense: chain too long");
  const std::uint64_t dim = pow3(m.L);
  VecC out(dim);
  for (std::uint64_t idx = 0; idx < dim; ++idx) {
    Eigen::RowVectorXd v = Eigen::RowVectorXd::Ones(1);
    std::uint64_t rest = idx;
    for (int j = 1; j <= m.L; ++j) {
      const int n = static_cast<int>(rest / pow3(m.L - j));
      rest %= pow3(m.L - j);
      v = v * m.A[j - 1][n];
    }
    out(idx) = v(0);
  }
  return out;
}

double mps_overlap(const QnMps& a, const QnMps& b) {
  if (a.L != b.L) throw std::invalid_argument("mps_overlap: size mismatch");
  MatrixXd e = MatrixXd::Ones(1, 1);
  for (int k = 0; k < a.L; ++k) e = ov_left_step(e, a.A[k], b.A[k]);
  return e(0, 0);
}

VarMps dmrg_ground(const ModelParams& p, int q, const DmrgOptions& opt) {
  bool on_line = false;
  const double phi = phi_from_params(p, on_line);
  QnMps start = on_line ? exact_line_mps(p.L, phi, q)
                        : random_mps(p.L, q, 2, opt.seed);
  return run_dmrg(p, std::move(start), opt, nullptr, 0.0, !on_line);
}

VarMps dmrg_ground(int L, double phi, int q, int chi_max, int sweeps,
                   bool with_boundary) {
  DmrgOptions opt;
  opt.chi_max = chi_max;
  opt.max_sweeps = sweeps;
  return dmrg_ground(solvable_params(L, phi, 1.0, with_boundary), q, opt);
}

VarMps dmrg_excited(const ModelParams& p, const VarMps& gs,
                    const DmrgOptions& opt) {
  QnMps start = random_mps(p.L, gs.mps.q, 2,
                           opt.seed + 7919 * (gs.mps.q + 1) + p.L);
  return run_dmrg(p, std::move(start), opt, &gs.mps, opt.penalty_w * p.J,
                  true);
}

VarMps dmrg_excited(const ModelParams& p, const VarMps& gs, QnMps start,
                    const DmrgOptions& opt) {
  return run_dmrg(p, std::move(start), opt, &gs.mps, opt.penalty_w * p.J,
                  false);
}

GapResult dmrg_gap(int L, double phi, int chi_max, DmrgOptions opt) {
  opt.chi_max = chi_max;
  const ModelParams p = solvable_params(L, phi, 1.0, true);
  GapResult g;
  for (int q = 0; q < 3; ++q) {
    const VarMps gs = dmrg_ground(p, q, opt);
    const VarMps ex = dmrg_excited(p, gs, opt);
    g.e0[q] = gs.energy;
    g.e1[q] = ex.energy;
    g.max_truncation =
        std::max({g.max_truncation, gs.max_truncation, ex.max_truncation});
  }
  g.gap = *std::min_element(g.e1.begin(), g.e1.end()) -
          *std::min_element(g.e0.begin(), g.e0.end());
  return g;
}

}  // namespace pf

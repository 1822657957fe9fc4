#include "pf/analytics.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace pf {

namespace {

std::array<cplx, 3> base_of(double phi) {
  const double x = std::exp(-2.0 * phi / 3.0);
  std::array<cplx, 3> b;
  for (int k = 0; k < 3; ++k) b[k] = 1.0 + omega_c(k) * x + omega_c(2 * k) * x * x;
  return b;
}

// (1/3) sum_k w^{-qk} base(k)^n: the charge-q weight of an n-site block.
// Real and positive for n >= 1; for n = 0 it is the charge-0 indicator.
LogComplex charge_sum(int n, double phi, int q) {
  const auto b = base_of(phi);
  std::vector<LogComplex> terms;
  terms.reserve(3);
  for (int k = 0; k < 3; ++k)
    terms.push_back(lc_scale(lc_pow(LogComplex::from(b[k]), n), omega_c(-q * k) / 3.0));
  return lc_sum(terms);
}

void check_sector_arg(int i) {
  if (i < 0 || i > 2) throw std::invalid_argument("sector must be 0, 1 or 2");
}

void check_ell(int L, int ell, int lo, int hi) {
  if (ell < lo || ell > hi) throw std::out_of_range("site index out of range");
  if (L < 2) throw std::invalid_argument("need L >= 2");
}

}  // namespace

double xi_inverse(double phi) {
  const auto b = base_of(phi);
  const double m0 = std::abs(b[0]), m1 = std::abs(b[1]);
  if (m1 == 0.0) return std::numeric_limits<double>::infinity();
  return std::log(m0 / m1);
}

double xi(double phi) {
  const double inv = xi_inverse(phi);
  if (!std::isfinite(inv)) return 0.0;
  return 1.0 / inv;
}

double density_thermo(double phi) {
  const double x = std::exp(-2.0 * phi / 3.0);
  return (x + 2.0 * x * x) / (1.0 + x + x * x);
}

std::array<double, 3> occupation_dist(int L, double phi, int i) {
  check_sector_arg(i);
  if (L < 2) throw std::invalid_argument("occupation_dist: need L >= 2");
  const double x = std::exp(-2.0 * phi / 3.0);
  const LogComplex n_i = charge_sum(L, phi, i);
  std::array<double, 3> p{};
  for (int m = 0; m < 3; ++m) {
    const LogComplex rest = charge_sum(L - 1, phi, ((i - m) % 3 + 3) % 3);
    p[m] = std::pow(x, m) * lc_div(rest, n_i).value().real();
  }
  return p;
}

double density(int L, double phi, int i) {
  const auto p = occupation_dist(L, phi, i);
  return p[1] + 2.0 * p[2];
}

double theta_phase(int L, double phi) {
  const auto b = base_of(phi);
  return std::remainder(L * std::arg(b[1] / b[0]), 2.0 * pi);
}

LogComplex sector_amplitude_ratio(int L, double phi) {
  const auto b = base_of(phi);
  return lc_div(lc_pow(LogComplex::from(b[1]), L), lc_pow(LogComplex::from(b[0]), L));
}

cplx corr_G(int L, double phi, int i, int ell) {
  check_sector_arg(i);
  check_ell(L, ell, 1, L);
  const double x = std::exp(-2.0 * phi / 3.0);
  const auto b = base_of(phi);
  const LogComplex n_i = charge_sum(L, phi, i);
  if (ell == 1) {
    // on-site value <proj(n_1 = 2)> = x^2 * (charge sum of the remaining L-1 sites)
    const LogComplex rest = charge_sum(L - 1, phi, ((i - 2) % 3 + 3) % 3);
    return x * x * lc_div(rest, n_i).value();
  }
  std::vector<LogComplex> terms;
  terms.reserve(3);
  for (int k = 0; k < 3; ++k) {
    LogComplex t = lc_mul(lc_pow(LogComplex::from(b[(k + 2) % 3]), ell - 2),
                          lc_pow(LogComplex::from(b[k]), L - ell));
    terms.push_back(lc_scale(t, omega_c(k * (2 - i)) / 3.0));
  }
  return x * x * lc_div(lc_sum(terms), n_i).value();
}

cplx F_func(int L, double phi, int i, int ell) {
  check_sector_arg(i);
  check_ell(L, ell, 1, L);
  const double x = std::exp(-2.0 * phi / 3.0);
  const auto b = base_of(phi);
  const int ip = ((i - 1) % 3 + 3) % 3;
  const LogComplex n_i = charge_sum(L, phi, i);
  const LogComplex n_ip = charge_sum(L, phi, ip);
  std::vector<LogComplex> terms;
  terms.reserve(3);
  for (int k = 0; k < 3; ++k) {
    LogComplex t = lc_mul(lc_pow(LogComplex::from(b[(k + 2) % 3]), ell - 1),
                          lc_pow(LogComplex::from(b[k]), L - ell));
    const cplx site = 1.0 + x * omega_c(k);  // raised-site factor over n = 0, 1
    terms.push_back(lc_scale(t, omega_c(-k * (i - 1)) * site / 3.0));
  }
  LogComplex num = lc_scale(lc_sum(terms), std::exp(-phi / 3.0));
  // sqrt(N_i N_{i'}): both sums are real positive, so halve the log magnitude
  LogComplex den = LogComplex::from_log(0.5 * (n_i.lm + n_ip.lm), 1.0);
  return lc_div(num, den).value();
}

cplx corr_G_numeric(const GroundState& g, int j, int l) {
  if (j < 1 || l < j || l > g.L) throw std::out_of_range("corr_G_numeric: bad sites");
  const LinOp cj = build_fock_annihilator(g.L, j);
  const LinOp cl = (j == l) ? cj : build_fock_annihilator(g.L, l);
  const VecC left = cj.mat * (cj.mat * g.amp);
  const VecC right = cl.mat * (cl.mat * g.amp);
  return left.dot(right);  // <g| Cj^dag^2 Cl^2 |g>
}

cplx F_func_numeric(const GroundState& gi, const GroundState& gprev, int ell) {
  if (gi.L != gprev.L) throw std::invalid_argument("F_func_numeric: mismatched L");
  if (ell < 1 || ell > gi.L) throw std::out_of_range("F_func_numeric: bad site");
  const LinOp c = build_fock_annihilator(gi.L, ell);
  return (c.mat * gi.amp).dot(gprev.amp);  // <g_i| C^dag |g_{i-1}>
}

double density_numeric(const GroundState& g, int j) {
  const LinOp n = build_number(g.L, j);
  return g.amp.dot(n.mat * g.amp).real();
}

cplx corr_G_mps(int L, double phi, int i, int j, int l) {
  check_sector_arg(i);
  if (j < 1 || l <= j || l > L) throw std::out_of_range("corr_G_mps: need 1 <= j < l <= L");
  const double x = std::exp(-2.0 * phi / 3.0);
  const auto b = base_of(phi);

  // all site matrices are diagonal on the 3-dimensional bond, so each of the
  // nine (c', c) transfer channels is a scalar product accumulated in log form
  auto contract = [&](bool insert) {
    std::vector<LogComplex> channels;
    channels.reserve(9);
    for (int cp = 0; cp < 3; ++cp)
      for (int c = 0; c < 3; ++c) {
        LogComplex acc = LogComplex::from(omega_c(i * (cp - c)));  // conj(vL(cp)) vL(c)
        const int d = ((c - cp) % 3 + 3) % 3;
        for (int site = 1; site <= L; ++site) {
          cplx e;
          if (!insert) {
            e = b[d];
          } else if (site == j) {
            e = x * omega_c(cp);  // |2><0| insertion
          } else if (site == l) {
            e = x * omega_c(2 * c);  // |0><2| insertion
          } else if (site > j && site < l) {
            e = b[(d + 2) % 3];  // string phase w^{2n}
          } else {
            e = b[d];
          }
          acc = lc_scale(acc, e);
          if (acc.is_zero()) break;
        }
        channels.push_back(acc);
      }
    return lc_sum(channels);
  };

  return lc_div(contract(true), contract(false)).value();
}

EntSpectrum ent_spectrum(int L, double phi, int i, int ell) {
  check_sector_arg(i);
  check_ell(L, ell, 1, L - 1);
  const LogComplex n_i = charge_sum(L, phi, i);
  EntSpectrum s;
  for (int p = 0; p < 3; ++p) {
    const LogComplex left = charge_sum(ell, phi, p);
    const LogComplex right = charge_sum(L - ell, phi, ((i - p) % 3 + 3) % 3);
    s.lambda[p] = lc_div(lc_mul(left, right), n_i).value().real();
    if (s.lambda[p] > 0) s.entropy -= s.lambda[p] * std::log(s.lambda[p]);
  }
  return s;
}

EntSpectrumNumeric ent_spectrum_numeric(const GroundState& g, int ell) {
  check_ell(g.L, ell, 1, g.L - 1);
  const Eigen::Index rows = static_cast<Eigen::Index>(pow3(ell));
  const Eigen::Index cols = static_cast<Eigen::Index>(pow3(g.L - ell));
  MatC m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c)
      m(r, c) = g.amp(r * cols + c);

  EntSpectrumNumeric s;
  for (Eigen::Index r = 0; r < rows; ++r) {
    const int p = charge_of_index(static_cast<std::uint64_t>(r), ell);
    s.lambda[p] += m.row(r).squaredNorm();
  }
  Eigen::BDCSVD<MatC> svd(m);
  for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
    const double w = svd.singularValues()(k) * svd.singularValues()(k);
    s.schmidt.push_back(w);
    if (w > 0) s.entropy -= w * std::log(w);
    if (k >= 3) s.beyond_rank3 = std::max(s.beyond_rank3, w);
  }
  return s;
}

DecayFit fit_correlation_decay(int L, double phi, int i) {
  const double xlen = xi(phi);
  DecayFit d;
  d.lo = std::max(5, static_cast<int>(std::ceil(3.0 * xlen)));
  d.hi = L / 2 - 2;
  if (d.hi - d.lo < 4)
    throw std::invalid_argument("fit_correlation_decay: window too short");
  std::vector<double> xs, ys;
  for (int ell = d.lo; ell <= d.hi; ++ell) {
    xs.push_back(ell);
    ys.push_back(std::log(std::abs(corr_G_mps(L, phi, i, 1, ell))));
  }
  d.fit = linear_fit(xs, ys);
  d.xi_fitted = -1.0 / d.fit.slope;
  return d;
}

}  // namespace pf

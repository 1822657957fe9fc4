#include "pf/groundstate.hpp"

#include <cmath>
#include <stdexcept>

namespace pf {

int NormTable::check_sector(int i) {
  if (i < 0 || i > 2) throw std::invalid_argument("sector index must be 0, 1 or 2");
  return i;
}

NormTable norm_constants(int L, double phi) {
  if (L < 1) throw std::invalid_argument("norm_constants: L must be >= 1");
  NormTable t;
  t.L = L;
  t.phi = phi;
  const double x = std::exp(-2 * phi / 3);
  for (int k = 0; k < 3; ++k) {
    t.base[k] = 1.0 + omega_c(k) * x + omega_c(2 * k) * x * x;
    t.A_L[k] = lc_pow(LogComplex::from(t.base[k]), L);
  }
  for (int i = 0; i < 3; ++i) {
    LogComplex n = lc_sum({lc_scale(t.A_L[0], omega_c(0) / 3.0),
                           lc_scale(t.A_L[1], omega_c(-i) / 3.0),
                           lc_scale(t.A_L[2], omega_c(-2 * i) / 3.0)});
    if (n.is_zero() || n.ph.real() <= 0)
      throw std::runtime_error("norm_constants: sector norm not positive");
    t.log_norm[i] = n.lm + std::log(n.ph.real());
  }
  return t;
}

GroundState build_gs_vector(int L, double phi, int i) {
  NormTable::check_sector(i);
  if (L > kMaxDenseSites) throw std::length_error("build_gs_vector: 3^L too large");
  NormTable t = norm_constants(L, phi);
  GroundState g;
  g.L = L;
  g.phi = phi;
  g.sector = i;
  const std::uint64_t dim = pow3(L);
  g.amp = VecC::Zero(static_cast<Eigen::Index>(dim));
  for (std::uint64_t idx = 0; idx < dim; ++idx) {
    FockState s{L, idx};
    if (s.charge() != i) continue;
    g.amp[static_cast<Eigen::Index>(idx)] =
        std::exp(-phi * s.total_N() / 3.0 - t.log_norm[i] / 2.0);
  }
  return g;
}

DiagMps build_gs_mps(int L, double phi, int i) {
  NormTable::check_sector(i);
  NormTable t = norm_constants(L, phi);
  DiagMps m;
  m.L = L;
  m.phi = phi;
  m.sector = i;
  const double y = std::exp(-phi / 3.0);
  for (int n = 0; n < 3; ++n) {
    m.site[n].setZero();
    for (int c = 0; c < 3; ++c) m.site[n](c, c) = std::pow(y, n) * omega_c(c * n);
  }
  for (int c = 0; c < 3; ++c) {
    m.vL(c) = omega_c(-i * c);
    m.vR(c) = 1.0;
  }
  m.log_prefactor = -std::log(3.0) - t.log_norm[i] / 2.0;
  return m;
}

LogComplex DiagMps::amplitude(const FockState& s) const {
  std::array<LogComplex, 3> chan;
  for (int c = 0; c < 3; ++c) chan[c] = LogComplex::from(1.0);
  for (int j = 1; j <= s.L; ++j) {
    const int n = s.occ(j);
    for (int c = 0; c < 3; ++c)
      chan[c] = lc_mul(chan[c], LogComplex::from(site[n](c, c)));
  }
  LogComplex total = lc_sum({lc_scale(chan[0], vL(0) * vR(0)), lc_scale(chan[1], vL(1) * vR(1)),
                             lc_scale(chan[2], vL(2) * vR(2))});
  return lc_mul(total, LogComplex::from_log(log_prefactor, 1.0));
}

FactorizedForm factorized_form(int L, double phi, int i) {
  NormTable::check_sector(i);
  NormTable t = norm_constants(L, phi);
  FactorizedForm f;
  f.L = L;
  f.phi = phi;
  f.sector = i;
  const double a0 = t.base[0].real();  // 1 + x + x^2, real positive
  const double y = std::exp(-phi / 3.0);
  for (int tt = 0; tt < 3; ++tt) {
    for (int n = 0; n < 3; ++n)
      f.site_state[tt](n) = omega_c(tt * n) * std::pow(y, n) / std::sqrt(a0);
    f.weight[tt] = lc_scale(
        LogComplex::from_log(L * std::log(a0) / 2.0 - std::log(3.0) - t.log_norm[i] / 2.0, 1.0),
        omega_c(-i * tt));
  }
  return f;
}

LogComplex FactorizedForm::amplitude(const FockState& s) const {
  std::array<LogComplex, 3> terms;
  for (int tt = 0; tt < 3; ++tt) {
    LogComplex prod = weight[tt];
    for (int j = 1; j <= s.L; ++j)
      prod = lc_mul(prod, LogComplex::from(site_state[tt](s.occ(j))));
    terms[tt] = prod;
  }
  return lc_sum({terms[0], terms[1], terms[2]});
}

namespace {
template <class Rep>
double fidelity_against_dense(const GroundState& a, const Rep& b) {
  if (a.L != b.L) throw std::invalid_argument("fidelity: length mismatch");
  if (a.L > kMaxDenseSites) throw std::length_error("fidelity: 3^L too large");
  const std::uint64_t dim = pow3(a.L);
  cplx overlap = 0;
  double nb = 0;
  for (std::uint64_t idx = 0; idx < dim; ++idx) {
    FockState s{a.L, idx};
    const cplx amp = b.amplitude(s).value();
    overlap += std::conj(a.amp[static_cast<Eigen::Index>(idx)]) * amp;
    nb += std::norm(amp);
  }
  return std::abs(overlap) / (a.amp.norm() * std::sqrt(nb));
}
}  // namespace

double representation_fidelity(const GroundState& a, const DiagMps& b) {
  return fidelity_against_dense(a, b);
}

double representation_fidelity(const GroundState& a, const FactorizedForm& b) {
  return fidelity_against_dense(a, b);
}

}  // namespace pf

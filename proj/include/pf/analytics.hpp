#pragma once

// closed-form ground-state observables on the solvable line: correlation
// length, site densities, two-point correlator G, sector-mixing amplitude F,
// entanglement spectrum and entropy. Each closed form is paired with an
// independent numerical path: dense-vector evaluation at small L and a
// matrix-product transfer contraction at large L.

#include <array>
#include <vector>

#include "pf/groundstate.hpp"

namespace pf {

// inverse correlation length ln|base(0)/base(1)|; +inf at phi = 0
double xi_inverse(double phi);
// correlation length, defined 0 at phi = 0 where the inverse diverges
double xi(double phi);

// thermodynamic mean occupation (x + 2x^2)/(1 + x + x^2), x = e^{-2 phi/3}
double density_thermo(double phi);
// probability of occupation m on any site of |g_i>; site independent
std::array<double, 3> occupation_dist(int L, double phi, int i);
// finite-L mean occupation <N_j> of |g_i>
double density(int L, double phi, int i);

// phase and full log-ratio of the sector-1 / sector-0 charge sums
// base(1)^L / base(0)^L; the magnitude is e^{-L / xi}
double theta_phase(int L, double phi);
LogComplex sector_amplitude_ratio(int L, double phi);

// two-point correlator <g_i| C_1^dag^2 C_ell^2 |g_i>, closed form, 1 <= ell <= L.
// Translation invariant: equals <C_j^dag^2 C_l^2> at separation l - j = ell - 1.
cplx corr_G(int L, double phi, int i, int ell);

// sector-mixing amplitude <g_i| C_ell^dag |g_{i-1}>, closed form, 1 <= ell <= L
cplx F_func(int L, double phi, int i, int ell);

// dense-vector evaluations (independent of the closed forms)
cplx corr_G_numeric(const GroundState& g, int j, int l);
cplx F_func_numeric(const GroundState& gi, const GroundState& gprev, int ell);
double density_numeric(const GroundState& g, int j);

// log-scaled transfer contraction of the bond-dimension-3 state; works to
// L in the hundreds. j < l required.
cplx corr_G_mps(int L, double phi, int i, int j, int l);

struct EntSpectrum {
  std::array<double, 3> lambda{};  // indexed by left-block charge p
  double entropy = 0;
};

// reduced density spectrum across the cut after site ell:
// lambda_p = N_p(ell) N_{(i-p) mod 3}(L - ell) / N_i(L)
EntSpectrum ent_spectrum(int L, double phi, int i, int ell);

// Schmidt decomposition of the dense vector: charge-block weights, the full
// singular spectrum, and the largest Schmidt weight beyond the top three
struct EntSpectrumNumeric {
  std::array<double, 3> lambda{};  // by left-block charge
  std::vector<double> schmidt;     // all weights, descending
  double entropy = 0;
  double beyond_rank3 = 0;
};

EntSpectrumNumeric ent_spectrum_numeric(const GroundState& g, int ell);

// least-squares decay fit of ln|G(ell)| over ell in [max(5, ceil(3 xi)), L/2 - 2]
struct DecayFit {
  LinFit fit;
  int lo = 0, hi = 0;
  double xi_fitted = 0;  // -1 / slope
};

DecayFit fit_correlation_decay(int L, double phi, int i);

}  // namespace pf

#pragma once

// exact zero modes of the parent Hamiltonian on the solvable line, one per
// charge sector: dense vector, diagonal matrix-product, and factorized forms,
// plus the norm constants they share. Everything is kept in log space so the
// same code works far beyond dense-vector sizes.

#include <array>

#include "pf/fock.hpp"
#include "pf/linop.hpp"
#include "pf/util.hpp"

namespace pf {

// base(k) = 1 + w^k x + w^{2k} x^2 with x = e^{-2 phi / 3};
// A_L(k) = base(k)^L; norm(i) = (1/3) sum_k w^{-ik} A_L(k) > 0
struct NormTable {
  int L = 0;
  double phi = 0;
  std::array<cplx, 3> base{};
  std::array<LogComplex, 3> A_L{};
  std::array<double, 3> log_norm{};

  double norm(int i) const { return std::exp(log_norm[check_sector(i)]); }
  static int check_sector(int i);
};

NormTable norm_constants(int L, double phi);

// dense amplitudes e^{-phi N /3} / sqrt(norm_i) on the charge-i sector
struct GroundState {
  int L = 0;
  double phi = 0;
  int sector = 0;
  VecC amp;  // full-space vector, zero outside the sector
};

GroundState build_gs_vector(int L, double phi, int i);

// bond-dimension-3 matrix product state with diagonal site matrices
// A[n] = e^{-phi n / 3} diag(1, w, w^2)^n and plain (unconjugated) boundary
// contraction vL . (prod_j A[n_j]) . vR
struct DiagMps {
  int L = 0;
  double phi = 0;
  int sector = 0;
  std::array<Eigen::Matrix3cd, 3> site{};
  Eigen::Vector3cd vL, vR;
  double log_prefactor = 0;  // ln of 1 / (3 sqrt(norm_i))

  LogComplex amplitude(const FockState& s) const;
};

DiagMps build_gs_mps(int L, double phi, int i);

// sum of three product states: |g_i> = sum_t c_t (x)_j |u_t>,
// u_t = (1, w^t e^{-phi/3}, w^{2t} e^{-2 phi/3}) / sqrt(base(0))
struct FactorizedForm {
  int L = 0;
  double phi = 0;
  int sector = 0;
  std::array<Eigen::Vector3cd, 3> site_state{};
  std::array<LogComplex, 3> weight{};

  LogComplex amplitude(const FockState& s) const;
};

FactorizedForm factorized_form(int L, double phi, int i);

// |<a|b>| for two unit-normalized representations evaluated over the full
// basis; L must be within the dense cap
double representation_fidelity(const GroundState& a, const DiagMps& b);
double representation_fidelity(const GroundState& a, const FactorizedForm& b);

}  // namespace pf

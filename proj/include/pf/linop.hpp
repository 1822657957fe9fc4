#pragma once
// numeric (complex sparse) linear operators on the chain Hilbert space, with
// site-support and basis metadata, plus the standard operator builders

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <cstdint>
#include <vector>

#include "pf/exact.hpp"
#include "pf/fock.hpp"
#include "pf/util.hpp"

namespace pf {

using SpMat = Eigen::SparseMatrix<cplx>;
using VecC = Eigen::VectorXcd;
using MatC = Eigen::MatrixXcd;

enum class BasisTag { full, sector };

struct LinOp {
  int L = 0;
  BasisTag tag = BasisTag::full;
  int q = -1;                 // sector charge when tag == sector
  std::vector<int> support;   // sorted 1-based sites the operator acts on
  SpMat mat;

  std::uint64_t dim() const { return static_cast<std::uint64_t>(mat.rows()); }

  LinOp dagger() const;
  bool is_hermitian(double tol = 1e-12) const;
  double norm() const;  // Frobenius
  VecC apply(const VecC& v) const { return mat * v; }

  LinOp& operator+=(const LinOp& o);
  LinOp& operator-=(const LinOp& o);
  friend LinOp operator+(LinOp a, const LinOp& b) { return a += b; }
  friend LinOp operator-(LinOp a, const LinOp& b) { return a -= b; }
  friend LinOp operator*(const LinOp& a, const LinOp& b);
  friend LinOp operator*(cplx s, LinOp a) {
    a.mat = (s * a.mat).eval();
    return a;
  }
};

LinOp identity_op(int L);
LinOp from_exact(const CycSparse& m, int L, std::vector<int> support);

// operator builders (occupation basis, full space)
LinOp build_fock_annihilator(int L, int j);       // C_j (with statistical string)
LinOp build_number(int L, int j);                 // N_j
LinOp build_parafermion(int L, int a);            // gamma_a, a = 1..2L
enum class Clock { sigma, tau };
LinOp build_clock(int L, int j, Clock which);     // sigma_j / tau_j
LinOp build_Z(int L, double phi);                 // diag exp(phi * N / 3)
LinOp build_charge(int L);                        // Q = prod_j tau_j^dag

// charge-sector restriction / re-embedding
LinOp restrict_to_sector(const LinOp& op, const SectorBasis& basis);
LinOp embed_sector(const LinOp& op, const SectorBasis& basis);

// dense full-space embedding of a sector vector
VecC embed_vector(const VecC& v, const SectorBasis& basis);
VecC restrict_vector(const VecC& full, const SectorBasis& basis);

double max_abs(const SpMat& m);

}  // namespace pf

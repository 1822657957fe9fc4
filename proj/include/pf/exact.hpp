#pragma once
// exact sparse operators over Q(w) for algebra proofs at small L:
// Fock-parafermion ladder operators, number operators, parafermions,
// clock operators and the Z3 charge, all in the occupation basis

#include <cstdint>
#include <map>
#include <vector>

#include "pf/cyclotomic.hpp"
#include "pf/fock.hpp"

namespace pf {

struct CycSparse {
  std::uint64_t dim = 0;
  std::vector<std::map<std::uint64_t, Cyclotomic>> cols;  // cols[c]: row -> value

  explicit CycSparse(std::uint64_t d = 0) : dim(d), cols(d) {}

  static CycSparse zero(std::uint64_t d) { return CycSparse(d); }
  static CycSparse identity(std::uint64_t d) {
    CycSparse m(d);
    for (std::uint64_t i = 0; i < d; ++i) m.cols[i][i] = Cyclotomic(1);
    return m;
  }

  void add(std::uint64_t row, std::uint64_t col, const Cyclotomic& v) {
    if (v.is_zero()) return;
    auto& entry = cols[col][row];
    entry += v;
    if (entry.is_zero()) cols[col].erase(row);
  }

  std::uint64_t nnz() const {
    std::uint64_t n = 0;
    for (const auto& c : cols) n += c.size();
    return n;
  }
  bool is_zero() const { return nnz() == 0; }

  CycSparse dagger() const {
    CycSparse r(dim);
    for (std::uint64_t c = 0; c < dim; ++c)
      for (const auto& [row, v] : cols[c]) r.cols[row][c] = v.conj();
    return r;
  }

  friend CycSparse operator*(const CycSparse& A, const CycSparse& B) {
    CycSparse r(A.dim);
    for (std::uint64_t c = 0; c < B.dim; ++c)
      for (const auto& [k, bv] : B.cols[c])
        for (const auto& [row, av] : A.cols[k]) r.add(row, c, av * bv);
    return r;
  }

  friend CycSparse operator+(const CycSparse& A, const CycSparse& B) {
    CycSparse r = A;
    for (std::uint64_t c = 0; c < B.dim; ++c)
      for (const auto& [row, v] : B.cols[c]) r.add(row, c, v);
    return r;
  }

  friend CycSparse operator-(const CycSparse& A, const CycSparse& B) {
    CycSparse r = A;
    for (std::uint64_t c = 0; c < B.dim; ++c)
      for (const auto& [row, v] : B.cols[c]) r.add(row, c, -v);
    return r;
  }

  friend CycSparse operator*(const Cyclotomic& s, const CycSparse& A) {
    CycSparse r(A.dim);
    if (s.is_zero()) return r;
    for (std::uint64_t c = 0; c < A.dim; ++c)
      for (const auto& [row, v] : A.cols[c]) r.cols[c][row] = s * v;
    return r;
  }

  friend bool operator==(const CycSparse& A, const CycSparse& B) {
    if (A.dim != B.dim) return false;
    return (A - B).is_zero();
  }
};

// embed a 3x3 exact matrix acting on site j (1-based) into the full space
CycSparse ex_embed_local(int L, int j, const Cyclotomic m[3][3]);

// diagonal operator from a per-index value function
template <class F>
CycSparse ex_diagonal(int L, F&& value_of_index) {
  const std::uint64_t dim = pow3(L);
  CycSparse r(dim);
  for (std::uint64_t idx = 0; idx < dim; ++idx) {
    Cyclotomic v = value_of_index(idx);
    if (!v.is_zero()) r.cols[idx][idx] = v;
  }
  return r;
}

CycSparse ex_identity(int L);
CycSparse ex_lower(int L, int j);         // on-site ladder: |n> -> |n-1>, kills |0>
CycSparse ex_lower_cyclic(int L, int j);  // cyclic ladder: |n> -> |n-1 mod 3>
CycSparse ex_number(int L, int j);        // diag n_j
CycSparse ex_phase_string(int L, int j);  // prod_{k<j} w^{N_k}

// fermionic-style annihilator with statistical string: C_j = string * lower_j
CycSparse ex_fock_annihilator(int L, int j);

// parafermions: gamma_{2j-1} = w (C_j + C_j^dag^2), gamma_{2j} = C_j w^{N_j} + C_j^dag^2
CycSparse ex_parafermion(int L, int a);

CycSparse ex_clock_sigma(int L, int j);  // w * cyclic ladder at site j
CycSparse ex_clock_tau(int L, int j);    // diag w^{n_j}
CycSparse ex_charge(int L);              // Q = prod_j tau_j^dag = diag w^{-N}

double max_abs(const CycSparse& A);  // largest |entry| after embedding into C

}  // namespace pf

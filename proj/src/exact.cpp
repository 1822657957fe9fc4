#include "pf/exact.hpp"

#include <algorithm>
#include <stdexcept>

namespace pf {

namespace {
void check_site(int L, int j) {
  if (j < 1 || j > L) throw std::out_of_range("site index out of range");
}
}  // namespace

CycSparse ex_embed_local(int L, int j, const Cyclotomic m[3][3]) {
  check_site(L, j);
  const std::uint64_t dim = pow3(L);
  const std::uint64_t stride = pow3(L - j);
  CycSparse r(dim);
  for (std::uint64_t idx = 0; idx < dim; ++idx) {
    const int n = static_cast<int>(idx / stride % 3);
    const std::uint64_t base = idx - static_cast<std::uint64_t>(n) * stride;
    for (int np = 0; np < 3; ++np) {
      const Cyclotomic& v = m[np][n];
      if (!v.is_zero()) r.add(base + static_cast<std::uint64_t>(np) * stride, idx, v);
    }
  }
  return r;
}

CycSparse ex_identity(int L) { return CycSparse::identity(pow3(L)); }

CycSparse ex_lower(int L, int j) {
  Cyclotomic m[3][3] = {};
  m[0][1] = Cyclotomic(1);
  m[1][2] = Cyclotomic(1);
  return ex_embed_local(L, j, m);
}

CycSparse ex_lower_cyclic(int L, int j) {
  Cyclotomic m[3][3] = {};
  m[0][1] = Cyclotomic(1);
  m[1][2] = Cyclotomic(1);
  m[2][0] = Cyclotomic(1);
  return ex_embed_local(L, j, m);
}

CycSparse ex_number(int L, int j) {
  Cyclotomic m[3][3] = {};
  m[1][1] = Cyclotomic(1);
  m[2][2] = Cyclotomic(2);
  return ex_embed_local(L, j, m);
}

CycSparse ex_phase_string(int L, int j) {
  check_site(L, j);
  return ex_diagonal(L, [L, j](std::uint64_t idx) {
    int s = 0;
    for (int k = 1; k < j; ++k) s += FockState{L, idx}.occ(k);
    return Cyclotomic::omega(s);
  });
}

CycSparse ex_fock_annihilator(int L, int j) {
  return ex_phase_string(L, j) * ex_lower(L, j);
}

CycSparse ex_parafermion(int L, int a) {
  if (a < 1 || a > 2 * L) throw std::out_of_range("parafermion index out of range");
  const int j = (a + 1) / 2;
  CycSparse C = ex_fock_annihilator(L, j);
  CycSparse Cd = C.dagger();
  CycSparse Cd2 = Cd * Cd;
  if (a % 2 == 1) return Cyclotomic::omega() * (C + Cd2);
  return C * ex_clock_tau(L, j) + Cd2;
}

CycSparse ex_clock_sigma(int L, int j) {
  return Cyclotomic::omega() * ex_lower_cyclic(L, j);
}

CycSparse ex_clock_tau(int L, int j) {
  check_site(L, j);
  return ex_diagonal(L, [L, j](std::uint64_t idx) {
    return Cyclotomic::omega(FockState{L, idx}.occ(j));
  });
}

CycSparse ex_charge(int L) {
  return ex_diagonal(L, [L](std::uint64_t idx) {
    return Cyclotomic::omega(-FockState{L, idx}.total_N());
  });
}

double max_abs(const CycSparse& A) {
  double m = 0;
  for (const auto& c : A.cols)
    for (const auto& [row, v] : c) m = std::max(m, std::abs(v.eval()));
  return m;
}

}  // namespace pf

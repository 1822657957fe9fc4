#pragma once
// occupation-string basis for a chain of L three-state sites and its Z3
// charge sectors; site 1 is the most significant trit of the packed index

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace pf {

inline std::uint64_t pow3(int n) {
  std::uint64_t p = 1;
  for (int k = 0; k < n; ++k) p *= 3;
  return p;
}

// hard cap for anything that enumerates the full 3^L space
inline constexpr int kMaxDenseSites = 14;

struct FockState {
  int L = 0;
  std::uint64_t idx = 0;  // sum_j n_j * 3^(L-j)

  // occupation of 1-based site j
  int occ(int j) const { return static_cast<int>(idx / pow3(L - j) % 3); }

  int total_N() const {
    int s = 0;
    std::uint64_t v = idx;
    for (int k = 0; k < L; ++k) {
      s += static_cast<int>(v % 3);
      v /= 3;
    }
    return s;
  }
  int charge() const { return total_N() % 3; }

  std::vector<int> occs() const {
    std::vector<int> n(L);
    for (int j = 1; j <= L; ++j) n[j - 1] = occ(j);
    return n;
  }

  static FockState from_occ(std::span<const int> n) {
    FockState s;
    s.L = static_cast<int>(n.size());
    for (int v : n) {
      if (v < 0 || v > 2) throw std::invalid_argument("occupation must be 0,1,2");
      s.idx = s.idx * 3 + static_cast<std::uint64_t>(v);
    }
    return s;
  }

  friend bool operator==(const FockState& x, const FockState& y) {
    return x.L == y.L && x.idx == y.idx;
  }
};

inline int charge_of_index(std::uint64_t idx, int L) {
  return FockState{L, idx}.charge();
}

struct SectorBasis {
  int L = 0, q = 0;
  std::vector<std::uint64_t> states;    // ascending == lexicographic on occupations
  std::vector<std::int64_t> position;   // full index -> row in states, -1 elsewhere

  std::size_t size() const { return states.size(); }
  std::int64_t index_of(std::uint64_t full_idx) const { return position[full_idx]; }
  FockState state(std::size_t row) const { return {L, states[row]}; }
};

inline SectorBasis enumerate_sector(int L, int q) {
  if (L < 1) throw std::invalid_argument("enumerate_sector: L must be >= 1");
  if (L > kMaxDenseSites) throw std::length_error("enumerate_sector: 3^L too large");
  if (q < 0 || q > 2) throw std::invalid_argument("enumerate_sector: charge must be 0,1,2");
  SectorBasis b;
  b.L = L;
  b.q = q;
  const std::uint64_t dim = pow3(L);
  b.position.assign(dim, -1);
  // walk indices in order, tracking the digit sum incrementally
  std::vector<int> n(L, 0);
  int tot = 0;
  for (std::uint64_t idx = 0; idx < dim; ++idx) {
    if (tot % 3 == q) {
      b.position[idx] = static_cast<std::int64_t>(b.states.size());
      b.states.push_back(idx);
    }
    for (int j = L - 1; j >= 0; --j) {  // increment base-3 counter
      if (n[j] < 2) {
        ++n[j];
        ++tot;
        break;
      }
      n[j] = 0;
      tot -= 2;
    }
  }
  return b;
}

}  // namespace pf

#pragma once
// shared numerics/plumbing: log-domain complex scalars, least-squares fits,
// deterministic CSV formatting, FNV hashing, timers, env-configured parallel_for

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace pf {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

// omega = exp(2 pi i / 3)
inline constexpr double kHalfSqrt3 = 0.8660254037844386467637232;
inline cplx omega_c(int k = 1) {
  k = ((k % 3) + 3) % 3;
  constexpr cplx w[3] = {cplx(1.0, 0.0), cplx(-0.5, kHalfSqrt3), cplx(-0.5, -kHalfSqrt3)};
  return w[k];
}

// value = exp(lm) * ph, with |ph| == 1 (or ph == 0 for the zero value).
// Keeps sums/products of exponentially large or small complex numbers stable.
struct LogComplex {
  double lm = -std::numeric_limits<double>::infinity();
  cplx ph = 0.0;

  static LogComplex from(cplx z) {
    double a = std::abs(z);
    if (a == 0.0) return {};
    return {std::log(a), z / a};
  }
  static LogComplex from_log(double lm, cplx ph) { return {lm, ph}; }
  bool is_zero() const { return ph == cplx(0.0); }
  cplx value() const { return is_zero() ? cplx(0.0) : std::exp(lm) * ph; }
  LogComplex conj() const { return {lm, std::conj(ph)}; }
};

inline LogComplex lc_mul(const LogComplex& a, const LogComplex& b) {
  if (a.is_zero() || b.is_zero()) return {};
  cplx p = a.ph * b.ph;
  double n = std::abs(p);  // renormalize rounding drift
  return {a.lm + b.lm + std::log(n), p / n};
}

inline LogComplex lc_pow(const LogComplex& a, long n) {
  if (n == 0) return LogComplex::from(1.0);
  if (a.is_zero()) return {};
  cplx p = std::polar(1.0, std::arg(a.ph) * static_cast<double>(n));
  return {a.lm * static_cast<double>(n), p};
}

inline LogComplex lc_scale(const LogComplex& a, cplx c) {
  return lc_mul(a, LogComplex::from(c));
}

inline LogComplex lc_sum(const std::vector<LogComplex>& terms) {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& t : terms)
    if (!t.is_zero()) m = std::max(m, t.lm);
  if (!std::isfinite(m)) return {};
  cplx s = 0.0;
  for (const auto& t : terms)
    if (!t.is_zero()) s += std::exp(t.lm - m) * t.ph;
  if (std::abs(s) == 0.0) return {};
  return {m + std::log(std::abs(s)), s / std::abs(s)};
}

// a/b as LogComplex
inline LogComplex lc_div(const LogComplex& a, const LogComplex& b) {
  return {a.lm - b.lm, a.ph / b.ph};
}

struct LinFit {
  double slope = 0, intercept = 0, r2 = 0;
};

inline LinFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t k = 0; k < n; ++k) {
    sx += x[k];
    sy += y[k];
    sxx += x[k] * x[k];
    sxy += x[k] * y[k];
    syy += y[k] * y[k];
  }
  const double dn = static_cast<double>(n);
  const double vxx = sxx - sx * sx / dn;
  const double vxy = sxy - sx * sy / dn;
  const double vyy = syy - sy * sy / dn;
  LinFit f;
  f.slope = vxy / vxx;
  f.intercept = (sy - f.slope * sx) / dn;
  f.r2 = (vyy > 0) ? (vxy * vxy) / (vxx * vyy) : 1.0;
  return f;
}

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

struct Stopwatch {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

// shortest round-trip decimal form; deterministic across runs
inline std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// worker count: env override (PF_THREADS) > requested > hardware
inline int thread_count(int requested = 0) {
  if (const char* e = std::getenv("PF_THREADS")) {
    int v = std::atoi(e);
    if (v > 0) return v;
  }
  if (requested > 0) return requested;
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

// run f(i) for i in [0, n); results must be written into caller-owned slots so
// output order is independent of scheduling
template <class F>
void parallel_for(int n, int threads, F&& f) {
  threads = std::min(std::max(threads, 1), n);
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) f(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace pf

#pragma once
// exact arithmetic in Q(w), w = exp(2 pi i / 3): elements a + b*w with
// rational a, b; reduction rule w^2 = -1 - w, so w^3 = 1 and 1 + w + w^2 = 0

#include <gmpxx.h>

#include <complex>
#include <string>

#include "pf/util.hpp"

namespace pf {

struct Cyclotomic {
  mpq_class a{0}, b{0};  // a + b*w

  Cyclotomic() = default;
  Cyclotomic(long v) : a(v) {}
  Cyclotomic(const mpq_class& a_) : a(a_) {}
  Cyclotomic(const mpq_class& a_, const mpq_class& b_) : a(a_), b(b_) {}

  static Cyclotomic omega(long k = 1) {
    k = ((k % 3) + 3) % 3;
    if (k == 0) return {1, 0};
    if (k == 1) return {0, 1};
    return {-1, -1};  // w^2 = -1 - w
  }

  bool is_zero() const { return a == 0 && b == 0; }

  // complex conjugation: w -> w^2, so a + b*w -> (a - b) - b*w
  Cyclotomic conj() const { return {a - b, mpq_class(-b)}; }

  Cyclotomic operator-() const { return {mpq_class(-a), mpq_class(-b)}; }

  Cyclotomic& operator+=(const Cyclotomic& o) {
    a += o.a;
    b += o.b;
    return *this;
  }
  Cyclotomic& operator-=(const Cyclotomic& o) {
    a -= o.a;
    b -= o.b;
    return *this;
  }

  friend Cyclotomic operator+(Cyclotomic x, const Cyclotomic& y) { return x += y; }
  friend Cyclotomic operator-(Cyclotomic x, const Cyclotomic& y) { return x -= y; }

  // (a1 + b1 w)(a2 + b2 w) = (a1 a2 - b1 b2) + (a1 b2 + a2 b1 - b1 b2) w
  friend Cyclotomic operator*(const Cyclotomic& x, const Cyclotomic& y) {
    return {x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a - x.b * y.b};
  }
  Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }

  friend bool operator==(const Cyclotomic& x, const Cyclotomic& y) {
    return x.a == y.a && x.b == y.b;
  }
  friend bool operator!=(const Cyclotomic& x, const Cyclotomic& y) { return !(x == y); }

  cplx eval() const { return a.get_d() + b.get_d() * omega_c(); }

  std::string str() const {
    return "(" + a.get_str() + ") + (" + b.get_str() + ")w";
  }
};

inline Cyclotomic cyc_mul(const Cyclotomic& x, const Cyclotomic& y) { return x * y; }

}  // namespace pf

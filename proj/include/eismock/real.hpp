#pragma once
// Multiprecision numeric core: dynamic-precision reals (MPFR-backed),
// a small complex type, cached constants, exact-integer/rational bridges,
// decimal serialization, and tanh-sinh quadrature on (0,1).

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace eismock {

namespace mp = boost::multiprecision;

using Real = mp::number<mp::mpfr_float_backend<0>, mp::et_off>;
using Int = mp::cpp_int;
using Rational = mp::cpp_rational;

// Sets the working precision for all subsequently constructed Reals.
// `bits` is a binary precision request; the backend is configured to at
// least that many bits.  Must be called before any computation (the CLI and
// every test entry point do).
void set_working_bits(unsigned bits);
unsigned working_bits();

// Default comparison tolerance, 2^-(bits/3).
Real default_tolerance();

// Cached constants at the current working precision.
const Real& pi();
const Real& euler_gamma();
const Real& log2_const();

// Correctly rounded special functions (x > 0).
Real log_gamma(const Real& x);
Real digamma(const Real& x);
Real gamma_fn(const Real& x);

// Exact-value bridges (correctly rounded conversion).
Real to_real(const Int& n);
Real to_real(const Rational& q);

// Full-working-precision decimal rendering (round-trippable).
int output_digits10();
std::string decimal_string(const Real& x);

// ---------------------------------------------------------------------------

struct Complex {
  Real re, im;

  Complex() : re(0), im(0) {}
  Complex(const Real& r) : re(r), im(0) {}
  Complex(long r) : re(r), im(0) {}
  Complex(int r) : re(r), im(0) {}
  Complex(const Real& r, const Real& i) : re(r), im(i) {}

  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Complex& operator*=(const Complex& o) {
    Real r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = r;
    return *this;
  }
  Complex& operator*=(const Real& s) {
    re *= s;
    im *= s;
    return *this;
  }
};

inline Complex operator+(Complex a, const Complex& b) { return a += b; }
inline Complex operator-(Complex a, const Complex& b) { return a -= b; }
inline Complex operator*(Complex a, const Complex& b) { return a *= b; }
inline Complex operator*(Complex a, const Real& s) { return a *= s; }
inline Complex operator*(const Real& s, Complex a) { return a *= s; }
inline Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
inline Complex conj(const Complex& a) { return {a.re, -a.im}; }
inline Real norm(const Complex& a) { return a.re * a.re + a.im * a.im; }

Real abs(const Complex& a);
Complex inv(const Complex& a);
inline Complex operator/(const Complex& a, const Complex& b) {
  return a * inv(b);
}
inline Complex operator/(const Complex& a, const Real& s) {
  return {a.re / s, a.im / s};
}

// exp(z)
Complex cexp(const Complex& z);
// z^e for any integer e (e < 0 uses inv)
Complex cpow_int(const Complex& z, long e);
// e^(2 pi i num/den); exact component values for den | 4 after reduction
Complex unit_root(long long num, long long den);

// i as a constant
inline Complex imag_unit() { return {Real(0), Real(1)}; }

// ---------------------------------------------------------------------------
// Tanh-sinh (double-exponential) quadrature of f over (0,1).  The integrand
// receives each node twice-parameterized — its distance from 0 and from 1 —
// so endpoint singularities like u^(b-1) are evaluated without cancellation.
// V is Real or Complex.

template <class V>
struct QuadResult {
  V value{};
  Real error{};
};

namespace detail {
inline Real quad_abs(const Real& x) { return mp::abs(x); }
inline Real quad_abs(const Complex& z) { return abs(z); }
}  // namespace detail

template <class V, class F>
QuadResult<V> tanh_sinh_01(F&& f, const Real& abs_tol, int max_level = 12) {
  const Real& PI = pi();
  const Real t_max = Real(13) / 2;
  const Real drop = abs_tol * Real(std::ldexp(1.0, -10));

  auto node_pair = [&](const Real& t, V& acc) {
    // u = (pi/2) sinh t; x_+ = 1/(1+e^-2u), x_- = 1/(1+e^2u) = 1 - x_+
    Real u = PI / 2 * sinh(t);
    Real e2u = exp(2 * u);
    Real from_small = 1 / (1 + e2u);        // node near 0 (and 1 - other node)
    Real from_big = e2u / (1 + e2u);        // node near 1
    Real w = 2 * from_small * from_big * (PI / 2) * cosh(t);
    V contrib = f(from_big, from_small);    // node at x_+
    if (t != 0) contrib += f(from_small, from_big);  // mirrored node at x_-
    contrib *= w;
    acc += contrib;
    return detail::quad_abs(contrib);
  };

  Real h = 1;
  V sum{};
  node_pair(Real(0), sum);
  for (Real t = h; t <= t_max; t += h) {
    Real c = node_pair(t, sum);
    if (c < drop && t > 3) break;
  }
  V prev = sum * h;

  for (int level = 1; level <= max_level; ++level) {
    h /= 2;
    // refine with the odd multiples of the halved step
    for (Real t = h; t <= t_max; t += 2 * h) {
      Real c = node_pair(t, sum);
      if (c < drop && t > 3) break;
    }
    V cur = sum * h;
    Real diff = detail::quad_abs(cur - prev);
    if (diff <= abs_tol / 4)
      return {cur, diff};
    prev = cur;
  }
  throw std::runtime_error("tanh_sinh_01: failed to reach requested tolerance");
}

}  // namespace eismock

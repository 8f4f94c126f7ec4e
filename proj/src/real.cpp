#include "eismock/real.hpp"

#include <mpfr.h>

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace eismock {

namespace {

unsigned g_bits = 128;

struct Constants {
  Real pi, euler, log2;
};

std::mutex g_const_mutex;
std::map<unsigned, Constants> g_const_cache;  // keyed by digits10

const Constants& constants() {
  std::lock_guard<std::mutex> lock(g_const_mutex);
  unsigned key = Real::default_precision();
  auto it = g_const_cache.find(key);
  if (it == g_const_cache.end()) {
    Constants c;
    c.pi = Real(0);
    c.euler = Real(0);
    c.log2 = Real(0);
    mpfr_const_pi(c.pi.backend().data(), MPFR_RNDN);
    mpfr_const_euler(c.euler.backend().data(), MPFR_RNDN);
    mpfr_const_log2(c.log2.backend().data(), MPFR_RNDN);
    it = g_const_cache.emplace(key, std::move(c)).first;
  }
  return it->second;
}

}  // namespace

void set_working_bits(unsigned bits) {
  if (bits < 64) throw std::domain_error("set_working_bits: bits must be >= 64");
  g_bits = bits;
  // digits10 large enough that the backend precision is >= bits binary digits
  unsigned digits10 =
      static_cast<unsigned>(std::ceil(bits * 0.3010299956639812)) + 1;
  Real::default_precision(digits10);
}

unsigned working_bits() { return g_bits; }

Real default_tolerance() {
  return ldexp(Real(1), -static_cast<int>(g_bits / 3));
}

const Real& pi() { return constants().pi; }
const Real& euler_gamma() { return constants().euler; }
const Real& log2_const() { return constants().log2; }

Real log_gamma(const Real& x) {
  if (x <= 0) throw std::domain_error("log_gamma: x must be > 0");
  Real r(0);
  int sign = 0;
  mpfr_lgamma(r.backend().data(), &sign, x.backend().data(), MPFR_RNDN);
  return r;
}

Real digamma(const Real& x) {
  if (x <= 0) throw std::domain_error("digamma: x must be > 0");
  Real r(0);
  mpfr_digamma(r.backend().data(), x.backend().data(), MPFR_RNDN);
  return r;
}

Real gamma_fn(const Real& x) {
  if (x <= 0) throw std::domain_error("gamma_fn: x must be > 0");
  Real r(0);
  mpfr_gamma(r.backend().data(), x.backend().data(), MPFR_RNDN);
  return r;
}

Real to_real(const Int& n) {
  Real r(0);
  // decimal round-trip: mpfr_set_str is correctly rounded
  mpfr_set_str(r.backend().data(), n.str().c_str(), 10, MPFR_RNDN);
  return r;
}

Real to_real(const Rational& q) {
  return to_real(numerator(q)) / to_real(denominator(q));
}

int output_digits10() {
  // enough digits to round-trip the working precision
  return static_cast<int>(std::floor(g_bits * 0.3010299956639812)) + 1;
}

std::string decimal_string(const Real& x) {
  return x.str(output_digits10(), std::ios_base::scientific);
}

Real abs(const Complex& a) { return hypot(a.re, a.im); }

Complex inv(const Complex& a) {
  Real n = norm(a);
  if (n == 0) throw std::domain_error("inv: division by zero");
  return {a.re / n, -a.im / n};
}

Complex cexp(const Complex& z) {
  Real m = exp(z.re);
  Real s(0), c(0);
  mpfr_sin_cos(s.backend().data(), c.backend().data(), z.im.backend().data(),
               MPFR_RNDN);
  return {m * c, m * s};
}

Complex cpow_int(const Complex& z, long e) {
  if (e < 0) return inv(cpow_int(z, -e));
  Complex r{Real(1), Real(0)};
  Complex b = z;
  unsigned long u = static_cast<unsigned long>(e);
  while (u) {
    if (u & 1) r *= b;
    b *= b;
    u >>= 1;
  }
  return r;
}

Complex unit_root(long long num, long long den) {
  if (den == 0) throw std::domain_error("unit_root: zero denominator");
  if (den < 0) den = -den, num = -num;
  num %= den;
  if (num < 0) num += den;
  long long g = std::gcd(num, den);
  if (g > 1) num /= g, den /= g;
  if (num == 0) return {Real(1), Real(0)};
  // exact values on the 4th roots of unity
  if (den == 2) return {Real(-1), Real(0)};
  if (den == 4) return num == 1 ? Complex{Real(0), Real(1)}
                                : Complex{Real(0), Real(-1)};
  Real theta = 2 * pi() * Real(num) / Real(den);
  Real s(0), c(0);
  mpfr_sin_cos(s.backend().data(), c.backend().data(), theta.backend().data(),
               MPFR_RNDN);
  return {c, s};
}

}  // namespace eismock

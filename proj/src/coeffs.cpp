#include "eismock/coeffs.hpp"

#include <numeric>
#include <stdexcept>

namespace eismock {

namespace {

// prod_{p | n} (1 - 1/p), exact
Rational totient_ratio(int64_t n) {
  Rational r(1);
  for (auto [p, _] : factorize(n)) {
    (void)_;
    r *= Rational(p - 1, p);
  }
  return r;
}

int64_t factorial_small(int k) {
  int64_t f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

int64_t sigma1_int(int64_t n) {
  int64_t s = 0;
  for (int64_t d : divisors(n)) s += d;
  return s;
}

// |inner_sieve(c, l, ., .)| <= sigma_1(gcd(l, c)) <= sigma_1(l), so
// |sigma^{psi,rho}_{k1}(n)| <= sigma_1(l) sigma_{k1}(n) and with
// sigma_{k1}(n) <= d(n) n^{k1} <= 2 sqrt(n) n^{k1} <= 2 n^{k1+1} the twisted
// sum is certified below 2 sigma_1(l) n^{k1+1}.
Real sigma_bound_const(const DirichletCharacter& rho) {
  int64_t ell = rho.modulus() / rho.conductor();
  return Real(2 * sigma1_int(ell));
}

// inner sieve sum_{0<d|gcd(l,c)} d mu(l/d) A(l/d) B(c/d) with A, B the two
// orientations of the primitive core of rho
CyclotomicSum inner_sieve(int64_t c, int64_t ell,
                          const DirichletCharacter& first,
                          const DirichletCharacter& second) {
  CyclotomicSum s;
  for (int64_t d : divisors(std::gcd(ell, c))) {
    int mu = mobius(ell / d);
    if (mu == 0) continue;
    UnityRoot r = first.value(ell / d).times(second.value(c / d));
    s.add(r, d * mu);
  }
  return s;
}

}  // namespace

void EisSpec::validate() const {
  if (k < 1) throw std::domain_error("spec: weight k must be >= 1");
  if (t < 1) throw std::domain_error("spec: scaling t must be >= 1");
  if (!parity_valid())
    throw std::domain_error(
        "spec: parity violated, need psi(-1) rho(-1) = (-1)^k");
}

CyclotomicSum sigma_twisted(int k1, int64_t n, const DirichletCharacter& psi,
                            const DirichletCharacter& rho) {
  if (n < 1) throw std::domain_error("sigma_twisted: n must be >= 1");
  if (k1 < 0) throw std::domain_error("sigma_twisted: negative weight index");
  auto rho0 = rho.primitive_core();
  auto rho0bar = rho0.conjugate();
  int64_t ell = rho.modulus() / rho0.modulus();
  CyclotomicSum total;
  for (int64_t c : divisors(n)) {
    UnityRoot outer = psi.value(n / c);
    if (outer.zero) continue;
    CyclotomicSum inner = inner_sieve(c, ell, rho0bar, rho0);
    total.add_scaled(inner, outer, ipow(c, k1));
  }
  return total;
}

int64_t sigma_twisted_int(int k1, int64_t n, const DirichletCharacter& psi,
                          const DirichletCharacter& rho) {
  CyclotomicSum s = sigma_twisted(k1, n, psi, rho);
  if (!s.is_integral())
    throw std::domain_error("sigma_twisted_int: value is not rational-integer");
  return s.as_integer();
}

Complex sigma_log_twisted(int64_t n, const DirichletCharacter& psi,
                          const DirichletCharacter& rho) {
  if (n < 1) throw std::domain_error("sigma_log_twisted: n must be >= 1");
  auto rho0 = rho.primitive_core();
  auto rho0bar = rho0.conjugate();
  int64_t ell = rho.modulus() / rho0.modulus();
  auto psibar = psi.conjugate();
  Complex acc{Real(0), Real(0)};
  for (int64_t c : divisors(n)) {
    if (c == 1) continue;  // log 1 = 0
    UnityRoot outer = psibar.value(n / c);
    if (outer.zero) continue;
    CyclotomicSum inner = inner_sieve(c, ell, rho0, rho0bar);
    CyclotomicSum term;
    term.add_scaled(inner, outer, 1);
    acc += term.render() * log(Real(c));
  }
  return acc;
}

Complex a_coefficient(const Real& s, int k, int64_t n,
                      const DirichletCharacter& psi,
                      const DirichletCharacter& rho) {
  if (n < 1) throw std::domain_error("a_coefficient: n must be >= 1");
  auto rho0 = rho.primitive_core();
  auto rho0bar = rho0.conjugate();
  int64_t ell = rho.modulus() / rho0.modulus();
  Complex acc{Real(0), Real(0)};
  for (int64_t c : divisors(n)) {
    UnityRoot outer = psi.value(n / c);
    if (outer.zero) continue;
    CyclotomicSum inner = inner_sieve(c, ell, rho0, rho0bar);
    CyclotomicSum term;
    term.add_scaled(inner, outer, 1);
    acc += term.render() * pow(Real(c), 2 * s + (k - 1));
  }
  return acc;
}

FourierSeries e2_building_block(int64_t L, int64_t M, int64_t n_max) {
  auto psi = DirichletCharacter::trivial(L);
  auto rho = DirichletCharacter::trivial(M);
  FourierSeries out;
  out.side = Side::holomorphic;
  out.weight = 2;
  out.level = L * M;
  out.c.resize(n_max + 1);
  // constant term L(2, rho) when psi is the modulus-one character
  out.c[0] = (L == 1) ? l_value(rho, 2) : Complex(Real(0));
  Real pref = -4 * pi() * pi() / Real(M * M);
  for (int64_t m = 1; m <= n_max; ++m)
    out.c[m] = Complex(pref * Real(sigma_twisted_int(1, m, psi, rho)));
  out.quasi_pi = -Rational(1, 2 * M) * totient_ratio(M) * totient_ratio(L);
  out.tail_const = abs(pref) * sigma_bound_const(rho);
  out.tail_deg = 2;
  return out;
}

FourierSeries eisenstein_coefficients(const EisSpec& spec, int64_t n_max) {
  spec.validate();
  const int k = spec.k;
  const int64_t t = spec.t;
  const int64_t M = spec.rho.modulus();

  FourierSeries out;
  out.side = Side::holomorphic;
  out.weight = k;
  out.level = spec.level();
  out.c.resize(n_max + 1);

  if (spec.k2_trivial_pair()) {
    // E(z) - t E(tz): the pi/y terms cancel exactly in the rationals
    FourierSeries bb = e2_building_block(spec.psi.modulus(), M, n_max);
    out.c[0] = bb.c[0] * Real(1 - t);
    for (int64_t m = 1; m <= n_max; ++m) {
      out.c[m] = bb.c[m];
      if (m % t == 0) out.c[m] -= bb.c[m / t] * Real(t);
    }
    out.quasi_pi = bb.quasi_pi - Rational(t) * (bb.quasi_pi / Rational(t));
    out.tail_const = bb.tail_const * Real(1 + t);
    out.tail_deg = 2;
    return out;
  }

  // constant term: L(k, conj rho) iff psi has modulus exactly one, plus the
  // weight-1 extra term -pi i L(0, psi) prod_{p|M}(1 - 1/p) iff rho trivial
  Complex c0{Real(0), Real(0)};
  if (spec.psi.modulus() == 1) c0 += l_value(spec.rho.conjugate(), k);
  if (k == 1 && spec.rho.is_trivial()) {
    Complex l0 = l_value(spec.psi, 0);
    c0 += Complex(Real(0), -pi() * to_real(totient_ratio(M))) * l0;
  }
  out.c[0] = c0;

  // (-2 pi i / M)^k W(conj rho0) / (k-1)!
  Complex w = spec.rho.primitive_core().conjugate().gauss_sum();
  Complex pref = pow(2 * pi() / M, k) / Real(factorial_small(k - 1)) *
                 unit_root(-k, 4) * w;
  for (int64_t m = 1; m <= n_max; ++m) {
    if (m % t != 0) continue;
    out.c[m] = pref * sigma_twisted(k - 1, m / t, spec.psi, spec.rho).render();
  }
  out.tail_const = abs(pref) * sigma_bound_const(spec.rho);
  out.tail_deg = k;
  return out;
}

FourierSeries mock_coefficients(const EisSpec& spec, int64_t n_max) {
  spec.validate();
  const int k = spec.k;
  const int64_t t = spec.t;
  const int64_t M = spec.rho.modulus();

  FourierSeries out;
  out.side = Side::mock;
  out.weight = 2 - k;
  out.level = spec.level();
  out.c.resize(n_max + 1);

  if (spec.k2_trivial_pair()) {
    // telescoped weight-2 pre-image: support is *not* restricted to t | n
    auto psi = spec.psi;
    auto rho = spec.rho;
    Real pref = pi() / Real(M * M);
    out.c[0] = Complex(pi() * log(Real(t)) / M *
                       to_real(totient_ratio(spec.psi.modulus()) *
                               totient_ratio(M)));
    for (int64_t n = 1; n <= n_max; ++n) {
      int64_t s1 = sigma_twisted_int(1, n, psi, rho);
      if (n % t == 0 && n / t >= 1)
        s1 -= t * sigma_twisted_int(1, n / t, psi, rho);
      out.c[n] = Complex(pref * Real(s1) / Real(n));
    }
    // |sigma_1(n) - t sigma_1(n/t)| / n <= (1 + t) sigma_bound sqrt(n)
    out.tail_const = pref * sigma_bound_const(rho) * Real(1 + t);
    out.tail_deg = 1;
    return out;
  }

  auto psibar = spec.psi.conjugate();
  auto rhobar = spec.rho.conjugate();

  if (k == 1) {
    // constant term by cases; the two cases below are mutually exclusive
    // (parity makes "psi mod 1 and rho trivial" invalid)
    if (spec.psi.modulus() == 1) {
      out.c[0] = l_derivative(spec.rho, 1) * Real(2);
    } else if (spec.rho.is_trivial()) {
      Complex inner = l_value(psibar, 0) * log(Real(2 * t * M)) -
                      l_derivative(psibar, 0);
      out.c[0] = Complex(Real(0), 2 * pi() * to_real(totient_ratio(M))) *
                 inner;
    }
    Complex w0 = spec.rho.primitive_core().gauss_sum();
    Complex pref = Complex(Real(0), -2 * pi() / M) * w0;
    Real logshift = log(pi() / Real(M * M)) + euler_gamma();
    for (int64_t n = 1; n <= n_max; ++n) {
      if (n % t != 0) continue;
      Complex s0 = sigma_twisted(0, n / t, psibar, rhobar).render();
      Complex slog = sigma_log_twisted(n / t, spec.psi, spec.rho);
      out.c[n] = pref * (s0 * (logshift - log(Real(n))) + slog * Real(2));
    }
    // sqrt(n)(|shift| + 3 log n) <= (|shift| + 3) n, using log n <= sqrt(n)
    out.tail_const =
        abs(pref) * sigma_bound_const(spec.rho) * (abs(logshift) + 3);
    out.tail_deg = 1;
    return out;
  }

  // k >= 3, or k == 2 with characters not both trivial
  Complex ik2 = unit_root(k - 2, 4);  // i^(k-2)
  Real two_pow = ldexp(Real(1), 2 - k);
  if (spec.rho.is_trivial()) {
    Complex lk1 = l_value(psibar, k - 1);
    out.c[0] = two_pow * pi() / (pow(Real(t) * M, k - 1) * (k - 1)) * ik2 *
               lk1 * to_real(totient_ratio(M));
  }
  Complex w0 = spec.rho.primitive_core().gauss_sum();
  Complex pref =
      two_pow * pi() / (pow(Real(M), k) * (k - 1)) * ik2 * w0;
  for (int64_t n = 1; n <= n_max; ++n) {
    if (n % t != 0) continue;
    Complex s = sigma_twisted(k - 1, n / t, psibar, rhobar).render();
    out.c[n] = pref * s * pow(Real(n), 1 - k);
  }
  // |sigma_{k-1}(n/t)| n^{1-k} <= sigma_bound sqrt(n) <= sigma_bound n
  out.tail_const = abs(pref) * sigma_bound_const(spec.rho);
  out.tail_deg = 1;
  return out;
}

}  // namespace eismock

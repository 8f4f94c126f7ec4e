#include "eismock/lfun.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace eismock {

namespace {

std::mutex g_bern_mutex;
std::vector<Rational>& bernoulli_cache() {
  static std::vector<Rational> cache{Rational(1)};
  return cache;
}

// Euler–Maclaurin coefficient tables, cached per working precision:
// em[j] = B_{2j}/(2j)!,  bov[j] = B_{2j}/(2j)   (index from 1, slot 0 unused)
struct EmCache {
  std::vector<Real> em{Real(0)};
  std::vector<Real> bov{Real(0)};
};
std::mutex g_em_mutex;
EmCache& em_cache(unsigned J) {
  static std::map<unsigned, EmCache> caches;
  EmCache& c = caches[Real::default_precision()];
  while (c.em.size() <= J) {
    unsigned j = static_cast<unsigned>(c.em.size());
    Rational b = bernoulli(2 * j);
    Int fact = 1;
    for (unsigned i = 2; i <= 2 * j; ++i) fact *= i;
    c.em.push_back(to_real(b / Rational(fact)));
    c.bov.push_back(to_real(b / Rational(2 * j)));
  }
  return c;
}

unsigned em_terms() { return std::max(8u, working_bits() / 4); }
long em_shift_start() { return std::max<long>(50, working_bits() / 2); }

}  // namespace

Rational bernoulli(unsigned n) {
  std::lock_guard<std::mutex> lock(g_bern_mutex);
  auto& cache = bernoulli_cache();
  while (cache.size() <= n) {
    unsigned m = static_cast<unsigned>(cache.size());
    // B_m = -1/(m+1) sum_{j<m} C(m+1, j) B_j
    Rational acc = 0;
    Int binom = 1;  // C(m+1, 0)
    for (unsigned j = 0; j < m; ++j) {
      acc += Rational(binom) * cache[j];
      binom = binom * (m + 1 - j) / (j + 1);
    }
    cache.push_back(-acc / Rational(m + 1));
  }
  return cache[n];
}

Real hurwitz_zeta(const Real& s, const Real& x) {
  if (x <= 0) throw std::domain_error("hurwitz_zeta: x must be > 0");
  if (s == 1) throw std::domain_error("hurwitz_zeta: pole at s = 1");
  unsigned bits = working_bits();
  unsigned J = em_terms();
  std::lock_guard<std::mutex> lock(g_em_mutex);
  const EmCache& cache = em_cache(J);
  Real thresh = ldexp(Real(1), -static_cast<int>(bits + 8));
  long K = em_shift_start();
  for (int attempt = 0; attempt < 6; ++attempt, K *= 2) {
    Real S = 0;
    for (long k = 0; k < K; ++k) S += pow(x + k, -s);
    Real A = x + K;
    Real base = pow(A, 1 - s) / (s - 1) + pow(A, -s) / 2;
    Real corr = 0;
    Real rising = s;                 // (s)_{2j-1}
    Real apow = pow(A, -s - 1);      // A^{-s-2j+1}
    Real am2 = 1 / (A * A);
    Real scale = abs(S) + abs(base) + 1;
    Real prev_mag = 0;
    bool converged = false;
    for (unsigned j = 1; j <= J; ++j) {
      Real term = cache.em[j] * rising * apow;
      Real mag = abs(term);
      if (j > 2 && mag > prev_mag) break;  // asymptotic tail started growing
      corr += term;
      if (mag <= thresh * scale) {
        converged = true;
        break;
      }
      prev_mag = mag;
      rising *= (s + (2 * j - 1)) * (s + 2 * j);
      apow *= am2;
    }
    if (converged) return S + base + corr;
  }
  throw std::runtime_error("hurwitz_zeta: Euler–Maclaurin did not converge");
}

Real hurwitz_zeta_ds(const Real& s, const Real& x) {
  if (x <= 0) throw std::domain_error("hurwitz_zeta_ds: x must be > 0");
  if (s == 1) throw std::domain_error("hurwitz_zeta_ds: pole at s = 1");
  unsigned bits = working_bits();
  unsigned J = em_terms();
  std::lock_guard<std::mutex> lock(g_em_mutex);
  const EmCache& cache = em_cache(J);
  Real thresh = ldexp(Real(1), -static_cast<int>(bits + 8));
  long K = em_shift_start();
  for (int attempt = 0; attempt < 6; ++attempt, K *= 2) {
    Real dS = 0;
    for (long k = 0; k < K; ++k) dS -= log(x + k) * pow(x + k, -s);
    Real A = x + K;
    Real logA = log(A);
    Real dbase = pow(A, 1 - s) * (-logA / (s - 1) - 1 / ((s - 1) * (s - 1))) -
                 logA * pow(A, -s) / 2;
    Real corr = 0;
    Real rising = s, drising = 1;    // ((s)_{2j-1}, d/ds of it)
    Real apow = pow(A, -s - 1);
    Real am2 = 1 / (A * A);
    Real scale = abs(dS) + abs(dbase) + 1;
    Real prev_mag = 0;
    bool converged = false;
    for (unsigned j = 1; j <= J; ++j) {
      Real term = cache.em[j] * (drising - rising * logA) * apow;
      Real mag = abs(term);
      if (j > 2 && mag > prev_mag) break;
      corr += term;
      if (mag <= thresh * scale) {
        converged = true;
        break;
      }
      prev_mag = mag;
      Real f = (s + (2 * j - 1)) * (s + 2 * j);
      drising = drising * f + rising * (2 * s + (4 * j - 1));
      rising *= f;
      apow *= am2;
    }
    if (converged) return dS + dbase + corr;
  }
  throw std::runtime_error("hurwitz_zeta_ds: Euler–Maclaurin did not converge");
}

std::pair<Real, Real> stieltjes01(const Real& x) {
  if (x <= 0) throw std::domain_error("stieltjes01: x must be > 0");
  unsigned bits = working_bits();
  unsigned J = em_terms();
  std::lock_guard<std::mutex> lock(g_em_mutex);
  const EmCache& cache = em_cache(J);
  Real thresh = ldexp(Real(1), -static_cast<int>(bits + 8));
  long K = em_shift_start();
  for (int attempt = 0; attempt < 6; ++attempt, K *= 2) {
    Real S0 = 0, S1 = 0;
    for (long k = 0; k < K; ++k) {
      Real v = x + k;
      Real r = 1 / v;
      S0 += r;
      S1 += log(v) * r;
    }
    Real A = x + K;
    Real logA = log(A);
    Real g0 = S0 - logA + 1 / (2 * A);
    Real g1 = S1 - logA * logA / 2 + logA / (2 * A);
    // correction sums; f1^(m)(A) = (a_m + b_m log A)/A^(m+1) with
    // a_{m+1} = b_m - (m+1) a_m, b_{m+1} = -(m+1) b_m
    Real a = 0, b = 1;
    unsigned m = 0;
    Real apow = 1 / A;  // A^-(m+1) at m = 0
    Real prev_mag = 0;
    bool converged = false;
    for (unsigned j = 1; j <= J; ++j) {
      while (m < 2 * j - 1) {
        Real na = b - Real(static_cast<long>(m) + 1) * a;
        Real nb = -Real(static_cast<long>(m) + 1) * b;
        a = na;
        b = nb;
        ++m;
        apow /= A;
      }
      // at this point apow = A^(-2j)
      Real t0 = cache.bov[j] * apow;
      Real t1 = -cache.em[j] * (a + b * logA) * apow;
      Real mag = abs(t0) + abs(t1);
      if (j > 2 && mag > prev_mag) break;
      g0 += t0;
      g1 += t1;
      if (mag <= thresh * (abs(g0) + abs(g1) + 1)) {
        converged = true;
        break;
      }
      prev_mag = mag;
    }
    if (converged) return {g0, g1};
  }
  throw std::runtime_error("stieltjes01: Euler–Maclaurin did not converge");
}

Real zeta_value(unsigned k) {
  if (k < 2) throw std::domain_error("zeta_value: k must be >= 2");
  return hurwitz_zeta(Real(k), Real(1));
}

Real zeta_real(const Real& s) { return hurwitz_zeta(s, Real(1)); }

Rational zeta_even_rational(unsigned k) {
  if (k < 2 || k % 2 != 0)
    throw std::domain_error("zeta_even_rational: k must be even and >= 2");
  // zeta(k) = (-1)^(k/2+1) B_k (2 pi)^k / (2 k!)
  Int fact = 1;
  for (unsigned i = 2; i <= k; ++i) fact *= i;
  Rational r = bernoulli(k) * Rational(Int(1) << k, 2 * fact);
  return (k / 2 + 1) % 2 == 0 ? r : -r;
}

namespace {
// Accelerated alternating sum sum_{k>=0} (-1)^k a(k) (Chebyshev-based).
template <class F>
Real alternating_sum(F&& a) {
  long n = static_cast<long>(working_bits() * 0.4) + 12;
  Real d = pow(3 + 2 * sqrt(Real(2)), n);
  d = (d + 1 / d) / 2;
  Real b = -1, c = -d, s = 0;
  for (long k = 0; k < n; ++k) {
    c = b - c;
    s += c * a(k);
    b = b * (k + n) * (k - n) / ((k + Real(1) / 2) * (k + 1));
  }
  return s / d;
}
}  // namespace

Real zeta_alternating(const Real& s) {
  if (s == 1) throw std::domain_error("zeta_alternating: pole at s = 1");
  Real eta = alternating_sum([&](long k) { return pow(Real(k + 1), -s); });
  return eta / (1 - pow(Real(2), 1 - s));
}

Real eta_alternating_ds(const Real& s) {
  return alternating_sum(
      [&](long k) { return -log(Real(k + 1)) * pow(Real(k + 1), -s); });
}

// ---------------------------------------------------------------------------

namespace {

// Imprimitivity Euler factors E(s) = prod_{p | N, p !| m} (1 - chi0(p) p^-s)
// and the derivative computed as an explicit sum of products (safe when a
// factor vanishes, e.g. at s = 0 for p with chi0(p) = 1).
void euler_factors(const DirichletCharacter& core, int64_t modulus,
                   const Real& s, Complex& e_out, Complex& de_out) {
  int64_t m = core.modulus();
  std::vector<Complex> factors, dfactors;
  for (auto [p, _] : factorize(modulus)) {
    (void)_;
    if (m % p == 0) continue;
    Complex cp = core.evaluate(p);
    Real ps = pow(Real(p), -s);
    factors.push_back(Complex(Real(1)) - cp * ps);
    dfactors.push_back(cp * (log(Real(p)) * ps));
  }
  Complex e{Real(1), Real(0)};
  for (const auto& f : factors) e *= f;
  Complex de{Real(0), Real(0)};
  for (size_t i = 0; i < factors.size(); ++i) {
    Complex term = dfactors[i];
    for (size_t j = 0; j < factors.size(); ++j)
      if (j != i) term *= factors[j];
    de += term;
  }
  e_out = e;
  de_out = de;
}

// core-only L(s) for real s (no Euler factors), non-trivial core
Complex l_core(const DirichletCharacter& core, const Real& s) {
  int64_t m = core.modulus();
  Complex acc{Real(0), Real(0)};
  if (s == 1) {
    for (int64_t a = 1; a < m; ++a) {
      UnityRoot v = core.value(a);
      if (v.zero) continue;
      acc += v.render() * digamma(Real(a) / m);
    }
    return acc * (Real(-1) / m);
  }
  for (int64_t a = 1; a <= m; ++a) {
    UnityRoot v = core.value(a);
    if (v.zero) continue;
    acc += v.render() * hurwitz_zeta(s, Real(a) / m);
  }
  return acc * pow(Real(m), -s);
}

// exact sum chi(a) * a rendered; equals -m L(0, chi) for non-trivial chi
Complex weighted_value_sum(const DirichletCharacter& core) {
  CyclotomicSum s;
  int64_t m = core.modulus();
  for (int64_t a = 1; a <= m; ++a) s.add(core.value(a), a);
  return s.render();
}

// core-only L'(0) via the log-Gamma closed form (non-trivial core)
Complex l_core_deriv0_lgamma(const DirichletCharacter& core) {
  int64_t m = core.modulus();
  Complex acc{Real(0), Real(0)};
  for (int64_t a = 1; a < m; ++a) {
    UnityRoot v = core.value(a);
    if (v.zero) continue;
    acc += v.render() * log_gamma(Real(a) / m);
  }
  Complex l0 = weighted_value_sum(core) * (Real(-1) / m);
  return acc - log(Real(m)) * l0;
}

void check_close(const Complex& a, const Complex& b, const Real& tol,
                 const char* what) {
  if (!(abs(a - b) <= tol * (1 + abs(a))))
    throw std::runtime_error(std::string("internal cross-check failed: ") +
                             what);
}

}  // namespace

Complex l_value(const DirichletCharacter& chi, const Real& s) {
  auto core = chi.primitive_core();
  int64_t m = core.modulus();
  Complex val;
  if (m == 1) {
    if (s == 1)
      throw std::domain_error("l_value: pole at s = 1 for trivial-core chi");
    val = Complex(zeta_real(s));
  } else {
    val = l_core(core, s);
  }
  Complex e, de;
  euler_factors(core, chi.modulus(), s, e, de);
  return val * e;
}

Complex l_value(const DirichletCharacter& chi, int s) {
  return l_value(chi, Real(s));
}

Rational l_value_zero_rational(const DirichletCharacter& chi) {
  auto core = chi.primitive_core();
  int64_t m = core.modulus();
  if (m == 1) return chi.modulus() > 1 ? Rational(0) : Rational(-1, 2);
  if (!core.is_real())
    throw std::domain_error(
        "l_value_zero_rational: character must be real-valued");
  Int acc = 0;
  for (int64_t a = 1; a <= m; ++a) acc += Int(core.value(a).as_int()) * a;
  Rational l0(-acc, Int(m));
  for (auto [p, _] : factorize(chi.modulus())) {
    (void)_;
    if (m % p == 0) continue;
    l0 *= Rational(1 - core.value(p).as_int());
  }
  return l0;
}

Complex l_derivative(const DirichletCharacter& chi, int s) {
  if (s != 0 && s != 1)
    throw std::domain_error("l_derivative: s must be 0 or 1");
  auto core = chi.primitive_core();
  int64_t m = core.modulus();
  unsigned bits = working_bits();
  Real check_tol = ldexp(Real(1), -static_cast<int>(bits / 2));
  Complex lval, dval;

  if (s == 0) {
    if (m == 1) {
      lval = Complex(Real(-1) / 2);
      dval = Complex(hurwitz_zeta_ds(Real(0), Real(1)));  // zeta'(0)
    } else {
      lval = weighted_value_sum(core) * (Real(-1) / m);
      Complex route_a = l_core_deriv0_lgamma(core);
      Complex route_b{Real(0), Real(0)};
      for (int64_t a = 1; a <= m; ++a) {
        UnityRoot v = core.value(a);
        if (v.zero) continue;
        route_b += v.render() * hurwitz_zeta_ds(Real(0), Real(a) / m);
      }
      route_b = route_b - log(Real(m)) * lval;
      check_close(route_a, route_b, check_tol, "L'(0) log-Gamma vs d/ds EM");
      dval = route_a;
    }
  } else {
    if (m == 1)
      throw std::domain_error("l_derivative: pole at s = 1 for trivial core");
    // gamma_1 route
    Complex acc_g0{Real(0), Real(0)}, acc_g1{Real(0), Real(0)};
    for (int64_t a = 1; a < m; ++a) {
      UnityRoot v = core.value(a);
      if (v.zero) continue;
      auto [g0, g1] = stieltjes01(Real(a) / m);
      Complex cv = v.render();
      acc_g0 += cv * g0;
      acc_g1 += cv * g1;
    }
    lval = acc_g0 / Real(m);
    dval = -(acc_g1 / Real(m)) - log(Real(m)) * lval;
    // check 1: central difference of the core L.  The individual zeta(1+-e)
    // terms are pole-sized (~1/e), so roundoff in the quotient scales like
    // 2^-bits / e^2; e = 2^-(bits/4) balances that against the e^2
    // truncation error, giving ~2^-(bits/2) accuracy for the check.
    Real eps = ldexp(Real(1), -static_cast<int>(bits / 4));
    Complex cd = (l_core(core, 1 + eps) - l_core(core, 1 - eps)) / (2 * eps);
    Real cd_tol = ldexp(Real(1), -static_cast<int>(bits / 2 - 12));
    check_close(dval, cd, cd_tol, "L'(1) gamma_1 vs central difference");
    // check 2 (odd core): functional-equation route
    if (core.is_odd()) {
      auto cbar = core.conjugate();
      Complex l0bar = weighted_value_sum(cbar) * (Real(-1) / m);
      Complex d0bar = l_core_deriv0_lgamma(cbar);
      Complex fe = lval * (Complex(log(pi() / m) + euler_gamma() +
                                   log2_const()) -
                           d0bar / l0bar);
      check_close(dval, fe, check_tol, "L'(1) gamma_1 vs functional equation");
    }
  }

  Complex e, de;
  euler_factors(core, chi.modulus(), Real(s), e, de);
  return dval * e + lval * de;
}

Real completed_lambda(const DirichletCharacter& chi, const Real& s) {
  if (!chi.is_real() || !chi.is_odd() || !chi.is_primitive())
    throw std::domain_error(
        "completed_lambda: need an odd real primitive character");
  Complex l = l_value(chi, s);
  return pow(pi(), -(s + 1) / 2) * gamma_fn((s + 1) / 2) * l.re;
}

Real lambda_log_derivative_at_1(const DirichletCharacter& chi) {
  if (!chi.is_real() || !chi.is_odd() || !chi.is_primitive())
    throw std::domain_error(
        "lambda_log_derivative_at_1: need an odd real primitive character");
  Complex ld = l_derivative(chi, 1);
  Complex lv = l_value(chi, 1);
  return -log(pi()) / 2 - euler_gamma() / 2 + (ld / lv).re;
}

}  // namespace eismock

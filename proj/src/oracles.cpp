#include "eismock/oracles.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "eismock/arith.hpp"
#include "eismock/lfun.hpp"

namespace eismock {

std::vector<int64_t> sum_of_squares_counts(int two_k, int64_t n_max) {
  if (two_k != 2 && two_k != 4 && two_k != 6 && two_k != 8)
    throw std::domain_error("sum_of_squares_counts: need two_k in {2,4,6,8}");
  if (n_max < 0)
    throw std::domain_error("sum_of_squares_counts: need n_max >= 0");
  std::vector<int64_t> one(n_max + 1, 0);
  one[0] = 1;
  for (int64_t j = 1; j * j <= n_max; ++j) one[j * j] = 2;
  std::vector<int64_t> acc(n_max + 1, 0);
  acc[0] = 1;
  for (int step = 0; step < two_k; ++step) {
    std::vector<int64_t> next(n_max + 1, 0);
    for (int64_t s = 0; s <= n_max; ++s) {
      if (acc[s] == 0) continue;
      next[s] += acc[s];  // j = 0 term of the square histogram
      for (int64_t j = 1; s + j * j <= n_max; ++j)
        next[s + j * j] += 2 * acc[s];
    }
    acc = std::move(next);
  }
  return acc;
}

int64_t sum_of_squares_count(int64_t n, int two_k) {
  if (n < 0) throw std::domain_error("sum_of_squares_count: need n >= 0");
  return sum_of_squares_counts(two_k, n)[n];
}

ImaginaryQuadraticData class_number(int64_t D) {
  if (D >= 0 || !is_fundamental_discriminant(D))
    throw std::domain_error(
        "class_number: need a fundamental discriminant D < 0");
  // reduced forms (a, b, c) with b^2 - 4ac = D, -a < b <= a <= c, and b >= 0
  // whenever a = c; exactly one per ideal class
  int64_t h = 0;
  for (int64_t a = 1; 3 * a * a <= -D; ++a) {
    for (int64_t b = -a + 1; b <= a; ++b) {
      if (((b - D) % 2 + 2) % 2 != 0) continue;  // b^2 = D (mod 4)
      int64_t num = b * b - D;
      if (num % (4 * a) != 0) continue;
      int64_t c = num / (4 * a);
      if (c < a) continue;
      if (b < 0 && a == c) continue;
      ++h;
    }
  }
  ImaginaryQuadraticData out;
  out.D = D;
  out.h = h;
  out.u = (D == -3) ? 6 : (D == -4) ? 4 : 2;
  return out;
}

int64_t hecke_R(int64_t D, int64_t n) {
  if (D >= 0 || !is_fundamental_discriminant(D))
    throw std::domain_error("hecke_R: need a fundamental discriminant D < 0");
  if (n < 1) throw std::domain_error("hecke_R: need n >= 1");
  int64_t acc = 0;
  for (int64_t c : divisors(n)) acc += kronecker_symbol(D, c);
  return acc;
}

Real hecke_Rplus(int64_t D, int64_t n, RplusMethod method) {
  if (D >= 0 || !is_fundamental_discriminant(D))
    throw std::domain_error(
        "hecke_Rplus: need a fundamental discriminant D < 0");
  if (n < 0) throw std::domain_error("hecke_Rplus: need n >= 0");
  auto chi = DirichletCharacter::kronecker(D);
  if (n == 0) {
    auto field = class_number(D);
    Real hu = Real(field.h) / field.u;
    if (method == RplusMethod::definitional)
      return (2 * log2_const() + log(pi()) + euler_gamma()) * hu -
             l_derivative(chi, 0).re;
    return 2 * hu * (lambda_log_derivative_at_1(chi) + log(Real(-D)));
  }
  if (method == RplusMethod::definitional) {
    Real acc = hecke_R(D, n) * log(Real(n));
    for (int64_t c : divisors(n))
      acc -= 2 * kronecker_symbol(D, n / c) * log(Real(c));
    return acc;
  }
  // prime-local rewrite: ramified primes weight the full count, inert primes
  // of odd order kill it and contribute through R_D(n/p)
  Real acc(0);
  for (const auto& [p, e] : factorize(n)) {
    int chi_p = kronecker_symbol(D, p);
    if (chi_p == 0)
      acc -= Real(e) * log(Real(p)) * hecke_R(D, n);
    else if (chi_p == -1)
      acc -= Real(e + 1) * log(Real(p)) * hecke_R(D, n / p);
  }
  return acc;
}

LevelOnePair normalized_level_one(int k, int64_t n_max) {
  if (k < 4 || k % 2 != 0)
    throw std::domain_error("normalized_level_one: need even k >= 4");
  if (n_max < 0)
    throw std::domain_error("normalized_level_one: need n_max >= 0");
  auto one1 = DirichletCharacter::trivial(1);
  LevelOnePair out;
  out.classical.assign(n_max + 1, Rational(0));
  out.classical[0] = 1;
  Rational factor = Rational(-2 * k) / bernoulli(static_cast<unsigned>(k));
  for (int64_t n = 1; n <= n_max; ++n) {
    Int sigma = 0;
    for (int64_t d : divisors(n)) {
      Int dp = 1;
      for (int i = 0; i < k - 1; ++i) dp *= d;
      sigma += dp;
    }
    out.classical[n] = factor * Rational(sigma);
  }
  out.mock_normalized = mock_coefficients(EisSpec{k, one1, one1, 1}, n_max);
  Real zk = zeta_value(static_cast<unsigned>(k));
  for (auto& v : out.mock_normalized.c) v = v / zk;
  out.mock_normalized.tail_const /= zk;
  return out;
}

namespace {

int64_t sigma_classical(int j, int64_t n) {
  if (n < 1) return 0;
  int64_t acc = 0;
  for (int64_t d : divisors(n)) acc += ipow(d, j);
  return acc;
}

int64_t sigma_at_quotient(int j, int64_t n, int64_t t) {
  return (n % t == 0) ? sigma_classical(j, n / t) : 0;
}

}  // namespace

ThetaReport theta_power_report(int power, int64_t n_max) {
  if (power != 2 && power != 4 && power != 6 && power != 8)
    throw std::domain_error("theta_power_report: need power in {2,4,6,8}");
  if (n_max < 1) throw std::domain_error("theta_power_report: need n_max >= 1");
  auto one1 = DirichletCharacter::trivial(1);
  auto psi4 = DirichletCharacter::kronecker(-4);
  auto counts = sum_of_squares_counts(power, n_max);
  ThetaReport report;
  report.power = power;
  report.rows.reserve(n_max);
  bool all = true;
  for (int64_t n = 1; n <= n_max; ++n) {
    int64_t combo = 0;
    switch (power) {
      case 2:
        combo = 4 * hecke_R(-4, n);
        break;
      case 4:
        combo = 8 * (sigma_classical(1, n) - 4 * sigma_at_quotient(1, n, 4));
        break;
      case 6:
        combo = 4 * (4 * sigma_twisted_int(2, n, psi4, one1) -
                     sigma_twisted_int(2, n, one1, psi4));
        break;
      case 8:
        combo = 16 * (sigma_classical(3, n) - 2 * sigma_at_quotient(3, n, 2) +
                      16 * sigma_at_quotient(3, n, 4));
        break;
    }
    report.rows.push_back({n, counts[n], combo});
    all = all && counts[n] == combo;
  }
  report.all_match = all;
  return report;
}

namespace {

void add_scaled(FourierSeries& acc, const Complex& w, const FourierSeries& s) {
  if (!(s.quasi_pi == 0))
    throw std::logic_error("add_scaled: unexpected 1/y term");
  if (acc.c.size() < s.c.size()) acc.c.resize(s.c.size());
  for (size_t n = 0; n < s.c.size(); ++n) acc.c[n] += w * s.c[n];
  acc.tail_const += abs(w) * s.tail_const;
  acc.tail_deg = std::max(acc.tail_deg, s.tail_deg);
}

struct AuditParts {
  EisSpec rep;             // representative spec carrying the weight data
  FourierSeries shadow;    // the true theta-power expansion
  FourierSeries holo_closed_form;
  FourierSeries holo_printed;
};

FourierSeries blank_series(int weight, int64_t n_max) {
  FourierSeries s;
  s.side = Side::mock;
  s.weight = weight;
  s.level = 4;
  s.c.assign(n_max + 1, Complex{});
  return s;
}

AuditParts build_audit_parts(int power, int64_t n_max) {
  auto one1 = DirichletCharacter::trivial(1);
  auto psi4 = DirichletCharacter::kronecker(-4);
  const int kappa = power / 2;
  AuditParts parts;
  parts.shadow = blank_series(kappa, n_max);
  parts.shadow.side = Side::holomorphic;
  parts.holo_closed_form = blank_series(2 - kappa, n_max);
  parts.holo_printed = blank_series(2 - kappa, n_max);
  auto counts = sum_of_squares_counts(power, n_max);

  if (power == 4) {
    parts.rep = EisSpec{2, one1, one1, 4};
    Complex w{-2 / (pi() * pi())};
    add_scaled(parts.shadow, w, eisenstein_coefficients(parts.rep, n_max));
    add_scaled(parts.holo_closed_form, conj(w),
               mock_coefficients(parts.rep, n_max));
    // printed table: -(1/(8 pi)) (16 log 2 + sum n^{-1} r_4(n) q^n)
    parts.holo_printed.c[0] = Complex{-2 * log2_const() / pi()};
    for (int64_t n = 1; n <= n_max; ++n)
      parts.holo_printed.c[n] =
          Complex{-Real(counts[n]) / (8 * pi() * n)};
    // r_4(n) <= (2 sqrt(n) + 1)^4 <= 81 n^2 for n >= 1
    parts.holo_printed.tail_const = Real(81) / (8 * pi());
    parts.holo_printed.tail_deg = 1;
  } else if (power == 6) {
    parts.rep = EisSpec{3, psi4, one1, 1};
    EisSpec other{3, one1, psi4, 1};
    Complex wa = Complex{Real(0), Real(-4)} / pow(pi(), 3);
    Complex wb = Complex{Real(32)} / pow(pi(), 3);
    add_scaled(parts.shadow, wa, eisenstein_coefficients(parts.rep, n_max));
    add_scaled(parts.shadow, wb, eisenstein_coefficients(other, n_max));
    add_scaled(parts.holo_closed_form, conj(wa),
               mock_coefficients(parts.rep, n_max));
    add_scaled(parts.holo_closed_form, conj(wb), mock_coefficients(other, n_max));
    // printed table:
    // -(1/(16 pi^2)) (16 L(2, psi_-4)
    //                 + sum n^{-2} (r_6(n) + 8 sigma_2^{1,psi_-4}(n)) q^n)
    Real pi2 = pi() * pi();
    parts.holo_printed.c[0] = l_value(psi4, 2) * Real(-1) / pi2;
    for (int64_t n = 1; n <= n_max; ++n) {
      int64_t inner = counts[n] + 8 * sigma_twisted_int(2, n, one1, psi4);
      parts.holo_printed.c[n] = Complex{-Real(inner) / (16 * pi2 * n * n)};
    }
    // r_6(n) <= 729 n^3 and |sigma_2^{1,psi}(n)| <= 2 n^3
    parts.holo_printed.tail_const = Real(745) / (16 * pi2);
    parts.holo_printed.tail_deg = 1;
  } else if (power == 8) {
    parts.rep = EisSpec{4, one1, one1, 4};
    Real pi4 = pow(pi(), 4);
    const std::pair<int64_t, Real> pieces[] = {
        {1, 6 / pi4}, {2, -12 / pi4}, {4, 96 / pi4}};
    for (const auto& [t, w] : pieces) {
      EisSpec spec{4, one1, one1, t};
      add_scaled(parts.shadow, Complex{w}, eisenstein_coefficients(spec, n_max));
      add_scaled(parts.holo_closed_form, Complex{w},
                 mock_coefficients(spec, n_max));
    }
    // printed table: -(1/(16 pi^3)) (8 zeta(3) + sum n^{-3} r_8(n) q^n)
    Real pi3 = pow(pi(), 3);
    parts.holo_printed.c[0] = Complex{-zeta_value(3) / (2 * pi3)};
    for (int64_t n = 1; n <= n_max; ++n)
      parts.holo_printed.c[n] =
          Complex{-Real(counts[n]) / (16 * pi3 * n * n * n)};
    // r_8(n) <= 6561 n^4
    parts.holo_printed.tail_const = Real(6561) / (16 * pi3);
    parts.holo_printed.tail_deg = 1;
  } else {
    throw std::domain_error("theta_mock_audit: need power in {4,6,8}");
  }
  return parts;
}

}  // namespace

ThetaMockAudit theta_mock_audit(int power, const Complex& z, int samples,
                                uint64_t seed, const Real& tol) {
  if (!(z.im > 0)) throw std::domain_error("theta_mock_audit: need Im z > 0");
  if (samples < 1) throw std::domain_error("theta_mock_audit: need samples");
  const int weight = 2 - power / 2;
  auto elements = sample_gamma0(4, samples, seed);
  ThetaMockAudit audit;
  audit.power = power;

  int64_t n_max = 256;
  auto run = [&](bool printed) -> Real {
    for (;;) {
      auto parts = build_audit_parts(power, n_max);
      HarmonicForm form{parts.rep,
                        printed ? parts.holo_printed : parts.holo_closed_form,
                        parts.shadow};
      auto nu = harmonic_nebentypus(parts.rep);
      PointFunction f = [&](const Complex& w) {
        return evaluate_harmonic(form, w, tol / 16);
      };
      try {
        Real worst(0);
        for (const auto& g : elements) {
          Real r = modularity_residual(f, weight, nu, g, z);
          if (r > worst) worst = r;
        }
        return worst;
      } catch (const TruncationError& e) {
        n_max = e.required_n_max;
      }
    }
  };
  audit.residual_closed_form = run(false);
  audit.residual_printed = run(true);
  auto parts = build_audit_parts(power, 1);
  audit.printed_to_closed_form_ratio =
      abs(parts.holo_printed.c[1]) / abs(parts.holo_closed_form.c[1]);
  audit.closed_form_is_modular = audit.residual_closed_form < tol;
  audit.printed_is_modular = audit.residual_printed < tol;
  return audit;
}

}  // namespace eismock

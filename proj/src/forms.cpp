#include "eismock/forms.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace eismock {

namespace {

int working_bits_int() { return static_cast<int>(working_bits()); }

}  // namespace

// ---- special kernels -------------------------------------------------------

Real exp_integral_e1(const Real& x) {
  if (!(x > 0)) throw std::domain_error("exp_integral_e1: need x > 0");
  Real eps = ldexp(Real(1), -working_bits_int() - 8);
  if (x <= 2) {
    // E_1(x) = -gamma - log x + sum_{j>=1} (-1)^{j+1} x^j / (j j!)
    Real sum = 0, term = 1;
    for (int j = 1; j < 10000; ++j) {
      term *= x / j;
      Real contrib = term / j;
      if (j % 2)
        sum += contrib;
      else
        sum -= contrib;
      if (contrib < eps) return -euler_gamma() - log(x) + sum;
    }
    throw std::runtime_error("exp_integral_e1: series stalled");
  }
  // modified Lentz continued fraction:
  // E_1(x) = e^{-x} / (x+1 - 1^2/(x+3 - 2^2/(x+5 - ...)))
  Real tiny = ldexp(Real(1), -4 * working_bits_int());
  Real f = x + 1, C = f, D = 0;
  for (int j = 1; j < 10000; ++j) {
    Real aj = -Real(j) * j;
    Real bj = x + 2 * j + 1;
    D = bj + aj * D;
    if (D == 0) D = tiny;
    C = bj + aj / C;
    if (C == 0) C = tiny;
    D = 1 / D;
    Real delta = C * D;
    f *= delta;
    if (abs(delta - 1) < eps) return exp(-x) / f;
  }
  throw std::runtime_error("exp_integral_e1: continued fraction stalled");
}

Real incomplete_gamma_int(int a, const Real& x) {
  if (!(x > 0)) throw std::domain_error("incomplete_gamma_int: need x > 0");
  if (a < 0) throw std::domain_error("incomplete_gamma_int: need a >= 0");
  if (a == 0) return exp_integral_e1(x);
  // Gamma(a, x) = (a-1)! e^{-x} sum_{j<a} x^j / j!
  Real sum = 0, term = 1;
  for (int j = 0; j < a; ++j) {
    sum += term;
    term *= x / (j + 1);
  }
  Real fact = 1;
  for (int i = 2; i < a; ++i) fact *= i;
  return fact * exp(-x) * sum;
}

Real beta_kernel(int k, int64_t n, const Real& y) {
  if (!(y > 0)) throw std::domain_error("beta_kernel: need y > 0");
  if (n < 0) throw std::domain_error("beta_kernel: need n >= 0");
  if (n == 0) {
    if (k == 1) return -log(y);
    return pow(y, k - 1) / (1 - k);
  }
  Real x = 4 * pi() * n * y;
  return incomplete_gamma_int(k - 1, x) / pow(4 * pi() * n, k - 1);
}

Real omega_function(const Real& y, const Real& alpha, const Real& beta,
                    const Real& tol) {
  if (!(y > 0)) throw std::domain_error("omega_function: need y > 0");
  if (beta < 0) throw std::domain_error("omega_function: need beta >= 0");
  if (beta == 0) return Real(1);
  Real pref = pow(y, beta) / gamma_fn(beta);
  // Cutoff A with a certified tail: for u >= A >= 1,
  //   (u+1)^{alpha-1} u^{beta-1} <= c0 u^g,  c0 = max(1, 2^{alpha-1}),
  //   g = alpha + beta - 2, and
  //   int_A^inf u^g e^{-yu} du <= A^g e^{-yA} / y              (g <= 0)
  //                            <= e^{-yA/2} Gamma(g+1) (2/y)^{g+1}  (g > 0)
  Real L = -log(tol / 8) + 10;
  Real A = L / y;
  if (A < 1) A = 1;
  Real g = alpha + beta - 2;
  Real c0 = alpha >= 1 ? pow(Real(2), alpha - 1) : Real(1);
  bool certified = false;
  for (int attempt = 0; attempt < 6; ++attempt) {
    Real t = (g <= 0) ? c0 * pow(A, g) * exp(-y * A) / y
                      : c0 * exp(-y * A / 2) * gamma_fn(g + 1) *
                            pow(2 / y, g + 1);
    if (pref * t <= tol / 4) {
      certified = true;
      break;
    }
    A *= 3;
  }
  if (!certified)
    throw std::runtime_error("omega_function: tail bound not reached");
  Real scale = pref * A;
  Real quad_tol = (scale > 1) ? tol / (2 * scale) : tol / 2;
  auto f = [&](const Real& xi, const Real&) -> Real {
    Real u = A * xi;
    return exp(-y * u) * pow(u + 1, alpha - 1) * pow(u, beta - 1);
  };
  auto q = tanh_sinh_01<Real>(f, quad_tol);
  return scale * q.value;
}

// ---- assembled harmonic forms ----------------------------------------------

HarmonicForm assemble_harmonic(const EisSpec& spec, int64_t n_max) {
  return {spec, mock_coefficients(spec, n_max),
          eisenstein_coefficients(spec, n_max)};
}

namespace {

// envelope with beta_{2-k}(n, y) e^{2 pi n y} <= beta_envelope(k, y) e^{-2 pi n y}
// for every n >= 1: from Gamma(a, x) <= (a-1)! max(3, a) max(1, x^{a-1}) e^{-x}
// (termwise on the closed form), and E_1(x) <= e^{-x}/x for k = 1.
Real beta_envelope(int k, const Real& y) {
  if (k == 1) return 1 / (4 * pi() * y);
  Real fact = 1;
  for (int i = 2; i <= k - 2; ++i) fact *= i;
  Real m3 = Real(k - 1 > 3 ? k - 1 : 3);
  Real fy = pow(4 * pi() * y, k - 2);
  if (fy < 1) fy = 1;
  return fact * m3 * fy * pow(4 * pi(), 1 - k);
}

}  // namespace

int64_t required_terms(const FourierSeries& series, int k_for_beta,
                       const Real& y, const Real& tol, bool beta_weighted) {
  if (!(y > 0)) throw std::domain_error("required_terms: need y > 0");
  Real C = series.tail_const;
  if (beta_weighted) C *= beta_envelope(k_for_beta, y);
  if (C == 0) return 0;
  const int q = series.tail_deg;
  const Real two_pi_y = 2 * pi() * y;
  Real r = exp(-two_pi_y);
  // tail(N) = sum_{n>N} C n^q r^n <= C (N+1)^q r^{N+1} / (1 - rho)
  // with rho = r (1 + 1/(N+1))^q, valid once rho < 1
  int64_t N = 8;
  while (N < (int64_t(1) << 40)) {
    Real rho = r * pow(1 + Real(1) / Real(N + 1), q);
    if (rho < 1) {
      Real tail = C * pow(Real(N + 1), q) * exp(-two_pi_y * (N + 1)) /
                  (1 - rho);
      if (tail <= tol) return N;
    }
    N += N / 4 + 1;
  }
  throw std::runtime_error("required_terms: no feasible truncation point");
}

Complex evaluate_series(const FourierSeries& series, const Complex& z,
                        const Real& tol) {
  Real y = z.im;
  if (!(y > 0)) throw std::domain_error("evaluate_series: need Im z > 0");
  int64_t need = required_terms(series, 0, y, tol / 2, false);
  if (need > series.n_max()) throw TruncationError(need);
  Complex q = cexp(Complex(Real(0), 2 * pi()) * z);
  Complex acc = series.c[0];
  Complex qn = Complex(Real(1));
  for (int64_t n = 1; n <= need; ++n) {
    qn *= q;
    const Complex& cn = series.c[n];
    if (cn.re == 0 && cn.im == 0) continue;
    acc += cn * qn;
  }
  if (series.quasi_pi != 0)
    acc += Complex(to_real(series.quasi_pi) * pi() / y);
  return acc;
}

Complex evaluate_harmonic(const HarmonicForm& form, const Complex& z,
                          const Real& tol) {
  Real y = z.im;
  if (!(y > 0)) throw std::domain_error("evaluate_harmonic: need Im z > 0");
  const int k = form.spec.k;
  int64_t need_p = required_terms(form.plus, 0, y, tol / 4, false);
  int64_t need_s = required_terms(form.shadow, k, y, tol / 4, true);
  int64_t have = std::min(form.plus.n_max(), form.shadow.n_max());
  if (std::max(need_p, need_s) > have)
    throw TruncationError(std::max(need_p, need_s));
  Complex q = cexp(Complex(Real(0), 2 * pi()) * z);
  Complex qi = cexp(Complex(Real(0), -2 * pi()) * z);
  Complex acc = form.plus.c[0];
  acc -= conj(form.shadow.c[0]) * beta_kernel(k, 0, y);
  Complex qn(Real(1)), qmn(Real(1));
  int64_t top = std::max(need_p, need_s);
  for (int64_t n = 1; n <= top; ++n) {
    qn *= q;
    qmn *= qi;
    if (n <= need_p) {
      const Complex& cn = form.plus.c[n];
      if (!(cn.re == 0 && cn.im == 0)) acc += cn * qn;
    }
    if (n <= need_s) {
      const Complex& en = form.shadow.c[n];
      if (!(en.re == 0 && en.im == 0))
        acc -= conj(en) * beta_kernel(k, n, y) * qmn;
    }
  }
  return acc;
}

// ---- numeric differential operators ----------------------------------------

namespace {

// fourth-order five-point first derivative along `dir`
Complex deriv4(const PointFunction& f, const Complex& z, const Complex& dir,
               const Real& h) {
  Complex zp = z + dir * h, zm = z - dir * h;
  Complex zp2 = z + dir * (2 * h), zm2 = z - dir * (2 * h);
  return (f(zm2) - f(zp2) + (f(zp) - f(zm)) * Real(8)) / (12 * h);
}

}  // namespace

Complex xi_numeric(const PointFunction& f, int w, const Complex& z) {
  Real y = z.im;
  if (!(y > 0)) throw std::domain_error("xi_numeric: need Im z > 0");
  Real h = y * ldexp(Real(1), -working_bits_int() / 4);
  Complex fx = deriv4(f, z, Complex(Real(1)), h);
  Complex fy = deriv4(f, z, imag_unit(), h);
  // 2 i y^w conj((f_x + i f_y)/2) = y^w (i conj(f_x) + conj(f_y))
  return pow(y, w) * (imag_unit() * conj(fx) + conj(fy));
}

Complex laplacian_numeric(const PointFunction& f, int w, const Complex& z) {
  Real y = z.im;
  if (!(y > 0)) throw std::domain_error("laplacian_numeric: need Im z > 0");
  Real h = y * ldexp(Real(1), -working_bits_int() / 5);
  Complex f0 = f(z);
  auto second = [&](const Complex& dir) {
    Complex zp = z + dir * h, zm = z - dir * h;
    Complex zp2 = z + dir * (2 * h), zm2 = z - dir * (2 * h);
    return (-f(zp2) - f(zm2) + (f(zp) + f(zm)) * Real(16) - f0 * Real(30)) /
           (12 * h * h);
  };
  Complex fxx = second(Complex(Real(1)));
  Complex fyy = second(imag_unit());
  Complex fx = deriv4(f, z, Complex(Real(1)), h);
  Complex fy = deriv4(f, z, imag_unit(), h);
  return -(y * y) * (fxx + fyy) +
         imag_unit() * (Real(w) * y) * (fx + imag_unit() * fy);
}

// ---- modularity -------------------------------------------------------------

Complex moebius_apply(const GroupElement& g, const Complex& z) {
  Complex num = z * Real(g.a) + Complex(Real(g.b));
  Complex den = z * Real(g.c) + Complex(Real(g.d));
  return num / den;
}

namespace {

int64_t egcd(int64_t a, int64_t b, int64_t& x, int64_t& y) {
  if (b == 0) {
    x = 1;
    y = 0;
    return a;
  }
  int64_t x1, y1;
  int64_t g = egcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

}  // namespace

std::vector<GroupElement> sample_gamma0(int64_t level, int count,
                                        uint64_t seed) {
  if (level < 1) throw std::domain_error("sample_gamma0: need level >= 1");
  std::vector<GroupElement> out;
  if (count <= 0) return out;
  out.push_back({1, 1, 0, 1});
  std::mt19937_64 rng(seed);
  const int64_t entry_cap = std::max<int64_t>(20, level);
  const uint64_t kmax =
      static_cast<uint64_t>(std::max<int64_t>(1, entry_cap / level));
  while (static_cast<int>(out.size()) < count) {
    int64_t c = level * static_cast<int64_t>(1 + rng() % kmax);
    int64_t d = static_cast<int64_t>(rng() % 41) - 20;
    if (d == 0 || std::gcd(std::abs(d), c) != 1) continue;
    int64_t dm = ((d % c) + c) % c;
    int64_t x, yy;
    egcd(dm, c, x, yy);
    int64_t a = ((x % c) + c) % c;
    if (a > c / 2) a -= c;  // minimal |a| representative
    int64_t b = (a * d - 1) / c;
    if (std::abs(a) > entry_cap || std::abs(b) > entry_cap) continue;
    out.push_back({a, b, c, d});
  }
  return out;
}

Real modularity_residual(const PointFunction& f, int w,
                         const std::function<Complex(int64_t)>& nu,
                         const GroupElement& g, const Complex& z) {
  Complex gz = moebius_apply(g, z);
  Complex j = z * Real(g.c) + Complex(Real(g.d));
  return abs(f(gz) - nu(g.d) * cpow_int(j, w) * f(z));
}

std::function<Complex(int64_t)> harmonic_nebentypus(const EisSpec& spec) {
  DirichletCharacter psi = spec.psi, rho = spec.rho;
  return [psi, rho](int64_t d) {
    return conj(psi.evaluate(d) * rho.evaluate(d));
  };
}

// ---- lattice sums ------------------------------------------------------------

namespace {

// coefficients of P_p(u) with sum_{j in Z} (j + X)^{-p} = pi^p P_p(cot pi X);
// P_1 = u, P_{p+1} = (1 + u^2) P_p' / p, all exactly rational
std::vector<std::vector<Rational>> cot_polynomials(int pmax) {
  std::vector<std::vector<Rational>> P(pmax + 1);
  if (pmax >= 1) P[1] = {Rational(0), Rational(1)};
  for (int p = 1; p < pmax; ++p) {
    const auto& cur = P[p];
    std::vector<Rational> der(cur.size() - 1, Rational(0));
    for (size_t i = 1; i < cur.size(); ++i)
      der[i - 1] = cur[i] * static_cast<int>(i);
    std::vector<Rational> next(cur.size() + 1, Rational(0));
    for (size_t i = 0; i < der.size(); ++i) {
      next[i] += der[i] / p;
      next[i + 2] += der[i] / p;
    }
    P[p + 1] = std::move(next);
  }
  return P;
}

Complex eval_poly(const std::vector<Rational>& P, const Complex& u) {
  Complex acc;
  for (size_t i = P.size(); i-- > 0;)
    acc = acc * u + Complex(to_real(P[i]));
  return acc;
}

// cot(pi w), clamped to the limit -i (Im w -> +inf) / +i (Im w -> -inf) once
// the exponential correction e^{-2 pi |Im w|} is far below working precision;
// the clamp makes the nu >= 2 cotangent polynomials vanish exactly
Complex cot_pi_clamped(const Complex& w) {
  Real im = pi() * w.im;
  Real thresh = Real(working_bits_int());
  if (im > thresh) return {Real(0), Real(-1)};
  if (im < -thresh) return {Real(0), Real(1)};
  Complex e = cexp(Complex(Real(0), 2 * pi()) * w);
  return imag_unit() * (e + Complex(Real(1))) / (e - Complex(Real(1)));
}

// binom(-b, nu) as an exact integer: (-1)^nu C(b + nu - 1, nu)
Int binom_neg(int b, int nu) {
  Int num = 1;
  for (int i = 0; i < nu; ++i) num *= (b + i);
  Int den = 1;
  for (int i = 2; i <= nu; ++i) den *= i;
  Int c = num / den;
  return (nu % 2) ? Int(-c) : c;
}

// sum of rho over a full residue period: phi(M) for the principal character,
// exactly zero otherwise (orthogonality)
Complex character_period_sum(const DirichletCharacter& rho) {
  if (rho.conductor() > 1) return {};
  Real count(0);
  for (int64_t r = 0; r < rho.modulus(); ++r)
    if (std::gcd(r, rho.modulus()) == 1) count += 1;
  return {count, Real(0)};
}

// inner n-sum machinery for fixed exponents: H(m) = sum_{n in Z} rho(n)
// (m z + n)^{-a} (m zbar + n)^{-b}, evaluated in closed form for real m > 0
struct LatticeKernel {
  int a = 1, b = 0;
  int64_t M = 1;
  DirichletCharacter rho = DirichletCharacter::trivial(1);
  Complex z;
  std::vector<std::vector<Rational>> P;
  Complex period_sum;

  Complex eval(const Real& m) const {
    Complex mz = z * m;
    // Im(pi A_r) = pi m y / M is shared by every residue class, so all the
    // cotangents saturate together; past the clamp the P_nu(-i) values for
    // nu >= 2 must be taken as exact zeros, not evaluated (their rational
    // coefficients round, and the residue would pollute the far tail)
    bool clamped = pi() * mz.im / Real(M) > Real(working_bits_int());
    Complex acc;
    if (b == 0) {
      if (clamped) return {};  // pure path has a >= 3, so every term dies
      for (int64_t r = 0; r < M; ++r) {
        Complex chi = rho.evaluate(r);
        if (chi.re == 0 && chi.im == 0) continue;
        Complex A = (mz + Complex(Real(r))) / Real(M);
        acc += chi * eval_poly(P[a], cot_pi_clamped(A));
      }
      return acc * (pow(pi(), a) * pow(Real(M), -a));
    }
    Complex mzb = conj(z) * m;
    // partial fractions with Delta = B - A = -2 i m y / M;
    // alpha_1 = -beta_1 pairs the conditionally convergent cotangent terms
    Complex Delta = (mzb - mz) / Real(M);
    std::vector<Complex> alpha(a + 1), beta(b + 1);
    for (int nu = 0; nu < a; ++nu)
      alpha[a - nu] =
          Complex(to_real(binom_neg(b, nu))) * cpow_int(Delta, -b - nu);
    for (int nu = 0; nu < b; ++nu)
      beta[b - nu] =
          Complex(to_real(binom_neg(a, nu))) * cpow_int(-Delta, -a - nu);
    if (clamped) {
      // only the paired nu = 1 difference survives, with the saturated
      // values u_A = -i, u_B = +i shared by every residue class
      Complex diff{Real(0), Real(-2)};
      return period_sum * alpha[1] * diff * pi() * pow(Real(M), -(a + b));
    }
    for (int64_t r = 0; r < M; ++r) {
      Complex chi = rho.evaluate(r);
      if (chi.re == 0 && chi.im == 0) continue;
      Complex A = (mz + Complex(Real(r))) / Real(M);
      Complex B = (mzb + Complex(Real(r))) / Real(M);
      Complex uA = cot_pi_clamped(A);
      Complex uB = cot_pi_clamped(B);
      Complex term =
          alpha[1] * (eval_poly(P[1], uA) - eval_poly(P[1], uB)) * pi();
      Real pip = pi();
      for (int nu = 2; nu <= a || nu <= b; ++nu) {
        pip *= pi();
        Complex s;
        if (nu <= a) s += alpha[nu] * eval_poly(P[nu], uA);
        if (nu <= b) s += beta[nu] * eval_poly(P[nu], uB);
        term += s * pip;
      }
      acc += chi * term;
    }
    return acc * pow(Real(M), -(a + b));
  }
};

struct OuterTail {
  Complex value;
  Real bound;
};

// Euler-Maclaurin for sum_{j >= j0} g(j) with g(j) = H(ell0 + j L):
// integral (tanh-sinh under j = j0 / v) + g(j0)/2 - g'(j0)/12, with the
// next correction |g'''(j0)|/720 (third central difference) reported as the
// error estimate together with the quadrature error.
OuterTail em_class_tail(const LatticeKernel& K, int64_t ell0, int64_t L,
                        int64_t j0, const Real& tol) {
  auto g = [&](const Real& j) { return K.eval(Real(ell0) + j * Real(L)); };
  const Real J0 = Real(j0);
  auto integrand = [&](const Real& v, const Real&) -> Complex {
    return g(J0 / v) * (J0 / (v * v));
  };
  auto quad = tanh_sinh_01<Complex>(integrand, tol / 4);
  Complex gj0 = g(J0);
  auto cd = [&](const Real& delta) {
    return (g(J0 + delta) - g(J0 - delta)) / (2 * delta);
  };
  Complex d1 = cd(Real(1) / 8);
  Complex d2 = cd(Real(1) / 16);
  Complex gp = (d2 * Real(4) - d1) / Real(3);
  Real delta = Real(1) / 8;
  Complex g3 = (g(J0 + 2 * delta) - g(J0 + delta) * Real(2) +
                g(J0 - delta) * Real(2) - g(J0 - 2 * delta)) /
               (2 * delta * delta * delta);
  OuterTail out;
  out.value = quad.value + gj0 / Real(2) - gp / Real(12);
  out.bound = quad.error + abs(g3) / Real(360);
  return out;
}

}  // namespace

LatticeResult lattice_eisenstein(int kappa, const Real& s,
                                 const DirichletCharacter& psi,
                                 const DirichletCharacter& rho,
                                 const Complex& z, int64_t bound,
                                 const Real& tol) {
  if (!(z.im > 0))
    throw std::domain_error("lattice_eisenstein: need Im z > 0");
  Real p = kappa + 2 * s;
  if (!(p > 2))
    throw std::domain_error("lattice_eisenstein: need kappa + 2s > 2");
  const int64_t L = psi.modulus();
  const int64_t M = rho.modulus();
  bound = std::max<int64_t>({bound, 10, 2 * L, 2 * M});

  // global parity: (m, n) vs (-m, -n) cancels the whole sum when negative
  int par = psi.parity() * rho.parity() * (kappa % 2 ? -1 : 1);
  if (par < 0) return {Complex(), Real(0)};

  const bool s_int = (s == floor(s)) && s >= 0 && s <= 64;
  if (s_int) {
    const int b = static_cast<int>(s.convert_to<long>());
    const int a = kappa + b;
    if (a < 1)
      throw std::domain_error(
          "lattice_eisenstein: unsupported exponents (kappa + s < 1)");
    LatticeKernel K{a,
                    b,
                    M,
                    rho,
                    z,
                    cot_polynomials(std::max(a, b)),
                    character_period_sum(rho)};
    Complex acc;
    if (L == 1) acc += l_value(rho, p);  // m = 0 row
    for (int64_t m = 1; m <= bound; ++m) {
      Complex chi = psi.evaluate(m);
      if (chi.re == 0 && chi.im == 0) continue;
      acc += chi * K.eval(Real(m));
    }
    Real err(0);
    for (int64_t ell0 = 0; ell0 < L; ++ell0) {
      Complex chi = psi.evaluate(ell0);
      if (chi.re == 0 && chi.im == 0) continue;
      int64_t j0 = (bound - ell0) / L + 1;
      OuterTail tail = em_class_tail(K, ell0, L, j0, tol);
      acc += chi * tail.value;
      err += tail.bound;
    }
    return {acc, err};
  }

  // non-integer s: plain box with a certified area tail.  |mz + n|^2 >=
  // lambda (m^2 + n^2) with lambda the least eigenvalue of the binary form.
  Complex acc;
  for (int64_t m = -bound; m <= bound; ++m) {
    Complex chi_m = psi.evaluate(m);
    if (chi_m.re == 0 && chi_m.im == 0) continue;
    for (int64_t n = -bound; n <= bound; ++n) {
      if (m == 0 && n == 0) continue;
      Complex chi_n = rho.evaluate(n);
      if (chi_n.re == 0 && chi_n.im == 0) continue;
      Complex w = z * Real(m) + Complex(Real(n));
      Complex t = cpow_int(w, -kappa) * Complex(pow(norm(w), -s));
      acc += chi_m * chi_n * t;
    }
  }
  acc = acc / Real(2);
  Real zn = norm(z);
  Real lambda = (zn + 1 - sqrt((zn - 1) * (zn - 1) + 4 * z.re * z.re)) / 2;
  Real X = Real(bound);
  Real tail = 4 * pow(lambda, -p / 2) *
              (pow(X, 2 - p) / (p - 2) + pow(X, 1 - p));
  return {acc, tail};
}

}  // namespace eismock

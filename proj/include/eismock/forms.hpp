#pragma once
// Analytic layer: incomplete-gamma kernels, the omega special function,
// harmonic completions of the Eisenstein q-expansions with certified
// truncation control, numeric xi / Laplacian operators, modularity residuals
// over congruence subgroups, and direct lattice sums (accelerated for
// integer spectral parameter).

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "eismock/coeffs.hpp"

namespace eismock {

// ---- special kernels -------------------------------------------------------

// Gamma(a, x) for integer a >= 0 and x > 0; Gamma(0, x) = E_1(x).
Real incomplete_gamma_int(int a, const Real& x);

// Exponential integral E_1(x), x > 0 (series for small x, continued
// fraction beyond).
Real exp_integral_e1(const Real& x);

// beta_{2-k}(n, y), the n-th non-holomorphic kernel of weight 2 - k:
//   n > 0 : Gamma(k-1, 4 pi n y) / (4 pi n)^{k-1}
//   n = 0 : y^{k-1} / (1 - k)   (k != 1),   -log y   (k = 1)
Real beta_kernel(int k, int64_t n, const Real& y);

// omega(y; alpha, beta) = (y^beta / Gamma(beta))
//     int_0^inf e^{-yu} (u+1)^{alpha-1} u^{beta-1} du,   y > 0, beta >= 0;
// beta = 0 returns 1 exactly.  The cutoff point carries a certified
// exponential tail bound.
Real omega_function(const Real& y, const Real& alpha, const Real& beta,
                    const Real& tol);

// ---- assembled harmonic forms ----------------------------------------------

// F(z) = sum_{n>=0} c+(n) q^n - sum_{n>=0} conj(cE(n)) beta_{2-k}(n, y) q^{-n}
// with c+ the mock coefficients and cE the Eisenstein coefficients of the
// same spec.  xi_{2-k} F recovers the Eisenstein series.
struct HarmonicForm {
  EisSpec spec;
  FourierSeries plus;    // holomorphic part, weight 2 - k
  FourierSeries shadow;  // Eisenstein coefficients entering the completion
};

HarmonicForm assemble_harmonic(const EisSpec& spec, int64_t n_max);

// Thrown when the stored coefficient range cannot certify the requested
// tolerance at the evaluation point; carries a range that suffices.
struct TruncationError : std::runtime_error {
  int64_t required_n_max;
  explicit TruncationError(int64_t need)
      : std::runtime_error("series truncation range insufficient"),
        required_n_max(need) {}
};

// Smallest N whose dropped tail (n > N) stays below tol at height y, using
// the series' certified growth bound; `beta_weighted` folds in the
// beta_{2-k}(n, y) e^{2 pi n y} factor of the non-holomorphic part.
int64_t required_terms(const FourierSeries& series, int k_for_beta,
                       const Real& y, const Real& tol, bool beta_weighted);

// Value of the q-expansion at z (Im z > 0), including the quasi-modular
// pi/y term when present.  Throws TruncationError if the stored range
// cannot certify tol.
Complex evaluate_series(const FourierSeries& series, const Complex& z,
                        const Real& tol);

// Value of the completed harmonic form at z.
Complex evaluate_harmonic(const HarmonicForm& form, const Complex& z,
                          const Real& tol);

// ---- numeric differential operators ----------------------------------------

using PointFunction = std::function<Complex(const Complex&)>;

// xi_w f = 2 i y^w conj(d f / d zbar): fourth-order central differences
// (Richardson-extrapolated) with step scaled to y and working precision.
Complex xi_numeric(const PointFunction& f, int w, const Complex& z);

// Delta_w f = -y^2 (f_xx + f_yy) + i w y (f_x + i f_y), five-point stencils.
Complex laplacian_numeric(const PointFunction& f, int w, const Complex& z);

// ---- modularity -------------------------------------------------------------

// Element of SL_2(Z) with c divisible by the level.
struct GroupElement {
  int64_t a = 1, b = 0, c = 0, d = 1;
};

Complex moebius_apply(const GroupElement& g, const Complex& z);

// Deterministic seeded sample: the translation z -> z + 1 first, then
// `count - 1` elements with c a positive multiple of the level and bounded
// denominator entries.
std::vector<GroupElement> sample_gamma0(int64_t level, int count,
                                        uint64_t seed);

// |f(gz) - nu(d) (cz + d)^w f(z)|
Real modularity_residual(const PointFunction& f, int w,
                         const std::function<Complex(int64_t)>& nu,
                         const GroupElement& g, const Complex& z);

// nebentypus d -> conj(psi(d) rho(d)) of the harmonic completion
std::function<Complex(int64_t)> harmonic_nebentypus(const EisSpec& spec);

// ---- lattice sums ------------------------------------------------------------

struct LatticeResult {
  Complex value;
  Real tail_bound;  // remainder estimate for the outer summation cutoff
};

// E_kappa(z, s; psi, rho) = (1/2) sum'_{(m,n)} psi(m) rho(n)
//     (m z + n)^{-kappa} |m z + n|^{-2s},   kappa + 2s > 2.
// Integer s >= 0: inner n-sums are evaluated in closed form via cotangent
// polynomials and the outer m-tail by Euler-Maclaurin per residue class
// (fast, near-certified).  Non-integer s: plain box sum with a certified
// area tail bound (slow convergence; bound reported honestly).
LatticeResult lattice_eisenstein(int kappa, const Real& s,
                                 const DirichletCharacter& psi,
                                 const DirichletCharacter& rho,
                                 const Complex& z, int64_t bound,
                                 const Real& tol);

}  // namespace eismock

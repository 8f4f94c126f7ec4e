#pragma once
// Dirichlet L-functions at integer points and their first derivatives at
// s = 0 and s = 1, built on an Euler–Maclaurin Hurwitz-zeta engine with a
// termwise d/ds variant and Stieltjes constants.  Completed L-functions for
// odd real primitive characters.

#include <utility>

#include "eismock/chars.hpp"
#include "eismock/real.hpp"

namespace eismock {

// Exact Bernoulli numbers B_n (B_1 = -1/2); cached.
Rational bernoulli(unsigned n);

// Hurwitz zeta(s, x) for real s != 1, x > 0, via Euler–Maclaurin with an
// adaptive shift K and cached B_{2j}/(2j)! coefficients.
Real hurwitz_zeta(const Real& s, const Real& x);

// d/ds of the above (termwise differentiated Euler–Maclaurin).
Real hurwitz_zeta_ds(const Real& s, const Real& x);

// Stieltjes constants (gamma_0(x), gamma_1(x)) of the Laurent expansion
// zeta(s,x) = 1/(s-1) + gamma_0(x) - gamma_1(x)(s-1) + ...; gamma_0 = -psi.
std::pair<Real, Real> stieltjes01(const Real& x);

// zeta(k) for integer k >= 2 (Euler–Maclaurin route).
Real zeta_value(unsigned k);

// zeta(s) for real s != 1 (s < 1 allowed via the Hurwitz engine only for
// s >= 0; negative s is not needed here).
Real zeta_real(const Real& s);

// Exact rational r with zeta(k) = r * pi^k, for even k >= 2.
Rational zeta_even_rational(unsigned k);

// Independent check route: accelerated alternating series for zeta(s) and
// for d/ds of the alternating eta function.
Real zeta_alternating(const Real& s);
Real eta_alternating_ds(const Real& s);

// L(s, chi) for real s with the character reduced to its primitive core and
// the imprimitivity Euler factors multiplied back on.  s = 1 requires a
// non-trivial core (pole otherwise, domain_error); s = 1 uses the digamma
// closed form.
Complex l_value(const DirichletCharacter& chi, const Real& s);
Complex l_value(const DirichletCharacter& chi, int s);

// Exact L(0, chi) for characters all of whose values are real.
Rational l_value_zero_rational(const DirichletCharacter& chi);

// L'(s, chi) at s = 0 or s = 1.  Each value is produced by one closed-form
// route and independently re-derived by a second route; disagreement beyond
// the internal tolerance throws std::runtime_error.
//   s = 0: served by the log-Gamma sum, checked against termwise d/ds
//          Euler–Maclaurin.
//   s = 1: served by the Stieltjes gamma_1 sum, checked by a central
//          difference and, for odd primitive cores, by the functional
//          equation relating it to L'(0) of the conjugate character.
Complex l_derivative(const DirichletCharacter& chi, int s);

// Completed L-function pi^(-(s+1)/2) Gamma((s+1)/2) L(s, chi) for an odd
// real primitive character (Kronecker of a negative fundamental
// discriminant).  Functional equation: Lambda(1-s) = |D|^(s-1/2) Lambda(s).
Real completed_lambda(const DirichletCharacter& chi, const Real& s);

// d/ds log Lambda(s, chi) at s = 1.
Real lambda_log_derivative_at_1(const DirichletCharacter& chi);

}  // namespace eismock

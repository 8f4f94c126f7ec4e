#pragma once
// Exact number-theoretic oracles and showcase constructions: sums-of-squares
// counts by histogram convolution, class numbers by reduced-form
// enumeration, ideal-count coefficients R_D with their logarithmic
// companions R_D^+, the normalized level-one series pair, and the
// theta-power identities together with the mock-side normalization audit.

#include <cstdint>
#include <string>
#include <vector>

#include "eismock/coeffs.hpp"
#include "eismock/forms.hpp"

namespace eismock {

// exact counts r_{two_k}(n), 0 <= n <= n_max, of representations of n as an
// ordered sum of two_k squares of (signed) integers
std::vector<int64_t> sum_of_squares_counts(int two_k, int64_t n_max);
int64_t sum_of_squares_count(int64_t n, int two_k);

// data of the imaginary quadratic field of fundamental discriminant D < 0
struct ImaginaryQuadraticData {
  int64_t D = -3;
  int64_t h = 1;  // class number, by exhaustive reduced-form enumeration
  int u = 2;      // unit count: 6 for D = -3, 4 for D = -4, otherwise 2
};
ImaginaryQuadraticData class_number(int64_t D);

// number of integral ideals of norm n: R_D(n) = sum_{0<c|n} psi_D(c)
int64_t hecke_R(int64_t D, int64_t n);

// logarithmic companion coefficients R_D^+(n), computable by the defining
// divisor sum or by the prime-local rewrite (n = 0: two closed constants)
enum class RplusMethod { definitional, proposition };
Real hecke_Rplus(int64_t D, int64_t n, RplusMethod method);

// level one: exact rational expansion 1 - (2k/B_k) sum sigma_{k-1}(n) q^n
// and its normalized mock companion (holomorphic-part coefficients divided
// by zeta(k)), whose shadow is the rational series
struct LevelOnePair {
  std::vector<Rational> classical;
  FourierSeries mock_normalized;
};
LevelOnePair normalized_level_one(int k, int64_t n_max);

// theta-power identities: the convolution count r_{power}(n) against the
// divisor-sum linear combination, exact integers on both sides
struct ThetaRow {
  int64_t n = 0;
  int64_t count = 0;        // r_{power}(n) by convolution
  int64_t combination = 0;  // the closed divisor-sum expression
};
struct ThetaReport {
  int power = 2;
  std::vector<ThetaRow> rows;
  bool all_match = false;
};
ThetaReport theta_power_report(int power, int64_t n_max);

// Normalization audit for the mock pre-image of Theta^{power}, power in
// {4, 6, 8}: assemble the holomorphic part once with the scaling dictated
// by the closed coefficient formulas (with the antilinear shadow pairing)
// and once exactly as in the circulating display tables, keep the completion
// pinned to the true shadow in both, and measure which candidate actually
// transforms modularly.  Both residuals are reported; nothing is patched.
struct ThetaMockAudit {
  int power = 4;
  Real residual_closed_form;  // worst modularity residual, formula scaling
  Real residual_printed;  // worst residual, printed scaling
  Real printed_to_closed_form_ratio;  // printed q-coefficient / formula one
  bool closed_form_is_modular = false;
  bool printed_is_modular = false;
};
ThetaMockAudit theta_mock_audit(int power, const Complex& z, int samples,
                                uint64_t seed, const Real& tol);

}  // namespace eismock

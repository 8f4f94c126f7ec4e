#pragma once
// Fourier coefficients of two-character Eisenstein series of integral weight
// k >= 1 with a scaling parameter t, and of their harmonic pre-images:
// twisted divisor sums (exact cyclotomic arithmetic), constant terms from
// L-values, and the weight-stratified closed forms.

#include <cstdint>
#include <vector>

#include "eismock/chars.hpp"
#include "eismock/lfun.hpp"
#include "eismock/real.hpp"

namespace eismock {

// Series specification (k, psi, rho, t): weight k >= 1, psi mod L paired
// with the lattice m-index, rho mod M with the n-index, scaling t >= 1.
// Nonvanishing requires the parity condition psi(-1) rho(-1) = (-1)^k.
struct EisSpec {
  int k = 4;
  DirichletCharacter psi = DirichletCharacter::trivial(1);
  DirichletCharacter rho = DirichletCharacter::trivial(1);
  int64_t t = 1;

  int64_t level() const { return t * psi.modulus() * rho.modulus(); }
  bool parity_valid() const {
    return psi.parity() * rho.parity() == (k % 2 ? -1 : 1);
  }
  // k == 2 with both characters trivial: the scaled-difference construction
  bool k2_trivial_pair() const {
    return k == 2 && psi.is_trivial() && rho.is_trivial();
  }
  void validate() const;  // throws std::domain_error on any violation
};

enum class Side { holomorphic, mock };

// Truncated q-expansion c[0..n_max]; quasi_pi is the exact rational
// coefficient of the non-holomorphic pi/y term (nonzero only for the
// weight-2 trivial-pair building block).
struct FourierSeries {
  Side side = Side::holomorphic;
  int weight = 0;
  int64_t level = 1;
  std::vector<Complex> c;
  Rational quasi_pi = 0;
  // certified growth bound |c(n)| <= tail_const * n^tail_deg for all n >= 1,
  // derived from the closed coefficient formulas; drives truncation control
  Real tail_const = Real(0);
  int tail_deg = 0;

  int64_t n_max() const { return static_cast<int64_t>(c.size()) - 1; }
};

// sigma^{psi,rho}_{k1}(n) = sum_{0<c|n} psi(n/c) c^{k1}
//     sum_{0<d|gcd(l,c)} d mu(l/d) conj(rho0)(l/d) rho0(c/d)
// with rho0 the primitive core of rho and l = modulus/conductor.
CyclotomicSum sigma_twisted(int k1, int64_t n, const DirichletCharacter& psi,
                            const DirichletCharacter& rho);

// exact integer value (requires both characters real-valued)
int64_t sigma_twisted_int(int k1, int64_t n, const DirichletCharacter& psi,
                          const DirichletCharacter& rho);

// log-weighted companion entering the weight-1 pre-image:
// sum_{0<c|n} conj(psi)(n/c) log(c)
//     sum_{0<d|gcd(l,c)} d mu(l/d) rho0(l/d) conj(rho0)(c/d)
Complex sigma_log_twisted(int64_t n, const DirichletCharacter& psi,
                          const DirichletCharacter& rho);

// analytic divisor family
// a_k(s; n) = sum_{0<c|n} psi(n/c) c^{2s+k-1}
//     sum_{0<d|gcd(l,c)} d mu(l/d) rho0(l/d) conj(rho0)(c/d);
// a_k(0; n, psi, conj rho) recovers sigma^{psi,rho}_{k-1}(n).
Complex a_coefficient(const Real& s, int k, int64_t n,
                      const DirichletCharacter& psi,
                      const DirichletCharacter& rho);

// q-expansion of the holomorphic Eisenstein series for the spec
// (weight k, level t L M).
FourierSeries eisenstein_coefficients(const EisSpec& spec, int64_t n_max);

// weight-2 trivial-character building block carrying the quasi-modular
// pi/y term (exact rational coefficient)
FourierSeries e2_building_block(int64_t L, int64_t M, int64_t n_max);

// holomorphic part of the harmonic pre-image (weight 2 - k, level t L M);
// its shadow is the eisenstein_coefficients series of the same spec
FourierSeries mock_coefficients(const EisSpec& spec, int64_t n_max);

}  // namespace eismock

#pragma once
// Elementary integer number theory: factorization, divisors, Moebius,
// Kronecker symbol, primitive roots, fundamental discriminants.

#include <cstdint>
#include <utility>
#include <vector>

namespace eismock {

using std::int64_t;

// Prime factorization of n >= 1 as (prime, exponent) pairs, primes ascending.
std::vector<std::pair<int64_t, int>> factorize(int64_t n);

// All positive divisors of n >= 1, ascending.
std::vector<int64_t> divisors(int64_t n);

// Moebius function; 0 if n is not squarefree.
int mobius(int64_t n);

// b^e for small nonnegative e (no overflow checks; callers keep results
// within int64 range).
int64_t ipow(int64_t b, int e);

int64_t powmod(int64_t b, int64_t e, int64_t m);

// Kronecker symbol (a|n), full extension of the Jacobi symbol.
int kronecker_symbol(int64_t a, int64_t n);

// Smallest g generating the (cyclic) unit group mod p^e, p an odd prime.
int64_t primitive_root(int64_t p, int e);

// True for fundamental discriminants: 1 mod 4 squarefree, or 4m with
// m = 2,3 mod 4 squarefree.  D = 1 is excluded.
bool is_fundamental_discriminant(int64_t D);

}  // namespace eismock

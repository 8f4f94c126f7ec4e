#pragma once
// Dirichlet characters with exact root-of-unity values: CRT generator
// decomposition, conductors and primitive cores, Gauss sums, Kronecker
// characters, and exact cyclotomic accumulation for divisor sums.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "eismock/arith.hpp"
#include "eismock/real.hpp"

namespace eismock {

// e^(2 pi i num/den), reduced, or exact zero.
struct UnityRoot {
  bool zero = false;
  long long num = 0;
  long long den = 1;

  static UnityRoot zero_value() { return {true, 0, 1}; }
  static UnityRoot one() { return {false, 0, 1}; }
  static UnityRoot make(long long num, long long den);

  UnityRoot times(const UnityRoot& o) const;
  UnityRoot conjugate() const;
  bool is_one() const { return !zero && num == 0; }
  // true when the value is 0 or +-1
  bool is_real() const { return zero || 2 * num == den || num == 0; }
  // for real values: -1, 0, or +1
  int as_int() const;
  Complex render() const;

  friend bool operator==(const UnityRoot&, const UnityRoot&) = default;
};

class DirichletCharacter {
 public:
  // Trivial character mod n (n >= 1).
  static DirichletCharacter trivial(int64_t n);
  // Character mod n given exponents on the canonical CRT generators
  // (odd p^a: smallest primitive root; 2^a, a >= 3: -1 then 5; 2^2: -1).
  static DirichletCharacter from_exponents(int64_t n,
                                           const std::vector<int64_t>& exps);
  // Kronecker character mod |D| for a negative fundamental discriminant.
  static DirichletCharacter kronecker(int64_t D);
  // All characters mod n in lexicographic exponent order.
  static std::vector<DirichletCharacter> group(int64_t n);

  int64_t modulus() const;
  // orders of the canonical generators (mixed-radix shape of the group)
  const std::vector<int64_t>& generator_orders() const;
  // canonical generators lifted through the CRT (value for labels/tests)
  const std::vector<int64_t>& generators() const;
  const std::vector<int64_t>& exponents() const { return exps_; }

  UnityRoot value(int64_t n) const;
  Complex evaluate(int64_t n) const { return value(n).render(); }
  // chi(-1) as +1 or -1
  int parity() const;
  bool is_odd() const { return parity() == -1; }
  bool is_trivial() const;
  bool is_real() const;

  int64_t conductor() const;
  bool is_primitive() const { return conductor() == modulus(); }
  DirichletCharacter primitive_core() const;
  DirichletCharacter conjugate() const;
  // pointwise product, defined mod lcm of the two moduli
  DirichletCharacter product(const DirichletCharacter& o) const;
  // Gauss sum sum_{a mod m} chi(a) e^(2 pi i a/m); requires primitivity
  Complex gauss_sum() const;

  // {"modulus": N, "exponents": [...], "conductor": f}
  std::string label() const;

  friend bool operator==(const DirichletCharacter& a,
                         const DirichletCharacter& b) {
    return a.modulus() == b.modulus() && a.exps_ == b.exps_;
  }

  struct Group;  // internal group-structure table (defined in chars.cpp)

 private:
  DirichletCharacter(std::shared_ptr<const Group> g, std::vector<int64_t> e);
  std::shared_ptr<const Group> group_;
  std::vector<int64_t> exps_;
};

// Parses "trivial:N", "kronecker:D", or a JSON object
// {"modulus": N, "exponents": [...]}.
DirichletCharacter parse_character(const std::string& text);

// Finite formal sum of roots of unity with int64 coefficients; exact until
// rendered.  Used by the twisted divisor sums.
class CyclotomicSum {
 public:
  void add(const UnityRoot& r, int64_t coeff);
  void add_scaled(const CyclotomicSum& o, const UnityRoot& r, int64_t coeff);
  Complex render() const;
  // exact integer extraction; requires every root be +-1
  bool is_integral() const;
  int64_t as_integer() const;
  bool empty() const { return terms_.empty(); }

 private:
  std::map<std::pair<long long, long long>, int64_t> terms_;
};

}  // namespace eismock

#include "eismock/arith.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace eismock {

std::vector<std::pair<int64_t, int>> factorize(int64_t n) {
  if (n < 1) throw std::domain_error("factorize: n must be >= 1");
  std::vector<std::pair<int64_t, int>> out;
  for (int64_t p : {int64_t{2}, int64_t{3}}) {
    int e = 0;
    while (n % p == 0) n /= p, ++e;
    if (e) out.emplace_back(p, e);
  }
  // trial division with a 6k +/- 1 wheel
  for (int64_t p = 5; p * p <= n; p += (p % 6 == 5) ? 2 : 4) {
    int e = 0;
    while (n % p == 0) n /= p, ++e;
    if (e) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<int64_t> divisors(int64_t n) {
  std::vector<int64_t> out{1};
  for (auto [p, e] : factorize(n)) {
    size_t base = out.size();
    int64_t pe = 1;
    for (int i = 1; i <= e; ++i) {
      pe *= p;
      for (size_t j = 0; j < base; ++j) out.push_back(out[j] * pe);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int mobius(int64_t n) {
  int sign = 1;
  for (auto [p, e] : factorize(n)) {
    (void)p;
    if (e > 1) return 0;
    sign = -sign;
  }
  return sign;
}

int64_t ipow(int64_t b, int e) {
  int64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

int64_t powmod(int64_t b, int64_t e, int64_t m) {
  b %= m;
  if (b < 0) b += m;
  int64_t r = 1 % m;
  while (e > 0) {
    if (e & 1) r = static_cast<int64_t>(static_cast<__int128>(r) * b % m);
    b = static_cast<int64_t>(static_cast<__int128>(b) * b % m);
    e >>= 1;
  }
  return r;
}

int kronecker_symbol(int64_t a, int64_t n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  if ((a & 1) == 0 && (n & 1) == 0) return 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;
  }
  // pull out the even part of n; (a|2) depends on a mod 8
  int twos = 0;
  while ((n & 1) == 0) n >>= 1, ++twos;
  if (twos & 1) {
    int64_t am = ((a % 8) + 8) % 8;
    if (am == 3 || am == 5) result = -result;
  }
  a %= n;
  if (a < 0) a += n;
  // Jacobi symbol loop on odd n > 0
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      int64_t nm = n % 8;
      if (nm == 3 || nm == 5) result = -result;
    }
    std::swap(a, n);
    if ((a % 4) == 3 && (n % 4) == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

int64_t primitive_root(int64_t p, int e) {
  if (p < 3) throw std::domain_error("primitive_root: p must be an odd prime");
  int64_t pe = ipow(p, e);
  int64_t phi = pe / p * (p - 1);
  auto qs = factorize(phi);
  for (int64_t g = 2; g < pe; ++g) {
    if (g % p == 0) continue;
    bool ok = true;
    for (auto [q, _] : qs) {
      (void)_;
      if (powmod(g, phi / q, pe) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw std::logic_error("primitive_root: search failed");
}

bool is_fundamental_discriminant(int64_t D) {
  if (D == 0 || D == 1) return false;
  auto squarefree = [](int64_t n) {
    for (auto [p, e] : factorize(n < 0 ? -n : n)) {
      (void)p;
      if (e > 1) return false;
    }
    return true;
  };
  int64_t mod4 = ((D % 4) + 4) % 4;
  if (mod4 == 1) return squarefree(D);
  if (mod4 != 0) return false;
  int64_t m = D / 4;
  int64_t mm4 = ((m % 4) + 4) % 4;
  return (mm4 == 2 || mm4 == 3) && squarefree(m);
}

}  // namespace eismock

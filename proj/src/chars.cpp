#include "eismock/chars.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace eismock {

namespace {
constexpr int64_t kMaxModulus = 1000000;
constexpr uint32_t kNonUnit = std::numeric_limits<uint32_t>::max();

long long lcm_ll(long long a, long long b) { return a / std::gcd(a, b) * b; }

// (num/den + add_num/add_den) mod 1, reduced
void add_fraction(long long& num, long long& den, long long an, long long ad) {
  long long l = lcm_ll(den, ad);
  num = num * (l / den) + an * (l / ad);
  den = l;
  num %= den;
  if (num < 0) num += den;
  long long g = std::gcd(num, den);
  if (g > 1) num /= g, den /= g;
}
}  // namespace

UnityRoot UnityRoot::make(long long num, long long den) {
  if (den <= 0) throw std::domain_error("UnityRoot: denominator must be > 0");
  num %= den;
  if (num < 0) num += den;
  long long g = std::gcd(num, den);
  if (g > 1) num /= g, den /= g;
  return {false, num, den};
}

UnityRoot UnityRoot::times(const UnityRoot& o) const {
  if (zero || o.zero) return zero_value();
  long long n = num, d = den;
  add_fraction(n, d, o.num, o.den);
  return {false, n, d};
}

UnityRoot UnityRoot::conjugate() const {
  if (zero || num == 0) return *this;
  return {false, den - num, den};
}

int UnityRoot::as_int() const {
  if (zero) return 0;
  if (num == 0) return 1;
  if (2 * num == den) return -1;
  throw std::domain_error("UnityRoot::as_int: value is not real");
}

Complex UnityRoot::render() const {
  if (zero) return {Real(0), Real(0)};
  return unit_root(num, den);
}

// ---------------------------------------------------------------------------

struct DirichletCharacter::Group {
  int64_t n = 1;
  int64_t phi = 1;
  // one entry per canonical generator slot
  std::vector<int64_t> orders;
  std::vector<int64_t> gens_crt;  // CRT-lifted generator per slot
  // per prime-power component
  struct Component {
    int64_t pe;                   // p^a
    std::vector<int> slots;       // indices into orders/gens_crt
    std::vector<uint32_t> dlog;   // slot-major: dlog[s * pe + residue]
  };
  std::vector<Component> comps;

  // discrete logs of n (mod each slot's generator); false if gcd(n, N) > 1
  bool dlogs(int64_t n_in, std::vector<int64_t>& out) const {
    out.assign(orders.size(), 0);
    int64_t r = n_in % n;
    if (r < 0) r += n;
    if (n == 1) return true;
    if (std::gcd(r, n) != 1) return false;
    for (const auto& c : comps) {
      int64_t rc = r % c.pe;
      for (size_t i = 0; i < c.slots.size(); ++i) {
        uint32_t d = c.dlog[i * c.pe + rc];
        if (d == kNonUnit) return false;
        out[c.slots[i]] = d;
        // reduce rc by the first 2-adic slot so the second lookup is valid
        if (c.slots.size() == 2 && i == 0 && d == 1) rc = c.pe - rc;
      }
    }
    return true;
  }
};

namespace {
std::mutex g_groups_mutex;
std::map<int64_t, std::shared_ptr<const DirichletCharacter::Group>> g_groups;
}  // namespace

static std::shared_ptr<const DirichletCharacter::Group> get_group(int64_t n) {
  if (n < 1) throw std::domain_error("character modulus must be >= 1");
  if (n > kMaxModulus)
    throw std::domain_error("character modulus above supported range");
  std::lock_guard<std::mutex> lock(g_groups_mutex);
  auto it = g_groups.find(n);
  if (it != g_groups.end()) return it->second;

  auto g = std::make_shared<DirichletCharacter::Group>();
  g->n = n;
  for (auto [p, e] : factorize(n)) {
    DirichletCharacter::Group::Component comp;
    comp.pe = ipow(p, e);
    g->phi *= comp.pe / p * (p - 1);
    if (p == 2) {
      if (e == 1) {
        g->comps.push_back(std::move(comp));
        continue;
      }
      if (e == 2) {
        // cyclic of order 2, generator -1 (= 3)
        comp.slots.push_back(static_cast<int>(g->orders.size()));
        g->orders.push_back(2);
        g->gens_crt.push_back(3);
        comp.dlog.assign(comp.pe, kNonUnit);
        comp.dlog[1] = 0;
        comp.dlog[3] = 1;
      } else {
        // {-1} x <5>, orders 2 and 2^(e-2)
        int64_t half_order = comp.pe / 4;
        comp.slots.push_back(static_cast<int>(g->orders.size()));
        g->orders.push_back(2);
        g->gens_crt.push_back(comp.pe - 1);
        comp.slots.push_back(static_cast<int>(g->orders.size()));
        g->orders.push_back(half_order);
        g->gens_crt.push_back(5);
        comp.dlog.assign(2 * comp.pe, kNonUnit);
        // residues 5^r are recorded under sign slot 0; -5^r under slot 1.
        // Group::dlogs flips rc to pe - rc after reading sign 1, so the
        // 5-slot table only needs the +5^r residues.
        int64_t v = 1;
        for (int64_t r = 0; r < half_order; ++r) {
          comp.dlog[0 * comp.pe + v] = 0;
          comp.dlog[0 * comp.pe + (comp.pe - v)] = 1;
          comp.dlog[1 * comp.pe + v] = static_cast<uint32_t>(r);
          v = v * 5 % comp.pe;
        }
      }
    } else {
      int64_t gen = primitive_root(p, e);
      int64_t order = comp.pe / p * (p - 1);
      comp.slots.push_back(static_cast<int>(g->orders.size()));
      g->orders.push_back(order);
      g->gens_crt.push_back(gen);
      comp.dlog.assign(comp.pe, kNonUnit);
      int64_t v = 1;
      for (int64_t r = 0; r < order; ++r) {
        comp.dlog[v] = static_cast<uint32_t>(r);
        v = v * gen % comp.pe;
      }
    }
    g->comps.push_back(std::move(comp));
  }
  // CRT-lift the generators: g_i mod its component, 1 mod the others
  for (const auto& c : g->comps) {
    for (size_t i = 0; i < c.slots.size(); ++i) {
      int64_t& lift = g->gens_crt[c.slots[i]];
      int64_t target = lift % c.pe;
      // solve x = target mod pe, x = 1 mod n/pe by scanning the class
      int64_t other = n / c.pe;
      int64_t x = target;
      while (x % other != 1 % other) x += c.pe;
      lift = x;
    }
  }
  g_groups.emplace(n, g);
  return g;
}

DirichletCharacter::DirichletCharacter(std::shared_ptr<const Group> g,
                                       std::vector<int64_t> e)
    : group_(std::move(g)), exps_(std::move(e)) {
  if (exps_.size() != group_->orders.size())
    throw std::domain_error("character exponent count mismatch");
  for (size_t i = 0; i < exps_.size(); ++i) {
    exps_[i] %= group_->orders[i];
    if (exps_[i] < 0) exps_[i] += group_->orders[i];
  }
}

DirichletCharacter DirichletCharacter::trivial(int64_t n) {
  auto g = get_group(n);
  return DirichletCharacter(g, std::vector<int64_t>(g->orders.size(), 0));
}

DirichletCharacter DirichletCharacter::from_exponents(
    int64_t n, const std::vector<int64_t>& exps) {
  auto g = get_group(n);
  if (exps.size() != g->orders.size())
    throw std::domain_error("from_exponents: expected " +
                            std::to_string(g->orders.size()) +
                            " exponents for modulus " + std::to_string(n));
  return DirichletCharacter(g, exps);
}

DirichletCharacter DirichletCharacter::kronecker(int64_t D) {
  if (D >= 0 || !is_fundamental_discriminant(D))
    throw std::domain_error(
        "kronecker: D must be a negative fundamental discriminant");
  auto g = get_group(-D);
  std::vector<int64_t> exps(g->orders.size(), 0);
  for (size_t i = 0; i < exps.size(); ++i) {
    int v = kronecker_symbol(D, g->gens_crt[i]);
    if (v == 1) {
      exps[i] = 0;
    } else if (v == -1) {
      if (g->orders[i] % 2 != 0)
        throw std::logic_error("kronecker: odd-order slot with value -1");
      exps[i] = g->orders[i] / 2;
    } else {
      throw std::logic_error("kronecker: generator not coprime to modulus");
    }
  }
  return DirichletCharacter(g, exps);
}

std::vector<DirichletCharacter> DirichletCharacter::group(int64_t n) {
  auto g = get_group(n);
  std::vector<DirichletCharacter> out;
  std::vector<int64_t> e(g->orders.size(), 0);
  for (;;) {
    out.emplace_back(DirichletCharacter(g, e));
    // mixed-radix increment, last slot fastest
    size_t i = e.size();
    while (i > 0) {
      --i;
      if (++e[i] < g->orders[i]) break;
      e[i] = 0;
      if (i == 0) return out;
    }
    if (e.empty()) return out;
  }
}

int64_t DirichletCharacter::modulus() const { return group_->n; }

const std::vector<int64_t>& DirichletCharacter::generator_orders() const {
  return group_->orders;
}

const std::vector<int64_t>& DirichletCharacter::generators() const {
  return group_->gens_crt;
}

UnityRoot DirichletCharacter::value(int64_t n) const {
  std::vector<int64_t> dl;
  if (!group_->dlogs(n, dl)) return UnityRoot::zero_value();
  long long num = 0, den = 1;
  for (size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] == 0 || dl[i] == 0) continue;
    long long o = group_->orders[i];
    add_fraction(num, den, (exps_[i] % o) * (dl[i] % o) % o, o);
  }
  return UnityRoot::make(num, den);
}

int DirichletCharacter::parity() const {
  if (modulus() == 1) return 1;
  return value(modulus() - 1).as_int();
}

bool DirichletCharacter::is_trivial() const {
  return std::all_of(exps_.begin(), exps_.end(),
                     [](int64_t e) { return e == 0; });
}

bool DirichletCharacter::is_real() const {
  for (size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] != 0 && 2 * exps_[i] != group_->orders[i]) return false;
  return true;
}

int64_t DirichletCharacter::conductor() const {
  int64_t n = modulus();
  for (int64_t d : divisors(n)) {
    bool ok = true;
    for (int64_t a = 1 + d; a <= n; a += d) {
      if (std::gcd(a, n) != 1) continue;
      if (!value(a).is_one()) {
        ok = false;
        break;
      }
    }
    if (ok) return d;
  }
  return n;  // unreachable: d = n always passes
}

DirichletCharacter DirichletCharacter::primitive_core() const {
  int64_t f = conductor();
  auto gf = get_group(f);
  std::vector<int64_t> exps(gf->orders.size(), 0);
  int64_t n = modulus();
  for (size_t i = 0; i < exps.size(); ++i) {
    // lift the core generator to a unit mod n in the same class mod f
    int64_t x = gf->gens_crt[i];
    while (std::gcd(x, n) != 1) x += f;
    UnityRoot v = value(x);
    if (v.zero) throw std::logic_error("primitive_core: lift not a unit");
    // v = e^(2 pi i num/den) = generator^exps[i] with generator of order o
    int64_t o = gf->orders[i];
    if (o % v.den != 0)
      throw std::logic_error("primitive_core: order does not divide");
    exps[i] = v.num * (o / v.den) % o;
  }
  DirichletCharacter core(gf, exps);
  if (core.conductor() != f)
    throw std::logic_error("primitive_core: core is not primitive");
  return core;
}

DirichletCharacter DirichletCharacter::conjugate() const {
  std::vector<int64_t> e(exps_.size());
  for (size_t i = 0; i < e.size(); ++i)
    e[i] = (group_->orders[i] - exps_[i]) % group_->orders[i];
  return DirichletCharacter(group_, e);
}

DirichletCharacter DirichletCharacter::product(
    const DirichletCharacter& o) const {
  int64_t n = lcm_ll(modulus(), o.modulus());
  auto g = get_group(n);
  std::vector<int64_t> exps(g->orders.size(), 0);
  for (size_t i = 0; i < exps.size(); ++i) {
    UnityRoot v = value(g->gens_crt[i]).times(o.value(g->gens_crt[i]));
    if (v.zero) throw std::logic_error("product: generator not a unit");
    int64_t ord = g->orders[i];
    if (ord % v.den != 0) throw std::logic_error("product: order mismatch");
    exps[i] = v.num * (ord / v.den) % ord;
  }
  return DirichletCharacter(g, exps);
}

Complex DirichletCharacter::gauss_sum() const {
  if (!is_primitive())
    throw std::domain_error("gauss_sum: character must be primitive");
  int64_t m = modulus();
  Complex w{Real(0), Real(0)};
  for (int64_t a = 1; a <= m; ++a) {
    UnityRoot v = value(a);
    if (v.zero) continue;
    w += v.times(UnityRoot::make(a, m)).render();
  }
  return w;
}

std::string DirichletCharacter::label() const {
  nlohmann::ordered_json j;
  j["modulus"] = modulus();
  j["exponents"] = exps_;
  j["conductor"] = conductor();
  return j.dump();
}

DirichletCharacter parse_character(const std::string& text) {
  if (text.rfind("trivial:", 0) == 0)
    return DirichletCharacter::trivial(std::stoll(text.substr(8)));
  if (text.rfind("kronecker:", 0) == 0)
    return DirichletCharacter::kronecker(std::stoll(text.substr(10)));
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error&) {
    throw std::domain_error(
        "character label must be trivial:N, kronecker:D, or JSON "
        "{\"modulus\":..., \"exponents\":[...]}");
  }
  if (!j.is_object() || !j.contains("modulus") || !j.contains("exponents"))
    throw std::domain_error(
        "character JSON needs \"modulus\" and \"exponents\"");
  return DirichletCharacter::from_exponents(
      j["modulus"].get<int64_t>(), j["exponents"].get<std::vector<int64_t>>());
}

// ---------------------------------------------------------------------------

void CyclotomicSum::add(const UnityRoot& r, int64_t coeff) {
  if (r.zero || coeff == 0) return;
  auto key = std::make_pair(r.num, r.den);
  auto [it, inserted] = terms_.emplace(key, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

void CyclotomicSum::add_scaled(const CyclotomicSum& o, const UnityRoot& r,
                               int64_t coeff) {
  if (r.zero || coeff == 0) return;
  for (const auto& [key, c] : o.terms_)
    add(UnityRoot{false, key.first, key.second}.times(r), c * coeff);
}

Complex CyclotomicSum::render() const {
  Complex out{Real(0), Real(0)};
  for (const auto& [key, c] : terms_)
    out += unit_root(key.first, key.second) * Real(c);
  return out;
}

bool CyclotomicSum::is_integral() const {
  for (const auto& [key, c] : terms_) {
    (void)c;
    if (key.second > 2) return false;
  }
  return true;
}

int64_t CyclotomicSum::as_integer() const {
  int64_t v = 0;
  for (const auto& [key, c] : terms_) {
    if (key.second == 1)
      v += c;
    else if (key.second == 2)
      v -= c;
    else
      throw std::domain_error("CyclotomicSum::as_integer: non-real root");
  }
  return v;
}

}  // namespace eismock

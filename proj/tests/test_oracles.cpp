#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "eismock/lfun.hpp"
#include "eismock/oracles.hpp"
#include "test_util.hpp"

using namespace eismock;
using testutil::close;
using testutil::tol;

namespace {
struct Init {
  Init() { testutil::init_precision(); }
} init_once;

// literal nested enumeration of sums of squares, the slow way
std::vector<int64_t> enumerate_squares(int two_k, int64_t n_max) {
  std::vector<int64_t> counts(n_max + 1, 0);
  int64_t r = static_cast<int64_t>(std::sqrt(double(n_max))) + 1;
  std::vector<int64_t> point(two_k, -r);
  for (;;) {
    int64_t s = 0;
    for (int64_t x : point) s += x * x;
    if (s <= n_max) ++counts[s];
    int i = 0;
    while (i < two_k && ++point[i] > r) point[i++] = -r;
    if (i == two_k) break;
  }
  return counts;
}
}  // namespace

TEST_CASE("sum of squares counts match literal enumeration") {
  struct Range {
    int two_k;
    int64_t n_max;
  };
  for (Range range : {Range{2, 60}, Range{4, 30}, Range{6, 16}, Range{8, 8}}) {
    auto fast = sum_of_squares_counts(range.two_k, range.n_max);
    auto slow = enumerate_squares(range.two_k, range.n_max);
    for (int64_t n = 0; n <= range.n_max; ++n) CHECK(fast[n] == slow[n]);
  }
  CHECK(sum_of_squares_count(5, 2) == 8);
  CHECK(sum_of_squares_count(2, 4) == 24);
  CHECK(sum_of_squares_count(1, 6) == 12);
  CHECK(sum_of_squares_count(2, 8) == 112);
  CHECK_THROWS_AS(sum_of_squares_counts(3, 10), std::domain_error);
}

TEST_CASE("class numbers by reduced forms") {
  struct Known {
    int64_t D, h;
    int u;
  };
  for (Known k : {Known{-3, 1, 6}, Known{-4, 1, 4}, Known{-7, 1, 2},
                  Known{-8, 1, 2}, Known{-11, 1, 2}, Known{-15, 2, 2},
                  Known{-20, 2, 2}, Known{-23, 3, 2}, Known{-47, 5, 2},
                  Known{-163, 1, 2}}) {
    auto data = class_number(k.D);
    CHECK(data.h == k.h);
    CHECK(data.u == k.u);
  }
  // class number one exactly on the nine listed discriminants
  std::vector<int64_t> one_list = {-3, -4, -7, -8, -11, -19, -43, -67, -163};
  for (int64_t D = -200; D < 0; ++D) {
    if (!is_fundamental_discriminant(D)) continue;
    bool expect_one =
        std::find(one_list.begin(), one_list.end(), D) != one_list.end();
    CHECK((class_number(D).h == 1) == expect_one);
  }
  CHECK_THROWS_AS(class_number(-12), std::domain_error);
  CHECK_THROWS_AS(class_number(-5), std::domain_error);
  CHECK_THROWS_AS(class_number(5), std::domain_error);
}

TEST_CASE("class number formula is exact on both sides") {
  // L(0, psi_D) = 2 h(D) / u(D), rational versus rational
  for (int64_t D = -200; D < 0; ++D) {
    if (!is_fundamental_discriminant(D)) continue;
    auto data = class_number(D);
    auto chi = DirichletCharacter::kronecker(D);
    CHECK(l_value_zero_rational(chi) == Rational(2 * data.h, data.u));
  }
}

TEST_CASE("ideal counts R_D") {
  CHECK(hecke_R(-4, 5) == 2);
  CHECK(hecke_R(-4, 3) == 0);
  CHECK(hecke_R(-4, 9) == 1);
  // multiplicative in coprime arguments
  for (int64_t m : {2, 5, 9, 11}) {
    for (int64_t n : {7, 13, 25}) {
      if (std::gcd(m, n) != 1) continue;
      CHECK(hecke_R(-23, m * n) == hecke_R(-23, m) * hecke_R(-23, n));
    }
  }
  // two-square counts: 4 R_{-4}(n) = r_2(n), exact across the whole range
  auto r2 = sum_of_squares_counts(2, 2000);
  for (int64_t n = 1; n <= 2000; ++n) CHECK(4 * hecke_R(-4, n) == r2[n]);
}

TEST_CASE("logarithmic companions: definitional versus prime-local") {
  CHECK(hecke_Rplus(-4, 1, RplusMethod::definitional) == 0);
  CHECK(hecke_Rplus(-4, 1, RplusMethod::proposition) == 0);
  Real minus2log3 = -2 * log(Real(3));
  CHECK(close(hecke_Rplus(-4, 3, RplusMethod::definitional), minus2log3,
              tol(110)));
  CHECK(close(hecke_Rplus(-4, 3, RplusMethod::proposition), minus2log3,
              tol(110)));
  CHECK(abs(hecke_Rplus(-4, 9, RplusMethod::definitional)) < tol(110));
  CHECK(abs(hecke_Rplus(-4, 9, RplusMethod::proposition)) < tol(110));
  for (int64_t D : {-3, -4, -7, -8, -11, -15, -20, -23}) {
    for (int64_t n = 1; n <= 500; ++n) {
      CHECK(close(hecke_Rplus(D, n, RplusMethod::definitional),
                  hecke_Rplus(D, n, RplusMethod::proposition), tol(64)));
    }
  }
}

TEST_CASE("constant companion by two closed routes") {
  for (int64_t D : {-3, -4, -7, -8, -11, -15, -20, -23}) {
    CHECK(close(hecke_Rplus(D, 0, RplusMethod::definitional),
                hecke_Rplus(D, 0, RplusMethod::proposition), tol(100)));
  }
  // anchor for D = -4: L'(0, psi_-4) = log(Gamma(1/4)/Gamma(3/4)) - log 2
  auto psi4 = DirichletCharacter::kronecker(-4);
  Real lgr = log_gamma(Real(1) / 4) - log_gamma(Real(3) / 4) - log2_const();
  CHECK(close(l_derivative(psi4, 0).re, lgr, tol(110)));
  Real expect = (2 * log2_const() + log(pi()) + euler_gamma()) / 4 - lgr;
  CHECK(close(hecke_Rplus(-4, 0, RplusMethod::definitional), expect, tol(105)));
}

TEST_CASE("two-square chain: closed coefficients against the display") {
  // u(-4) R^+_{-4}(n) must equal r_2(n) log n - 8 sum psi_-4(n/c) log c,
  // with the count taken from the convolution, not from R_D
  auto r2 = sum_of_squares_counts(2, 200);
  for (int64_t n = 1; n <= 200; ++n) {
    Real display = r2[n] * log(Real(n));
    for (int64_t c : divisors(n))
      display -= 8 * kronecker_symbol(-4, n / c) * log(Real(c));
    CHECK(close(4 * hecke_Rplus(-4, n, RplusMethod::definitional), display,
                tol(100)));
  }
  // and the weight-one coefficient machinery reproduces the same stream:
  // (2 pi i)^{-1} c+(n) + (log pi + gamma) R(n) = R^+(n)
  auto one1 = DirichletCharacter::trivial(1);
  auto psi4 = DirichletCharacter::kronecker(-4);
  auto mock = mock_coefficients(EisSpec{1, psi4, one1, 1}, 40);
  Complex inv_2pii{Real(0), -1 / (2 * pi())};
  Real shift = log(pi()) + euler_gamma();
  for (int64_t n = 0; n <= 40; ++n) {
    Real ideal_count = n == 0 ? Real(1) / 4 : Real(hecke_R(-4, n));
    Complex lhs = inv_2pii * mock.c[n] + Complex{shift * ideal_count};
    Real rplus = hecke_Rplus(-4, n, RplusMethod::definitional);
    CHECK(close(lhs, Complex{rplus}, tol(100)));
  }
}

TEST_CASE("normalized level-one pair") {
  auto pair4 = normalized_level_one(4, 50);
  CHECK(pair4.classical[0] == 1);
  CHECK(pair4.classical[1] == 240);
  CHECK(pair4.classical[2] == 2160);
  CHECK(normalized_level_one(6, 2).classical[1] == -504);
  // the un-normalized expansion is zeta(k) times the rational one
  auto one1 = DirichletCharacter::trivial(1);
  auto eis = eisenstein_coefficients(EisSpec{4, one1, one1, 1}, 50);
  Real z4 = zeta_value(4);
  for (int64_t n = 0; n <= 50; ++n)
    CHECK(close(eis.c[n], Complex{z4 * to_real(pair4.classical[n])}, tol(105)));
  // mock companion: constant -pi zeta(3) / (12 zeta(4)), coefficients
  // -pi sigma_3(n) / (12 n^3 zeta(4))
  CHECK(close(pair4.mock_normalized.c[0],
              Complex{-pi() * zeta_value(3) / (12 * z4)}, tol(105)));
  for (int64_t n : {1, 2, 3, 10}) {
    int64_t sigma3 = 0;
    for (int64_t d : divisors(n)) sigma3 += d * d * d;
    Complex expect{-pi() * sigma3 / (12 * Real(n) * n * n * z4)};
    CHECK(close(pair4.mock_normalized.c[n], expect, tol(105)));
  }
  CHECK_THROWS_AS(normalized_level_one(3, 4), std::domain_error);
  CHECK_THROWS_AS(normalized_level_one(2, 4), std::domain_error);
}

TEST_CASE("theta power identities over the full ranges") {
  auto two = theta_power_report(2, 2000);
  CHECK(two.all_match);
  auto four = theta_power_report(4, 5000);
  CHECK(four.all_match);
  auto six = theta_power_report(6, 2000);
  CHECK(six.all_match);
  auto eight = theta_power_report(8, 5000);
  CHECK(eight.all_match);
  CHECK(four.rows[3].count == 24);        // n = 4
  CHECK(four.rows[3].combination == 24);  // 8 (7 - 4)
  CHECK(six.rows[1].count == 60);         // n = 2: 4 (4*4 - 1)
  CHECK(eight.rows[1].count == 112);      // n = 2: 16 * 7
}

TEST_CASE("mock normalization audit distinguishes the scalings") {
  Complex z{Real(3) / 10, Real(11) / 10};
  Real threshold = tol(40);
  auto four = theta_mock_audit(4, z, 3, 11, threshold);
  CHECK(four.closed_form_is_modular);
  CHECK(!four.printed_is_modular);
  CHECK(close(four.printed_to_closed_form_ratio, Real(1) / 2, tol(100)));
  CHECK(four.residual_printed > 1000 * four.residual_closed_form);

  auto six = theta_mock_audit(6, z, 3, 11, threshold);
  CHECK(six.closed_form_is_modular);
  CHECK(six.printed_is_modular);  // the printed table agrees exactly
  CHECK(close(six.printed_to_closed_form_ratio, Real(1), tol(100)));

  auto eight = theta_mock_audit(8, z, 3, 11, threshold);
  CHECK(eight.closed_form_is_modular);
  CHECK(!eight.printed_is_modular);  // doubled q-coefficients
  CHECK(close(eight.printed_to_closed_form_ratio, Real(2), tol(100)));
}

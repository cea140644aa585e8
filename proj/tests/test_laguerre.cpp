#include <doctest.h>

#include <boost/math/special_functions/laguerre.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>

#include "evf/errors.hpp"
#include "evf/laguerre.hpp"

using evf::assoc_laguerre;
using Big = boost::multiprecision::cpp_bin_float_50;

namespace {

// Explicit series sum_k (-1)^k C(n+a, n-k) x^k / k!, exact enough at 50 digits.
Big laguerre_series(int n, int a, Big x) {
    Big sum = 0;
    Big binom = 1;  // C(n+a, n)
    for (int j = 0; j < n; ++j) binom = binom * (a + n - j) / (j + 1);
    Big term = binom;
    for (int k = 0; k <= n; ++k) {
        sum += term;
        // C(n+a, n-k-1) / C(n+a, n-k) = (n-k) / (a+k+1); x^{k+1}/(k+1)! ratio x/(k+1).
        term = -term * Big(n - k) / Big(a + k + 1) * x / Big(k + 1);
    }
    return sum;
}

}  // namespace

TEST_CASE("recurrence matches the series oracle for n <= 10, alpha <= 5") {
    double worst = 0.0;
    for (int n = 0; n <= 10; ++n) {
        for (int a = 0; a <= 5; ++a) {
            for (double x : {0.0, 1e-3, 0.3, 1.0, 2.5, 5.0, 10.0, 17.5, 30.0}) {
                const Big ref = laguerre_series(n, a, Big(x));
                const double got = assoc_laguerre(n, a, x);
                const double err = static_cast<double>(abs(Big(got) - ref) / std::max(Big(1), abs(ref)));
                worst = std::max(worst, err);
            }
        }
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("agrees with boost at high order") {
    for (int n : {20, 40, 60}) {
        for (int a : {0, 3}) {
            for (double x : {0.5, 4.0, 20.0}) {
                const double ref = boost::math::laguerre(n, a, x);
                CHECK(std::abs(assoc_laguerre(n, a, x) - ref) <= 1e-9 * std::max(1.0, std::abs(ref)));
            }
        }
    }
}

TEST_CASE("closed forms") {
    CHECK(assoc_laguerre(0, 3, 7.0) == 1.0);
    CHECK(assoc_laguerre(1, 2, 0.5) == doctest::Approx(2.5));
    CHECK(assoc_laguerre(2, 0, 1.0) == doctest::Approx(-0.5));
    // L_n^a(0) = C(n+a, n)
    CHECK(assoc_laguerre(5, 2, 0.0) == doctest::Approx(21.0));
}

TEST_CASE("domain and order limits") {
    CHECK_THROWS_AS(assoc_laguerre(-1, 0, 1.0), evf::DomainError);
    CHECK_THROWS_AS(assoc_laguerre(2, -1, 1.0), evf::DomainError);
    CHECK_THROWS_AS(assoc_laguerre(evf::kMaxLaguerreOrder + 1, 0, 1.0), evf::UnsupportedOrderError);
    CHECK_NOTHROW(assoc_laguerre(evf::kMaxLaguerreOrder, 0, 1.0));
}

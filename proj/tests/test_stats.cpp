#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "heckelab/angle.hpp"
#include "heckelab/coeff_table.hpp"
#include "heckelab/error.hpp"
#include "heckelab/stats.hpp"
#include "oracles.hpp"

using namespace heckelab;

namespace {

const CoefficientTable& delta_normalized(std::uint32_t n) {
    static const CoefficientTable t1000 =
        CoefficientTable::delta_q_expansion(1000).normalized_copy(128);
    static const CoefficientTable t10000 =
        CoefficientTable::delta_q_expansion(10000).normalized_copy(128);
    REQUIRE((n == 1000 || n == 10000));
    return n == 1000 ? t1000 : t10000;
}

}  // namespace

TEST_CASE("sato_tate_cdf pins the endpoints and the quarter point") {
    CHECK(sato_tate_cdf(0) == 0);
    CHECK(sato_tate_cdf(std::numbers::pi) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(sato_tate_cdf(std::numbers::pi / 2) == doctest::Approx(0.5).epsilon(1e-15));
    // F(pi/4) = 1/4 - 1/(2 pi)  [DERIVED: closed form]
    CHECK(sato_tate_cdf(std::numbers::pi / 4) ==
          doctest::Approx(0.25 - 1 / (2 * std::numbers::pi)).epsilon(1e-14));
    for (double t = 0.1; t < 3.1; t += 0.1)
        CHECK(sato_tate_cdf(t + 0.05) > sato_tate_cdf(t));
    CHECK_THROWS_AS(sato_tate_cdf(-0.01), DomainError);
    CHECK_THROWS_AS(sato_tate_cdf(3.2), DomainError);
}

TEST_CASE("a perfect quantile sample has near-zero discrepancy") {
    std::vector<Angle> angles;
    const std::size_t n = 500;
    for (std::size_t i = 0; i < n; ++i) {
        const double theta = oracles::inverse_sato_tate_cdf((i + 0.5) / n);
        angles.emplace_back(Real(theta, 128), PrimeLabel{std::to_string(i + 2), i + 2});
    }
    const std::vector<std::uint64_t> cps{600};
    const StatSummary s = equidistribution_test(angles, cps);
    CHECK(s.sample_size == n);
    CHECK(s.discrepancy < 0.002);  // ideal KS for midpoints is 1/(2n)
}

TEST_CASE("a concentrated sample is far from the Sato-Tate law") {
    std::vector<Angle> angles;
    for (std::size_t i = 0; i < 50; ++i)
        angles.emplace_back(Real(0.3, 128), PrimeLabel{std::to_string(i + 2), i + 2});
    const std::vector<std::uint64_t> cps{100};
    CHECK(equidistribution_test(angles, cps).discrepancy > 0.5);
}

TEST_CASE("equidistribution checkpoints filter by source norm") {
    std::vector<Angle> angles;
    for (std::size_t i = 0; i < 100; ++i) {
        const double theta = oracles::inverse_sato_tate_cdf((i + 0.5) / 100);
        angles.emplace_back(Real(theta, 128), PrimeLabel{std::to_string(i + 2), i + 2});
    }
    const std::vector<std::uint64_t> cps{50, 101};
    const StatSummary s = equidistribution_test(angles, cps);
    REQUIRE(s.checkpoints.size() == 2);
    CHECK(s.checkpoints[0].first == 50);
    // the first checkpoint sees only norms <= 50, i.e. 49 angles
    CHECK(s.checkpoints[0].second > s.checkpoints[1].second);
    CHECK(s.sample_size == 100);

    const std::vector<std::uint64_t> empty_cp{1};  // no norm is <= 1
    CHECK_THROWS_AS(equidistribution_test(angles, empty_cp), ValidationError);
    const std::vector<std::uint64_t> bad_order{100, 50};
    CHECK_THROWS_AS(equidistribution_test(angles, bad_order), DomainError);
    const std::vector<std::uint64_t> none;
    CHECK_THROWS_AS(equidistribution_test(angles, none), DomainError);
}

TEST_CASE("KS discrepancy of the discriminant form decreases from 10^3 to 10^4") {
    // [DERIVED: frozen 128-bit values]
    const auto& table = delta_normalized(10000);
    const auto angles = sato_tate_angles(table, 10000);
    const std::vector<std::uint64_t> cps{1000, 10000};
    const StatSummary s = equidistribution_test(angles, cps);
    CHECK(s.checkpoints[0].second == doctest::Approx(0.05267008908714976).epsilon(1e-9));
    CHECK(s.checkpoints[1].second == doctest::Approx(0.015988795491651775).epsilon(1e-9));
}

TEST_CASE("moment integral matches the Beta closed form") {
    for (const double gamma : {0.0, 0.5, 1.0, 2.0, 3.0, 4.7})
        CHECK(moment_integral(gamma) ==
              doctest::Approx(oracles::moment_integral_closed(gamma)).epsilon(1e-8));
    // the two paper constants
    CHECK(std::abs(moment_integral(2) - 1.0) < 1e-9);
    CHECK(std::abs(moment_integral(1) - 0.848826) < 1e-6);
    CHECK(std::abs(moment_integral(0) - 1.0) < 1e-9);
    CHECK_THROWS_AS(moment_integral(-0.5), DomainError);
}

TEST_CASE("the one-sided derivative at gamma = 0 approaches -1/2") {
    CHECK(moment_derivative_at_zero(1e-3) == doctest::Approx(-0.5).epsilon(2e-4));
    CHECK_THROWS_AS(moment_derivative_at_zero(0), DomainError);
    CHECK_THROWS_AS(moment_derivative_at_zero(-1e-3), DomainError);
}

TEST_CASE("moment_sum matches a direct enumeration oracle at x = 10") {
    const auto& table = delta_normalized(1000);
    const StatSummary plain = moment_sum(table, 10, 2.0, false);
    // direct: sum over n = 1..10 of c(n)^2
    double expected = 0;
    for (std::uint64_t n = 1; n <= 10; ++n) {
        const double c = table.extend(IdealElement::factor_integer(n)).to_double();
        expected += c * c;
    }
    CHECK(plain.checkpoints.back().second == doctest::Approx(expected).epsilon(1e-12));
    CHECK(plain.sample_size == 10);

    const StatSummary weighted = moment_sum(table, 10, 2.0, true);
    double expected_w = 0;
    for (std::uint64_t n = 1; n <= 10; ++n) {
        const double c = table.extend(IdealElement::factor_integer(n)).to_double();
        expected_w += c * c / static_cast<double>(n);
    }
    CHECK(weighted.checkpoints.back().second == doctest::Approx(expected_w).epsilon(1e-12));
}

TEST_CASE("moment_sum validates its inputs") {
    const auto& table = delta_normalized(1000);
    CHECK_THROWS_AS(moment_sum(table, 10, -1.0, true), DomainError);
    CHECK_THROWS_AS(moment_sum(table, 1, 1.0, true), DomainError);
    // coverage: x beyond the table's primes
    CHECK_THROWS_AS(moment_sum(table, 2000, 1.0, true), UnknownPrimeError);
    // unnormalized tables are refused
    CHECK_THROWS_AS(moment_sum(CoefficientTable::delta_q_expansion(100), 50, 1.0, true),
                    ValidationError);
}

TEST_CASE("the over-norm gamma = 1 fit lands near the moment integral") {
    const StatSummary s = moment_sum(delta_normalized(10000), 10000, 1.0, true);
    REQUIRE(s.fit.has_value());
    // [DERIVED: frozen fit at x = 10^4; the asymptotic exponent is I(1) = 0.8488...]
    CHECK(s.fit->first == doctest::Approx(0.7438821728190157).epsilon(1e-6));
    CHECK(s.checkpoints.back().second == doctest::Approx(5.513750562714627).epsilon(1e-9));
}

TEST_CASE("density scan freezes the epsilon = 1/4 counts") {
    const auto& table = delta_normalized(10000);
    const std::vector<std::uint64_t> cps{1000, 10000};
    const StatSummary s = density_scan(table, 0.25, cps);
    // [DERIVED: 256 hits below 10^3, 2910 below 10^4 — the ratio rises here]
    CHECK(s.checkpoints[0].second == doctest::Approx(0.256).epsilon(1e-12));
    CHECK(s.checkpoints[1].second == doctest::Approx(0.291).epsilon(1e-12));
    CHECK(s.sample_size == 2910);
}

TEST_CASE("density counts shrink as epsilon grows") {
    const auto& table = delta_normalized(1000);
    const std::vector<std::uint64_t> cps{1000};
    const double r1 = density_scan(table, 0.1, cps).checkpoints[0].second;
    const double r2 = density_scan(table, 0.25, cps).checkpoints[0].second;
    const double r3 = density_scan(table, 0.49, cps).checkpoints[0].second;
    CHECK(r1 >= r2);
    CHECK(r2 >= r3);
    CHECK(r3 > 0);
}

TEST_CASE("density scan validates epsilon and checkpoints") {
    const auto& table = delta_normalized(1000);
    const std::vector<std::uint64_t> cps{1000};
    CHECK_THROWS_AS(density_scan(table, 0.0, cps), DomainError);
    CHECK_THROWS_AS(density_scan(table, 0.5, cps), DomainError);
    CHECK_THROWS_AS(density_scan(table, -0.1, cps), DomainError);
    const std::vector<std::uint64_t> too_small{2, 1000};
    CHECK_THROWS_AS(density_scan(table, 0.25, too_small), DomainError);
}

TEST_CASE("tenenbaum_check with f = 1 matches hand-computed constants") {
    const auto& table = delta_normalized(1000);
    const MultiplicativeFn one = [](const PrimeLabel&, std::uint32_t) { return 1.0; };
    const TenenbaumReport r = tenenbaum_check(one, table, 100);
    // S(100) counts every integer <= 100
    CHECK(r.s_sum == doctest::Approx(100.0).epsilon(1e-12));
    // L(100) is the 100th harmonic number
    double harmonic = 0;
    for (int n = 1; n <= 100; ++n) harmonic += 1.0 / n;
    CHECK(r.l_sum == doctest::Approx(harmonic).epsilon(1e-12));
    // A = max over primes p <= 100 of (1/p) sum_{q <= p} log q
    double a_expected = 0, chebyshev = 0;
    for (std::uint64_t p = 2; p <= 100; ++p) {
        if (!oracles::is_prime(p)) continue;
        chebyshev += std::log(static_cast<double>(p));
        a_expected = std::max(a_expected, chebyshev / static_cast<double>(p));
    }
    CHECK(r.a_const == doctest::Approx(a_expected).epsilon(1e-12));
    // B = sum over prime powers p^a <= 100, a >= 2
    double b_expected = 0;
    for (std::uint64_t p = 2; p <= 10; ++p) {
        if (!oracles::is_prime(p)) continue;
        for (std::uint64_t pa = p * p; pa <= 100; pa *= p)
            b_expected += std::log(static_cast<double>(pa)) / static_cast<double>(pa);
    }
    CHECK(r.b_const == doctest::Approx(b_expected).epsilon(1e-12));
    CHECK(r.holds);
    CHECK(r.slack > 1);
    CHECK(!r.degenerate);
    CHECK(r.rhs == doctest::Approx((r.a_const + r.b_const + 1) * (100.0 / std::log(100.0)) *
                                   r.l_sum));
}

TEST_CASE("tenenbaum_check handles the coefficient weights of the discriminant form") {
    const auto& table = delta_normalized(1000);
    const MultiplicativeFn csq = [&table](const PrimeLabel& p, std::uint32_t e) {
        const double c = table.extend(IdealElement::prime_power(p, e)).to_double();
        return c * c;
    };
    const TenenbaumReport r = tenenbaum_check(csq, table, 1000);
    CHECK(r.holds);
    CHECK(r.slack > 1);
    CHECK(!r.degenerate);
}

TEST_CASE("tenenbaum_check rejects negative weights and flags degenerate ones") {
    const auto& table = delta_normalized(1000);
    const MultiplicativeFn negative = [](const PrimeLabel&, std::uint32_t) { return -1.0; };
    CHECK_THROWS_AS(tenenbaum_check(negative, table, 100), ValidationError);
    const MultiplicativeFn zero = [](const PrimeLabel&, std::uint32_t) { return 0.0; };
    const TenenbaumReport r = tenenbaum_check(zero, table, 100);
    CHECK(r.degenerate);
    CHECK(r.s_sum == 1.0);  // only the unit ideal survives
    CHECK(r.holds);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "heckelab/angle.hpp"
#include "heckelab/contfrac.hpp"
#include "heckelab/error.hpp"
#include "heckelab/real.hpp"

using namespace heckelab;

namespace {

// theta_2(Delta) / 2 pi at the given precision.
Real delta_ratio(Precision prec) {
    const Real c = Real(-24L, prec) / sqrt(pow_ui(Real(2L, prec), 11));
    return acos(c / 2L) / mul_ui(const_pi(prec), 2, prec);
}

Real golden_fraction(Precision prec) {  // (sqrt(5) - 1) / 2 = [0; 1, 1, 1, ...]
    return (sqrt(Real(5L, prec)) - 1L) / 2L;
}

}  // namespace

TEST_CASE("golden ratio yields all-ones quotients and Fibonacci convergents") {
    const ContinuedFraction cf = ContinuedFraction::compute(golden_fraction(256), 40);
    REQUIRE(cf.depth() == 40);
    for (const auto& a : cf.quotients()) CHECK(a == 1);
    // Fibonacci: q_1 = 1, q_2 = 2, q_3 = 3, q_4 = 5, ...
    const auto& conv = cf.convergents();
    CHECK(conv[0].q == 1);
    CHECK(conv[1].q == 2);
    for (std::size_t k = 2; k < conv.size(); ++k)
        CHECK(conv[k].q == conv[k - 1].q + conv[k - 2].q);
}

TEST_CASE("frozen expansion of theta_2 / 2 pi") {
    // [DERIVED: certified interval expansion at 128 bits]
    const std::vector<long> expected{3, 2, 2, 2, 19, 4, 1, 1, 21, 2, 1, 1, 1,
                                     1, 1, 1, 16, 3, 4, 1, 6, 3, 1, 1, 28};
    const ContinuedFraction cf = ContinuedFraction::compute(delta_ratio(128), expected.size());
    REQUIRE(cf.depth() == expected.size());
    for (std::size_t k = 0; k < expected.size(); ++k) CHECK(cf.quotients()[k] == expected[k]);

    const std::vector<long> denominators{3,    7,    17,   41,     796,    3225,  4021, 7246,
                                         156187, 319620, 475807, 795427, 1271234, 2066661, 3337895};
    for (std::size_t k = 0; k < denominators.size(); ++k)
        CHECK(cf.convergents()[k].q == denominators[k]);
}

TEST_CASE("convergents satisfy the determinant identity and approximation bound") {
    const ContinuedFraction cf = ContinuedFraction::compute(delta_ratio(192), 20);
    const auto& conv = cf.convergents();
    // p_k q_{k-1} - p_{k-1} q_k = (-1)^k (with p_0/q_0 = 0/1 implicit)
    mpz_class p_prev = 0, q_prev = 1;
    int sign = 1;  // p_k q_{k-1} - p_{k-1} q_k = (-1)^{k-1}, k starting at 1
    for (const auto& c : conv) {
        CHECK(c.p * q_prev - p_prev * c.q == sign);
        CHECK(gcd(c.p, c.q) == 1);
        p_prev = c.p;
        q_prev = c.q;
        sign = -sign;
    }
    // |x - p/q| < 1/q^2, evaluated in exact rational arithmetic on the float
    const mpq_class x = cf.value().to_mpq();
    for (const auto& c : conv) {
        const mpq_class err = abs(x - mpq_class(c.p) / mpq_class(c.q));
        CHECK(err * c.q * c.q < 1);
    }
}

TEST_CASE("domain validation") {
    CHECK_THROWS_AS(ContinuedFraction::compute(Real(0L, 128), 5), DomainError);
    CHECK_THROWS_AS(ContinuedFraction::compute(Real(1L, 128), 5), DomainError);
    CHECK_THROWS_AS(ContinuedFraction::compute(Real(-0.5, 128), 5), DomainError);
    CHECK_THROWS_AS(ContinuedFraction::compute(Real(1.5, 128), 5), DomainError);
    CHECK_THROWS_AS(ContinuedFraction::compute(golden_fraction(128), 0), DomainError);
}

TEST_CASE("certification stops at the precision horizon") {
    // A dyadic rational is exactly representable: its final quotient can never
    // be told apart from a continuation, so certification exhausts.
    const Real dyadic(mpq_class(3, 8), 128);
    const ContinuedFraction partial = ContinuedFraction::compute_at_most(dyadic, 10);
    CHECK(partial.depth() == 2);  // [0; 2, 1, ...] is certain, the tail is not
    CHECK(partial.quotients()[0] == 2);
    CHECK(partial.quotients()[1] == 1);
    try {
        ContinuedFraction::compute(dyadic, 10);
        FAIL("expected PrecisionError");
    } catch (const PrecisionError& e) {
        CHECK(e.index() == 3);
    }

    // At 64 bits the expansion of an irrational runs out after ~30 quotients;
    // raising the precision certifies more.
    const Real coarse = golden_fraction(64);
    const std::size_t coarse_depth = ContinuedFraction::compute_at_most(coarse, 100).depth();
    CHECK(coarse_depth < 100);
    CHECK_THROWS_AS(ContinuedFraction::compute(coarse, coarse_depth + 1), PrecisionError);
    const Real fine = golden_fraction(512);
    CHECK(ContinuedFraction::compute_at_most(fine, 100).depth() == 100);
}

TEST_CASE("compute_at_most never throws for lack of precision and agrees with compute") {
    const Real x = delta_ratio(128);
    const ContinuedFraction a = ContinuedFraction::compute(x, 10);
    const ContinuedFraction b = ContinuedFraction::compute_at_most(x, 10);
    CHECK(a.quotients() == b.quotients());
}

TEST_CASE("dirichlet_witnesses certifies q * ||q x|| < 1 for each denominator") {
    const Real alpha = delta_ratio(128);
    const auto qs = dirichlet_witnesses(alpha, 15);
    REQUIRE(qs.size() == 15);
    CHECK(qs.front() == 3);
    CHECK(qs.back() == 3337895);
    // independent re-verification at 256 bits
    const Real alpha256 = delta_ratio(256);
    for (const auto& q : qs) {
        Real prod(256);
        mpfr_mul_z(prod.raw(), alpha256.raw(), q.get_mpz_t(), MPFR_RNDN);
        const Real dist = nearest_int_distance(prod);
        Real scaled(256);
        mpfr_mul_z(scaled.raw(), dist.raw(), q.get_mpz_t(), MPFR_RNDN);
        CHECK(scaled < 1L);
    }
    CHECK(dirichlet_witnesses(alpha, 0).empty());
}

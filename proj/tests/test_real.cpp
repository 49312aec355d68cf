#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gmpxx.h>

#include "heckelab/error.hpp"
#include "heckelab/real.hpp"

using namespace heckelab;

TEST_CASE("construction carries the requested precision and value") {
    CHECK(Real(128).is_zero());
    CHECK(Real(3L, 64).precision() == 64);
    CHECK(Real(3L, 64).to_long() == 3);
    CHECK(Real(-2.5, 128).to_double() == -2.5);
    CHECK(Real(mpz_class("123456789123456789"), 128).str(18) ==
          Real::parse("1.23456789123456789e17", 128).str(18));
    // mpq construction rounds correctly: 1/3 at 64 bits vs 128 bits differ.
    const Real third64(mpq_class(1, 3), 64);
    const Real third128(mpq_class(1, 3), 128);
    CHECK(third64.precision() == 64);
    CHECK(abs(third64 - third128).to_double() < 1e-18);
    CHECK(abs(third64 - third128).to_double() > 0);
}

TEST_CASE("parse accepts decimal literals and rejects junk") {
    CHECK(Real::parse("0.5", 128).to_double() == 0.5);
    CHECK(Real::parse("-0.125", 128).to_double() == -0.125);
    CHECK(Real::parse("3.5e-2", 128).to_double() == 0.035);
    CHECK_THROWS_AS(Real::parse("", 128), ParseError);
    CHECK_THROWS_AS(Real::parse("1.2.3", 128), ParseError);
    CHECK_THROWS_AS(Real::parse("0.5 apples", 128), ParseError);
    CHECK_THROWS_AS(Real::parse("nope", 128), ParseError);
}

TEST_CASE("str round-trips exactly at the same precision") {
    const Real x = Real(1L, 256) / 7L;
    const Real back = Real::parse(x.str(), 256);
    CHECK((x - back).is_zero());
    // Explicit digit count is honored.
    CHECK(Real(0.5, 64).str(3) == "5.00e-01");
}

TEST_CASE("binary operations live at the larger operand precision") {
    const Real a(1L, 64);
    const Real b(1L, 192);
    CHECK((a + b).precision() == 192);
    CHECK((b * a).precision() == 192);
    CHECK((a / 3L).precision() == 64);
    CHECK((2L - b).precision() == 192);
}

TEST_CASE("field arithmetic is accurate to working precision") {
    const Real one_third = Real(1L, 256) / 3L;
    CHECK(abs(one_third * 3L - Real(1L, 256)).to_double() < 1e-75);
    const Real s = sqrt(Real(2L, 256));
    CHECK(abs(s * s - Real(2L, 256)).to_double() < 1e-75);
    CHECK(abs(Real(10L, 128) / Real(4L, 128) - Real(2.5, 128)).is_zero());
}

TEST_CASE("comparisons against Real, long and double") {
    const Real x(1.5, 128);
    CHECK(x > 1L);
    CHECK(x < 2L);
    CHECK(x == 1.5);
    CHECK(x >= Real(1.5, 64));
    CHECK(Real(-3L, 64) < Real(0L, 64));
}

TEST_CASE("to_mpq is lossless and to_mpz rounds as documented") {
    const Real x(mpq_class(3, 8), 128);
    CHECK(x.to_mpq() == mpq_class(3, 8));
    CHECK(Real(2.75, 64).to_mpz_floor() == 2);
    CHECK(Real(2.75, 64).to_mpz_nearest() == 3);
    CHECK(Real(-0.25, 64).to_mpz_floor() == -1);
    CHECK(Real(-0.25, 64).to_mpz_nearest() == 0);
}

TEST_CASE("acos covers [-1,1] and rejects values outside") {
    const Real pi = const_pi(128);
    CHECK(abs(acos(Real(-1L, 128)) - pi).to_double() < 1e-35);
    CHECK(acos(Real(1L, 128)).is_zero());
    CHECK(abs(acos(Real(0L, 128)) - pi / 2L).to_double() < 1e-35);
    CHECK_THROWS_AS(acos(Real(1.5, 128)), DomainError);
    CHECK_THROWS_AS(acos(Real(-1.0000001, 128)), DomainError);
}

TEST_CASE("frac and nearest_int_distance handle signs and integers") {
    CHECK(frac(Real(2.75, 128)).to_double() == 0.75);
    CHECK(frac(Real(-0.25, 128)).to_double() == 0.75);
    CHECK(frac(Real(3L, 128)).is_zero());
    CHECK(nearest_int_distance(Real(2.75, 128)).to_double() == 0.25);
    CHECK(nearest_int_distance(Real(-0.25, 128)).to_double() == 0.25);
    CHECK(nearest_int_distance(Real(7L, 128)).is_zero());
    CHECK(nearest_int_distance(Real(0.5, 128)).to_double() == 0.5);
}

TEST_CASE("next_above/next_below bracket the value tightly") {
    const Real x = Real(1L, 128) / 3L;
    const Real lo = next_below(x);
    const Real hi = next_above(x);
    CHECK(lo < x);
    CHECK(x < hi);
    CHECK((hi - lo).to_double() < 1e-37);
}

TEST_CASE("mul_ui and const_pi match plain operations") {
    const Real pi = const_pi(192);
    CHECK(abs(mul_ui(pi, 1000u, 192) - pi * 1000L).to_double() < 1e-50);
    // 20 digits of pi, an external constant.
    CHECK(abs(pi - Real::parse("3.14159265358979323846", 192)).to_double() < 1e-19);
}

TEST_CASE("pow_ui, log, floor, round_nearest, min, max") {
    CHECK(pow_ui(Real(2L, 128), 10).to_long() == 1024);
    const mpz_class two_to_64 = mpz_class(1) << 64;
    CHECK(abs(log(Real(two_to_64, 128)) / log(Real(2L, 128)) - Real(64L, 128))
              .to_double() < 1e-30);
    CHECK(floor(Real(2.9, 64)).to_long() == 2);
    CHECK(floor(Real(-2.1, 64)).to_long() == -3);
    CHECK(round_nearest(Real(2.5, 64)).to_long() == 2);  // ties to even
    CHECK(round_nearest(Real(2.51, 64)).to_long() == 3);
    CHECK(min(Real(1L, 64), Real(2L, 64)).to_long() == 1);
    CHECK(max(Real(1L, 64), Real(2L, 64)).to_long() == 2);
}

TEST_CASE("with_precision rounds, copy and move preserve value") {
    const Real x = Real(1L, 256) / 3L;
    const Real narrowed = x.with_precision(64);
    CHECK(narrowed.precision() == 64);
    CHECK(abs(narrowed - x).to_double() < 1e-18);
    Real copy = x;
    CHECK((copy - x).is_zero());
    const Real moved = std::move(copy);
    CHECK((moved - x).is_zero());
}

#pragma once
// Real: a minimal RAII wrapper over MPFR with explicit per-value precision.
//
// Library contracts carry precision_bits through every type, so precision is
// explicit here too: each value knows its own precision, and the result of a
// binary operation lives at the larger precision of its operands.  Rounding
// is always to nearest (MPFR_RNDN).  The wrapper deliberately exposes only
// the operations the library needs; call raw() for anything else.

#include <gmpxx.h>
#include <mpfr.h>

#include <cstddef>
#include <string>

namespace heckelab {

using Precision = mpfr_prec_t;

// Default working precision of the library (bits of mantissa).
inline constexpr Precision kDefaultPrecision = 128;

// Relative tolerance for real-valued checks at default precision: 2^-40.
// Leaves ample headroom below working precision while catching genuine
// violations.
inline constexpr double kCheckTolerance = 9.094947017729282e-13;  // 2^-40

class Real {
public:
    // -- construction --------------------------------------------------------
    explicit Real(Precision prec = kDefaultPrecision);  // value 0
    Real(long value, Precision prec);
    Real(unsigned long value, Precision prec);
    Real(int value, Precision prec) : Real(static_cast<long>(value), prec) {}
    Real(double value, Precision prec);
    Real(const mpz_class& value, Precision prec);
    Real(const mpq_class& value, Precision prec);

    // Parses a decimal literal ("-0.125", "3.5e-2"). Throws ParseError if the
    // string is not entirely a number.
    static Real parse(const std::string& decimal, Precision prec);

    Real(const Real& other);
    Real(Real&& other) noexcept;
    Real& operator=(const Real& other);
    Real& operator=(Real&& other) noexcept;
    ~Real();

    // -- observers ------------------------------------------------------------
    Precision precision() const { return mpfr_get_prec(x_); }
    int sign() const { return mpfr_sgn(x_); }
    bool is_zero() const { return mpfr_zero_p(x_) != 0; }
    double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }
    long to_long() const { return mpfr_get_si(x_, MPFR_RNDN); }
    mpz_class to_mpz_floor() const;
    mpz_class to_mpz_nearest() const;
    // Exact rational value of the floating-point number (lossless).
    mpq_class to_mpq() const;
    // Decimal rendering in scientific form; 0 digits means "enough significant
    // digits to round-trip this precision".
    std::string str(std::size_t significant_digits = 0) const;

    // Copy rounded to a different precision.
    Real with_precision(Precision prec) const;

    mpfr_ptr raw() { return x_; }
    mpfr_srcptr raw() const { return x_; }

    // -- arithmetic -----------------------------------------------------------
    Real operator-() const;
    friend Real operator+(const Real& a, const Real& b);
    friend Real operator-(const Real& a, const Real& b);
    friend Real operator*(const Real& a, const Real& b);
    friend Real operator/(const Real& a, const Real& b);
    friend Real operator+(const Real& a, long b);
    friend Real operator-(const Real& a, long b);
    friend Real operator*(const Real& a, long b);
    friend Real operator/(const Real& a, long b);
    friend Real operator*(const Real& a, unsigned long b);
    friend Real operator/(const Real& a, unsigned long b);
    friend Real operator-(long a, const Real& b);
    friend Real operator/(long a, const Real& b);
    Real& operator+=(const Real& b);
    Real& operator-=(const Real& b);
    Real& operator*=(const Real& b);
    Real& operator/=(const Real& b);

    // -- comparisons (exact, on the represented values) ------------------------
    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.x_, b.x_) != 0; }
    friend bool operator!=(const Real& a, const Real& b) { return !(a == b); }
    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.x_, b.x_) != 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.x_, b.x_) != 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.x_, b.x_) != 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.x_, b.x_) != 0; }
    friend bool operator<(const Real& a, long b) { return mpfr_cmp_si(a.x_, b) < 0; }
    friend bool operator<=(const Real& a, long b) { return mpfr_cmp_si(a.x_, b) <= 0; }
    friend bool operator>(const Real& a, long b) { return mpfr_cmp_si(a.x_, b) > 0; }
    friend bool operator>=(const Real& a, long b) { return mpfr_cmp_si(a.x_, b) >= 0; }
    friend bool operator==(const Real& a, long b) { return mpfr_cmp_si(a.x_, b) == 0; }
    friend bool operator<(const Real& a, double b) { return mpfr_cmp_d(a.x_, b) < 0; }
    friend bool operator>(const Real& a, double b) { return mpfr_cmp_d(a.x_, b) > 0; }
    friend bool operator<=(const Real& a, double b) { return mpfr_cmp_d(a.x_, b) <= 0; }
    friend bool operator>=(const Real& a, double b) { return mpfr_cmp_d(a.x_, b) >= 0; }
    friend bool operator==(const Real& a, double b) { return mpfr_cmp_d(a.x_, b) == 0; }

private:
    mpfr_t x_;
};

// -- elementary functions (result precision = argument precision) -------------
Real abs(const Real& a);
Real sqrt(const Real& a);
Real sin(const Real& a);
Real cos(const Real& a);
Real acos(const Real& a);  // domain |a| <= 1
Real log(const Real& a);   // domain a > 0
Real floor(const Real& a);
Real round_nearest(const Real& a);
Real pow_ui(const Real& a, unsigned long e);
Real min(const Real& a, const Real& b);
Real max(const Real& a, const Real& b);

// a * n computed at precision prec (exact up to one rounding).
Real mul_ui(const Real& a, unsigned long n, Precision prec);

// pi at the given precision.
Real const_pi(Precision prec);

// Fractional part in [0, 1): a - floor(a).
Real frac(const Real& a);

// Distance to the nearest integer: ||a|| in [0, 1/2].
Real nearest_int_distance(const Real& a);

// Adjacent representable values at a's precision (one ulp away).
Real next_above(const Real& a);
Real next_below(const Real& a);

}  // namespace heckelab

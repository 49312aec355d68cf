#include "heckelab/real.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "heckelab/error.hpp"

namespace heckelab {

// ---------------------------------------------------------------------------
// construction / rule of five
// ---------------------------------------------------------------------------

Real::Real(Precision prec) {
    mpfr_init2(x_, prec);
    mpfr_set_zero(x_, 1);
}

Real::Real(long value, Precision prec) {
    mpfr_init2(x_, prec);
    mpfr_set_si(x_, value, MPFR_RNDN);
}

Real::Real(unsigned long value, Precision prec) {
    mpfr_init2(x_, prec);
    mpfr_set_ui(x_, value, MPFR_RNDN);
}

Real::Real(double value, Precision prec) {
    mpfr_init2(x_, prec);
    mpfr_set_d(x_, value, MPFR_RNDN);
}

Real::Real(const mpz_class& value, Precision prec) {
    mpfr_init2(x_, prec);
    mpfr_set_z(x_, value.get_mpz_t(), MPFR_RNDN);
}

Real::Real(const mpq_class& value, Precision prec) {
    mpfr_init2(x_, prec);
    mpfr_set_q(x_, value.get_mpq_t(), MPFR_RNDN);
}

Real Real::parse(const std::string& decimal, Precision prec) {
    Real r(prec);
    char* end = nullptr;
    mpfr_strtofr(r.x_, decimal.c_str(), &end, 10, MPFR_RNDN);
    if (end == decimal.c_str() || *end != '\0')
        throw ParseError("not a decimal number: '" + decimal + "'");
    return r;
}

Real::Real(const Real& other) {
    mpfr_init2(x_, mpfr_get_prec(other.x_));
    mpfr_set(x_, other.x_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
    mpfr_init2(x_, mpfr_get_prec(other.x_));
    mpfr_swap(x_, other.x_);
}

Real& Real::operator=(const Real& other) {
    if (this != &other) {
        mpfr_set_prec(x_, mpfr_get_prec(other.x_));
        mpfr_set(x_, other.x_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& other) noexcept {
    if (this != &other) mpfr_swap(x_, other.x_);
    return *this;
}

Real::~Real() { mpfr_clear(x_); }

// ---------------------------------------------------------------------------
// observers
// ---------------------------------------------------------------------------

mpz_class Real::to_mpz_floor() const {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), x_, MPFR_RNDD);
    return z;
}

mpz_class Real::to_mpz_nearest() const {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), x_, MPFR_RNDN);
    return z;
}

mpq_class Real::to_mpq() const {
    mpq_class q;
    mpfr_get_q(q.get_mpq_t(), x_);
    return q;
}

std::string Real::str(std::size_t significant_digits) const {
    std::size_t digits = significant_digits;
    if (digits == 0) {
        // Enough decimal digits to reconstruct every bit of the mantissa.
        digits = static_cast<std::size_t>(std::ceil(precision() * 0.30102999566398120)) + 2;
    }
    const int frac_digits = static_cast<int>(digits) - 1;
    const int n = mpfr_snprintf(nullptr, 0, "%.*Re", frac_digits, x_);
    std::vector<char> buf(static_cast<std::size_t>(n) + 1);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Re", frac_digits, x_);
    return std::string(buf.data());
}

Real Real::with_precision(Precision prec) const {
    Real r(prec);
    mpfr_set(r.x_, x_, MPFR_RNDN);
    return r;
}

// ---------------------------------------------------------------------------
// arithmetic
// ---------------------------------------------------------------------------

namespace {
Precision joint(const Real& a, const Real& b) {
    return std::max(a.precision(), b.precision());
}
}  // namespace

Real Real::operator-() const {
    Real r(precision());
    mpfr_neg(r.raw(), x_, MPFR_RNDN);
    return r;
}

Real operator+(const Real& a, const Real& b) {
    Real r(joint(a, b));
    mpfr_add(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    return r;
}

Real operator-(const Real& a, const Real& b) {
    Real r(joint(a, b));
    mpfr_sub(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    return r;
}

Real operator*(const Real& a, const Real& b) {
    Real r(joint(a, b));
    mpfr_mul(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    return r;
}

Real operator/(const Real& a, const Real& b) {
    Real r(joint(a, b));
    mpfr_div(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    return r;
}

Real operator+(const Real& a, long b) {
    Real r(a.precision());
    mpfr_add_si(r.raw(), a.raw(), b, MPFR_RNDN);
    return r;
}

Real operator-(const Real& a, long b) {
    Real r(a.precision());
    mpfr_sub_si(r.raw(), a.raw(), b, MPFR_RNDN);
    return r;
}

Real operator*(const Real& a, long b) {
    Real r(a.precision());
    mpfr_mul_si(r.raw(), a.raw(), b, MPFR_RNDN);
    return r;
}

Real operator/(const Real& a, long b) {
    Real r(a.precision());
    mpfr_div_si(r.raw(), a.raw(), b, MPFR_RNDN);
    return r;
}

Real operator*(const Real& a, unsigned long b) {
    Real r(a.precision());
    mpfr_mul_ui(r.raw(), a.raw(), b, MPFR_RNDN);
    return r;
}

Real operator/(const Real& a, unsigned long b) {
    Real r(a.precision());
    mpfr_div_ui(r.raw(), a.raw(), b, MPFR_RNDN);
    return r;
}

Real operator-(long a, const Real& b) {
    Real r(b.precision());
    mpfr_si_sub(r.raw(), a, b.raw(), MPFR_RNDN);
    return r;
}

Real operator/(long a, const Real& b) {
    Real r(b.precision());
    mpfr_si_div(r.raw(), a, b.raw(), MPFR_RNDN);
    return r;
}

Real& Real::operator+=(const Real& b) {
    mpfr_add(x_, x_, b.x_, MPFR_RNDN);
    return *this;
}

Real& Real::operator-=(const Real& b) {
    mpfr_sub(x_, x_, b.x_, MPFR_RNDN);
    return *this;
}

Real& Real::operator*=(const Real& b) {
    mpfr_mul(x_, x_, b.x_, MPFR_RNDN);
    return *this;
}

Real& Real::operator/=(const Real& b) {
    mpfr_div(x_, x_, b.x_, MPFR_RNDN);
    return *this;
}

// ---------------------------------------------------------------------------
// elementary functions
// ---------------------------------------------------------------------------

#define HECKELAB_UNARY(name, mpfr_fn)              \
    Real name(const Real& a) {                     \
        Real r(a.precision());                     \
        mpfr_fn(r.raw(), a.raw(), MPFR_RNDN);      \
        return r;                                  \
    }

HECKELAB_UNARY(abs, mpfr_abs)
HECKELAB_UNARY(sqrt, mpfr_sqrt)
HECKELAB_UNARY(sin, mpfr_sin)
HECKELAB_UNARY(cos, mpfr_cos)
HECKELAB_UNARY(log, mpfr_log)

#undef HECKELAB_UNARY

Real acos(const Real& a) {
    if (mpfr_cmp_si(a.raw(), 1) > 0 || mpfr_cmp_si(a.raw(), -1) < 0)
        throw DomainError("acos argument outside [-1, 1]: " + a.str(20));
    Real r(a.precision());
    mpfr_acos(r.raw(), a.raw(), MPFR_RNDN);
    return r;
}

Real floor(const Real& a) {
    Real r(a.precision());
    mpfr_floor(r.raw(), a.raw());
    return r;
}

Real round_nearest(const Real& a) {
    Real r(a.precision());
    mpfr_rint(r.raw(), a.raw(), MPFR_RNDN);
    return r;
}

Real pow_ui(const Real& a, unsigned long e) {
    Real r(a.precision());
    mpfr_pow_ui(r.raw(), a.raw(), e, MPFR_RNDN);
    return r;
}

Real min(const Real& a, const Real& b) { return (b < a) ? b : a; }
Real max(const Real& a, const Real& b) { return (a < b) ? b : a; }

Real mul_ui(const Real& a, unsigned long n, Precision prec) {
    Real r(prec);
    mpfr_mul_ui(r.raw(), a.raw(), n, MPFR_RNDN);
    return r;
}

Real const_pi(Precision prec) {
    Real r(prec);
    mpfr_const_pi(r.raw(), MPFR_RNDN);
    return r;
}

Real frac(const Real& a) {
    Real r(a.precision());
    mpfr_sub(r.raw(), a.raw(), floor(a).raw(), MPFR_RNDN);
    // Guard against frac(x) == 1 after rounding when x is a hair below an integer.
    if (mpfr_cmp_si(r.raw(), 1) >= 0) mpfr_sub_si(r.raw(), r.raw(), 1, MPFR_RNDN);
    if (mpfr_sgn(r.raw()) < 0) mpfr_set_zero(r.raw(), 1);
    return r;
}

Real nearest_int_distance(const Real& a) {
    Real f = frac(a);
    Real one_minus(a.precision());
    mpfr_si_sub(one_minus.raw(), 1, f.raw(), MPFR_RNDN);
    return min(f, one_minus);
}

Real next_above(const Real& a) {
    Real r(a);
    mpfr_nextabove(r.raw());
    return r;
}

Real next_below(const Real& a) {
    Real r(a);
    mpfr_nextbelow(r.raw());
    return r;
}

}  // namespace heckelab

#pragma once
// Sato-Tate angles and the closed form for prime-power coefficients.
//
// For an unramified prime p of a normalized eigenform, c(p) = 2 cos(theta_p)
// with theta_p in [0, pi], and the Hecke recursion solves in closed form as
//
//     c(p^n) = sin((n+1) theta_p) / sin(theta_p)        (Chebyshev U_n(cos theta)).
//
// Everything here works at explicit precision: evaluating sin((n+1) theta)
// reduces (n+1) theta modulo 2 pi in extended precision first — never by
// iterating additions — so the absolute error stays near 2^-precision even
// for n in the millions.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "heckelab/coeff_table.hpp"
#include "heckelab/monoid.hpp"
#include "heckelab/real.hpp"

namespace heckelab {

class Angle {
public:
    // theta must lie in [0, pi] at its own precision.
    explicit Angle(Real theta, PrimeLabel source = {});

    const Real& theta() const { return theta_; }
    Precision precision_bits() const { return theta_.precision(); }
    const PrimeLabel& source_prime() const { return source_; }

    // 2 cos(theta), the coefficient this angle encodes.
    Real coefficient() const;

    // theta == 0 or theta == pi exactly at working precision (c(p) = +-2).
    bool is_singular() const;

private:
    Real theta_;
    PrimeLabel source_;
};

// theta = arccos(c_p / 2) at the requested precision.  |c_p| may exceed 2 by
// at most the 2^-40 check tolerance (then clamps); beyond that: DomainError.
Angle angle_of(const Real& c_p, Precision precision_bits, PrimeLabel source = {});

// Closed form c(p^n) = sin((n+1) theta)/sin(theta).  Throws SingularAngleError
// when theta is 0 or pi.  The result carries the angle's precision; internal
// evaluation uses extended precision for the argument reduction.
Real prime_power_coeff(const Angle& theta, std::uint64_t n);

// Smallest working precision that keeps the absolute error of
// sin((n+1) theta) below 2^-60 for all n <= n_max:
// ceil(log2(n_max)) + 64 + guard bits.
Precision precision_required(std::uint64_t n_max);

// Detects c_p = 2 cos(2 pi A/B) for some reduced fraction A/B with B <= B_max,
// within the 2^-40 tolerance, confirmed by the period-B structure of the
// coefficient sequence.  Returns the reduced (A, B) or nothing.
std::optional<std::pair<std::uint64_t, std::uint64_t>> rational_angle_test(
    const Real& c_p, std::uint64_t b_max);

// Angles of all table primes with norm <= x_max, tagged with their source
// primes, in canonical prime order.  Requires a normalized table.
std::vector<Angle> sato_tate_angles(const CoefficientTable& table, std::uint64_t x_max,
                                    Precision prec = kDefaultPrecision);

}  // namespace heckelab

#include "heckelab/angle.hpp"

#include <numeric>

#include "heckelab/error.hpp"

namespace heckelab {

namespace {

// Extra bits used for argument reduction; covers the digits consumed by the
// multiplication (n+1)*theta and the subtraction of multiples of 2 pi.
constexpr Precision kReductionMargin = 70;

// sin((n+1) theta) with the product reduced modulo 2 pi at extended precision.
Real sin_multiple(const Real& theta, std::uint64_t multiple, Precision out_prec) {
    const Precision work = out_prec + kReductionMargin;
    Real prod(work);
    mpfr_mul_ui(prod.raw(), theta.raw(), static_cast<unsigned long>(multiple), MPFR_RNDN);
    Real two_pi = const_pi(work) * 2L;
    Real reduced(work);
    mpfr_fmod(reduced.raw(), prod.raw(), two_pi.raw(), MPFR_RNDN);
    return sin(reduced).with_precision(out_prec);
}

}  // namespace

// ---------------------------------------------------------------------------
// Angle
// ---------------------------------------------------------------------------

Angle::Angle(Real theta, PrimeLabel source) : theta_(std::move(theta)), source_(std::move(source)) {
    if (theta_.sign() < 0 || theta_ > const_pi(theta_.precision()))
        throw DomainError("angle outside [0, pi]: " + theta_.str(20));
}

Real Angle::coefficient() const { return cos(theta_) * 2L; }

bool Angle::is_singular() const {
    return theta_.is_zero() || theta_ == const_pi(theta_.precision());
}

// ---------------------------------------------------------------------------
// angle_of
// ---------------------------------------------------------------------------

Angle angle_of(const Real& c_p, Precision precision_bits, PrimeLabel source) {
    Real half = c_p.with_precision(precision_bits) / 2L;
    const Real one(1L, precision_bits);
    if (abs(half) > one) {
        // Tolerate roundoff up to the check tolerance, then clamp to +-1.
        if (abs(half) > one + Real(kCheckTolerance, precision_bits))
            throw DomainError("coefficient outside [-2, 2]: " + c_p.str(20));
        half = (half.sign() > 0) ? one : -one;
    }
    return Angle(acos(half), std::move(source));
}

// ---------------------------------------------------------------------------
// prime_power_coeff
// ---------------------------------------------------------------------------

Real prime_power_coeff(const Angle& theta, std::uint64_t n) {
    if (theta.is_singular())
        throw SingularAngleError("closed form undefined at theta = " + theta.theta().str(8) +
                                 " (|c(p)| = 2)");
    if (n == 0) return Real(1L, theta.precision_bits());
    const Precision prec = theta.precision_bits();
    return sin_multiple(theta.theta(), n + 1, prec) / sin(theta.theta());
}

Precision precision_required(std::uint64_t n_max) {
    if (n_max < 1) throw DomainError("n_max must be >= 1");
    Precision bits = 0;
    while ((1ull << bits) < n_max) ++bits;  // ceil(log2(n_max))
    constexpr Precision kGuard = 16;
    return bits + 64 + kGuard;
}

// ---------------------------------------------------------------------------
// rational_angle_test
// ---------------------------------------------------------------------------

std::optional<std::pair<std::uint64_t, std::uint64_t>> rational_angle_test(
    const Real& c_p, std::uint64_t b_max) {
    const Precision prec = std::max<Precision>(c_p.precision(), kDefaultPrecision);
    if (abs(c_p) > Real(2.0 + 2 * kCheckTolerance, prec))
        throw DomainError("coefficient outside [-2, 2]: " + c_p.str(20));

    const Real theta = angle_of(c_p, prec).theta();
    const Real x = theta / (const_pi(prec) * 2L);  // theta/2pi in [0, 1/2]
    const Real tol(2 * kCheckTolerance, prec);

    for (std::uint64_t b = 1; b <= b_max; ++b) {
        // On the monotone arc cos: any A/B matching c_p within the tolerance
        // must have A = round(B * x); testing that single candidate suffices.
        const Real bx = mul_ui(x, static_cast<unsigned long>(b), prec);
        const std::uint64_t a = static_cast<std::uint64_t>(round_nearest(bx).to_long());
        if (a > b / 2) continue;  // theta in [0, pi] means A/B in [0, 1/2]
        if (std::gcd(a, b) != 1) continue;  // the reduced form appeared earlier

        const Real candidate_theta = const_pi(prec) * 2L * static_cast<long>(a) / static_cast<long>(b);
        const Real candidate_c = cos(candidate_theta) * 2L;
        if (abs(c_p - candidate_c) > tol) continue;

        // Confirm by periodicity: theta = 2 pi A/B + delta makes the closed
        // form B-periodic in n up to O(B * delta).  Reject mismatches larger
        // than that slack (relative to sin^2 theta).  Singular angles (c = +-2,
        // i.e. A/B in {0/1, 1/2}) have no closed-form sequence to confirm.
        const Angle ang(theta);
        if (!ang.is_singular()) {
            const Real s = sin(theta);
            const double sin2 = (s * s).to_double();
            const double confirm_tol = static_cast<double>(b) * 1.5e-11 / sin2;  // b * 2^-36
            bool periodic = true;
            const std::uint64_t span = std::min<std::uint64_t>(2 * b, 48);
            for (std::uint64_t m = 0; m <= span && periodic; ++m) {
                const double lhs = prime_power_coeff(ang, m).to_double();
                const double rhs = prime_power_coeff(ang, m + b).to_double();
                if (std::abs(lhs - rhs) > confirm_tol) periodic = false;
            }
            if (!periodic) continue;
        }
        return std::make_pair(a, b);
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// sato_tate_angles
// ---------------------------------------------------------------------------

std::vector<Angle> sato_tate_angles(const CoefficientTable& table, std::uint64_t x_max,
                                    Precision prec) {
    if (!table.normalized()) throw ValidationError("sato_tate_angles requires a normalized table");
    std::vector<Angle> angles;
    for (const auto& row : table.rows()) {
        if (row.prime.norm > x_max) continue;
        angles.push_back(angle_of(row.value, prec, row.prime));
    }
    return angles;
}

}  // namespace heckelab

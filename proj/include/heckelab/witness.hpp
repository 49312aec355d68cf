#pragma once
// Witness constructions: explicit finite certificates for the infinitude /
// liminf statements about small prime-power coefficients, driven by the
// continued fraction of the relevant angle ratio.
//
//   prime_power_witnesses    exponents n with 0 < |c(p^n)| <= Lambda_f/(n+1),
//                            Lambda_f = 2 pi / |sin theta_p|; n+1 runs over
//                            convergent denominators of theta_p / 2 pi.
//   two_prime_witnesses      ideals a_n = p^{r1} q^{n-1} with
//                            0 < |c(a_n)| <= Lambda_f / log N(a_n), where r1
//                            is the smallest exponent making c(p^{r1}) > 0 and
//                            n runs over convergent denominators of
//                            theta_q / 2 pi.
//   littlewood_scan          running minima of n ||n alpha|| ||n beta||
//                            (optionally n log n weighted).
//   two_prime_equal_power_scan   running minima of (n+1) |c(p^n) c(q^n)| with
//                            the product-of-sandwich majorant
//                            (4 pi)^2 (n+1) ||(n+1)x_p|| ||(n+1)x_q|| /
//                            (sin theta_p sin theta_q),  x = theta / 2 pi.
//   bad_approx_profile       eta_hat = min (n+1) ||(n+1) theta/pi|| and the
//                            observed partial quotients of theta/pi.
//
// Every report row is re-verified by direct evaluation before it is returned;
// a failed re-check raises VerificationError.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "heckelab/angle.hpp"
#include "heckelab/contfrac.hpp"
#include "heckelab/monoid.hpp"
#include "heckelab/real.hpp"

namespace heckelab {

enum class WitnessKind { prime_power, two_prime, equal_power, bad_approx_profile };

// Stable serialization tags: "T1.5", "T1.4", "T1.6", "T1.7-profile".
std::string_view wire_tag(WitnessKind kind);

struct WitnessRow {
    std::uint64_t n = 0;                 // exponent or scan index
    std::optional<IdealElement> ideal;   // populated for two-prime rows
    Real achieved{kDefaultPrecision};
    Real bound{kDefaultPrecision};
};

struct WitnessReport {
    WitnessKind kind = WitnessKind::prime_power;
    // false: rows satisfy achieved <= bound; true: achieved >= bound.
    bool lower_bound = false;
    std::vector<WitnessRow> rows;
    std::vector<std::pair<std::string, Real>> constants;  // ordered, named
    Precision precision_bits = kDefaultPrecision;

    const Real* constant(std::string_view name) const;
};

WitnessReport prime_power_witnesses(const Angle& theta, std::size_t count);
WitnessReport two_prime_witnesses(const Angle& theta_p, const Angle& theta_q, std::size_t count);
WitnessReport bad_approx_profile(const Angle& theta, std::uint64_t n_max, std::size_t depth);

// One point of a scan trace: the running minimum at a logarithmic checkpoint,
// plus (for the equal-power scan) the pointwise majorant at that n.
struct TracePoint {
    std::uint64_t n = 0;
    double running_min = 0;
    double majorant = 0;
    bool has_majorant = false;
};

struct ScanResult {
    Real min_value{kDefaultPrecision};
    std::uint64_t argmin = 0;  // smallest n attaining the minimum
    std::vector<TracePoint> trace;
    std::vector<std::uint64_t> excluded;  // equal-power: n with a vanishing factor
    // Whether the scan's tail sits decisively below its head (empirical
    // support for the liminf-0 trend): final running min < half the first.
    bool trend_supports = false;
    bool weighted = false;
    Precision precision_bits = kDefaultPrecision;
};

ScanResult littlewood_scan(const Real& alpha, const Real& beta, std::uint64_t n_max,
                           bool weighted);
ScanResult two_prime_equal_power_scan(const Angle& theta_p, const Angle& theta_q,
                                      std::uint64_t n_max);

// Pure block kernel of littlewood_scan over n in [n_lo, n_hi]: (min, argmin).
// Exposed so the partition-independence contract is directly testable; the
// value at each n depends only on (n, alpha, beta, weighted), never on block
// boundaries.
std::pair<Real, std::uint64_t> littlewood_block(const Real& alpha, const Real& beta,
                                                std::uint64_t n_lo, std::uint64_t n_hi,
                                                bool weighted);

}  // namespace heckelab

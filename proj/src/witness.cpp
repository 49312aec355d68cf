#include "heckelab/witness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "heckelab/error.hpp"

namespace heckelab {

namespace {

constexpr Precision kScanMargin = 70;     // extra bits for argument reduction
constexpr std::size_t kR1SearchCap = 64;  // r1 search range for two-prime witnesses
constexpr std::uint64_t kRationalPrecheckB = 1000;

// ||multiple * ratio|| at the ratio's (extended) precision.
Real dist_of_multiple(const Real& ratio, std::uint64_t multiple) {
    return nearest_int_distance(mul_ui(ratio, static_cast<unsigned long>(multiple),
                                       ratio.precision()));
}

void require_precision(Precision have, std::uint64_t n_max, const char* what) {
    const Precision need = precision_required(n_max);
    if (have < need)
        throw PrecisionError(std::string(what) + ": needs " + std::to_string(need) +
                             " bits for multiples up to " + std::to_string(n_max) + ", have " +
                             std::to_string(have));
}

void require_irrational_angle(const Angle& theta) {
    if (theta.is_singular())
        throw SingularAngleError("construction undefined at theta in {0, pi}");
    if (auto ab = rational_angle_test(theta.coefficient(), kRationalPrecheckB))
        throw RationalAngleError("theta/2pi is the rational " + std::to_string(ab->first) + "/" +
                                 std::to_string(ab->second) +
                                 "; the witness construction requires an irrational angle");
}

// Up to `max_depth` certified convergent denominators of `ratio`.
std::vector<std::uint64_t> denominators_at_most(const Real& ratio, std::size_t max_depth,
                                                const char* what) {
    const ContinuedFraction cf = ContinuedFraction::compute_at_most(ratio, max_depth);
    std::vector<std::uint64_t> qs;
    qs.reserve(cf.depth());
    for (const auto& conv : cf.convergents()) {
        if (!conv.q.fits_ulong_p())
            throw ResourceError(std::string(what) + ": convergent denominator " +
                                conv.q.get_str() + " exceeds the machine-word scan range");
        qs.push_back(conv.q.get_ui());
    }
    return qs;
}

[[noreturn]] void throw_too_few(const char* what, std::size_t have, std::size_t want,
                                Precision prec) {
    throw PrecisionError(std::string(what) + ": only " + std::to_string(have) + " of " +
                             std::to_string(want) + " witnesses are certain at " +
                             std::to_string(prec) + " bits",
                         have + 1);
}

std::vector<std::uint64_t> log_checkpoints(std::uint64_t start, std::uint64_t n_max) {
    std::vector<std::uint64_t> cps;
    for (std::uint64_t c = start; c < n_max; c *= 2) cps.push_back(c);
    cps.push_back(n_max);
    return cps;
}

}  // namespace

std::string_view wire_tag(WitnessKind kind) {
    switch (kind) {
        case WitnessKind::prime_power: return "T1.5";
        case WitnessKind::two_prime: return "T1.4";
        case WitnessKind::equal_power: return "T1.6";
        case WitnessKind::bad_approx_profile: return "T1.7-profile";
    }
    return "unknown";
}

const Real* WitnessReport::constant(std::string_view name) const {
    for (const auto& [key, value] : constants)
        if (key == name) return &value;
    return nullptr;
}

// ---------------------------------------------------------------------------
// prime-power witnesses
// ---------------------------------------------------------------------------

WitnessReport prime_power_witnesses(const Angle& theta, std::size_t count) {
    require_irrational_angle(theta);
    const Precision prec = theta.precision_bits();
    const Precision work = prec + kScanMargin;

    const Real sin_theta = sin(theta.theta());
    const Real lambda = const_pi(prec) * 2L / abs(sin_theta);
    const Real x = theta.theta().with_precision(work) / (const_pi(work) * 2L);

    WitnessReport report;
    report.kind = WitnessKind::prime_power;
    report.precision_bits = prec;
    report.constants.emplace_back("Lambda_f", lambda);
    report.constants.emplace_back("theta", theta.theta());
    report.constants.emplace_back("sin_theta", sin_theta);

    if (count == 0) return report;

    // n + 1 runs over convergent denominators of theta/2pi; q = 1 would give
    // the empty exponent n = 0 and is discarded.  Denominators increase
    // strictly, so at most the first can equal 1: count + 1 candidates suffice.
    std::vector<std::uint64_t> usable;
    for (std::uint64_t q : denominators_at_most(x, count + 1, "prime_power_witnesses"))
        if (q >= 2) usable.push_back(q);
    if (usable.size() < count)
        throw_too_few("prime_power_witnesses", usable.size(), count, prec);
    usable.resize(count);

    require_precision(prec, usable.back(), "prime_power_witnesses");

    const Real positivity_floor(kCheckTolerance, prec);
    for (std::uint64_t q : usable) {
        const std::uint64_t n = q - 1;
        WitnessRow row;
        row.n = n;
        row.achieved = abs(prime_power_coeff(theta, n));
        row.bound = lambda / static_cast<unsigned long>(q);
        // Emission-time re-verification, directly from the closed form.
        if (!(row.achieved > positivity_floor))
            throw VerificationError("witness n = " + std::to_string(n) +
                                    " has |c(p^n)| indistinguishable from 0");
        if (!(row.achieved <= row.bound))
            throw VerificationError("witness n = " + std::to_string(n) +
                                    " violates |c(p^n)| <= Lambda_f/(n+1)");
        report.rows.push_back(std::move(row));
    }
    return report;
}

// ---------------------------------------------------------------------------
// two-prime witnesses
// ---------------------------------------------------------------------------

WitnessReport two_prime_witnesses(const Angle& theta_p, const Angle& theta_q,
                                  std::size_t count) {
    require_irrational_angle(theta_p);
    require_irrational_angle(theta_q);
    const PrimeLabel& p = theta_p.source_prime();
    const PrimeLabel& q = theta_q.source_prime();
    if (p.norm < 2 || q.norm < 2)
        throw DomainError("two_prime_witnesses requires angles tagged with source primes");
    if (p.label == q.label)
        throw DomainError("two_prime_witnesses requires two distinct primes");

    const Precision prec = std::max(theta_p.precision_bits(), theta_q.precision_bits());
    const Precision work = prec + kScanMargin;

    // Smallest r1 >= 1 with c(p^{r1}) decisively positive.
    const Real positivity_floor(kCheckTolerance, prec);
    std::size_t r1 = 0;
    Real c_p_r1(prec);
    for (std::size_t r = 1; r <= kR1SearchCap; ++r) {
        Real c = prime_power_coeff(theta_p, r);
        if (c > positivity_floor) {
            r1 = r;
            c_p_r1 = std::move(c);
            break;
        }
    }
    if (r1 == 0)
        throw DomainError("no positive c(p^r) found for r <= " + std::to_string(kR1SearchCap));

    const Real sin_q = sin(theta_q.theta());
    const Real delta = c_p_r1 / sin_q;

    // log of the larger of N(p)^{r1} and N(q); the reported constant is
    // c = 1/log(max), and Lambda_f = 2 pi |delta| / c.
    mpz_class p_pow;
    mpz_ui_pow_ui(p_pow.get_mpz_t(), p.norm, static_cast<unsigned long>(r1));
    const mpz_class max_norm = std::max(p_pow, mpz_class(static_cast<unsigned long>(q.norm)));
    const Real log_max = log(Real(max_norm, prec));
    const Real c_const = Real(1L, prec) / log_max;
    const Real lambda = const_pi(prec) * 2L * abs(delta) * log_max;

    WitnessReport report;
    report.kind = WitnessKind::two_prime;
    report.precision_bits = prec;
    report.constants.emplace_back("Lambda_f", lambda);
    report.constants.emplace_back("r1", Real(static_cast<long>(r1), prec));
    report.constants.emplace_back("delta", delta);
    report.constants.emplace_back("c", c_const);
    report.constants.emplace_back("theta_p", theta_p.theta());
    report.constants.emplace_back("theta_q", theta_q.theta());

    if (count == 0) return report;

    const Real x = theta_q.theta().with_precision(work) / (const_pi(work) * 2L);
    const std::vector<std::uint64_t> ns = denominators_at_most(x, count, "two_prime_witnesses");
    if (ns.size() < count) throw_too_few("two_prime_witnesses", ns.size(), count, prec);
    require_precision(theta_q.precision_bits(), ns.back(), "two_prime_witnesses");

    for (std::uint64_t n : ns) {
        if (n - 1 > 0xffffffffull)
            throw ResourceError("exponent " + std::to_string(n - 1) + " exceeds 2^32");
        // a_n = p^{r1} q^{n-1}; c(a_n) = c(p^{r1}) c(q^{n-1}) by coprimality.
        IdealElement ideal = IdealElement::prime_power(p, static_cast<std::uint32_t>(r1)) *
                             IdealElement::prime_power(q, static_cast<std::uint32_t>(n - 1));
        WitnessRow row;
        row.n = n;
        row.achieved = abs(c_p_r1 * prime_power_coeff(theta_q, n - 1));
        row.bound = lambda / ideal.log_norm(prec);
        row.ideal = std::move(ideal);
        if (!(row.achieved > positivity_floor))
            throw VerificationError("witness n = " + std::to_string(n) +
                                    " has |c(a_n)| indistinguishable from 0");
        if (!(row.achieved <= row.bound))
            throw VerificationError("witness n = " + std::to_string(n) +
                                    " violates |c(a_n)| <= Lambda_f/log N(a_n)");
        report.rows.push_back(std::move(row));
    }
    return report;
}

// ---------------------------------------------------------------------------
// littlewood scan
// ---------------------------------------------------------------------------

namespace {

// n ||n alpha|| ||n beta|| (times log n when weighted), at the joint precision.
Real littlewood_value(const Real& alpha, const Real& beta, std::uint64_t n, bool weighted,
                      Precision work) {
    Real v = nearest_int_distance(mul_ui(alpha, static_cast<unsigned long>(n), work)) *
             nearest_int_distance(mul_ui(beta, static_cast<unsigned long>(n), work));
    v = mul_ui(v, static_cast<unsigned long>(n), work);
    if (weighted) v *= log(Real(static_cast<unsigned long>(n), work));
    return v;
}

}  // namespace

std::pair<Real, std::uint64_t> littlewood_block(const Real& alpha, const Real& beta,
                                                std::uint64_t n_lo, std::uint64_t n_hi,
                                                bool weighted) {
    if (n_lo < 1 || n_lo > n_hi) throw DomainError("littlewood_block needs 1 <= n_lo <= n_hi");
    const Precision work = std::max(alpha.precision(), beta.precision());
    Real best(work);
    std::uint64_t best_n = 0;
    for (std::uint64_t n = n_lo; n <= n_hi; ++n) {
        Real v = littlewood_value(alpha, beta, n, weighted, work);
        if (best_n == 0 || v < best) {
            best = std::move(v);
            best_n = n;
        }
    }
    return {best, best_n};
}

ScanResult littlewood_scan(const Real& alpha, const Real& beta, std::uint64_t n_max,
                           bool weighted) {
    if (n_max < 2) throw DomainError("littlewood_scan needs n_max >= 2");
    const Precision work = std::max(alpha.precision(), beta.precision());
    require_precision(work, n_max, "littlewood_scan");

    ScanResult result;
    result.weighted = weighted;
    result.precision_bits = work;

    const std::vector<std::uint64_t> cps = log_checkpoints(2, n_max);
    std::size_t next_cp = 0;

    Real running(work);
    std::uint64_t argmin = 0;
    for (std::uint64_t n = 2; n <= n_max; ++n) {
        Real v = littlewood_value(alpha, beta, n, weighted, work);
        if (argmin == 0 || v < running) {
            running = std::move(v);
            argmin = n;
        }
        while (next_cp < cps.size() && cps[next_cp] == n) {
            result.trace.push_back(TracePoint{n, running.to_double(), 0.0, false});
            ++next_cp;
        }
    }
    result.min_value = running;
    result.argmin = argmin;
    result.trend_supports =
        result.trace.size() >= 2 &&
        result.trace.back().running_min < 0.5 * result.trace.front().running_min;
    return result;
}

// ---------------------------------------------------------------------------
// equal-power scan
// ---------------------------------------------------------------------------

ScanResult two_prime_equal_power_scan(const Angle& theta_p, const Angle& theta_q,
                                      std::uint64_t n_max) {
    if (theta_p.is_singular() || theta_q.is_singular())
        throw SingularAngleError("equal-power scan undefined at singular angles");
    if (n_max < 1) throw DomainError("two_prime_equal_power_scan needs n_max >= 1");
    const Precision prec = std::max(theta_p.precision_bits(), theta_q.precision_bits());
    require_precision(prec, n_max + 1, "two_prime_equal_power_scan");
    const Precision work = prec + kScanMargin;

    const Real sin_p = abs(sin(theta_p.theta()));
    const Real sin_q = abs(sin(theta_q.theta()));
    const Real x_p = theta_p.theta().with_precision(work) / (const_pi(work) * 2L);
    const Real x_q = theta_q.theta().with_precision(work) / (const_pi(work) * 2L);
    // (4 pi)^2 / (sin theta_p sin theta_q), the constant of the majorant.
    const Real four_pi = const_pi(prec) * 4L;
    const Real k_major = four_pi * four_pi / (sin_p * sin_q);
    const Real zero_floor(kCheckTolerance, prec);

    ScanResult result;
    result.precision_bits = prec;
    const std::vector<std::uint64_t> cps = log_checkpoints(1, n_max);
    std::size_t next_cp = 0;

    Real running(prec);
    std::uint64_t argmin = 0;
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        const Real cp = prime_power_coeff(theta_p, n);
        const Real cq = prime_power_coeff(theta_q, n);
        const Real product = abs(cp * cq) * static_cast<unsigned long>(n + 1);
        const Real majorant = k_major * static_cast<unsigned long>(n + 1) *
                              dist_of_multiple(x_p, n + 1) * dist_of_multiple(x_q, n + 1);

        // The product of the two sandwich bounds: must hold at every n.
        if (product > majorant + Real(kCheckTolerance, prec))
            throw VerificationError("majorant violated at n = " + std::to_string(n));

        const bool vanishing = abs(cp) < zero_floor || abs(cq) < zero_floor;
        if (vanishing) {
            result.excluded.push_back(n);
        } else if (argmin == 0 || product < running) {
            running = product;
            argmin = n;
        }

        while (next_cp < cps.size() && cps[next_cp] == n) {
            const double rm = (argmin == 0) ? std::numeric_limits<double>::infinity()
                                            : running.to_double();
            result.trace.push_back(TracePoint{n, rm, majorant.to_double(), true});
            ++next_cp;
        }
    }
    result.min_value = running;
    result.argmin = argmin;
    result.trend_supports =
        result.trace.size() >= 2 &&
        result.trace.back().running_min < 0.5 * result.trace.front().running_min;
    return result;
}

// ---------------------------------------------------------------------------
// badly-approximable profile
// ---------------------------------------------------------------------------

WitnessReport bad_approx_profile(const Angle& theta, std::uint64_t n_max, std::size_t depth) {
    if (theta.is_singular())
        throw SingularAngleError("bad_approx_profile undefined at singular angles");
    if (n_max < 1) throw DomainError("bad_approx_profile needs n_max >= 1");
    if (depth < 1) throw DomainError("bad_approx_profile needs depth >= 1");
    const Precision prec = theta.precision_bits();
    require_precision(prec, n_max + 1, "bad_approx_profile");
    const Precision work = prec + kScanMargin;

    // x = theta/pi in (0, 1); eta_hat = min_{1<=n<=N} (n+1) ||(n+1) x||.
    const Real x = theta.theta().with_precision(work) / const_pi(work);
    Real eta_hat(work);
    std::uint64_t argmin = 0;
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        const Real v = dist_of_multiple(x, n + 1) * static_cast<unsigned long>(n + 1);
        if (argmin == 0 || v < eta_hat) {
            eta_hat = v;
            argmin = n;
        }
    }

    // Certified partial quotients of theta/pi; badly-approximable numbers are
    // exactly those with bounded quotients, so the observed maximum is the
    // profile's headline.
    const ContinuedFraction cf = ContinuedFraction::compute(x.with_precision(prec), depth);
    mpz_class max_quotient = 0;
    for (const mpz_class& a : cf.quotients()) max_quotient = std::max(max_quotient, a);

    WitnessReport report;
    report.kind = WitnessKind::bad_approx_profile;
    report.lower_bound = true;
    report.precision_bits = prec;
    report.constants.emplace_back("eta_hat", eta_hat.with_precision(prec));
    report.constants.emplace_back("argmin_n", Real(static_cast<unsigned long>(argmin), prec));
    report.constants.emplace_back("max_partial_quotient", Real(max_quotient, prec));
    report.constants.emplace_back("cf_depth", Real(static_cast<unsigned long>(depth), prec));
    report.constants.emplace_back("theta", theta.theta());

    // Row-by-row verification at logarithmic checkpoints:
    //   |c(p^n)| >= 2 ||(n+1) theta/pi||   (the sandwich lower bound), and
    //   (n+1) ||(n+1) theta/pi|| >= eta_hat (definition of the minimum).
    for (std::uint64_t n : log_checkpoints(1, n_max)) {
        WitnessRow row;
        row.n = n;
        row.achieved = abs(prime_power_coeff(theta, n));
        const Real dist = dist_of_multiple(x, n + 1);
        row.bound = (dist * 2L).with_precision(prec);
        if (!(row.achieved >= row.bound))
            throw VerificationError("sandwich lower bound violated at n = " + std::to_string(n));
        if (mul_ui(dist, static_cast<unsigned long>(n + 1), work) <
            eta_hat - Real(kCheckTolerance, work))
            throw VerificationError("eta_hat is not the minimum at n = " + std::to_string(n));
        report.rows.push_back(std::move(row));
    }
    return report;
}

}  // namespace heckelab

#include "heckelab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "heckelab/error.hpp"

namespace heckelab {

namespace {

constexpr double kPi = std::numbers::pi;

// ---------------------------------------------------------------------------
// shared helpers
// ---------------------------------------------------------------------------

std::vector<bool> prime_sieve(std::uint64_t n) {  // callers guarantee n >= 2
    std::vector<bool> is_prime(n + 1, true);
    is_prime[0] = false;
    is_prime[1] = false;
    for (std::uint64_t p = 2; p * p <= n; ++p)
        if (is_prime[p])
            for (std::uint64_t q = p * p; q <= n; q += p) is_prime[q] = false;
    return is_prime;
}

// For rational-field tables (degree 1) every prime <= x must be present; for
// higher degree the declared coverage is the caller's contract.
void check_coverage(const CoefficientTable& table, std::uint64_t x) {
    if (table.degree() != 1) return;
    std::vector<bool> is_prime = prime_sieve(x);
    std::vector<bool> present(x + 1, false);
    for (const auto& row : table.rows())
        if (row.prime.norm <= x) present[row.prime.norm] = true;
    for (std::uint64_t p = 2; p <= x; ++p)
        if (is_prime[p] && !present[p])
            throw UnknownPrimeError(std::to_string(p),
                                    "scan bound " + std::to_string(x) +
                                        " exceeds the table's prime coverage (norms up to " +
                                        std::to_string(table.coverage_norm()) + "): prime " +
                                        std::to_string(p) + " is missing");
}

// Geometric checkpoint grid x_j = round(x^{j/16}), clamped to >= 3 and
// deduplicated; the last entry is x itself.
std::vector<std::uint64_t> geometric_grid(std::uint64_t x) {
    std::vector<std::uint64_t> grid;
    for (int j = 1; j <= 16; ++j) {
        const double v = std::pow(static_cast<double>(x), j / 16.0);
        std::uint64_t c = std::max<std::uint64_t>(3, static_cast<std::uint64_t>(std::llround(v)));
        c = std::min(c, x);
        if (grid.empty() || c > grid.back()) grid.push_back(c);
    }
    if (grid.empty() || grid.back() != x) grid.push_back(x);
    return grid;
}

// Least-squares fit Y = exponent * X + intercept over the last half of the
// points; returns (exponent, exp(intercept)).
std::optional<std::pair<double, double>> fit_last_half(const std::vector<double>& xs,
                                                       const std::vector<double>& ys) {
    const std::size_t n = xs.size();
    if (n < 2) return std::nullopt;
    const std::size_t start = n / 2;
    const std::size_t m = n - start;
    if (m < 2) return std::nullopt;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = start; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double denom = m * sxx - sx * sx;
    if (std::abs(denom) < 1e-30) return std::nullopt;
    const double exponent = (m * sxy - sx * sy) / denom;
    const double intercept = (sy - exponent * sx) / m;
    return std::make_pair(exponent, std::exp(intercept));
}

}  // namespace

// ---------------------------------------------------------------------------
// Sato-Tate CDF and the equidistribution test
// ---------------------------------------------------------------------------

double sato_tate_cdf(double theta) {
    constexpr double slack = 1e-12;
    if (theta < -slack || theta > kPi + slack)
        throw DomainError("sato_tate_cdf argument outside [0, pi]");
    theta = std::clamp(theta, 0.0, kPi);
    return theta / kPi - std::sin(2 * theta) / (2 * kPi);
}

StatSummary equidistribution_test(std::span<const Angle> angles,
                                  std::span<const std::uint64_t> x_checkpoints) {
    if (x_checkpoints.empty()) throw DomainError("no checkpoints given");
    for (std::size_t i = 0; i + 1 < x_checkpoints.size(); ++i)
        if (x_checkpoints[i] >= x_checkpoints[i + 1])
            throw DomainError("checkpoints must be strictly increasing");

    StatSummary summary;
    for (std::uint64_t x : x_checkpoints) {
        std::vector<double> thetas;
        for (const Angle& a : angles)
            if (a.source_prime().norm != 0 && a.source_prime().norm <= x)
                thetas.push_back(a.theta().to_double());
        if (thetas.empty())
            throw ValidationError("empty sample at checkpoint " + std::to_string(x));
        std::sort(thetas.begin(), thetas.end());

        // Kolmogorov-Smirnov sup-distance against F.
        const double n = static_cast<double>(thetas.size());
        double d = 0;
        for (std::size_t i = 0; i < thetas.size(); ++i) {
            const double F = sato_tate_cdf(thetas[i]);
            d = std::max(d, (static_cast<double>(i) + 1) / n - F);
            d = std::max(d, F - static_cast<double>(i) / n);
        }
        summary.checkpoints.emplace_back(static_cast<double>(x), d);
        summary.discrepancy = d;
        summary.sample_size = thetas.size();
    }
    return summary;
}

// ---------------------------------------------------------------------------
// moment integral
// ---------------------------------------------------------------------------

namespace {

double st_integrand(double gamma, double t) {
    const double s = std::sin(t);
    return (2.0 / kPi) * std::pow(std::abs(2.0 * std::cos(t)), gamma) * s * s;
}

double adaptive_simpson(double gamma, double a, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = st_integrand(gamma, lm), frm = st_integrand(gamma, rm);
    const double left = (m - a) / 6.0 * (fa + 4 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4 * frm + fb);
    const double refined = left + right;
    if (depth <= 0 || std::abs(refined - whole) < 15.0 * tol)
        return refined + (refined - whole) / 15.0;
    return adaptive_simpson(gamma, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
           adaptive_simpson(gamma, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

double simpson_on(double gamma, double a, double b, double tol) {
    const double fa = st_integrand(gamma, a);
    const double fb = st_integrand(gamma, b);
    const double fm = st_integrand(gamma, 0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4 * fm + fb);
    return adaptive_simpson(gamma, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace

double moment_integral(double gamma) {
    if (gamma < 0) throw DomainError("moment_integral requires gamma >= 0");
    // Split at pi/2: |2 cos t|^gamma has a kink there for gamma < 1.
    return simpson_on(gamma, 0.0, kPi / 2, 5e-10) + simpson_on(gamma, kPi / 2, kPi, 5e-10);
}

double moment_derivative_at_zero(double h) {
    if (h <= 0) throw DomainError("step must be positive");
    return (4 * moment_integral(h) - moment_integral(2 * h) - 3 * moment_integral(0)) / (2 * h);
}

// ---------------------------------------------------------------------------
// moment sums
// ---------------------------------------------------------------------------

StatSummary moment_sum(const CoefficientTable& table, std::uint64_t x, double gamma,
                       bool over_norm) {
    if (gamma < 0) throw DomainError("moment_sum requires gamma >= 0");
    if (x < 2) throw DomainError("moment_sum requires x >= 2");
    if (!table.normalized()) throw ValidationError("moment_sum requires a normalized table");
    check_coverage(table, x);

    const std::vector<PrimeLabel> ps = table.primes();
    const std::vector<FactoredElement> elements = enumerate_by_norm(ps, x);
    const std::vector<std::uint64_t> grid = geometric_grid(x);

    StatSummary summary;
    summary.sample_size = elements.size();
    double sum = 0;
    std::size_t next = 0;
    for (const FactoredElement& e : elements) {
        while (next < grid.size() && e.norm > grid[next]) {
            summary.checkpoints.emplace_back(static_cast<double>(grid[next]), sum);
            ++next;
        }
        double v = std::pow(std::abs(table.extend(to_ideal(e, ps)).to_double()), gamma);
        if (over_norm) v /= static_cast<double>(e.norm);
        sum += v;
    }
    while (next < grid.size()) {
        summary.checkpoints.emplace_back(static_cast<double>(grid[next]), sum);
        ++next;
    }

    // Growth-exponent fit: log S against log log x' (over-norm expects
    // (log x)^e growth) or log(S/x') against log log x' (plain variant).
    std::vector<double> xs, ys;
    for (const auto& [cx, cs] : summary.checkpoints) {
        if (cs <= 0 || cx < 3) continue;
        xs.push_back(std::log(std::log(cx)));
        ys.push_back(over_norm ? std::log(cs) : std::log(cs / cx));
    }
    summary.fit = fit_last_half(xs, ys);
    return summary;
}

// ---------------------------------------------------------------------------
// density scan
// ---------------------------------------------------------------------------

StatSummary density_scan(const CoefficientTable& table, double epsilon,
                         std::span<const std::uint64_t> x_checkpoints) {
    if (!(epsilon > 0 && epsilon < 0.5))
        throw DomainError("epsilon must lie in (0, 1/2)");
    if (x_checkpoints.empty()) throw DomainError("no checkpoints given");
    for (std::size_t i = 0; i + 1 < x_checkpoints.size(); ++i)
        if (x_checkpoints[i] >= x_checkpoints[i + 1])
            throw DomainError("checkpoints must be strictly increasing");
    // The threshold (log n)^{-1/2+eps} is only meaningful once log n > 1;
    // counting starts at norm 3.
    if (x_checkpoints.front() < 3)
        throw DomainError("density checkpoints must be >= 3 (counting starts at n = 3)");
    if (!table.normalized()) throw ValidationError("density_scan requires a normalized table");

    const std::uint64_t x_max = x_checkpoints.back();
    check_coverage(table, x_max);
    const std::vector<PrimeLabel> ps = table.primes();
    const std::vector<FactoredElement> elements = enumerate_by_norm(ps, x_max);

    const double threshold_exp = -0.5 + epsilon;
    StatSummary summary;
    std::uint64_t count = 0;
    std::size_t next = 0;
    for (const FactoredElement& e : elements) {
        while (next < x_checkpoints.size() && e.norm > x_checkpoints[next]) {
            summary.checkpoints.emplace_back(
                static_cast<double>(x_checkpoints[next]),
                static_cast<double>(count) / static_cast<double>(x_checkpoints[next]));
            ++next;
        }
        if (e.norm < 3) continue;
        const double threshold = std::pow(std::log(static_cast<double>(e.norm)), threshold_exp);
        const double c = std::abs(table.extend(to_ideal(e, ps)).to_double());
        if (c > threshold) ++count;
    }
    while (next < x_checkpoints.size()) {
        summary.checkpoints.emplace_back(
            static_cast<double>(x_checkpoints[next]),
            static_cast<double>(count) / static_cast<double>(x_checkpoints[next]));
        ++next;
    }
    summary.sample_size = static_cast<std::size_t>(count);
    summary.discrepancy = 0;

    std::vector<double> xs, ys;
    for (const auto& [cx, ratio] : summary.checkpoints) {
        if (ratio <= 0) continue;
        xs.push_back(std::log(std::log(cx)));
        ys.push_back(std::log(ratio));
    }
    summary.fit = fit_last_half(xs, ys);
    return summary;
}

// ---------------------------------------------------------------------------
// the summation-inequality checker
// ---------------------------------------------------------------------------

TenenbaumReport tenenbaum_check(const MultiplicativeFn& f, const CoefficientTable& table,
                                std::uint64_t x) {
    if (x < 2) throw DomainError("tenenbaum_check requires x >= 2");
    check_coverage(table, x);
    const std::vector<PrimeLabel> ps = table.primes();

    // Memoized f at prime powers with norm <= x, checked non-negative.
    std::vector<std::vector<double>> fpe(ps.size());  // fpe[i][e-1] = f(p_i^e)
    for (std::size_t i = 0; i < ps.size(); ++i) {
        if (ps[i].norm > x) continue;
        std::uint64_t npow = ps[i].norm;
        std::uint32_t e = 1;
        while (npow <= x) {
            const double v = f(ps[i], e);
            if (v < 0)
                throw ValidationError("f(" + ps[i].label + "^" + std::to_string(e) +
                                      ") = " + std::to_string(v) + " is negative");
            fpe[i].push_back(v);
            if (npow > x / ps[i].norm) break;
            npow *= ps[i].norm;
            ++e;
        }
    }

    TenenbaumReport report;
    report.x = x;

    // S(x) and L(x) over the full monoid below x.
    double s = 0, l = 0;
    std::size_t mass_points = 0;
    for (const FactoredElement& e : enumerate_by_norm(ps, x)) {
        double v = 1;
        for (auto [idx, exp] : e.powers) v *= fpe[idx][exp - 1];
        s += v;
        l += v / static_cast<double>(e.norm);
        if (v != 0 && !e.powers.empty()) ++mass_points;
    }
    report.s_sum = s;
    report.l_sum = l;
    report.degenerate = mass_points == 0;

    // A = max over prime jump points x' of (1/x') sum_{N(p)<=x'} f(p) log N(p).
    double a_const = 0, t = 0;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        if (ps[i].norm > x) break;
        t += fpe[i][0] * std::log(static_cast<double>(ps[i].norm));
        a_const = std::max(a_const, t / static_cast<double>(ps[i].norm));
    }
    report.a_const = a_const;

    // B = sum over proper prime powers below x of f(p^a) log N(p^a) / N(p^a).
    double b_const = 0;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        std::uint64_t npow = ps[i].norm;
        for (std::uint32_t e = 2; e <= fpe[i].size(); ++e) {
            npow *= ps[i].norm;
            b_const += fpe[i][e - 1] * std::log(static_cast<double>(npow)) /
                       static_cast<double>(npow);
        }
    }
    report.b_const = b_const;

    report.rhs = (a_const + b_const + 1.0) * (static_cast<double>(x) / std::log(x)) * l;
    report.holds = s <= report.rhs * (1.0 + 1e-12) + 1e-12;
    report.slack = s > 0 ? report.rhs / s : 0.0;
    return report;
}

}  // namespace heckelab

#pragma once
// Statistics over eigenvalue data: equidistribution testing against the
// Sato-Tate measure, moment integrals and moment sums, the small-coefficient
// density counter, and the summation-inequality checker for non-negative
// multiplicative functions.
//
// All statistics here are double-precision (the quantities are O(1) counts,
// sup-distances, and fitted exponents); the exact/high-precision layers feed
// them already-settled values.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "heckelab/angle.hpp"
#include "heckelab/coeff_table.hpp"

namespace heckelab {

struct StatSummary {
    std::size_t sample_size = 0;
    double discrepancy = 0;  // sup-norm distance to the target CDF, in [0, 1]
    std::vector<std::pair<double, double>> checkpoints;  // (x, statistic), x ascending
    std::optional<std::pair<double, double>> fit;        // (exponent, constant)
};

// CDF of the Sato-Tate measure (2/pi) sin^2(t) dt on [0, pi]:
// F(theta) = theta/pi - sin(2 theta)/(2 pi).
double sato_tate_cdf(double theta);

// Kolmogorov-Smirnov sup-distance between the empirical distribution of
// {theta_p : N(p) <= x} and the Sato-Tate CDF, at each checkpoint x.
// `discrepancy` and `sample_size` refer to the largest checkpoint.
StatSummary equidistribution_test(std::span<const Angle> angles,
                                  std::span<const std::uint64_t> x_checkpoints);

// I(gamma) = (2/pi) Int_0^pi |2 cos t|^gamma sin^2 t dt, gamma >= 0, by
// adaptive Simpson quadrature split at pi/2 (the integrand has a kink there
// for gamma < 1).  Absolute error below 1e-9.
double moment_integral(double gamma);

// One-sided O(h^2) estimate of I'(0): (4 I(h) - I(2h) - 3 I(0)) / (2h).
// (gamma < 0 is outside the integral's domain, so no central difference.)
double moment_derivative_at_zero(double h);

// S(x') = sum over monoid elements of norm <= x' of |c(m)|^gamma, divided by
// the norm when over_norm is set, accumulated in enumeration order; reported
// at an internal geometric checkpoint grid ending at x.  The fit regresses
// log S (over_norm) or log(S/x') (plain) against log log x' on the last half
// of the checkpoints.
StatSummary moment_sum(const CoefficientTable& table, std::uint64_t x, double gamma,
                       bool over_norm);

// N_eps(x') = #{norm(m) in [3, x'] : |c(m)| > (log norm(m))^{-1/2 + eps}} at
// each checkpoint; the reported statistic is the ratio N_eps(x')/x'.  The fit
// regresses log(ratio) against log log x' on the last half.
StatSummary density_scan(const CoefficientTable& table, double epsilon,
                         std::span<const std::uint64_t> x_checkpoints);

// A non-negative multiplicative function, given by its values at prime powers
// f(p^e); f(1) is the empty product 1.
using MultiplicativeFn = std::function<double(const PrimeLabel&, std::uint32_t)>;

// The summation inequality for non-negative multiplicative f:
//
//     S(x) <= (A + B + 1) * (x / log x) * L(x)
//
// with S(x) = sum_{N(m)<=x} f(m),  L(x) = sum_{N(m)<=x} f(m)/N(m),
//      A = max_{x'<=x} (1/x') sum_{N(p)<=x'} f(p) log N(p)   (max over jumps),
//      B = sum_{p, a>=2, N(p^a)<=x} f(p^a) log N(p^a) / N(p^a).
//
// The inequality is a theorem for such f; `holds == false` indicates an
// implementation bug, which is exactly what the checker exists to catch.
struct TenenbaumReport {
    std::uint64_t x = 0;
    double s_sum = 0;
    double l_sum = 0;
    double a_const = 0;
    double b_const = 0;
    double rhs = 0;
    double slack = 0;  // rhs / S(x) when S(x) > 0
    bool holds = false;
    bool degenerate = false;  // no mass beyond the unit element
};

TenenbaumReport tenenbaum_check(const MultiplicativeFn& f, const CoefficientTable& table,
                                std::uint64_t x);

}  // namespace heckelab

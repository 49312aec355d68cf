#pragma once
// Certified continued fractions of high-precision reals in (0, 1).
//
// A partial quotient is emitted only when it is provably stable under a +-1 ulp
// perturbation of the input: the expansion runs on the exact rational interval
// [next_below(x), next_above(x)] and stops the moment the two endpoints
// disagree on the next quotient.  Convergents then realize Dirichlet's
// theorem: q_k * ||q_k * x|| < 1 for every emitted denominator.

#include <cstddef>
#include <vector>

#include <gmpxx.h>

#include "heckelab/real.hpp"

namespace heckelab {

class ContinuedFraction {
public:
    struct Convergent {
        mpz_class p, q;
    };

    // Exactly `depth` certified quotients or PrecisionError naming the first
    // uncertain one (1-based).  x must lie strictly inside (0, 1); a value
    // that is rational at working precision exhausts certification early.
    static ContinuedFraction compute(const Real& x, std::size_t depth);

    // As many certified quotients as available, up to max_depth; never throws
    // for lack of precision.
    static ContinuedFraction compute_at_most(const Real& x, std::size_t max_depth);

    const Real& value() const { return value_; }
    Precision precision_bits() const { return value_.precision(); }
    std::size_t depth() const { return quotients_.size(); }
    const std::vector<mpz_class>& quotients() const { return quotients_; }
    // convergents()[k-1] = p_k/q_k belongs to quotient a_k; denominators are
    // strictly increasing and p_k/q_k is in lowest terms.
    const std::vector<Convergent>& convergents() const { return convergents_; }

private:
    explicit ContinuedFraction(Real value) : value_(std::move(value)) {}

    Real value_{kDefaultPrecision};
    std::vector<mpz_class> quotients_;
    std::vector<Convergent> convergents_;
};

// The first `count` convergent denominators m of alpha, each certified to
// satisfy Dirichlet's inequality m * ||m * alpha|| < 1 by direct re-evaluation
// at extended precision.
std::vector<mpz_class> dirichlet_witnesses(const Real& alpha, std::size_t count);

}  // namespace heckelab

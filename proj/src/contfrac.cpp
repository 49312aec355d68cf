#include "heckelab/contfrac.hpp"

#include <utility>

#include "heckelab/error.hpp"

namespace heckelab {

namespace {

struct ExpansionResult {
    std::vector<mpz_class> quotients;
    std::vector<ContinuedFraction::Convergent> convergents;
    bool exhausted = false;      // certification stopped before the requested depth
    std::size_t first_uncertain = 0;  // 1-based index of the uncertain quotient
};

// Interval continued-fraction expansion over exact rationals.
ExpansionResult expand(const Real& x, std::size_t depth) {
    ExpansionResult r;
    if (depth == 0) return r;

    // The true value is only known to +-1 ulp; certify against the whole interval.
    mpq_class lo = next_below(x).to_mpq();
    mpq_class hi = next_above(x).to_mpq();

    mpz_class p_prev = 1, q_prev = 0;  // p_{k-1}/q_{k-1}, seeded with p_0' = 1/0
    mpz_class p_cur = 0, q_cur = 1;    // p_k/q_k, seeded with p_0 = 0/1

    for (std::size_t k = 1; k <= depth; ++k) {
        // Interval endpoints must agree on floor(1/y); y == 0 at an endpoint
        // means a terminating (rational) expansion within the uncertainty.
        if (sgn(lo) <= 0 || sgn(hi) <= 0) {
            r.exhausted = true;
            r.first_uncertain = k;
            return r;
        }
        mpq_class inv_hi = 1 / hi;  // lower end of 1/y
        mpq_class inv_lo = 1 / lo;  // upper end of 1/y
        mpz_class a_low, a_high;
        mpz_fdiv_q(a_low.get_mpz_t(), inv_hi.get_num().get_mpz_t(), inv_hi.get_den().get_mpz_t());
        mpz_fdiv_q(a_high.get_mpz_t(), inv_lo.get_num().get_mpz_t(), inv_lo.get_den().get_mpz_t());
        if (a_low != a_high) {
            r.exhausted = true;
            r.first_uncertain = k;
            return r;
        }
        const mpz_class& a = a_low;

        // Convergent recurrence p_k = a_k p_{k-1} + p_{k-2}.
        mpz_class p_next = a * p_cur + p_prev;
        mpz_class q_next = a * q_cur + q_prev;
        p_prev = std::move(p_cur);
        q_prev = std::move(q_cur);
        p_cur = std::move(p_next);
        q_cur = std::move(q_next);

        r.quotients.push_back(a);
        r.convergents.push_back({p_cur, q_cur});

        // Next level: y' = 1/y - a; endpoints swap roles.
        mpq_class new_lo = inv_hi - a;
        mpq_class new_hi = inv_lo - a;
        lo = std::move(new_lo);
        hi = std::move(new_hi);
    }
    return r;
}

void validate_domain(const Real& x) {
    if (x.sign() <= 0 || x >= 1L)
        throw DomainError("continued fraction input must lie in (0, 1), got " + x.str(20));
}

}  // namespace

ContinuedFraction ContinuedFraction::compute(const Real& x, std::size_t depth) {
    validate_domain(x);
    if (depth < 1) throw DomainError("depth must be >= 1");
    ExpansionResult r = expand(x, depth);
    if (r.exhausted)
        throw PrecisionError("partial quotient #" + std::to_string(r.first_uncertain) +
                                 " is not certain at " + std::to_string(x.precision()) +
                                 " bits (value rational at working precision, or precision "
                                 "exhausted)",
                             r.first_uncertain);
    ContinuedFraction cf(x);
    cf.quotients_ = std::move(r.quotients);
    cf.convergents_ = std::move(r.convergents);
    return cf;
}

ContinuedFraction ContinuedFraction::compute_at_most(const Real& x, std::size_t max_depth) {
    validate_domain(x);
    ExpansionResult r = expand(x, max_depth);
    ContinuedFraction cf(x);
    cf.quotients_ = std::move(r.quotients);
    cf.convergents_ = std::move(r.convergents);
    return cf;
}

std::vector<mpz_class> dirichlet_witnesses(const Real& alpha, std::size_t count) {
    if (count == 0) return {};
    const ContinuedFraction cf = ContinuedFraction::compute(alpha, count);

    // Emission-time certificate at extended precision: m * ||m * alpha|| < 1.
    const Precision ver_prec = alpha.precision() + 64;
    std::vector<mpz_class> out;
    out.reserve(count);
    for (const auto& conv : cf.convergents()) {
        Real m_alpha(ver_prec);
        mpfr_mul_z(m_alpha.raw(), alpha.raw(), conv.q.get_mpz_t(), MPFR_RNDN);
        Real dist = nearest_int_distance(m_alpha);
        Real product(ver_prec);
        mpfr_mul_z(product.raw(), dist.raw(), conv.q.get_mpz_t(), MPFR_RNDN);
        if (!(product < 1L))
            throw VerificationError("Dirichlet certificate failed at q = " + conv.q.get_str());
        out.push_back(conv.q);
    }
    return out;
}

}  // namespace heckelab

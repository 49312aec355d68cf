#include "heckelab/qexpansion.hpp"

#include <algorithm>

#include "heckelab/error.hpp"

namespace heckelab {

namespace {

// out[k] = sum_{i+j=k, i,j < len} a[i]*a[j] for k < len, i.e. the square of the
// power series a truncated to length len.  Zero coefficients are skipped, so
// squaring the sparse eta^3 seed costs far below the dense bound.
std::vector<mpz_class> square_truncated(const std::vector<mpz_class>& a, std::size_t len) {
    std::vector<mpz_class> out(len);
    mpz_class t;
    for (std::size_t i = 0; i < len; ++i) {
        if (mpz_sgn(a[i].get_mpz_t()) == 0) continue;
        if (2 * i < len)
            mpz_addmul(out[2 * i].get_mpz_t(), a[i].get_mpz_t(), a[i].get_mpz_t());
        const std::size_t j_end = len - i;  // keep i + j < len
        for (std::size_t j = i + 1; j < j_end; ++j) {
            if (mpz_sgn(a[j].get_mpz_t()) == 0) continue;
            // out[i+j] += 2 * a[i] * a[j]
            mpz_mul(t.get_mpz_t(), a[i].get_mpz_t(), a[j].get_mpz_t());
            mpz_add(out[i + j].get_mpz_t(), out[i + j].get_mpz_t(), t.get_mpz_t());
            mpz_add(out[i + j].get_mpz_t(), out[i + j].get_mpz_t(), t.get_mpz_t());
        }
    }
    return out;
}

}  // namespace

std::vector<mpz_class> delta_tau(std::uint32_t n_max, const ExpansionBudget& budget) {
    if (n_max < 1) throw DomainError("expansion length must be >= 1");
    if (n_max > budget.max_n)
        throw ResourceError("expansion length " + std::to_string(n_max) +
                            " exceeds the budget of " + std::to_string(budget.max_n) +
                            " (quadratic cost; ingest a table for larger ranges)");

    // Delta = q * (eta^3)^8, so the series (eta^3)^8 is needed through q^{n_max-1}:
    // length n_max with indices 0 .. n_max-1.
    const std::size_t len = n_max;

    // Jacobi seed: eta^3 (without the q^{1/8} prefactor).
    std::vector<mpz_class> eta3(len);
    for (std::uint64_t k = 0;; ++k) {
        const std::uint64_t idx = k * (k + 1) / 2;
        if (idx >= len) break;
        eta3[idx] = (k % 2 == 0) ? mpz_class(2 * k + 1) : mpz_class(-static_cast<long>(2 * k + 1));
    }

    std::vector<mpz_class> eta6 = square_truncated(eta3, len);
    std::vector<mpz_class> eta12 = square_truncated(eta6, len);
    std::vector<mpz_class> eta24 = square_truncated(eta12, len);

    std::vector<mpz_class> tau(static_cast<std::size_t>(n_max) + 1);
    for (std::uint32_t n = 1; n <= n_max; ++n) tau[n] = std::move(eta24[n - 1]);
    return tau;
}

}  // namespace heckelab

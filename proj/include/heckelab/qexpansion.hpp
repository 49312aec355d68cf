#pragma once
// Exact q-expansion of the discriminant form
//
//     Delta = q * prod_{n>=1} (1 - q^n)^24 = sum_{n>=1} tau(n) q^n.
//
// Algorithm: eta^3 first by Jacobi's sparse identity
//
//     prod (1-q^n)^3 = sum_{k>=0} (-1)^k (2k+1) q^{k(k+1)/2},
//
// then (eta^3)^8 by three truncated squarings.  The sparse seed keeps the
// O(N^2) constant small; all arithmetic is exact arbitrary-precision integers
// because the recursion identity tests downstream are integer identities.

#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace heckelab {

struct ExpansionBudget {
    // Hard cap on the expansion length.  Time grows quadratically in N
    // (about 1.5 s at N = 10^4 on commodity hardware) and memory linearly;
    // larger-range experiments ingest precomputed tables instead.
    std::uint32_t max_n = 50000;
};

// tau(n) for 1 <= n <= n_max as exact integers; slot 0 is unused (zero).
// Throws ResourceError when n_max exceeds the budget.
std::vector<mpz_class> delta_tau(std::uint32_t n_max, const ExpansionBudget& budget = {});

}  // namespace heckelab

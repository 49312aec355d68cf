#pragma once
// The free commutative monoid over labeled primes.
//
// Integral ideals of a totally real field enter the library only through
// factorizations into labeled primes (label + norm); the library never does
// number-field arithmetic.  For the rational field the label of a prime p is
// its decimal string and the norm equals p, so an IdealElement is an ordinary
// positive integer given by its factorization.

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "heckelab/real.hpp"

namespace heckelab {

struct PrimeLabel {
    std::string label;
    std::uint64_t norm = 0;  // N(p) >= 2 for a valid prime; 0 marks "unset"

    friend bool operator==(const PrimeLabel&, const PrimeLabel&) = default;
};

// Canonical prime order used by every table and enumeration: by norm, ties
// broken lexicographically on the label.
struct PrimeOrder {
    bool operator()(const PrimeLabel& a, const PrimeLabel& b) const {
        if (a.norm != b.norm) return a.norm < b.norm;
        return a.label < b.label;
    }
};

struct PrimePower {
    PrimeLabel prime;
    std::uint32_t exponent = 1;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

class IdealElement {
public:
    IdealElement() = default;  // the unit ideal

    // Merges repeated labels, validates norms, sorts canonically.
    static IdealElement from_factors(std::vector<PrimePower> factors);
    static IdealElement prime_power(PrimeLabel prime, std::uint32_t exponent);
    // Rational-field helper: factor n >= 1 by trial division; labels are the
    // decimal primes.
    static IdealElement factor_integer(std::uint64_t n);

    bool is_unit() const { return factors_.empty(); }
    const std::vector<PrimePower>& factors() const { return factors_; }

    mpz_class norm() const;
    // log N(m) = sum e_i * log N(p_i); safe for exponents far beyond what
    // norm() could materialize.
    Real log_norm(Precision prec) const;
    // d(m) = prod (e_i + 1).
    std::uint64_t divisor_count() const;
    bool coprime_to(const IdealElement& other) const;
    IdealElement operator*(const IdealElement& other) const;

    // "2^3*3" style; the unit ideal prints "1".
    std::string str() const;

    friend bool operator==(const IdealElement&, const IdealElement&) = default;

private:
    std::vector<PrimePower> factors_;  // canonically sorted, exponents >= 1
};

// One element of the dense enumeration: its norm and its factorization as
// (index into the prime span, exponent) pairs with indices increasing.
struct FactoredElement {
    std::uint64_t norm = 1;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> powers;
};

// All monoid elements of norm <= x_max over the given primes (which must be
// canonically sorted and label-unique), including the unit element, sorted by
// norm with ties broken lexicographically on the factorization.  This is the
// deterministic enumeration order every scan and report relies on.
std::vector<FactoredElement> enumerate_by_norm(std::span<const PrimeLabel> primes,
                                               std::uint64_t x_max);

IdealElement to_ideal(const FactoredElement& e, std::span<const PrimeLabel> primes);

}  // namespace heckelab

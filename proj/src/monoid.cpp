#include "heckelab/monoid.hpp"

#include <algorithm>
#include <map>

#include "heckelab/error.hpp"

namespace heckelab {

// ---------------------------------------------------------------------------
// IdealElement
// ---------------------------------------------------------------------------

IdealElement IdealElement::from_factors(std::vector<PrimePower> factors) {
    // Merge repeated labels; a label must always carry the same norm.
    std::map<std::string, PrimePower> merged;
    for (auto& f : factors) {
        if (f.prime.norm < 2)
            throw ValidationError("prime '" + f.prime.label + "' has norm < 2");
        if (f.exponent == 0)
            throw ValidationError("prime power with exponent 0 for '" + f.prime.label + "'");
        auto [it, inserted] = merged.emplace(f.prime.label, f);
        if (!inserted) {
            if (it->second.prime.norm != f.prime.norm)
                throw ValidationError("label '" + f.prime.label + "' appears with two norms");
            it->second.exponent += f.exponent;
        }
    }
    IdealElement m;
    m.factors_.reserve(merged.size());
    for (auto& [label, pp] : merged) m.factors_.push_back(std::move(pp));
    std::sort(m.factors_.begin(), m.factors_.end(),
              [](const PrimePower& a, const PrimePower& b) {
                  return PrimeOrder{}(a.prime, b.prime);
              });
    return m;
}

IdealElement IdealElement::prime_power(PrimeLabel prime, std::uint32_t exponent) {
    if (exponent == 0) return {};
    return from_factors({PrimePower{std::move(prime), exponent}});
}

IdealElement IdealElement::factor_integer(std::uint64_t n) {
    if (n == 0) throw DomainError("cannot factor 0");
    std::vector<PrimePower> factors;
    auto push = [&](std::uint64_t p, std::uint32_t e) {
        factors.push_back(PrimePower{PrimeLabel{std::to_string(p), p}, e});
    };
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2) ? 1 : 2) {
        if (n % p) continue;
        std::uint32_t e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        push(p, e);
    }
    if (n > 1) push(n, 1);
    return from_factors(std::move(factors));
}

mpz_class IdealElement::norm() const {
    mpz_class n = 1;
    mpz_class pw;
    for (const auto& f : factors_) {
        mpz_ui_pow_ui(pw.get_mpz_t(), f.prime.norm, f.exponent);
        n *= pw;
    }
    return n;
}

Real IdealElement::log_norm(Precision prec) const {
    Real s(prec);
    for (const auto& f : factors_)
        s += log(Real(static_cast<unsigned long>(f.prime.norm), prec)) *
             static_cast<unsigned long>(f.exponent);
    return s;
}

std::uint64_t IdealElement::divisor_count() const {
    std::uint64_t d = 1;
    for (const auto& f : factors_) d *= static_cast<std::uint64_t>(f.exponent) + 1;
    return d;
}

bool IdealElement::coprime_to(const IdealElement& other) const {
    for (const auto& a : factors_)
        for (const auto& b : other.factors_)
            if (a.prime.label == b.prime.label) return false;
    return true;
}

IdealElement IdealElement::operator*(const IdealElement& other) const {
    std::vector<PrimePower> all = factors_;
    all.insert(all.end(), other.factors_.begin(), other.factors_.end());
    return from_factors(std::move(all));
}

std::string IdealElement::str() const {
    if (factors_.empty()) return "1";
    std::string s;
    for (const auto& f : factors_) {
        if (!s.empty()) s += '*';
        s += f.prime.label;
        if (f.exponent > 1) s += '^' + std::to_string(f.exponent);
    }
    return s;
}

// ---------------------------------------------------------------------------
// enumeration
// ---------------------------------------------------------------------------

namespace {

void enumerate_rec(std::span<const PrimeLabel> primes, std::size_t start,
                   std::uint64_t norm_so_far, std::uint64_t x_max,
                   std::vector<std::pair<std::uint32_t, std::uint32_t>>& powers,
                   std::vector<FactoredElement>& out) {
    out.push_back(FactoredElement{norm_so_far, powers});
    for (std::size_t i = start; i < primes.size(); ++i) {
        const std::uint64_t p = primes[i].norm;
        if (p > x_max / norm_so_far) break;  // primes are norm-sorted
        std::uint64_t norm = norm_so_far;
        std::uint32_t e = 0;
        while (p <= x_max / norm) {
            norm *= p;
            ++e;
            powers.emplace_back(static_cast<std::uint32_t>(i), e);
            enumerate_rec(primes, i + 1, norm, x_max, powers, out);
            powers.pop_back();
        }
    }
}

}  // namespace

std::vector<FactoredElement> enumerate_by_norm(std::span<const PrimeLabel> primes,
                                               std::uint64_t x_max) {
    if (x_max < 1) throw DomainError("enumeration bound must be >= 1");
    for (std::size_t i = 0; i + 1 < primes.size(); ++i)
        if (!PrimeOrder{}(primes[i], primes[i + 1]))
            throw ValidationError("prime list not canonically sorted/unique");
    std::vector<FactoredElement> out;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> powers;
    enumerate_rec(primes, 0, 1, x_max, powers, out);
    std::sort(out.begin(), out.end(), [](const FactoredElement& a, const FactoredElement& b) {
        if (a.norm != b.norm) return a.norm < b.norm;
        return a.powers < b.powers;
    });
    return out;
}

IdealElement to_ideal(const FactoredElement& e, std::span<const PrimeLabel> primes) {
    std::vector<PrimePower> factors;
    factors.reserve(e.powers.size());
    for (auto [idx, exp] : e.powers) {
        if (idx >= primes.size()) throw DomainError("prime index out of range");
        factors.push_back(PrimePower{primes[idx], exp});
    }
    return IdealElement::from_factors(std::move(factors));
}

}  // namespace heckelab

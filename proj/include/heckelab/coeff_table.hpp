#pragma once
// CoefficientTable: one eigenform's Hecke data.
//
// A table stores the coefficient C(p) (or its normalized form c(p)) at each
// labeled prime together with the form's metadata, and extends to arbitrary
// monoid elements through the Hecke relations
//
//     C(mn) = C(m) C(n)                       for coprime m, n,
//     C(p^m) = C(p) C(p^{m-1}) - N(p)^{k0-1} C(p^{m-2}),
//
// which lose the norm factor after normalization c(m) = C(m)/N(m)^{(k0-1)/2}:
//
//     c(p^m) = c(p) c(p^{m-1}) - c(p^{m-2}).
//
// Integer-valued tables (e.g. the discriminant form's tau values) extend
// exactly; normalized tables extend in high-precision reals.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "heckelab/monoid.hpp"
#include "heckelab/qexpansion.hpp"
#include "heckelab/real.hpp"

namespace heckelab {

class CoefficientTable {
public:
    struct Row {
        PrimeLabel prime;
        bool ramified = false;
        // `exact` rows carry a rational value (always an integer or ratio read
        // from an integer-form file field); `value` mirrors it at table
        // precision.  Inexact rows carry only `value`.
        bool exact = false;
        mpq_class exact_value;
        Real value{kDefaultPrecision};
    };

    struct Violation {
        IdealElement element;
        double value = 0;  // |c(element)|
        double bound = 0;  // d(element) plus tolerance
    };

    // -- construction ---------------------------------------------------------

    // Prime rows of the discriminant form (tau(p) for p <= precision_N),
    // k0 = 12, degree 1, exact and unnormalized.
    static CoefficientTable delta_q_expansion(std::uint32_t precision_N,
                                              const ExpansionBudget& budget = {},
                                              Precision prec = kDefaultPrecision);

    // Parses the line-oriented table format (see save()).  `source_name` only
    // decorates error messages.
    static CoefficientTable load(std::istream& in, Precision prec = kDefaultPrecision,
                                 const std::string& source_name = "");
    static CoefficientTable load_file(const std::filesystem::path& path,
                                      Precision prec = kDefaultPrecision);

    // Assembles a table from rows directly, without the loader's bound checks;
    // intended for synthetic data in tests and for internal use.
    static CoefficientTable from_rows(std::string form_label, int k0, int degree,
                                      bool normalized, std::vector<Row> rows, Precision prec);

    // -- metadata -------------------------------------------------------------

    const std::string& form_label() const { return form_label_; }
    int k0() const { return k0_; }
    int degree() const { return degree_; }
    bool normalized() const { return normalized_; }
    Precision precision() const { return prec_; }
    // Every prime of norm <= coverage_norm() is present (for the discriminant
    // form this is the expansion length; for loaded tables, the largest norm).
    std::uint64_t coverage_norm() const { return coverage_norm_; }

    const std::vector<Row>& rows() const { return rows_; }
    std::vector<PrimeLabel> primes() const;
    const Row* find(const std::string& label) const;

    // -- operations -----------------------------------------------------------

    // c(p) = C(p) / N(p)^{(k0-1)/2} at the requested precision.
    CoefficientTable normalized_copy(Precision prec) const;

    // Hecke extension.  Exact variant requires every involved row to be exact
    // (and, when unnormalized, uses the integer norm factor); real variant
    // works at max(table precision, prec).
    mpq_class extend_exact(const IdealElement& m) const;
    Real extend(const IdealElement& m, Precision prec = 0) const;

    // All monoid elements of norm <= x with |c(m)| > d(m) + tolerance; empty
    // for genuine eigenform data.  Requires a normalized table.
    std::vector<Violation> divisor_bound_scan(std::uint64_t x) const;

    // Line-oriented serialization:
    //   #form <label>
    //   #k0 <even int>
    //   #degree <int>
    //   #normalized <0|1>
    //   <prime_label>,<norm>,<coefficient>[,ramified]
    // with the coefficient as an exact integer or a decimal.
    void save(std::ostream& out) const;
    void save_file(const std::filesystem::path& path) const;

private:
    std::string form_label_;
    int k0_ = 2;
    int degree_ = 1;
    bool normalized_ = false;
    Precision prec_ = kDefaultPrecision;
    std::uint64_t coverage_norm_ = 0;
    std::vector<Row> rows_;  // canonically sorted by (norm, label)
};

}  // namespace heckelab

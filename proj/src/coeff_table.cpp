#include "heckelab/coeff_table.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <ostream>
#include <sstream>

#include "heckelab/error.hpp"

namespace heckelab {

namespace {

bool is_integer_literal(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

void sort_rows(std::vector<CoefficientTable::Row>& rows) {
    std::sort(rows.begin(), rows.end(),
              [](const CoefficientTable::Row& a, const CoefficientTable::Row& b) {
                  return PrimeOrder{}(a.prime, b.prime);
              });
}

void check_duplicates(const std::vector<CoefficientTable::Row>& rows) {
    for (std::size_t i = 0; i + 1 < rows.size(); ++i)
        if (rows[i].prime.label == rows[i + 1].prime.label)
            throw ValidationError("duplicate prime label '" + rows[i].prime.label + "'");
}

}  // namespace

// ---------------------------------------------------------------------------
// construction
// ---------------------------------------------------------------------------

CoefficientTable CoefficientTable::delta_q_expansion(std::uint32_t precision_N,
                                                     const ExpansionBudget& budget,
                                                     Precision prec) {
    const std::vector<mpz_class> tau = delta_tau(precision_N, budget);

    // Sieve the primes p <= precision_N.
    std::vector<bool> composite(precision_N + 1, false);
    std::vector<Row> rows;
    for (std::uint64_t p = 2; p <= precision_N; ++p) {
        if (composite[p]) continue;
        for (std::uint64_t q = p * p; q <= precision_N; q += p) composite[q] = true;
        Row r;
        r.prime = PrimeLabel{std::to_string(p), p};
        r.exact = true;
        r.exact_value = mpq_class(tau[p]);
        r.value = Real(tau[p], prec);
        rows.push_back(std::move(r));
    }

    CoefficientTable t;
    t.form_label_ = "delta";
    t.k0_ = 12;
    t.degree_ = 1;
    t.normalized_ = false;
    t.prec_ = prec;
    t.coverage_norm_ = precision_N;
    t.rows_ = std::move(rows);
    return t;
}

CoefficientTable CoefficientTable::from_rows(std::string form_label, int k0, int degree,
                                             bool normalized, std::vector<Row> rows,
                                             Precision prec) {
    if (k0 < 2 || k0 % 2 != 0) throw ValidationError("k0 must be an even integer >= 2");
    if (degree < 1) throw ValidationError("degree must be >= 1");
    for (const auto& r : rows)
        if (r.prime.norm < 2) throw ValidationError("prime '" + r.prime.label + "' has norm < 2");
    sort_rows(rows);
    check_duplicates(rows);

    CoefficientTable t;
    t.form_label_ = std::move(form_label);
    t.k0_ = k0;
    t.degree_ = degree;
    t.normalized_ = normalized;
    t.prec_ = prec;
    t.coverage_norm_ = rows.empty() ? 1 : rows.back().prime.norm;
    t.rows_ = std::move(rows);
    return t;
}

CoefficientTable CoefficientTable::load(std::istream& in, Precision prec,
                                        const std::string& source_name) {
    const std::string where = source_name.empty() ? "" : source_name + ": ";
    std::string form_label;
    int k0 = 0, degree = 0, normalized = -1;
    std::uint64_t coverage = 0;  // 0: header absent, fall back to the last row
    bool saw_form = false;
    std::vector<Row> rows;

    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::string line = trim(raw);
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream hs(line.substr(1));
            std::string key;
            hs >> key;
            std::string rest;
            std::getline(hs, rest);
            rest = trim(rest);
            try {
                if (key == "form") {
                    form_label = rest;
                    saw_form = true;
                } else if (key == "k0") {
                    k0 = std::stoi(rest);
                } else if (key == "degree") {
                    degree = std::stoi(rest);
                } else if (key == "normalized") {
                    if (rest != "0" && rest != "1")
                        throw ParseError(where + "normalized must be 0 or 1", lineno);
                    normalized = rest == "1";
                } else if (key == "coverage") {
                    coverage = std::stoull(rest);
                    if (coverage < 1) throw ParseError(where + "coverage must be >= 1", lineno);
                } else {
                    throw ParseError(where + "unknown header '#" + key + "'", lineno);
                }
            } catch (const std::invalid_argument&) {
                throw ParseError(where + "bad integer in header '#" + key + "'", lineno);
            } catch (const std::out_of_range&) {
                throw ParseError(where + "header '#" + key + "' value out of range", lineno);
            }
            continue;
        }

        // Data row: prime_label,norm,coefficient[,ramified]
        std::vector<std::string> fields;
        std::istringstream fs(line);
        std::string field;
        while (std::getline(fs, field, ',')) fields.push_back(trim(field));
        if (fields.size() < 3 || fields.size() > 4)
            throw ParseError(where + "expected prime_label,norm,coefficient[,ramified]", lineno);

        Row r;
        r.prime.label = fields[0];
        if (r.prime.label.empty()) throw ParseError(where + "empty prime label", lineno);
        try {
            r.prime.norm = std::stoull(fields[1]);
        } catch (const std::exception&) {
            throw ParseError(where + "bad norm '" + fields[1] + "'", lineno);
        }
        if (r.prime.norm < 2) throw ParseError(where + "norm must be >= 2", lineno);

        const std::string& coeff = fields[2];
        if (is_integer_literal(coeff)) {
            // Exact integer coefficient.
            r.exact = true;
            r.exact_value = mpq_class(coeff);
            r.exact_value.canonicalize();
            r.value = Real(r.exact_value, prec);
        } else {
            // A decimal row is a rounded real: represent it at working
            // precision rather than manufacturing a false exact rational.
            try {
                r.value = Real::parse(coeff, prec);
            } catch (const ParseError&) {
                throw ParseError(where + "bad coefficient '" + coeff + "'", lineno);
            }
            r.exact = false;
        }
        if (fields.size() == 4) {
            if (fields[3] != "ramified")
                throw ParseError(where + "unknown row flag '" + fields[3] + "'", lineno);
            r.ramified = true;
        }
        rows.push_back(std::move(r));
    }

    if (!saw_form) throw ParseError(where + "missing '#form' header");
    if (k0 == 0) throw ParseError(where + "missing '#k0' header");
    if (degree == 0) throw ParseError(where + "missing '#degree' header");
    if (normalized == -1) throw ParseError(where + "missing '#normalized' header");
    if (k0 < 2 || k0 % 2 != 0) throw ValidationError(where + "k0 must be an even integer >= 2");
    if (degree < 1) throw ValidationError(where + "degree must be >= 1");

    sort_rows(rows);
    check_duplicates(rows);

    // Deligne-Blasius bound at primes: a normalized unramified coefficient
    // satisfies |c(p)| <= d(p) = 2.
    if (normalized == 1) {
        for (const auto& r : rows) {
            if (r.ramified) continue;
            if (abs(r.value) > Real(2.0 + 2 * kCheckTolerance, prec))
                throw ValidationError(where + "normalized |c(" + r.prime.label + ")| = " +
                                      abs(r.value).str(12) + " exceeds the divisor bound 2");
        }
    }

    CoefficientTable t;
    t.form_label_ = form_label;
    t.k0_ = k0;
    t.degree_ = degree;
    t.normalized_ = normalized == 1;
    t.prec_ = prec;
    t.coverage_norm_ =
        coverage != 0 ? coverage : (rows.empty() ? 1 : rows.back().prime.norm);
    t.rows_ = std::move(rows);
    return t;
}

CoefficientTable CoefficientTable::load_file(const std::filesystem::path& path, Precision prec) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    return load(in, prec, path.filename().string());
}

// ---------------------------------------------------------------------------
// metadata helpers
// ---------------------------------------------------------------------------

std::vector<PrimeLabel> CoefficientTable::primes() const {
    std::vector<PrimeLabel> ps;
    ps.reserve(rows_.size());
    for (const auto& r : rows_) ps.push_back(r.prime);
    return ps;
}

const CoefficientTable::Row* CoefficientTable::find(const std::string& label) const {
    for (const auto& r : rows_)
        if (r.prime.label == label) return &r;
    return nullptr;
}

// ---------------------------------------------------------------------------
// normalize
// ---------------------------------------------------------------------------

CoefficientTable CoefficientTable::normalized_copy(Precision prec) const {
    if (normalized_) throw ValidationError("table is already normalized");
    CoefficientTable t = *this;
    t.prec_ = prec;
    t.normalized_ = true;
    for (auto& r : t.rows_) {
        // c(p) = C(p) / N(p)^{(k0-1)/2}; k0 is even, so the divisor is
        // sqrt(N(p)^{k0-1}) with an exact integer radicand.
        mpz_class npow;
        mpz_ui_pow_ui(npow.get_mpz_t(), r.prime.norm, static_cast<unsigned long>(k0_ - 1));
        const Real base = r.exact ? Real(r.exact_value, prec) : r.value.with_precision(prec);
        r.value = base / sqrt(Real(npow, prec));
        r.exact = false;
        r.exact_value = 0;
    }
    return t;
}

// ---------------------------------------------------------------------------
// Hecke extension
// ---------------------------------------------------------------------------

mpq_class CoefficientTable::extend_exact(const IdealElement& m) const {
    mpq_class result = 1;  // C(unit ideal) = 1
    for (const auto& f : m.factors()) {
        const Row* row = find(f.prime.label);
        if (!row) throw UnknownPrimeError(f.prime.label);
        if (!row->exact)
            throw DomainError("row '" + f.prime.label + "' carries no exact value; use extend()");
        // Norm factor: N(p)^{k0-1} unnormalized, 1 after normalization.
        mpq_class w = 1;
        if (!normalized_) {
            mpz_class npow;
            mpz_ui_pow_ui(npow.get_mpz_t(), f.prime.norm, static_cast<unsigned long>(k0_ - 1));
            w = mpq_class(npow);
        }
        mpq_class um2 = 1, um1 = row->exact_value;
        for (std::uint32_t e = 2; e <= f.exponent; ++e) {
            mpq_class u = row->exact_value * um1 - w * um2;
            um2 = std::move(um1);
            um1 = std::move(u);
        }
        result *= um1;
    }
    return result;
}

Real CoefficientTable::extend(const IdealElement& m, Precision prec) const {
    const Precision p = std::max(prec, prec_);
    Real result(1L, p);
    for (const auto& f : m.factors()) {
        const Row* row = find(f.prime.label);
        if (!row) throw UnknownPrimeError(f.prime.label);
        const Real c = row->exact ? Real(row->exact_value, p) : row->value.with_precision(p);
        Real w(1L, p);
        if (!normalized_) {
            mpz_class npow;
            mpz_ui_pow_ui(npow.get_mpz_t(), f.prime.norm, static_cast<unsigned long>(k0_ - 1));
            w = Real(npow, p);
        }
        Real um2(1L, p), um1 = c;
        for (std::uint32_t e = 2; e <= f.exponent; ++e) {
            Real u = c * um1 - w * um2;
            um2 = std::move(um1);
            um1 = std::move(u);
        }
        result *= um1;
    }
    return result;
}

// ---------------------------------------------------------------------------
// divisor bound scan
// ---------------------------------------------------------------------------

std::vector<CoefficientTable::Violation> CoefficientTable::divisor_bound_scan(
    std::uint64_t x) const {
    if (!normalized_) throw ValidationError("divisor_bound_scan requires a normalized table");
    const std::vector<PrimeLabel> ps = primes();
    std::vector<Violation> out;
    for (const FactoredElement& e : enumerate_by_norm(ps, x)) {
        const IdealElement m = to_ideal(e, ps);
        const double value = std::abs(extend(m).to_double());
        const double d = static_cast<double>(m.divisor_count());
        const double bound = d + kCheckTolerance * (1.0 + d);
        if (value > bound) out.push_back(Violation{m, value, bound});
    }
    return out;
}

// ---------------------------------------------------------------------------
// serialization
// ---------------------------------------------------------------------------

void CoefficientTable::save(std::ostream& out) const {
    out << "#form " << form_label_ << '\n';
    out << "#k0 " << k0_ << '\n';
    out << "#degree " << degree_ << '\n';
    out << "#normalized " << (normalized_ ? 1 : 0) << '\n';
    out << "#coverage " << coverage_norm_ << '\n';
    for (const auto& r : rows_) {
        out << r.prime.label << ',' << r.prime.norm << ',';
        if (r.exact && r.exact_value.get_den() == 1)
            out << r.exact_value.get_num().get_str();
        else
            out << r.value.str();
        if (r.ramified) out << ",ramified";
        out << '\n';
    }
}

void CoefficientTable::save_file(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    save(out);
    if (!out.flush()) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace heckelab

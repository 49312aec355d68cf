// heckelab — reproducible experiments over Hecke eigenvalue tables.
//
// Subcommands:
//   coeffs    build or ingest a coefficient table (cached, byte-identical)
//   witness   Diophantine witness constructions (--thm 1.4 / 1.5 / 1.6 / 1.7)
//   stats     sato-tate | moments | density | tenenbaum | littlewood | badapprox
//
// Exit codes: 0 success, 2 usage, 3 validation/verification failure,
// 4 resource/precision budget.  All output is deterministic: no timestamps,
// no machine identifiers; reports carry a config hash instead.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "heckelab/angle.hpp"
#include "heckelab/coeff_table.hpp"
#include "heckelab/error.hpp"
#include "heckelab/monoid.hpp"
#include "heckelab/real.hpp"
#include "heckelab/report_io.hpp"
#include "heckelab/stats.hpp"
#include "heckelab/witness.hpp"

namespace hl = heckelab;
namespace fs = std::filesystem;

namespace {

using Inputs = std::vector<std::pair<std::string, std::string>>;

struct GlobalOpts {
    long prec = hl::kDefaultPrecision;
    std::string cache_dir;
    std::string json_path;  // "-" writes to stdout
    std::string csv_path;
};

struct TableOpts {
    std::string form = "delta";
    std::uint32_t n = 10000;
    std::string load_path;
};

void add_table_flags(CLI::App* cmd, TableOpts& t) {
    cmd->add_option("--form", t.form, "built-in form to expand")
        ->check(CLI::IsMember({"delta"}))
        ->capture_default_str();
    cmd->add_option("--n", t.n, "coverage bound for the built-in expansion")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--load", t.load_path, "coefficient table file to ingest")
        ->check(CLI::ExistingFile);
}

// Builds (or loads) the requested table, going through the cache when a cache
// directory is configured.  Records the effective source in `inputs` so every
// report names its cache inputs.
hl::CoefficientTable acquire_table(const GlobalOpts& g, const TableOpts& t, Inputs& inputs) {
    if (!t.load_path.empty()) {
        inputs.emplace_back("source", t.load_path);
        return hl::CoefficientTable::load_file(t.load_path, g.prec);
    }
    inputs.emplace_back("form", t.form);
    inputs.emplace_back("n", std::to_string(t.n));
    if (g.cache_dir.empty())
        return hl::CoefficientTable::delta_q_expansion(t.n, {}, g.prec);

    const std::string hash = hl::config_hash(
        {{"form", t.form}, {"n", std::to_string(t.n)}, {"prec", std::to_string(g.prec)}});
    const fs::path file = fs::path(g.cache_dir) / (t.form + "-N" + std::to_string(t.n) + "-P" +
                                                   std::to_string(g.prec) + "-" + hash + ".tbl");
    inputs.emplace_back("cache_file", file.string());
    if (fs::exists(file)) return hl::CoefficientTable::load_file(file, g.prec);

    hl::CoefficientTable table = hl::CoefficientTable::delta_q_expansion(t.n, {}, g.prec);
    fs::create_directories(g.cache_dir);
    std::ostringstream text;
    table.save(text);
    hl::write_text_file(file.string(), text.str());
    return table;
}

hl::CoefficientTable acquire_normalized(const GlobalOpts& g, const TableOpts& t, Inputs& inputs) {
    hl::CoefficientTable table = acquire_table(g, t, inputs);
    if (!table.normalized()) table = table.normalized_copy(g.prec);
    return table;
}

hl::Angle angle_for(const hl::CoefficientTable& table, const std::string& label) {
    const hl::CoefficientTable::Row* row = table.find(label);
    if (!row) throw hl::UnknownPrimeError(label);
    const hl::Real c = row->exact ? hl::Real(row->exact_value, table.precision()) : row->value;
    return hl::angle_of(c, table.precision(), row->prime);
}

// True when a report already streams to stdout; the human summary then stays
// off stdout so piped output is exactly one document.
bool stdout_taken(const GlobalOpts& g) { return g.json_path == "-" || g.csv_path == "-"; }

void emit(const GlobalOpts& g, const std::string& json_text, const std::string& csv_text) {
    if (!g.json_path.empty()) {
        if (g.json_path == "-")
            std::cout << json_text;
        else
            hl::write_text_file(g.json_path, json_text);
    }
    if (!g.csv_path.empty()) {
        if (g.csv_path == "-")
            std::cout << csv_text;
        else
            hl::write_text_file(g.csv_path, csv_text);
    }
}

hl::ReportMeta make_meta(std::string kind, const GlobalOpts& g, Inputs inputs) {
    return hl::ReportMeta{std::move(kind), std::move(inputs), g.prec};
}

void print_witness_summary(const GlobalOpts& g, const hl::WitnessReport& report) {
    if (stdout_taken(g)) return;
    std::cout << wire_tag(report.kind) << " rows=" << report.rows.size()
              << (report.lower_bound ? " (lower bounds)" : " (upper bounds)") << "\n";
    for (const auto& [name, value] : report.constants)
        std::cout << "  " << name << " = " << value.str(20) << "\n";
}

void print_scan_summary(const GlobalOpts& g, const hl::ScanResult& scan) {
    if (stdout_taken(g)) return;
    std::cout << "min=" << scan.min_value.str(20) << " at n=" << scan.argmin
              << " excluded=" << scan.excluded.size()
              << " trend_supports=" << (scan.trend_supports ? "yes" : "no") << "\n";
}

void print_stat_summary(const GlobalOpts& g, const hl::StatSummary& s) {
    if (stdout_taken(g)) return;
    std::cout << "sample_size=" << s.sample_size << "\n";
    for (const auto& [x, v] : s.checkpoints)
        std::cout << "  x=" << hl::format_double(x) << " value=" << hl::format_double(v) << "\n";
    if (s.fit)
        std::cout << "  fit exponent=" << hl::format_double(s.fit->first)
                  << " constant=" << hl::format_double(s.fit->second) << "\n";
}

// -- coeffs -------------------------------------------------------------------

struct CoeffsOpts {
    TableOpts table;
    bool normalize = false;
    bool check = false;
    std::string out_path;
};

int run_coeffs(const GlobalOpts& g, const CoeffsOpts& o) {
    Inputs inputs;
    hl::CoefficientTable table = acquire_table(g, o.table, inputs);
    if (o.normalize && !table.normalized()) table = table.normalized_copy(g.prec);

    if (o.check) {
        const auto violations = (table.normalized() ? table : table.normalized_copy(g.prec))
                                    .divisor_bound_scan(table.coverage_norm());
        if (!violations.empty()) {
            for (const auto& v : violations)
                std::cerr << "divisor bound violated at " << v.element.str() << ": |c| = "
                          << hl::format_double(v.value) << " > " << hl::format_double(v.bound)
                          << "\n";
            throw hl::ValidationError(std::to_string(violations.size()) +
                                      " divisor-bound violation(s)");
        }
    }

    std::ostringstream text;
    table.save(text);
    if (o.out_path == "-" || (o.out_path.empty() && !stdout_taken(g)))
        std::cout << text.str();
    else if (!o.out_path.empty())
        hl::write_text_file(o.out_path, text.str());

    const std::vector<std::pair<std::string, std::int64_t>> summary = {
        {"coverage", static_cast<std::int64_t>(table.coverage_norm())},
        {"degree", table.degree()},
        {"k0", table.k0()},
        {"normalized", table.normalized() ? 1 : 0},
        {"rows", static_cast<std::int64_t>(table.rows().size())},
    };
    emit(g, hl::json_report(summary, make_meta("coeffs", g, inputs)), hl::csv_report(summary));
    std::cerr << "rows=" << table.rows().size() << " coverage=" << table.coverage_norm()
              << " normalized=" << (table.normalized() ? 1 : 0) << "\n";
    return 0;
}

// -- witness ------------------------------------------------------------------

struct WitnessOpts {
    TableOpts table;
    std::string thm;
    std::string p = "2";
    std::string q = "3";
    std::size_t count = 10;
    std::uint64_t nmax = 10000;
    std::size_t depth = 25;
};

int run_witness(const GlobalOpts& g, const WitnessOpts& o) {
    Inputs inputs{{"thm", o.thm}, {"p", o.p}};
    if (o.thm == "1.4" || o.thm == "1.6") inputs.emplace_back("q", o.q);
    if (o.thm == "1.4" || o.thm == "1.5") inputs.emplace_back("count", std::to_string(o.count));
    if (o.thm == "1.6" || o.thm == "1.7") inputs.emplace_back("nmax", std::to_string(o.nmax));
    if (o.thm == "1.7") inputs.emplace_back("depth", std::to_string(o.depth));

    hl::CoefficientTable table = acquire_normalized(g, o.table, inputs);

    if (o.thm == "1.6") {
        const hl::ScanResult scan =
            hl::two_prime_equal_power_scan(angle_for(table, o.p), angle_for(table, o.q), o.nmax);
        const auto meta = make_meta("scan", g, inputs);
        emit(g, hl::json_report(scan, meta), hl::csv_report(scan));
        print_scan_summary(g, scan);
        return 0;
    }

    hl::WitnessReport report;
    if (o.thm == "1.5")
        report = hl::prime_power_witnesses(angle_for(table, o.p), o.count);
    else if (o.thm == "1.4")
        report = hl::two_prime_witnesses(angle_for(table, o.p), angle_for(table, o.q), o.count);
    else  // "1.7" — flag validation guarantees the set
        report = hl::bad_approx_profile(angle_for(table, o.p), o.nmax, o.depth);

    const auto meta = make_meta("witness", g, inputs);
    emit(g, hl::json_report(report, meta), hl::csv_report(report));
    print_witness_summary(g, report);
    return 0;
}

// -- stats --------------------------------------------------------------------

struct StatsOpts {
    TableOpts table;
    std::vector<std::uint64_t> xs{1000, 10000};
    std::uint64_t x = 10000;
    double gamma = 1.0;
    bool plain = false;
    double eps = 0.25;
    std::string f_name = "csq";
    std::string p = "2";
    std::string q = "3";
    std::string alpha;
    std::string beta;
    std::uint64_t nmax = 10000;
    bool weighted = false;
    std::size_t depth = 25;
};

int run_sato_tate(const GlobalOpts& g, const StatsOpts& o) {
    Inputs inputs{{"x", [&] {
                       std::string s;
                       for (auto x : o.xs) s += (s.empty() ? "" : ",") + std::to_string(x);
                       return s;
                   }()}};
    hl::CoefficientTable table = acquire_normalized(g, o.table, inputs);
    const std::vector<hl::Angle> angles =
        hl::sato_tate_angles(table, o.xs.empty() ? 0 : o.xs.back(), g.prec);
    const hl::StatSummary summary = hl::equidistribution_test(angles, o.xs);
    const auto meta = make_meta("stat:sato-tate", g, inputs);
    emit(g, hl::json_report(summary, meta), hl::csv_report(summary));
    print_stat_summary(g, summary);
    return 0;
}

int run_moments(const GlobalOpts& g, const StatsOpts& o) {
    Inputs inputs{{"gamma", hl::format_double(o.gamma)},
                  {"x", std::to_string(o.x)},
                  {"variant", o.plain ? "plain" : "over-norm"}};
    hl::CoefficientTable table = acquire_normalized(g, o.table, inputs);
    const double integral = hl::moment_integral(o.gamma);
    inputs.emplace_back("integral_reference", hl::format_double(integral));
    const hl::StatSummary summary = hl::moment_sum(table, o.x, o.gamma, !o.plain);
    const auto meta = make_meta("stat:moments", g, inputs);
    emit(g, hl::json_report(summary, meta), hl::csv_report(summary));
    if (!stdout_taken(g)) std::cout << "I(gamma)=" << hl::format_double(integral) << "\n";
    print_stat_summary(g, summary);
    return 0;
}

int run_density(const GlobalOpts& g, const StatsOpts& o) {
    Inputs inputs{{"eps", hl::format_double(o.eps)}, {"x", [&] {
                       std::string s;
                       for (auto x : o.xs) s += (s.empty() ? "" : ",") + std::to_string(x);
                       return s;
                   }()}};
    hl::CoefficientTable table = acquire_normalized(g, o.table, inputs);
    const hl::StatSummary summary = hl::density_scan(table, o.eps, o.xs);
    const auto meta = make_meta("stat:density", g, inputs);
    emit(g, hl::json_report(summary, meta), hl::csv_report(summary));
    print_stat_summary(g, summary);
    return 0;
}

int run_tenenbaum(const GlobalOpts& g, const StatsOpts& o) {
    Inputs inputs{{"f", o.f_name}, {"x", std::to_string(o.x)}};
    hl::CoefficientTable table = acquire_normalized(g, o.table, inputs);
    hl::MultiplicativeFn f;
    if (o.f_name == "one") {
        f = [](const hl::PrimeLabel&, std::uint32_t) { return 1.0; };
    } else if (o.f_name == "cabs") {
        f = [&table](const hl::PrimeLabel& p, std::uint32_t e) {
            return std::abs(
                table.extend(hl::IdealElement::prime_power(p, e)).to_double());
        };
    } else {  // "csq"
        f = [&table](const hl::PrimeLabel& p, std::uint32_t e) {
            const double c = table.extend(hl::IdealElement::prime_power(p, e)).to_double();
            return c * c;
        };
    }
    const hl::TenenbaumReport report = hl::tenenbaum_check(f, table, o.x);
    const auto meta = make_meta("stat:tenenbaum", g, inputs);
    emit(g, hl::json_report(report, meta), hl::csv_report(report));
    if (!stdout_taken(g))
        std::cout << "S=" << hl::format_double(report.s_sum)
                  << " rhs=" << hl::format_double(report.rhs)
                  << " slack=" << hl::format_double(report.slack)
                  << " holds=" << (report.holds ? "yes" : "no")
                  << (report.degenerate ? " (degenerate)" : "") << "\n";
    return report.holds ? 0 : 3;
}

int run_littlewood(const GlobalOpts& g, const StatsOpts& o) {
    Inputs inputs{{"nmax", std::to_string(o.nmax)}, {"weighted", o.weighted ? "1" : "0"}};
    hl::Real alpha{static_cast<hl::Precision>(g.prec)};
    hl::Real beta{static_cast<hl::Precision>(g.prec)};
    if (!o.alpha.empty() || !o.beta.empty()) {
        if (o.alpha.empty() || o.beta.empty())
            throw hl::DomainError("--alpha and --beta must be given together");
        inputs.emplace_back("alpha", o.alpha);
        inputs.emplace_back("beta", o.beta);
        alpha = hl::Real::parse(o.alpha, g.prec);
        beta = hl::Real::parse(o.beta, g.prec);
        const auto meta_inputs = inputs;
        const hl::ScanResult scan = hl::littlewood_scan(alpha, beta, o.nmax, o.weighted);
        const auto meta = make_meta("scan:littlewood", g, meta_inputs);
        emit(g, hl::json_report(scan, meta), hl::csv_report(scan));
        print_scan_summary(g, scan);
        return 0;
    }
    inputs.emplace_back("p", o.p);
    inputs.emplace_back("q", o.q);
    hl::CoefficientTable table = acquire_normalized(g, o.table, inputs);
    const hl::Real two_pi = hl::mul_ui(hl::const_pi(g.prec), 2, g.prec);
    alpha = angle_for(table, o.p).theta() / two_pi;
    beta = angle_for(table, o.q).theta() / two_pi;
    const hl::ScanResult scan = hl::littlewood_scan(alpha, beta, o.nmax, o.weighted);
    const auto meta = make_meta("scan:littlewood", g, inputs);
    emit(g, hl::json_report(scan, meta), hl::csv_report(scan));
    print_scan_summary(g, scan);
    return 0;
}

int run_badapprox(const GlobalOpts& g, const StatsOpts& o) {
    Inputs inputs{{"p", o.p},
                  {"nmax", std::to_string(o.nmax)},
                  {"depth", std::to_string(o.depth)}};
    hl::CoefficientTable table = acquire_normalized(g, o.table, inputs);
    const hl::WitnessReport report = hl::bad_approx_profile(angle_for(table, o.p), o.nmax, o.depth);
    const auto meta = make_meta("stat:badapprox", g, inputs);
    emit(g, hl::json_report(report, meta), hl::csv_report(report));
    print_witness_summary(g, report);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    // CLI11 silently drops environment values that fail option validation;
    // an explicit override must never be ignored, so reject bad ones here.
    if (const char* env = std::getenv("HECKELAB_PRECISION")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (*env == '\0' || end == nullptr || *end != '\0' || v < 64 || v > (1L << 20)) {
            std::cerr << "usage error: HECKELAB_PRECISION must be an integer in [64, "
                      << (1L << 20) << "], got '" << env << "'\n";
            return 2;
        }
    }

    CLI::App app{"Hecke eigenvalue tables, Sato-Tate angles, Diophantine witness scans"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--prec", g.prec, "working precision in bits")
        ->envname("HECKELAB_PRECISION")
        ->check(CLI::Range(static_cast<long>(64), static_cast<long>(1) << 20))
        ->capture_default_str();
    app.add_option("--cache", g.cache_dir, "coefficient table cache directory")
        ->envname("HECKELAB_CACHE_DIR");
    app.add_option("--json", g.json_path, "write the JSON report here ('-' for stdout)");
    app.add_option("--csv", g.csv_path, "write the CSV report here ('-' for stdout)");

    CoeffsOpts co;
    CLI::App* coeffs = app.add_subcommand("coeffs", "build or ingest a coefficient table");
    add_table_flags(coeffs, co.table);
    coeffs->add_flag("--normalize", co.normalize, "emit normalized coefficients c = C/N^{(k0-1)/2}");
    coeffs->add_flag("--check", co.check, "run the divisor-bound scan before emitting");
    coeffs->add_option("--out", co.out_path, "table output path ('-' or empty for stdout)");

    WitnessOpts wo;
    CLI::App* witness = app.add_subcommand("witness", "Diophantine witness constructions");
    add_table_flags(witness, wo.table);
    witness->add_option("--thm", wo.thm, "theorem tag: 1.4, 1.5, 1.6 or 1.7")
        ->required()
        ->check(CLI::IsMember({"1.4", "1.5", "1.6", "1.7"}));
    witness->add_option("--p", wo.p, "first prime label")->capture_default_str();
    witness->add_option("--q", wo.q, "second prime label (1.4, 1.6)")->capture_default_str();
    witness->add_option("--count", wo.count, "number of witnesses (1.4, 1.5)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    witness->add_option("--nmax", wo.nmax, "scan bound (1.6, 1.7)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    witness->add_option("--depth", wo.depth, "continued fraction depth (1.7)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    StatsOpts so;
    CLI::App* stats = app.add_subcommand("stats", "statistical verification");
    stats->require_subcommand(1);

    CLI::App* sato = stats->add_subcommand("sato-tate", "Kolmogorov-Smirnov equidistribution test");
    add_table_flags(sato, so.table);
    sato->add_option("--x", so.xs, "comma-separated norm checkpoints")
        ->delimiter(',')
        ->capture_default_str();

    CLI::App* moments = stats->add_subcommand("moments", "moment sums against I(gamma)");
    add_table_flags(moments, so.table);
    moments->add_option("--gamma", so.gamma, "moment exponent gamma >= 0")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    moments->add_option("--x", so.x, "summation bound")->capture_default_str();
    moments->add_flag("--plain", so.plain, "sum |c(m)|^gamma instead of |c(m)|^gamma / N(m)");

    CLI::App* density = stats->add_subcommand("density", "small-coefficient density counter");
    add_table_flags(density, so.table);
    density->add_option("--eps", so.eps, "threshold exponent offset in (0, 1/2)")
        ->capture_default_str();
    density->add_option("--x", so.xs, "comma-separated norm checkpoints")
        ->delimiter(',')
        ->capture_default_str();

    CLI::App* tenenbaum = stats->add_subcommand("tenenbaum", "multiplicative summation inequality");
    add_table_flags(tenenbaum, so.table);
    tenenbaum->add_option("--f", so.f_name, "multiplicative weight: one, cabs or csq")
        ->check(CLI::IsMember({"one", "cabs", "csq"}))
        ->capture_default_str();
    tenenbaum->add_option("--x", so.x, "summation bound")->capture_default_str();

    CLI::App* littlewood = stats->add_subcommand("littlewood", "n ||n a|| ||n b|| running minima");
    add_table_flags(littlewood, so.table);
    littlewood->add_option("--p", so.p, "first prime label (angle ratio source)")
        ->capture_default_str();
    littlewood->add_option("--q", so.q, "second prime label")->capture_default_str();
    littlewood->add_option("--alpha", so.alpha, "explicit alpha in (0,1), decimal");
    littlewood->add_option("--beta", so.beta, "explicit beta in (0,1), decimal");
    littlewood->add_option("--nmax", so.nmax, "scan bound")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    littlewood->add_flag("--weighted", so.weighted, "weight by log n");

    CLI::App* badapprox = stats->add_subcommand("badapprox", "badly-approximable angle profile");
    add_table_flags(badapprox, so.table);
    badapprox->add_option("--p", so.p, "prime label")->capture_default_str();
    badapprox->add_option("--nmax", so.nmax, "scan bound")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    badapprox->add_option("--depth", so.depth, "continued fraction depth")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    // Global options (--prec, --cache, --json, --csv) may appear anywhere on
    // the command line; subcommands pass unmatched options up to the app.
    for (CLI::App* sub : app.get_subcommands(nullptr)) {
        sub->fallthrough();
        for (CLI::App* nested : sub->get_subcommands(nullptr)) nested->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (coeffs->parsed()) return run_coeffs(g, co);
        if (witness->parsed()) return run_witness(g, wo);
        if (sato->parsed()) return run_sato_tate(g, so);
        if (moments->parsed()) return run_moments(g, so);
        if (density->parsed()) return run_density(g, so);
        if (tenenbaum->parsed()) return run_tenenbaum(g, so);
        if (littlewood->parsed()) return run_littlewood(g, so);
        if (badapprox->parsed()) return run_badapprox(g, so);
        std::cerr << "usage error: no subcommand\n";
        return 2;
    } catch (const hl::ResourceError& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return 4;
    } catch (const hl::PrecisionError& e) {
        std::cerr << "precision error: " << e.what() << "\n";
        return 4;
    } catch (const hl::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

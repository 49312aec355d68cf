#include "heckelab/report_io.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <system_error>

#include <json.hpp>

#include "heckelab/error.hpp"

namespace heckelab {

namespace {

using nlohmann::json;  // std::map-backed: keys serialize in sorted order

json meta_json(const ReportMeta& meta) {
    json inputs = json::object();
    for (const auto& [k, v] : meta.inputs) inputs[k] = v;
    return json{{"config_hash", meta.hash()},
                {"inputs", inputs},
                {"kind", meta.kind},
                {"precision_bits", static_cast<std::int64_t>(meta.precision_bits)}};
}

json wrap(const ReportMeta& meta, json payload) {
    payload["schema"] = 1;
    payload["meta"] = meta_json(meta);
    return payload;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string config_hash(const std::vector<std::pair<std::string, std::string>>& entries) {
    std::string canonical;
    for (const auto& [k, v] : entries) {
        canonical += k;
        canonical += '=';
        canonical += v;
        canonical += '\n';
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(canonical)));
    return buf;
}

std::string ReportMeta::hash() const {
    std::vector<std::pair<std::string, std::string>> entries;
    entries.reserve(inputs.size() + 2);
    entries.emplace_back("kind", kind);
    entries.emplace_back("precision_bits", std::to_string(precision_bits));
    entries.insert(entries.end(), inputs.begin(), inputs.end());
    return config_hash(entries);
}

std::string format_double(double value) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc{}) throw IoError("double formatting failed");
    return std::string(buf, end);
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

std::string json_report(const WitnessReport& report, const ReportMeta& meta) {
    json constants = json::object();
    for (const auto& [name, value] : report.constants) constants[name] = value.str();
    json rows = json::array();
    for (const WitnessRow& row : report.rows) {
        json r{{"achieved", row.achieved.str()},
               {"bound", row.bound.str()},
               {"n", row.n}};
        r["ideal"] = row.ideal ? json(row.ideal->str()) : json(nullptr);
        rows.push_back(std::move(r));
    }
    return dump(wrap(meta, json{{"constants", constants},
                                {"lower_bound", report.lower_bound},
                                {"rows", rows},
                                {"theorem_tag", std::string(wire_tag(report.kind))}}));
}

std::string json_report(const ScanResult& scan, const ReportMeta& meta) {
    json trace = json::array();
    for (const TracePoint& p : scan.trace) {
        json t{{"n", p.n}, {"running_min", p.running_min}};
        t["majorant"] = p.has_majorant ? json(p.majorant) : json(nullptr);
        trace.push_back(std::move(t));
    }
    return dump(wrap(meta, json{{"argmin", scan.argmin},
                                {"excluded", scan.excluded},
                                {"min_value", scan.min_value.str()},
                                {"trace", trace},
                                {"trend_supports", scan.trend_supports},
                                {"weighted", scan.weighted}}));
}

std::string json_report(const StatSummary& summary, const ReportMeta& meta) {
    json checkpoints = json::array();
    for (const auto& [x, v] : summary.checkpoints) checkpoints.push_back(json::array({x, v}));
    json fit(nullptr);
    if (summary.fit)
        fit = json{{"constant", summary.fit->second}, {"exponent", summary.fit->first}};
    return dump(wrap(meta, json{{"checkpoints", checkpoints},
                                {"discrepancy", summary.discrepancy},
                                {"fit", fit},
                                {"sample_size", summary.sample_size}}));
}

std::string json_report(const TenenbaumReport& report, const ReportMeta& meta) {
    return dump(wrap(meta, json{{"a_const", report.a_const},
                                {"b_const", report.b_const},
                                {"degenerate", report.degenerate},
                                {"holds", report.holds},
                                {"l_sum", report.l_sum},
                                {"rhs", report.rhs},
                                {"s_sum", report.s_sum},
                                {"slack", report.slack},
                                {"x", report.x}}));
}

std::string json_report(const std::vector<std::pair<std::string, std::int64_t>>& fields,
                        const ReportMeta& meta) {
    json payload = json::object();
    for (const auto& [k, v] : fields) payload[k] = v;
    return dump(wrap(meta, std::move(payload)));
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

std::string csv_report(const WitnessReport& report) {
    std::string out = "theorem_tag,n,ideal,achieved,bound\n";
    for (const WitnessRow& row : report.rows) {
        out += wire_tag(report.kind);
        out += ',';
        out += std::to_string(row.n);
        out += ',';
        if (row.ideal) out += row.ideal->str();
        out += ',';
        out += row.achieved.str();
        out += ',';
        out += row.bound.str();
        out += '\n';
    }
    return out;
}

std::string csv_report(const ScanResult& scan) {
    std::string out = "checkpoint_n,running_min,majorant\n";
    for (const TracePoint& p : scan.trace) {
        out += std::to_string(p.n);
        out += ',';
        out += format_double(p.running_min);
        out += ',';
        if (p.has_majorant) out += format_double(p.majorant);
        out += '\n';
    }
    return out;
}

std::string csv_report(const StatSummary& summary) {
    std::string out = "x,value\n";
    for (const auto& [x, v] : summary.checkpoints) {
        out += format_double(x);
        out += ',';
        out += format_double(v);
        out += '\n';
    }
    return out;
}

std::string csv_report(const TenenbaumReport& report) {
    std::string out = "x,s_sum,l_sum,a_const,b_const,rhs,slack,holds,degenerate\n";
    out += std::to_string(report.x);
    out += ',';
    out += format_double(report.s_sum);
    out += ',';
    out += format_double(report.l_sum);
    out += ',';
    out += format_double(report.a_const);
    out += ',';
    out += format_double(report.b_const);
    out += ',';
    out += format_double(report.rhs);
    out += ',';
    out += format_double(report.slack);
    out += ',';
    out += report.holds ? "1" : "0";
    out += ',';
    out += report.degenerate ? "1" : "0";
    out += '\n';
    return out;
}

std::string csv_report(const std::vector<std::pair<std::string, std::int64_t>>& fields) {
    std::string header, row;
    for (const auto& [k, v] : fields) {
        if (!header.empty()) {
            header += ',';
            row += ',';
        }
        header += k;
        row += std::to_string(v);
    }
    return header + "\n" + row + "\n";
}

// ---------------------------------------------------------------------------
// atomic file write
// ---------------------------------------------------------------------------

void write_text_file(const std::string& path, std::string_view text) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
        out.write(text.data(), static_cast<std::streamsize>(text.size()));
        out.flush();
        if (!out) throw IoError("write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot move report into place at " + path);
    }
}

}  // namespace heckelab

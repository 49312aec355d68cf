#pragma once
// Deterministic report serialization.
//
// Every emitter here is a pure function of its inputs: no timestamps, no
// hostnames, no pointer values, keys in a fixed order.  Running the same
// computation twice must produce byte-identical files; callers rely on that
// both for caching and for diff-based regression testing.
//
// JSON layout (schema 1): a top-level object with a "schema" version, a
// "meta" object (kind, config hash, flat input map, working precision) and
// the payload.  High-precision values are serialized as decimal strings via
// Real::str(); doubles use shortest round-trip formatting.
//
// CSV layout: a header line, then one row per record.  The equal-power scan
// trace carries a pointwise majorant column; scans without a majorant
// (littlewood) leave that column empty.

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "heckelab/real.hpp"
#include "heckelab/stats.hpp"
#include "heckelab/witness.hpp"

namespace heckelab {

// 64-bit FNV-1a over a byte string.
std::uint64_t fnv1a64(std::string_view bytes);

// Hash of an ordered key=value list, as 16 lowercase hex digits.  Order is
// significant; callers keep a fixed key order so equal configurations hash
// equally.
std::string config_hash(const std::vector<std::pair<std::string, std::string>>& entries);

// Metadata block attached to every JSON report.
struct ReportMeta {
    std::string kind;  // e.g. "witness", "scan", "stat", "tenenbaum"
    std::vector<std::pair<std::string, std::string>> inputs;
    Precision precision_bits = kDefaultPrecision;

    // config_hash over kind, precision and the input list.
    std::string hash() const;
};

// JSON report texts (pretty-printed, trailing newline, keys sorted).
std::string json_report(const WitnessReport& report, const ReportMeta& meta);
std::string json_report(const ScanResult& scan, const ReportMeta& meta);
std::string json_report(const StatSummary& summary, const ReportMeta& meta);
std::string json_report(const TenenbaumReport& report, const ReportMeta& meta);
// Flat integer payload (e.g. table metadata): one JSON object / one CSV row.
std::string json_report(const std::vector<std::pair<std::string, std::int64_t>>& fields,
                        const ReportMeta& meta);

// CSV report texts.
std::string csv_report(const WitnessReport& report);   // theorem_tag,n,ideal,achieved,bound
std::string csv_report(const ScanResult& scan);        // checkpoint_n,running_min,majorant
std::string csv_report(const StatSummary& summary);    // x,value
std::string csv_report(const TenenbaumReport& report); // one row of the named constants
std::string csv_report(const std::vector<std::pair<std::string, std::int64_t>>& fields);

// Shortest round-trip decimal form of a double (locale-independent).
std::string format_double(double value);

// Atomic text-file write: temp file in the target directory, then rename.
// Throws IoError on any filesystem failure.
void write_text_file(const std::string& path, std::string_view text);

}  // namespace heckelab

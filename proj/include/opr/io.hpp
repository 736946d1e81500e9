#pragma once

#include <filesystem>
#include <iosfwd>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "opr/features.hpp"
#include "opr/miner.hpp"
#include "opr/series.hpp"

namespace opr {

enum class SeriesFormat { Plain, Csv };

std::optional<SeriesFormat> parse_series_format(std::string_view name);
std::string_view to_string(SeriesFormat f);

/// plain: one real per line, blank lines skipped.
/// csv: first line is a header; reads `column` by name, or the only column
/// when `column` is empty (more than one column then needs a name).
/// Throws ParseError (with line number) and Error{EmptySeries}.
TimeSeries parse_series(std::istream& in, SeriesFormat format, std::string_view column = {});

/// As parse_series; throws Error{Io} when the file cannot be read.
TimeSeries load_series(const std::filesystem::path& path, SeriesFormat format,
                       std::string_view column = {});

struct DatasetManifest {
  struct Entry {
    std::filesystem::path path;
    std::optional<std::string> label;
  };
  std::vector<Entry> entries;
  SeriesFormat format = SeriesFormat::Plain;

  bool labeled() const { return !entries.empty() && entries.front().label.has_value(); }
};

/// One entry per line: `path` or `path,label`. Blank lines and lines starting
/// with '#' are skipped; relative paths resolve against the manifest's
/// directory. Labels must be present on all entries or on none, and every
/// path must exist.
DatasetManifest load_manifest(const std::filesystem::path& path, SeriesFormat format);

std::vector<TimeSeries> load_dataset(const DatasetManifest& manifest, std::string_view column = {});

/// Maps string labels to dense ids in first-appearance order.
Labeling encode_labels(std::span<const std::string> labels);

/// Splits one CSV line honoring double quotes ("" escapes a quote).
std::vector<std::string> split_csv_line(std::string_view line);
/// Quotes a field when it contains a comma, quote or newline.
std::string csv_field(std::string_view text);

/// Shortest round-trip decimal form of a double.
std::string format_real(double v);

// Reports --------------------------------------------------------------------

inline constexpr std::string_view kReportSchema = "opr-report/1";

struct ReportOptions {
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  bool emit_occurrences = false;
  bool include_timing = false;
};

struct ClusterMetrics {
  double nmi = 0.0;
  double homogeneity = 0.0;
};

/// Rules by confidence descending, ties by antecedent then consequent.
std::vector<OpRule> rules_by_confidence(std::vector<OpRule> rules);

nlohmann::ordered_json report_json(const ReportOptions& options, const MiningResult& result,
                                   const std::vector<OpRule>* rules = nullptr,
                                   const std::optional<ClusterMetrics>& metrics = std::nullopt);

void write_patterns_csv(std::ostream& out, const MiningResult& result);
void write_rules_csv(std::ostream& out, std::span<const OpRule> rules);

/// Header: optional "label" column, then one column per pattern string.
void write_feature_matrix_csv(std::ostream& out, const FeatureMatrix& m);
FeatureMatrix read_feature_matrix_csv(std::istream& in);

}  // namespace opr

#include "opr/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "opr/error.hpp"

namespace opr {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' ||
                        s.back() == '\n')) {
    s.remove_suffix(1);
  }
  return s;
}

std::optional<double> parse_real(std::string_view token) {
  token = trim(token);
  if (token.empty()) return std::nullopt;
  if (token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) return std::nullopt;
  if (!std::isfinite(value)) return std::nullopt;
  return value;
}

}  // namespace

std::optional<SeriesFormat> parse_series_format(std::string_view name) {
  if (name == "plain") return SeriesFormat::Plain;
  if (name == "csv") return SeriesFormat::Csv;
  return std::nullopt;
}

std::string_view to_string(SeriesFormat f) { return f == SeriesFormat::Plain ? "plain" : "csv"; }

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        current += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        current += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else if (c != '\r') {
      current += c;
    }
  }
  fields.push_back(std::move(current));
  return fields;
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string format_real(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

TimeSeries parse_series(std::istream& in, SeriesFormat format, std::string_view column) {
  TimeSeries out;
  std::string line;
  std::size_t line_no = 0;

  if (format == SeriesFormat::Plain) {
    while (std::getline(in, line)) {
      ++line_no;
      const auto token = trim(line);
      if (token.empty()) continue;
      const auto value = parse_real(token);
      if (!value) {
        throw ParseError(line_no, "line " + std::to_string(line_no) + ": cannot parse '" +
                                      std::string(token) + "' as a real number");
      }
      out.push_back(*value);
    }
  } else {
    std::size_t index = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
      ++line_no;
      if (trim(line).empty()) continue;
      const auto fields = split_csv_line(line);
      if (!have_header) {
        have_header = true;
        if (column.empty()) {
          if (fields.size() != 1) {
            throw ParseError(line_no, "csv has several columns; choose one with --column");
          }
          index = 0;
        } else {
          auto it = std::find_if(fields.begin(), fields.end(),
                                 [&](const std::string& f) { return trim(f) == column; });
          if (it == fields.end()) {
            throw ParseError(line_no, "csv has no column '" + std::string(column) + "'");
          }
          index = static_cast<std::size_t>(it - fields.begin());
        }
        continue;
      }
      if (index >= fields.size()) {
        throw ParseError(line_no, "line " + std::to_string(line_no) + ": missing column");
      }
      const auto value = parse_real(fields[index]);
      if (!value) {
        throw ParseError(line_no, "line " + std::to_string(line_no) + ": cannot parse '" +
                                      fields[index] + "' as a real number");
      }
      out.push_back(*value);
    }
  }
  if (out.empty()) throw Error(ErrorCode::EmptySeries, "series has no values");
  return out;
}

TimeSeries load_series(const std::filesystem::path& path, SeriesFormat format,
                       std::string_view column) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  return parse_series(in, format, column);
}

DatasetManifest load_manifest(const std::filesystem::path& path, SeriesFormat format) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open manifest " + path.string());
  DatasetManifest manifest;
  manifest.format = format;
  const auto base = path.parent_path();
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto fields = split_csv_line(text);
    if (fields.size() > 2) throw ParseError(line_no, "manifest entries are path[,label]");
    DatasetManifest::Entry entry;
    entry.path = std::filesystem::path(std::string(trim(fields[0])));
    if (entry.path.is_relative()) entry.path = base / entry.path;
    if (fields.size() == 2) entry.label = std::string(trim(fields[1]));
    if (!manifest.entries.empty() &&
        manifest.entries.front().label.has_value() != entry.label.has_value()) {
      throw ParseError(line_no, "labels must be given for all entries or none");
    }
    if (!std::filesystem::exists(entry.path)) {
      throw Error(ErrorCode::Io, "manifest entry does not exist: " + entry.path.string());
    }
    manifest.entries.push_back(std::move(entry));
  }
  if (manifest.entries.empty()) throw Error(ErrorCode::EmptySeries, "manifest lists no series");
  return manifest;
}

std::vector<TimeSeries> load_dataset(const DatasetManifest& manifest, std::string_view column) {
  std::vector<TimeSeries> out;
  out.reserve(manifest.entries.size());
  for (const auto& e : manifest.entries) out.push_back(load_series(e.path, manifest.format, column));
  return out;
}

Labeling encode_labels(std::span<const std::string> labels) {
  std::map<std::string, int> ids;
  Labeling out;
  out.reserve(labels.size());
  for (const auto& l : labels) {
    auto [it, inserted] = ids.emplace(l, static_cast<int>(ids.size()));
    out.push_back(it->second);
  }
  return out;
}

std::vector<OpRule> rules_by_confidence(std::vector<OpRule> rules) {
  const ByLengthThenRanks less;
  std::stable_sort(rules.begin(), rules.end(), [&](const OpRule& a, const OpRule& b) {
    // Compare sup_y/sup_x exactly via cross multiplication.
    const auto lhs = static_cast<unsigned long long>(a.sup_y) * b.sup_x;
    const auto rhs = static_cast<unsigned long long>(b.sup_y) * a.sup_x;
    if (lhs != rhs) return lhs > rhs;
    if (a.antecedent != b.antecedent) return less(a.antecedent, b.antecedent);
    return less(a.consequent, b.consequent);
  });
  return rules;
}

nlohmann::ordered_json report_json(const ReportOptions& options, const MiningResult& result,
                                   const std::vector<OpRule>* rules,
                                   const std::optional<ClusterMetrics>& metrics) {
  using nlohmann::ordered_json;
  ordered_json report;
  report["schema"] = kReportSchema;
  report["config"] = options.config;

  ordered_json patterns = ordered_json::array();
  for (const auto& [p, info] : result.frequent) {
    ordered_json row;
    row["pattern"] = to_string(p);
    row["length"] = p.size();
    row["support"] = info.support;
    if (options.emit_occurrences) row["occurrences"] = info.occurrences;
    patterns.push_back(std::move(row));
  }
  report["frequent_pattern_count"] = result.frequent.size();
  report["patterns"] = std::move(patterns);

  if (rules) {
    ordered_json table = ordered_json::array();
    for (const auto& r : rules_by_confidence(*rules)) {
      ordered_json row;
      row["antecedent"] = to_string(r.antecedent);
      row["consequent"] = to_string(r.consequent);
      row["sup_x"] = r.sup_x;
      row["sup_y"] = r.sup_y;
      row["confidence"] = r.confidence;
      table.push_back(std::move(row));
    }
    report["rule_count"] = rules->size();
    report["rules"] = std::move(table);
  }

  ordered_json counters;
  counters["candidates_checked"] = result.stats.candidates_checked;
  counters["element_comparisons"] = result.stats.element_comparisons;
  if (options.include_timing) {
    counters["wall_time_ms"] = result.stats.wall_time_ms();
    counters["wall_time_note"] = "monotonic clock, non-normative";
  }
  report["counters"] = std::move(counters);

  if (metrics) {
    report["metrics"] = {{"nmi", metrics->nmi}, {"homogeneity", metrics->homogeneity}};
  }
  return report;
}

void write_patterns_csv(std::ostream& out, const MiningResult& result) {
  out << "pattern,length,support\n";
  for (const auto& [p, info] : result.frequent) {
    out << csv_field(to_string(p)) << ',' << p.size() << ',' << info.support << '\n';
  }
}

void write_rules_csv(std::ostream& out, std::span<const OpRule> rules) {
  out << "antecedent,consequent,sup_x,sup_y,confidence\n";
  for (const auto& r : rules_by_confidence({rules.begin(), rules.end()})) {
    out << csv_field(to_string(r.antecedent)) << ',' << csv_field(to_string(r.consequent)) << ','
        << r.sup_x << ',' << r.sup_y << ',' << format_real(r.confidence) << '\n';
  }
}

void write_feature_matrix_csv(std::ostream& out, const FeatureMatrix& m) {
  const bool labeled = !m.row_labels.empty();
  bool first = true;
  auto sep = [&] {
    if (!first) out << ',';
    first = false;
  };
  if (labeled) {
    sep();
    out << "label";
  }
  for (const auto& p : m.column_patterns) {
    sep();
    out << csv_field(to_string(p));
  }
  out << '\n';
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    first = true;
    if (labeled) {
      sep();
      out << csv_field(m.row_labels[static_cast<std::size_t>(r)]);
    }
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      sep();
      out << m.counts(r, c);
    }
    out << '\n';
  }
}

FeatureMatrix read_feature_matrix_csv(std::istream& in) {
  FeatureMatrix m;
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError(1, "feature matrix csv is empty");
  ++line_no;
  auto header = split_csv_line(line);
  const bool labeled = !header.empty() && header.front() == "label";
  for (std::size_t i = labeled ? 1 : 0; i < header.size(); ++i) {
    try {
      m.column_patterns.push_back(parse_pattern(header[i]));
    } catch (const ParseError& e) {
      throw ParseError(line_no, e.what());
    }
  }
  std::vector<std::vector<std::int64_t>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != header.size()) throw ParseError(line_no, "wrong number of fields");
    std::size_t i = 0;
    if (labeled) m.row_labels.push_back(fields[i++]);
    auto& row = rows.emplace_back();
    for (; i < fields.size(); ++i) {
      std::int64_t v = 0;
      const auto token = trim(fields[i]);
      const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
      if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw ParseError(line_no, "bad count '" + fields[i] + "'");
      }
      row.push_back(v);
    }
  }
  m.counts.resize(static_cast<Eigen::Index>(rows.size()),
                  static_cast<Eigen::Index>(m.column_patterns.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      m.counts(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    }
  }
  return m;
}

}  // namespace opr

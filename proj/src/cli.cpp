#include "opr/cli.hpp"

#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "opr/baselines.hpp"
#include "opr/error.hpp"
#include "opr/features.hpp"
#include "opr/io.hpp"
#include "opr/metrics.hpp"
#include "opr/miner.hpp"

namespace opr {

namespace {

struct Options {
  std::string input;
  std::string manifest;
  std::string format = "plain";
  std::string column;
  std::size_t minsup = 0;
  double minconf = 0.5;
  std::string variant = "efo-miner";
  std::size_t max_len = 0;
  std::size_t top_k = 10;
  std::string features = "rules";
  std::size_t clusters = 0;
  std::uint64_t seed = 0;
  std::string out;
  bool json = false;
  bool csv = false;
  bool emit_occurrences = false;
  bool timing = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::shared_ptr<spdlog::logger> make_logger(std::ostream& err) {
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
  auto logger = std::make_shared<spdlog::logger>("oprminer", sink);
  logger->set_pattern("[%l] %v");
  const char* env = std::getenv("OPR_LOG");
  logger->set_level(env ? spdlog::level::from_str(env) : spdlog::level::warn);
  return logger;
}

struct LoadedInput {
  std::vector<TimeSeries> sequences;
  std::vector<std::string> labels;  // empty when unlabeled
};

class Command {
 public:
  Command(const Options& opt, std::ostream& out, spdlog::logger& log)
      : opt_(opt), out_(out), log_(log) {}

  MinerConfig config() const {
    MinerConfig cfg;
    cfg.minsup = opt_.minsup;
    cfg.minconf = opt_.minconf;
    const auto v = parse_variant(opt_.variant);
    if (!v) throw UsageError("unknown variant '" + opt_.variant + "'");
    cfg.variant = *v;
    if (opt_.max_len) cfg.max_pattern_len = opt_.max_len;
    if (cfg.minsup < 1) throw UsageError("--minsup must be a positive integer");
    if (!(cfg.minconf > 0.0 && cfg.minconf <= 1.0)) {
      throw UsageError("--minconf must lie in (0, 1]");
    }
    if (opt_.max_len == 1) throw UsageError("--max-len must be >= 2");
    return cfg;
  }

  LoadedInput load() const {
    const auto format = parse_series_format(opt_.format);
    if (!format) throw UsageError("unknown format '" + opt_.format + "'");
    if (opt_.input.empty() == opt_.manifest.empty()) {
      throw UsageError("give exactly one of --input or --manifest");
    }
    LoadedInput in;
    if (!opt_.input.empty()) {
      in.sequences.push_back(load_series(opt_.input, *format, opt_.column));
    } else {
      const auto manifest = load_manifest(opt_.manifest, *format);
      in.sequences = load_dataset(manifest, opt_.column);
      if (manifest.labeled()) {
        for (const auto& e : manifest.entries) in.labels.push_back(*e.label);
      }
    }
    std::size_t total = 0;
    for (const auto& s : in.sequences) total += s.size();
    log_.info("loaded {} sequence(s), {} values", in.sequences.size(), total);
    return in;
  }

  nlohmann::ordered_json config_echo(std::string_view command, const MinerConfig& cfg) const {
    nlohmann::ordered_json c;
    c["command"] = command;
    if (!opt_.input.empty()) c["input"] = opt_.input;
    if (!opt_.manifest.empty()) c["manifest"] = opt_.manifest;
    c["format"] = opt_.format;
    if (!opt_.column.empty()) c["column"] = opt_.column;
    c["variant"] = to_string(cfg.variant);
    c["minsup"] = cfg.minsup;
    c["minconf"] = cfg.minconf;
    if (cfg.max_pattern_len) c["max_len"] = *cfg.max_pattern_len;
    return c;
  }

  ReportOptions report_options(std::string_view command, const MinerConfig& cfg) const {
    ReportOptions r;
    r.config = config_echo(command, cfg);
    r.emit_occurrences = opt_.emit_occurrences;
    r.include_timing = opt_.timing;
    return r;
  }

  void emit(const std::string& text) const {
    if (opt_.out.empty()) {
      out_ << text;
      return;
    }
    std::ofstream f(opt_.out, std::ios::binary);
    if (!f) throw Error(ErrorCode::Io, "cannot write " + opt_.out);
    f << text;
    if (!f) throw Error(ErrorCode::Io, "failed writing " + opt_.out);
  }

  void mine_cmd(bool with_rules) const {
    const MinerConfig cfg = config();
    const auto in = load();
    const SequenceDatabase db(in.sequences);
    const RuleMiningResult res = mine_rules(db, cfg);
    log_.info("{}: {} frequent patterns, {} strong rules", to_string(cfg.variant),
              res.mining.frequent.size(), res.rules.size());
    std::ostringstream text;
    if (opt_.csv) {
      if (with_rules) {
        write_rules_csv(text, res.rules);
      } else {
        write_patterns_csv(text, res.mining);
      }
    } else {
      const auto opts = report_options(with_rules ? "rules" : "mine", cfg);
      text << report_json(opts, res.mining, with_rules ? &res.rules : nullptr).dump(2) << '\n';
    }
    emit(text.str());
  }

  void bench_cmd() const {
    MinerConfig cfg = config();
    const auto in = load();
    const SequenceDatabase db(in.sequences);
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    std::ostringstream text;
    if (!opt_.json) {
      text << "variant,frequent_patterns,candidates_checked,element_comparisons,wall_time_ms\n";
    }
    for (Variant v : kAllVariants) {
      cfg.variant = v;
      const MiningResult r = mine(db, cfg);
      log_.info("{} done in {} ms", to_string(v), r.stats.wall_time_ms());
      if (opt_.json) {
        rows.push_back({{"variant", to_string(v)},
                        {"frequent_patterns", r.frequent.size()},
                        {"candidates_checked", r.stats.candidates_checked},
                        {"element_comparisons", r.stats.element_comparisons},
                        {"wall_time_ms", r.stats.wall_time_ms()}});
      } else {
        text << to_string(v) << ',' << r.frequent.size() << ',' << r.stats.candidates_checked
             << ',' << r.stats.element_comparisons << ',' << format_real(r.stats.wall_time_ms())
             << '\n';
      }
    }
    if (opt_.json) {
      nlohmann::ordered_json report;
      report["schema"] = kReportSchema;
      report["config"] = config_echo("bench", cfg);
      report["config"].erase("variant");
      report["wall_time_note"] = "monotonic clock, non-normative";
      report["variants"] = std::move(rows);
      text << report.dump(2) << '\n';
    }
    emit(text.str());
  }

  struct Features {
    FeatureMatrix matrix;
    RuleMiningResult mined;
    bool truncated = false;
  };

  Features build_features(const LoadedInput& in, const MinerConfig& cfg) const {
    if (opt_.features != "rules" && opt_.features != "topk") {
      throw UsageError("--features must be rules or topk");
    }
    Features f;
    f.mined = mine_rules(SequenceDatabase(in.sequences), cfg);
    std::vector<OppPattern> patterns;
    if (opt_.features == "rules") {
      patterns = rule_patterns(f.mined.rules);
    } else {
      if (opt_.top_k < 1) throw UsageError("--top-k must be >= 1");
      auto top = top_k_patterns(f.mined.mining, opt_.top_k);
      f.truncated = top.truncated;
      if (top.truncated) {
        log_.warn("only {} frequent patterns for top-{}", top.patterns.size(), opt_.top_k);
      }
      patterns = std::move(top.patterns);
    }
    if (patterns.empty()) {
      throw UsageError("no feature patterns found; lower --minsup or --minconf");
    }
    f.matrix = feature_matrix(f.mined.mining, patterns);
    f.matrix.row_labels = in.labels;
    return f;
  }

  void features_cmd() const {
    const MinerConfig cfg = config();
    const auto in = load();
    const auto f = build_features(in, cfg);
    std::ostringstream text;
    write_feature_matrix_csv(text, f.matrix);
    emit(text.str());
  }

  void cluster_cmd() const {
    const MinerConfig cfg = config();
    if (opt_.clusters < 1) throw UsageError("cluster needs --k >= 1");
    const auto in = load();
    if (in.labels.empty()) throw UsageError("cluster needs a manifest with labels");
    const auto f = build_features(in, cfg);
    if (static_cast<std::size_t>(f.matrix.rows()) < opt_.clusters) {
      throw UsageError("fewer sequences than clusters");
    }
    const Clustering clustering = kmeans(f.matrix, opt_.clusters, opt_.seed);
    const Labeling truth = encode_labels(in.labels);
    const ClusterMetrics metrics{nmi(truth, clustering.labels),
                                 homogeneity(truth, clustering.labels)};

    std::ostringstream text;
    if (opt_.csv) {
      text << "sequence,label,cluster\n";
      for (std::size_t i = 0; i < truth.size(); ++i) {
        text << i << ',' << csv_field(in.labels[i]) << ',' << clustering.labels[i] << '\n';
      }
    } else {
      auto opts = report_options("cluster", cfg);
      opts.config["features"] = opt_.features;
      if (opt_.features == "topk") opts.config["top_k"] = opt_.top_k;
      opts.config["k"] = opt_.clusters;
      opts.config["seed"] = opt_.seed;
      auto report = report_json(opts, f.mined.mining, &f.mined.rules, metrics);
      nlohmann::ordered_json columns = nlohmann::ordered_json::array();
      for (const auto& p : f.matrix.column_patterns) columns.push_back(to_string(p));
      report["feature_patterns"] = std::move(columns);
      report["assignments"] = clustering.labels;
      report["inertia"] = clustering.inertia;
      text << report.dump(2) << '\n';
    }
    emit(text.str());
  }

 private:
  const Options& opt_;
  std::ostream& out_;
  spdlog::logger& log_;
};

void add_common(CLI::App* cmd, Options& opt) {
  auto* input = cmd->add_option("--input", opt.input, "Series file");
  auto* manifest = cmd->add_option("--manifest", opt.manifest, "Dataset manifest (path[,label] per line)");
  input->excludes(manifest);
  cmd->add_option("--format", opt.format, "Series format")->check(CLI::IsMember({"plain", "csv"}));
  cmd->add_option("--column", opt.column, "CSV column name");
  cmd->add_option("--minsup", opt.minsup, "Minimum support (occurrence count)")->required();
  cmd->add_option("--minconf", opt.minconf, "Minimum rule confidence in (0,1]");
  cmd->add_option("--variant", opt.variant, "efo-miner|efo-prun|efo-scrn|efo-enum|mat-based");
  cmd->add_option("--max-len", opt.max_len, "Longest pattern to mine");
  cmd->add_option("--out", opt.out, "Write the report here instead of stdout");
  auto* json = cmd->add_flag("--json", opt.json, "JSON output");
  auto* csv = cmd->add_flag("--csv", opt.csv, "CSV output");
  json->excludes(csv);
  cmd->add_flag("--emit-occurrences", opt.emit_occurrences, "Include occurrence lists");
  cmd->add_flag("--timing", opt.timing, "Include wall-clock time in JSON reports");
}

void add_feature_options(CLI::App* cmd, Options& opt) {
  cmd->add_option("--features", opt.features, "rules|topk");
  cmd->add_option("--top-k", opt.top_k, "Number of patterns in topk mode");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  auto log = make_logger(err);
  Options opt;
  CLI::App app{"Frequent order-preserving pattern and rule miner", "oprminer"};
  app.require_subcommand(1);

  auto* mine = app.add_subcommand("mine", "Mine frequent order-preserving patterns");
  auto* rules = app.add_subcommand("rules", "Mine patterns and strong rules");
  auto* bench = app.add_subcommand("bench", "Run every variant and compare counters");
  auto* features = app.add_subcommand("features", "Export a per-sequence feature matrix");
  auto* cluster = app.add_subcommand("cluster", "K-means over features, scored against labels");
  for (auto* cmd : {mine, rules, bench, features, cluster}) add_common(cmd, opt);
  add_feature_options(features, opt);
  add_feature_options(cluster, opt);
  cluster->add_option("--k", opt.clusters, "Number of clusters")->required();
  cluster->add_option("--seed", opt.seed, "K-means seed");

  std::vector<const char*> argv{"oprminer"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const Command command(opt, out, *log);
    if (mine->parsed()) command.mine_cmd(false);
    if (rules->parsed()) command.mine_cmd(true);
    if (bench->parsed()) command.bench_cmd();
    if (features->parsed()) command.features_cmd();
    if (cluster->parsed()) command.cluster_cmd();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << to_string(e.code()) << ": " << e.what() << '\n';
    switch (e.code()) {
      case ErrorCode::Io: return kExitIo;
      case ErrorCode::ParseError:
      case ErrorCode::EmptySeries: return kExitParse;
      default: return kExitUsage;
    }
  }
  return kExitOk;
}

}  // namespace opr

#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "opr/pattern.hpp"
#include "opr/series.hpp"

namespace opr {

enum class Variant { EfoMiner, EfoPrun, EfoScrn, EfoEnum, MatBased };

inline constexpr Variant kAllVariants[] = {Variant::EfoEnum, Variant::MatBased,
                                           Variant::EfoScrn, Variant::EfoPrun,
                                           Variant::EfoMiner};

/// "efo-miner", "efo-prun", ...
std::string_view to_string(Variant v);
std::optional<Variant> parse_variant(std::string_view name);

struct MinerConfig {
  std::size_t minsup = 1;
  double minconf = 1.0;
  Variant variant = Variant::EfoMiner;
  std::optional<std::size_t> max_pattern_len;

  /// Throws Error{InvalidConfig} unless minsup >= 1, 0 < minconf <= 1 and
  /// max_pattern_len (when set) >= 2.
  void validate() const;
};

struct InstrumentationCounters {
  std::uint64_t candidates_checked = 0;
  /// Probes into prefix/suffix arrays (join variants) or per-window rank
  /// comparisons (mat-based).
  std::uint64_t element_comparisons = 0;
  std::chrono::nanoseconds wall_time{0};
  /// Peak number of occurrence entries held at once (frequent lists, working
  /// sets and lists of candidates being evaluated).
  std::uint64_t peak_retained_entries = 0;
  /// Largest number of occurrence lists alive alongside the frequent ones.
  std::uint64_t peak_live_lists = 0;

  double wall_time_ms() const {
    return std::chrono::duration<double, std::milli>(wall_time).count();
  }
};

struct PatternInfo {
  std::size_t support = 0;
  OccurrenceList occurrences;  // global 1-based ends over the database
};

using FrequentSet = std::map<OppPattern, PatternInfo, ByLengthThenRanks>;

struct MiningResult {
  FrequentSet frequent;
  InstrumentationCounters stats;
  /// Sequence layout the occurrence lists refer to.
  SequenceDatabase database;

  bool contains(const OppPattern& p) const { return frequent.contains(p); }
  std::size_t support(const OppPattern& p) const;
  /// Support of p split per sequence (zeros when p is not frequent).
  std::vector<std::size_t> per_sequence_support(const OppPattern& p) const;
};

/// x -> y with x = prefix_pattern(y).
struct OpRule {
  OppPattern antecedent;
  OppPattern consequent;
  std::size_t sup_x = 0;
  std::size_t sup_y = 0;
  double confidence = 0.0;

  friend bool operator==(const OpRule&, const OpRule&) = default;
};

/// conf = sup_y / sup_x; the single place minconf is compared.
inline bool meets_confidence(std::size_t sup_x, std::size_t sup_y, double minconf) {
  return static_cast<double>(sup_y) / static_cast<double>(sup_x) >= minconf;
}

OpRule make_rule(const OppPattern& x, std::size_t sup_x, const OppPattern& y,
                 std::size_t sup_y);

/// Antecedent then consequent, both by length then ranks.
void sort_rules(std::vector<OpRule>& rules);

struct RuleMiningResult {
  MiningResult mining;
  std::vector<OpRule> rules;  // sorted with sort_rules
};

/// Level-wise frequent OPP mining with fusion, SPF-Pro screening and pruning.
/// Ignores cfg.variant.
MiningResult efo_miner(const TimeSeries& t, const MinerConfig& cfg);

/// efo_miner plus strong-rule emission as each super-pattern is admitted.
RuleMiningResult opr_miner(const TimeSeries& t, const MinerConfig& cfg);

/// Runs cfg.variant over a database of one or more sequences. Supports are
/// summed over sequences; windows never cross sequence boundaries.
MiningResult mine(const SequenceDatabase& db, const MinerConfig& cfg);
RuleMiningResult mine_rules(const SequenceDatabase& db, const MinerConfig& cfg);

MiningResult mine_dataset(std::span<const TimeSeries> dataset, const MinerConfig& cfg);

}  // namespace opr

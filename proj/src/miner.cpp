#include "opr/miner.hpp"

#include <algorithm>
#include <utility>

#include "levelwise.hpp"
#include "opr/baselines.hpp"
#include "opr/error.hpp"
#include "opr/join.hpp"

namespace opr {

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::EfoMiner: return "efo-miner";
    case Variant::EfoPrun: return "efo-prun";
    case Variant::EfoScrn: return "efo-scrn";
    case Variant::EfoEnum: return "efo-enum";
    case Variant::MatBased: return "mat-based";
  }
  return "unknown";
}

std::optional<Variant> parse_variant(std::string_view name) {
  for (Variant v : kAllVariants) {
    if (to_string(v) == name) return v;
  }
  return std::nullopt;
}

void MinerConfig::validate() const {
  if (minsup < 1) throw Error(ErrorCode::InvalidConfig, "minsup must be >= 1");
  if (!(minconf > 0.0 && minconf <= 1.0)) {
    throw Error(ErrorCode::InvalidConfig, "minconf must lie in (0, 1]");
  }
  if (max_pattern_len && *max_pattern_len < 2) {
    throw Error(ErrorCode::InvalidConfig, "max pattern length must be >= 2");
  }
}

std::size_t MiningResult::support(const OppPattern& p) const {
  auto it = frequent.find(p);
  return it == frequent.end() ? 0 : it->second.support;
}

std::vector<std::size_t> MiningResult::per_sequence_support(const OppPattern& p) const {
  auto it = frequent.find(p);
  if (it == frequent.end()) return std::vector<std::size_t>(database.sequence_count(), 0);
  return database.per_sequence_counts(it->second.occurrences);
}

OpRule make_rule(const OppPattern& x, std::size_t sup_x, const OppPattern& y,
                 std::size_t sup_y) {
  return OpRule{x, y, sup_x, sup_y, static_cast<double>(sup_y) / static_cast<double>(sup_x)};
}

void sort_rules(std::vector<OpRule>& rules) {
  const ByLengthThenRanks less;
  std::sort(rules.begin(), rules.end(), [&](const OpRule& a, const OpRule& b) {
    if (a.antecedent != b.antecedent) return less(a.antecedent, b.antecedent);
    return less(a.consequent, b.consequent);
  });
}

namespace detail {

Strategy strategy_for(Variant v) {
  switch (v) {
    case Variant::EfoMiner: return {Generation::Fusion, Support::Join, true, true};
    case Variant::EfoPrun: return {Generation::Fusion, Support::Join, true, false};
    case Variant::EfoScrn: return {Generation::Fusion, Support::Join, false, false};
    case Variant::EfoEnum: return {Generation::Enumeration, Support::Join, false, false};
    case Variant::MatBased: return {Generation::Fusion, Support::Naive, false, false};
  }
  throw Error(ErrorCode::InvalidConfig, "unknown variant");
}

namespace {

using Clock = std::chrono::steady_clock;

struct LevelEntry {
  OppPattern pattern;
  OccurrenceList occurrences;
};

std::uint64_t total_entries(const std::vector<OccurrenceList>& lists) {
  std::uint64_t n = 0;
  for (const auto& l : lists) n += l.size();
  return n;
}

class LevelwiseRun {
 public:
  LevelwiseRun(const SequenceDatabase& db, const MinerConfig& cfg, const Strategy& strategy,
               bool emit_rules)
      : db_(db), cfg_(cfg), strategy_(strategy), emit_rules_(emit_rules) {}

  RuleMiningResult run() {
    const auto started = Clock::now();
    out_.mining.database = db_;

    auto seeds = scan_length2(db_);
    std::vector<LevelEntry> level;
    if (seeds.up.size() >= cfg_.minsup) level.push_back({OppPattern{1, 2}, std::move(seeds.up)});
    if (seeds.down.size() >= cfg_.minsup) {
      level.push_back({OppPattern{2, 1}, std::move(seeds.down)});
    }
    for (const auto& e : level) frequent_entries_ += e.occurrences.size();
    note_storage(0, 0);

    std::size_t m = 2;
    while (!level.empty()) {
      std::vector<LevelEntry> next;
      if (!cfg_.max_pattern_len || m + 1 <= *cfg_.max_pattern_len) {
        next = strategy_.generation == Generation::Enumeration ? enumerate_level(level)
                                                               : fuse_level(level);
      }
      for (auto& e : level) {
        const std::size_t sup = e.occurrences.size();
        out_.mining.frequent.emplace(std::move(e.pattern),
                                     PatternInfo{sup, std::move(e.occurrences)});
      }
      level = std::move(next);
      ++m;
    }

    sort_rules(out_.rules);
    out_.mining.stats.wall_time = Clock::now() - started;
    return std::move(out_);
  }

 private:
  using NextLevel = std::map<OppPattern, OccurrenceList>;

  std::vector<LevelEntry> fuse_level(std::vector<LevelEntry>& level) {
    const std::size_t count = level.size();
    std::vector<OccurrenceList> prefix_sets;
    std::vector<OccurrenceList> suffix_sets;
    if (strategy_.screening) {
      prefix_sets.reserve(count);
      suffix_sets.reserve(count);
      for (const auto& e : level) {
        prefix_sets.push_back(e.occurrences);
        suffix_sets.push_back(e.occurrences);
      }
    }
    auto prefix_of = [&](std::size_t a) -> OccurrenceList& {
      return strategy_.screening ? prefix_sets[a] : level[a].occurrences;
    };
    auto suffix_of = [&](std::size_t b) -> OccurrenceList& {
      return strategy_.screening ? suffix_sets[b] : level[b].occurrences;
    };
    working_lists_ = strategy_.screening ? 2 * count : 0;
    working_entries_ = total_entries(prefix_sets) + total_entries(suffix_sets);

    NextLevel next;
    for (std::size_t a = 0; a < count; ++a) {
      for (std::size_t b = 0; b < count; ++b) {
        if (strategy_.pruning && (prefix_of(a).size() < cfg_.minsup ||
                                  suffix_of(b).size() < cfg_.minsup)) {
          continue;
        }
        const auto& p = level[a].pattern;
        const auto& q = level[b].pattern;
        if (!can_fuse(p, q)) continue;
        const FusionResult fused = fuse(p, q);
        stats().candidates_checked += fused.count();

        if (strategy_.support == Support::Naive) {
          evaluate_naive(fused.r, level[a], level[b], next);
          if (fused.h) evaluate_naive(*fused.h, level[a], level[b], next);
          continue;
        }

        const std::uint64_t before = prefix_of(a).size() + suffix_of(b).size();
        JoinResult joined =
            spf_join(p, prefix_of(a), q, suffix_of(b), db_.values(), strategy_.screening);
        stats().element_comparisons += joined.comparisons;
        if (strategy_.screening) {
          working_entries_ -= before - (prefix_of(a).size() + suffix_of(b).size());
        }
        note_storage(joined.r.size() + joined.h.size(), 2);
        admit(fused.r, std::move(joined.r), level[a], level[b], next);
        if (fused.h) admit(*fused.h, std::move(joined.h), level[a], level[b], next);
      }
    }
    working_lists_ = 0;
    working_entries_ = 0;
    return finish_level(std::move(next));
  }

  std::vector<LevelEntry> enumerate_level(std::vector<LevelEntry>& level) {
    std::map<OppPattern, std::size_t> index;
    for (std::size_t i = 0; i < level.size(); ++i) index.emplace(level[i].pattern, i);

    NextLevel next;
    for (std::size_t a = 0; a < level.size(); ++a) {
      const auto& p = level[a].pattern;
      for (const OppPattern& x : enumerate_extensions(p)) {
        ++stats().candidates_checked;
        // A suffix outside F_m bounds sup(x) below minsup; nothing to join.
        auto it = index.find(suffix_pattern(x));
        if (it == index.end()) continue;
        const std::size_t b = it->second;
        const auto& q = level[b].pattern;
        const FusionResult fused = fuse(p, q);
        JoinResult joined = spf_join(p, level[a].occurrences, q, level[b].occurrences,
                                     db_.values(), false);
        stats().element_comparisons += joined.comparisons;
        note_storage(joined.r.size() + joined.h.size(), 2);
        if (fused.r == x) {
          admit(x, std::move(joined.r), level[a], level[b], next);
        } else {
          OPR_CHECK(fused.h && *fused.h == x);
          admit(x, std::move(joined.h), level[a], level[b], next);
        }
      }
    }
    return finish_level(std::move(next));
  }

  void evaluate_naive(const OppPattern& x, const LevelEntry& p, const LevelEntry& q,
                      NextLevel& next) {
    OccurrenceList found = naive_support(x, db_, &stats().element_comparisons);
    note_storage(found.size(), 1);
    admit(x, std::move(found), p, q, next);
  }

  void admit(const OppPattern& x, OccurrenceList occurrences, const LevelEntry& p,
             const LevelEntry& q, NextLevel& next) {
    const std::size_t sup = occurrences.size();
    OPR_CHECK(sup <= std::min(p.occurrences.size(), q.occurrences.size()));
    if (sup < cfg_.minsup) return;
    if (emit_rules_ && meets_confidence(p.occurrences.size(), sup, cfg_.minconf)) {
      out_.rules.push_back(make_rule(p.pattern, p.occurrences.size(), x, sup));
    }
    next_entries_ += sup;
    const bool inserted = next.emplace(x, std::move(occurrences)).second;
    OPR_CHECK(inserted);
  }

  std::vector<LevelEntry> finish_level(NextLevel next) {
    std::vector<LevelEntry> out;
    out.reserve(next.size());
    for (auto& [pattern, occurrences] : next) {
      frequent_entries_ += occurrences.size();
      out.push_back({pattern, std::move(occurrences)});
    }
    next_entries_ = 0;
    return out;
  }

  // `in_flight` entries sit in `in_flight_lists` candidate lists that are not
  // yet admitted to (or dropped from) the next level.
  void note_storage(std::uint64_t in_flight, std::uint64_t in_flight_lists) {
    auto& s = stats();
    s.peak_retained_entries = std::max(
        s.peak_retained_entries, frequent_entries_ + working_entries_ + next_entries_ + in_flight);
    s.peak_live_lists = std::max(s.peak_live_lists, working_lists_ + in_flight_lists);
  }

  InstrumentationCounters& stats() { return out_.mining.stats; }

  const SequenceDatabase& db_;
  const MinerConfig& cfg_;
  Strategy strategy_;
  bool emit_rules_;
  RuleMiningResult out_;
  std::uint64_t frequent_entries_ = 0;
  std::uint64_t working_entries_ = 0;
  std::uint64_t working_lists_ = 0;
  std::uint64_t next_entries_ = 0;
};

}  // namespace

RuleMiningResult run_levelwise(const SequenceDatabase& db, const MinerConfig& cfg,
                               const Strategy& strategy, bool emit_rules) {
  cfg.validate();
  return LevelwiseRun(db, cfg, strategy, emit_rules).run();
}

}  // namespace detail

MiningResult efo_miner(const TimeSeries& t, const MinerConfig& cfg) {
  return detail::run_levelwise(SequenceDatabase(t), cfg,
                               detail::strategy_for(Variant::EfoMiner), false)
      .mining;
}

RuleMiningResult opr_miner(const TimeSeries& t, const MinerConfig& cfg) {
  return detail::run_levelwise(SequenceDatabase(t), cfg,
                               detail::strategy_for(Variant::EfoMiner), true);
}

MiningResult mine(const SequenceDatabase& db, const MinerConfig& cfg) {
  return detail::run_levelwise(db, cfg, detail::strategy_for(cfg.variant), false).mining;
}

RuleMiningResult mine_rules(const SequenceDatabase& db, const MinerConfig& cfg) {
  return detail::run_levelwise(db, cfg, detail::strategy_for(cfg.variant), true);
}

MiningResult mine_dataset(std::span<const TimeSeries> dataset, const MinerConfig& cfg) {
  return mine(SequenceDatabase(std::vector<TimeSeries>(dataset.begin(), dataset.end())), cfg);
}

}  // namespace opr

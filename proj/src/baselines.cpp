#include "opr/baselines.hpp"

#include <algorithm>
#include <numeric>

#include "levelwise.hpp"
#include "opr/error.hpp"

namespace opr {

OccurrenceList naive_support(const OppPattern& p, const SequenceDatabase& db,
                             std::uint64_t* comparisons) {
  const std::size_t m = p.size();
  // by_rank[k] = offset inside the window of the element with rank k+1
  std::vector<std::size_t> by_rank(m);
  for (std::size_t i = 0; i < m; ++i) by_rank[p[i] - 1] = i;

  std::uint64_t probes = 0;
  OccurrenceList out;
  const auto values = db.values();
  for (std::size_t s = 0; s < db.sequence_count(); ++s) {
    if (db.length(s) < m) continue;
    for (Position end = db.first(s) + m - 1; end <= db.last(s); ++end) {
      const std::size_t base = end - m;  // 0-based index of the window start
      bool match = true;
      for (std::size_t k = 0; k + 1 < m; ++k) {
        ++probes;
        if (!(values[base + by_rank[k]] < values[base + by_rank[k + 1]])) {
          match = false;
          break;
        }
      }
      if (match) out.push_back(end);
    }
  }
  if (comparisons) *comparisons += probes;
  return out;
}

OccurrenceList naive_support(const OppPattern& p, const TimeSeries& t) {
  return naive_support(p, SequenceDatabase(t));
}

std::vector<OppPattern> enumerate_extensions(const OppPattern& p) {
  const Rank m = static_cast<Rank>(p.size());
  std::vector<OppPattern> out;
  out.reserve(p.size() + 1);
  for (Rank appended = 1; appended <= m + 1; ++appended) {
    std::vector<Rank> ranks;
    ranks.reserve(p.size() + 1);
    for (Rank r : p) ranks.push_back(r >= appended ? r + 1 : r);
    ranks.push_back(appended);
    out.emplace_back(std::move(ranks));
  }
  std::sort(out.begin(), out.end());
  return out;
}

MiningResult mat_based_miner(const SequenceDatabase& db, const MinerConfig& cfg) {
  return detail::run_levelwise(db, cfg, detail::strategy_for(Variant::MatBased), false).mining;
}

MiningResult mat_based_miner(const TimeSeries& t, const MinerConfig& cfg) {
  return mat_based_miner(SequenceDatabase(t), cfg);
}

MiningResult efo_variant_miner(const SequenceDatabase& db, const MinerConfig& cfg) {
  if (cfg.variant != Variant::EfoEnum && cfg.variant != Variant::EfoScrn &&
      cfg.variant != Variant::EfoPrun) {
    throw Error(ErrorCode::InvalidConfig, "efo_variant_miner runs efo-enum/scrn/prun only");
  }
  return detail::run_levelwise(db, cfg, detail::strategy_for(cfg.variant), false).mining;
}

MiningResult efo_variant_miner(const TimeSeries& t, const MinerConfig& cfg) {
  return efo_variant_miner(SequenceDatabase(t), cfg);
}

std::vector<OpRule> opr_all_rules(const MiningResult& result) {
  std::vector<OpRule> rules;
  for (const auto& [y, info] : result.frequent) {
    if (y.size() < 3) continue;
    const OppPattern x = prefix_pattern(y);
    auto it = result.frequent.find(x);
    if (it == result.frequent.end()) continue;
    rules.push_back(make_rule(x, it->second.support, y, info.support));
  }
  sort_rules(rules);
  return rules;
}

MiningResult brute_force_frequent(const SequenceDatabase& db, std::size_t minsup,
                                  std::size_t maxlen) {
  if (maxlen < 2 || maxlen > 7) {
    throw Error(ErrorCode::InvalidConfig, "brute force supports 2 <= maxlen <= 7");
  }
  MiningResult out;
  out.database = db;
  for (std::size_t len = 2; len <= maxlen; ++len) {
    std::vector<Rank> ranks(len);
    std::iota(ranks.begin(), ranks.end(), Rank{1});
    do {
      OppPattern p(ranks);
      ++out.stats.candidates_checked;
      OccurrenceList ends = naive_support(p, db, &out.stats.element_comparisons);
      if (ends.size() >= minsup && !ends.empty()) {
        const std::size_t sup = ends.size();
        out.frequent.emplace(std::move(p), PatternInfo{sup, std::move(ends)});
      }
    } while (std::next_permutation(ranks.begin(), ranks.end()));
  }
  return out;
}

MiningResult brute_force_frequent(const TimeSeries& t, std::size_t minsup, std::size_t maxlen) {
  return brute_force_frequent(SequenceDatabase(t), minsup, maxlen);
}

}  // namespace opr

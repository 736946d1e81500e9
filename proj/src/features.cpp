#include "opr/features.hpp"

#include <set>

#include "opr/baselines.hpp"

namespace opr {

std::vector<OppPattern> rule_patterns(std::span<const OpRule> rules) {
  std::vector<OppPattern> out;
  std::set<OppPattern> seen;
  auto add = [&](const OppPattern& p) {
    if (seen.insert(p).second) out.push_back(p);
  };
  for (const auto& rule : rules) {
    add(rule.antecedent);
    add(rule.consequent);
  }
  return out;
}

TopK top_k_patterns(const MiningResult& result, std::size_t k) {
  if (k < 1) throw Error(ErrorCode::InvalidConfig, "top-k needs k >= 1");
  std::vector<std::pair<const OppPattern*, std::size_t>> ranked;
  ranked.reserve(result.frequent.size());
  for (const auto& [p, info] : result.frequent) ranked.emplace_back(&p, info.support);
  const ByLengthThenRanks shorter_first;
  std::sort(ranked.begin(), ranked.end(), [&](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return shorter_first(*a.first, *b.first);
  });
  TopK out;
  out.truncated = k > ranked.size();
  const std::size_t take = std::min(k, ranked.size());
  out.patterns.reserve(take);
  for (std::size_t i = 0; i < take; ++i) out.patterns.push_back(*ranked[i].first);
  return out;
}

FeatureMatrix feature_matrix(std::span<const TimeSeries> dataset,
                             std::span<const OppPattern> patterns) {
  FeatureMatrix out;
  out.column_patterns.assign(patterns.begin(), patterns.end());
  out.counts.resize(static_cast<Eigen::Index>(dataset.size()),
                    static_cast<Eigen::Index>(patterns.size()));
  for (std::size_t s = 0; s < dataset.size(); ++s) {
    const SequenceDatabase db(dataset[s]);
    for (std::size_t j = 0; j < patterns.size(); ++j) {
      out.counts(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(j)) =
          static_cast<std::int64_t>(naive_support(patterns[j], db).size());
    }
  }
  return out;
}

FeatureMatrix feature_matrix(const MiningResult& mined, std::span<const OppPattern> patterns) {
  const auto& db = mined.database;
  FeatureMatrix out;
  out.column_patterns.assign(patterns.begin(), patterns.end());
  out.counts.resize(static_cast<Eigen::Index>(db.sequence_count()),
                    static_cast<Eigen::Index>(patterns.size()));
  for (std::size_t j = 0; j < patterns.size(); ++j) {
    auto it = mined.frequent.find(patterns[j]);
    const std::vector<std::size_t> counts =
        it != mined.frequent.end() ? db.per_sequence_counts(it->second.occurrences)
                                   : db.per_sequence_counts(naive_support(patterns[j], db));
    for (std::size_t s = 0; s < counts.size(); ++s) {
      out.counts(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(j)) =
          static_cast<std::int64_t>(counts[s]);
    }
  }
  return out;
}

}  // namespace opr

#pragma once

#include <cstdint>
#include <vector>

#include "opr/miner.hpp"
#include "opr/pattern.hpp"
#include "opr/series.hpp"

namespace opr {

/// Occurrences of p found by testing every window against p directly. A
/// window matches when its values, visited in p's rank order, are strictly
/// increasing (equivalently relative_order(window) == p). Each value
/// comparison is added to `comparisons` when given.
OccurrenceList naive_support(const OppPattern& p, const SequenceDatabase& db,
                             std::uint64_t* comparisons = nullptr);
OccurrenceList naive_support(const OppPattern& p, const TimeSeries& t);

/// The m+1 patterns whose first m ranks have relative order p, sorted.
std::vector<OppPattern> enumerate_extensions(const OppPattern& p);

/// Fusion candidate generation, every candidate matched from scratch.
MiningResult mat_based_miner(const SequenceDatabase& db, const MinerConfig& cfg);
MiningResult mat_based_miner(const TimeSeries& t, const MinerConfig& cfg);

/// Ablations of efo_miner, chosen by cfg.variant:
///   efo-enum  enumeration candidates, joins without screening or pruning
///   efo-scrn  fusion candidates, joins without screening or pruning
///   efo-prun  fusion candidates, joins with screening, no pruning
/// Throws Error{InvalidConfig} for any other variant.
MiningResult efo_variant_miner(const SequenceDatabase& db, const MinerConfig& cfg);
MiningResult efo_variant_miner(const TimeSeries& t, const MinerConfig& cfg);

/// Every x -> y with x, y frequent and x = prefix_pattern(y), no confidence
/// filter. Sorted with sort_rules.
std::vector<OpRule> opr_all_rules(const MiningResult& result);

/// Every permutation of length 2..maxlen with naive support >= minsup.
/// Throws Error{InvalidConfig} unless 2 <= maxlen <= 7.
MiningResult brute_force_frequent(const SequenceDatabase& db, std::size_t minsup,
                                  std::size_t maxlen);
MiningResult brute_force_frequent(const TimeSeries& t, std::size_t minsup, std::size_t maxlen);

}  // namespace opr

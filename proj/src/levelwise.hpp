#pragma once

// Shared level-wise driver behind efo_miner and the ablation baselines.

#include <stdexcept>

#include "opr/miner.hpp"

#define OPR_CHECK(cond)                                                      \
  do {                                                                       \
    if (!(cond)) throw std::logic_error("invariant violated: " #cond);       \
  } while (0)

namespace opr::detail {

enum class Generation { Fusion, Enumeration };
enum class Support { Join, Naive };

struct Strategy {
  Generation generation = Generation::Fusion;
  Support support = Support::Join;
  bool screening = true;
  bool pruning = true;
};

Strategy strategy_for(Variant v);

RuleMiningResult run_levelwise(const SequenceDatabase& db, const MinerConfig& cfg,
                               const Strategy& strategy, bool emit_rules);

}  // namespace opr::detail

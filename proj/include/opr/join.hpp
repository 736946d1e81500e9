#pragma once

#include <cstdint>
#include <span>

#include "opr/pattern.hpp"
#include "opr/series.hpp"

namespace opr {

struct JoinResult {
  OccurrenceList r;  // occurrences of FusionResult::r
  OccurrenceList h;  // occurrences of FusionResult::h (empty when absent)
  std::uint64_t comparisons = 0;
};

/// Support calculation by fusion: pairs every lp in `prefix_set` with lq = lp+1
/// in `suffix_set`. When p1 == q_m the begin and end values of the (m+1)-window
/// decide between r (begin < end) and h (begin > end); equal values match
/// neither.
///
/// With `screening`, every lp and lq that produced an occurrence is removed
/// from the caller-owned working sets; tied pairs stay. Without it both sets
/// are left untouched.
///
/// The two sets are walked as a sorted merge; `comparisons` counts one probe
/// per merge step, and the merge stops when either set is exhausted.
///
/// `values` holds the series values, with position k stored at values[k-1].
JoinResult spf_join(const OppPattern& p, OccurrenceList& prefix_set, const OppPattern& q,
                    OccurrenceList& suffix_set, std::span<const double> values,
                    bool screening);

}  // namespace opr

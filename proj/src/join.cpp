#include "opr/join.hpp"

#include <algorithm>
#include <vector>

#include "opr/error.hpp"

namespace opr {

namespace {

void erase_marked(OccurrenceList& list, const std::vector<bool>& used) {
  std::size_t out = 0;
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (!used[i]) list[out++] = list[i];
  }
  list.resize(out);
}

}  // namespace

JoinResult spf_join(const OppPattern& p, OccurrenceList& prefix_set, const OppPattern& q,
                    OccurrenceList& suffix_set, std::span<const double> values,
                    bool screening) {
  if (p.size() != q.size()) {
    throw Error(ErrorCode::LengthMismatch, "spf_join needs patterns of equal length");
  }
  const std::size_t m = p.size();
  const bool ambiguous = p.front() == q.back();

  JoinResult out;
  std::vector<bool> used_p;
  std::vector<bool> used_q;
  if (screening) {
    used_p.assign(prefix_set.size(), false);
    used_q.assign(suffix_set.size(), false);
  }

  std::size_t i = 0;
  std::size_t j = 0;
  bool consumed_any = false;
  while (i < prefix_set.size() && j < suffix_set.size()) {
    ++out.comparisons;
    const Position shifted = prefix_set[i] + 1;
    const Position lq = suffix_set[j];
    if (shifted < lq) {
      ++i;
      continue;
    }
    if (shifted > lq) {
      ++j;
      continue;
    }
    bool produced = true;
    if (!ambiguous) {
      out.r.push_back(lq);
    } else {
      const double begin = values[lq - m - 1];
      const double end = values[lq - 1];
      if (begin < end) {
        out.r.push_back(lq);
      } else if (begin > end) {
        out.h.push_back(lq);
      } else {
        produced = false;
      }
    }
    if (screening && produced) {
      used_p[i] = true;
      used_q[j] = true;
      consumed_any = true;
    }
    ++i;
    ++j;
  }

  if (consumed_any) {
    erase_marked(prefix_set, used_p);
    erase_marked(suffix_set, used_q);
  }
  return out;
}

}  // namespace opr

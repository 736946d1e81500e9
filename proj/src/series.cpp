#include "opr/series.hpp"

#include <algorithm>

namespace opr {

SequenceDatabase::SequenceDatabase(std::vector<TimeSeries> sequences) {
  std::size_t total = 0;
  for (const auto& s : sequences) total += s.size();
  values_.reserve(total);
  for (const auto& s : sequences) {
    starts_.push_back(values_.size());
    lengths_.push_back(s.size());
    values_.insert(values_.end(), s.begin(), s.end());
  }
}

SequenceDatabase::SequenceDatabase(const TimeSeries& series)
    : SequenceDatabase(std::vector<TimeSeries>{series}) {}

std::size_t SequenceDatabase::sequence_of(Position pos) const noexcept {
  // Last segment starting at or before pos; an empty segment shares its start
  // with the next one, and upper_bound skips past both.
  auto it = std::upper_bound(starts_.begin(), starts_.end(), pos - 1);
  return static_cast<std::size_t>(it - starts_.begin()) - 1;
}

std::vector<std::size_t> SequenceDatabase::per_sequence_counts(
    std::span<const Position> ends) const {
  std::vector<std::size_t> counts(sequence_count(), 0);
  for (Position e : ends) ++counts[sequence_of(e)];
  return counts;
}

LengthTwoScan scan_length2(const SequenceDatabase& db) {
  LengthTwoScan out;
  for (std::size_t s = 0; s < db.sequence_count(); ++s) {
    if (db.length(s) < 2) continue;
    for (Position e = db.first(s) + 1; e <= db.last(s); ++e) {
      const double prev = db.at(e - 1);
      const double cur = db.at(e);
      if (prev < cur) {
        out.up.push_back(e);
      } else if (prev > cur) {
        out.down.push_back(e);
      }
    }
  }
  return out;
}

LengthTwoScan scan_length2(const TimeSeries& t) { return scan_length2(SequenceDatabase(t)); }

}  // namespace opr

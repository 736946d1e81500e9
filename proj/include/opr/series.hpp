#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace opr {

using TimeSeries = std::vector<double>;

/// 1-based end position of a window.
using Position = std::size_t;

/// Strictly increasing, duplicate-free list of 1-based end positions. Its
/// length is the support of the pattern it belongs to.
using OccurrenceList = std::vector<Position>;

/// One or more series laid end to end. Positions are 1-based over the
/// concatenation; windows never straddle two sequences.
///
/// The first position of every sequence can never end a window of length >= 2,
/// so joining end lists at lq = lp + 1 cannot pair occurrences from
/// different sequences. Per-sequence scans still walk each segment on its own.
class SequenceDatabase {
 public:
  SequenceDatabase() = default;
  explicit SequenceDatabase(std::vector<TimeSeries> sequences);
  explicit SequenceDatabase(const TimeSeries& series);

  std::size_t sequence_count() const noexcept { return starts_.size(); }
  std::size_t total_length() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }

  /// Concatenated values; element k holds position k+1.
  std::span<const double> values() const noexcept { return values_; }
  double at(Position pos) const noexcept { return values_[pos - 1]; }

  /// Sequence s occupies global positions [first(s), last(s)].
  Position first(std::size_t s) const noexcept { return starts_[s] + 1; }
  Position last(std::size_t s) const noexcept { return starts_[s] + lengths_[s]; }
  std::size_t length(std::size_t s) const noexcept { return lengths_[s]; }

  /// Index of the sequence that owns global position `pos`.
  std::size_t sequence_of(Position pos) const noexcept;

  /// Splits a global occurrence list into per-sequence counts.
  std::vector<std::size_t> per_sequence_counts(std::span<const Position> ends) const;

 private:
  std::vector<double> values_;
  std::vector<std::size_t> starts_;   // 0-based offset into values_
  std::vector<std::size_t> lengths_;
};

struct LengthTwoScan {
  OccurrenceList up;    // (1,2)
  OccurrenceList down;  // (2,1)
};

/// End positions e with t[e-1] < t[e] (up) or t[e-1] > t[e] (down); equal
/// neighbours land in neither list.
LengthTwoScan scan_length2(const SequenceDatabase& db);
LengthTwoScan scan_length2(const TimeSeries& t);

}  // namespace opr

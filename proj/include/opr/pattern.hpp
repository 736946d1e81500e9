#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace opr {

using Rank = int;

/// An order-preserving pattern: a permutation of 1..m describing the relative
/// order of m consecutive values. Construction validates the permutation.
class OppPattern {
 public:
  explicit OppPattern(std::vector<Rank> ranks);
  OppPattern(std::initializer_list<Rank> ranks);

  std::size_t size() const noexcept { return ranks_.size(); }
  Rank operator[](std::size_t i) const noexcept { return ranks_[i]; }
  Rank front() const noexcept { return ranks_.front(); }
  Rank back() const noexcept { return ranks_.back(); }
  std::span<const Rank> ranks() const noexcept { return ranks_; }

  auto begin() const noexcept { return ranks_.begin(); }
  auto end() const noexcept { return ranks_.end(); }

  /// Lexicographic over the rank lists; shorter prefix sorts first.
  friend auto operator<=>(const OppPattern&, const OppPattern&) = default;
  friend bool operator==(const OppPattern&, const OppPattern&) = default;

 private:
  std::vector<Rank> ranks_;
};

/// Orders by length first, then lexicographically by ranks.
struct ByLengthThenRanks {
  bool operator()(const OppPattern& a, const OppPattern& b) const noexcept {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

/// True iff `ranks` is a permutation of 1..ranks.size() (and non-empty).
bool is_permutation_of_ranks(std::span<const Rank> ranks);

/// Rank pattern of a window of reals. Returns nullopt ("tied") when two values
/// compare equal; such a window is an occurrence of no pattern.
/// Throws Error{EmptyWindow} for an empty window.
std::optional<OppPattern> relative_order(std::span<const double> window);

/// Relative order of the first m-1 ranks. Throws PatternTooShort for m = 1.
OppPattern prefix_pattern(const OppPattern& p);

/// Relative order of the last m-1 ranks. Throws PatternTooShort for m = 1.
OppPattern suffix_pattern(const OppPattern& p);

/// True iff suffix_pattern(p) == prefix_pattern(q). Throws LengthMismatch
/// when the lengths differ and PatternTooShort when m < 2.
bool can_fuse(const OppPattern& p, const OppPattern& q);

/// Super-patterns of length m+1 produced by fusing p (prefix) and q (suffix).
/// `h` is present only when p's first rank equals q's last rank, in which
/// case the begin and end values of a window are not ordered by p and q
/// alone: `r` is the "begin < end" branch and `h` the "begin > end" branch.
struct FusionResult {
  OppPattern r;
  std::optional<OppPattern> h;

  std::size_t count() const noexcept { return h ? 2 : 1; }
};

/// Throws NotFusable when !can_fuse(p, q).
FusionResult fuse(const OppPattern& p, const OppPattern& q);

/// "(3,1,4,2)"
std::string to_string(const OppPattern& p);

/// Inverse of to_string; tolerates surrounding whitespace. Throws ParseError.
OppPattern parse_pattern(std::string_view text);

}  // namespace opr

template <>
struct std::hash<opr::OppPattern> {
  std::size_t operator()(const opr::OppPattern& p) const noexcept {
    std::size_t h = p.size();
    for (opr::Rank r : p) h = h * 1000003u ^ static_cast<std::size_t>(r);
    return h;
  }
};

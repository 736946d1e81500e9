#include "opr/pattern.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include "opr/error.hpp"

namespace opr {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyWindow: return "EmptyWindow";
    case ErrorCode::PatternTooShort: return "PatternTooShort";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NotFusable: return "NotFusable";
    case ErrorCode::InvalidPattern: return "InvalidPattern";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::TooFewRows: return "TooFewRows";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::EmptySeries: return "EmptySeries";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

bool is_permutation_of_ranks(std::span<const Rank> ranks) {
  const auto m = ranks.size();
  if (m == 0) return false;
  std::vector<bool> seen(m + 1, false);
  for (Rank r : ranks) {
    if (r < 1 || static_cast<std::size_t>(r) > m || seen[r]) return false;
    seen[r] = true;
  }
  return true;
}

OppPattern::OppPattern(std::vector<Rank> ranks) : ranks_(std::move(ranks)) {
  if (!is_permutation_of_ranks(ranks_)) {
    throw Error(ErrorCode::InvalidPattern, "not a permutation of 1..m");
  }
}

OppPattern::OppPattern(std::initializer_list<Rank> ranks)
    : OppPattern(std::vector<Rank>(ranks)) {}

std::optional<OppPattern> relative_order(std::span<const double> window) {
  if (window.empty()) throw Error(ErrorCode::EmptyWindow, "empty window");
  std::vector<std::size_t> order(window.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return window[a] < window[b]; });
  std::vector<Rank> ranks(window.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k > 0 && !(window[order[k - 1]] < window[order[k]])) return std::nullopt;
    ranks[order[k]] = static_cast<Rank>(k + 1);
  }
  return OppPattern(std::move(ranks));
}

namespace {

// Removes the rank at `index` and closes the gap it leaves in 1..m.
OppPattern drop_rank(const OppPattern& p, std::size_t index) {
  if (p.size() < 2) {
    throw Error(ErrorCode::PatternTooShort, "pattern of length 1 has no prefix/suffix");
  }
  const Rank removed = p[index];
  std::vector<Rank> out;
  out.reserve(p.size() - 1);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i == index) continue;
    out.push_back(p[i] > removed ? p[i] - 1 : p[i]);
  }
  return OppPattern(std::move(out));
}

// Prepends a first rank to q: every rank of q at or above `first` moves up.
OppPattern prepend_rank(Rank first, const OppPattern& q) {
  std::vector<Rank> out;
  out.reserve(q.size() + 1);
  out.push_back(first);
  for (Rank v : q) out.push_back(v < first ? v : v + 1);
  return OppPattern(std::move(out));
}

}  // namespace

OppPattern prefix_pattern(const OppPattern& p) { return drop_rank(p, p.size() - 1); }

OppPattern suffix_pattern(const OppPattern& p) { return drop_rank(p, 0); }

bool can_fuse(const OppPattern& p, const OppPattern& q) {
  if (p.size() != q.size()) {
    throw Error(ErrorCode::LengthMismatch, "fusion needs patterns of equal length");
  }
  if (p.size() < 2) {
    throw Error(ErrorCode::PatternTooShort, "fusion needs patterns of length >= 2");
  }
  // suffix(p) == prefix(q) without materializing either: compare the middle
  // m-1 elements pairwise, after discounting p's first and q's last rank.
  const std::size_t m = p.size();
  const Rank p_first = p.front();
  const Rank q_last = q.back();
  for (std::size_t i = 1; i < m; ++i) {
    const Rank a = p[i] > p_first ? p[i] - 1 : p[i];
    const Rank b = q[i - 1] > q_last ? q[i - 1] - 1 : q[i - 1];
    if (a != b) return false;
  }
  return true;
}

FusionResult fuse(const OppPattern& p, const OppPattern& q) {
  if (!can_fuse(p, q)) throw Error(ErrorCode::NotFusable, "suffix(p) != prefix(q)");
  // The new first element takes rank p1 when it sits below the last element,
  // p1+1 when above. p1 != q_m fixes that order; p1 == q_m leaves it open.
  const Rank p_first = p.front();
  const Rank q_last = q.back();
  if (p_first < q_last) return {prepend_rank(p_first, q), std::nullopt};
  if (p_first > q_last) return {prepend_rank(p_first + 1, q), std::nullopt};
  return {prepend_rank(p_first, q), prepend_rank(p_first + 1, q)};
}

std::string to_string(const OppPattern& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(p[i]);
  }
  out += ')';
  return out;
}

OppPattern parse_pattern(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
      s.remove_suffix(1);
    }
    return s;
  };
  text = trim(text);
  if (text.size() < 3 || text.front() != '(' || text.back() != ')') {
    throw ParseError(0, "pattern must look like (r1,...,rm): '" + std::string(text) + "'");
  }
  text = text.substr(1, text.size() - 2);
  std::vector<Rank> ranks;
  while (true) {
    const auto comma = text.find(',');
    const auto token = trim(text.substr(0, comma));
    Rank value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size() || token.empty()) {
      throw ParseError(0, "bad rank '" + std::string(token) + "'");
    }
    ranks.push_back(value);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (!is_permutation_of_ranks(ranks)) throw ParseError(0, "pattern is not a permutation");
  return OppPattern(std::move(ranks));
}

}  // namespace opr

#include "opr/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "opr/error.hpp"

namespace opr {

namespace {

struct Contingency {
  std::map<int, double> px;
  std::map<int, double> py;
  std::map<std::pair<int, int>, double> pxy;
};

Contingency tabulate(std::span<const int> x, std::span<const int> y) {
  if (x.size() != y.size()) throw Error(ErrorCode::LengthMismatch, "labelings differ in length");
  if (x.empty()) throw Error(ErrorCode::EmptyInput, "empty labeling");
  Contingency c;
  const double w = 1.0 / static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    c.px[x[i]] += w;
    c.py[y[i]] += w;
    c.pxy[{x[i], y[i]}] += w;
  }
  return c;
}

double entropy(const std::map<int, double>& p) {
  double h = 0.0;
  for (const auto& [label, prob] : p) h -= prob * std::log(prob);
  return h;
}

}  // namespace

double nmi(std::span<const int> x, std::span<const int> y) {
  const Contingency c = tabulate(x, y);
  if (c.px.size() < 2 || c.py.size() < 2) return 0.0;
  double mi = 0.0;
  for (const auto& [ij, p] : c.pxy) {
    mi += p * std::log(p / (c.px.at(ij.first) * c.py.at(ij.second)));
  }
  const double denom = std::sqrt(entropy(c.px) * entropy(c.py));
  return std::clamp(mi / denom, 0.0, 1.0);
}

double homogeneity(std::span<const int> truth, std::span<const int> clusters) {
  const Contingency c = tabulate(truth, clusters);
  const double hx = entropy(c.px);
  if (hx == 0.0) return 1.0;
  double conditional = 0.0;  // H(X | Y)
  for (const auto& [ij, p] : c.pxy) conditional -= p * std::log(p / c.py.at(ij.second));
  return std::clamp(1.0 - conditional / hx, 0.0, 1.0);
}

}  // namespace opr

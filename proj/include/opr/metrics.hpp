#pragma once

#include <span>

namespace opr {

/// Normalized mutual information with empirical frequencies and natural log:
///   sum P(i,j) log(P(i,j) / (P(i) P(j))) / sqrt(H(X) H(Y)).
/// Returns 0 when either labeling has a single class. Throws LengthMismatch
/// for different lengths and EmptyInput for empty input.
double nmi(std::span<const int> x, std::span<const int> y);

/// 1 - H(truth | clusters) / H(truth); 1 when H(truth) = 0.
double homogeneity(std::span<const int> truth, std::span<const int> clusters);

}  // namespace opr

#pragma once

#include <span>
#include <vector>

namespace sentarc {

inline constexpr double default_loess_span = 0.30;

/// Local quadratic regression with tricube weights, no robustness passes.
///
/// Each evaluation point uses its q = max(4, ceil(span * n)) nearest
/// neighbours (capped at n); the bandwidth is the distance to the q-th of
/// them. When the weighted points cannot support a quadratic the fit drops
/// to a line, then to a weighted mean.
///
/// Throws PreconditionError for fewer than 4 points, a span outside
/// (0, 1], mismatched x/y lengths, or x not strictly increasing.
std::vector<double> loess_smooth(std::span<const double> x, std::span<const double> y,
                                 std::span<const double> eval_at,
                                 double span = default_loess_span);

} // namespace sentarc

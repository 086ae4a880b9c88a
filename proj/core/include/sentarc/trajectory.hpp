#pragma once

#include <sentarc/corpus.hpp>
#include <sentarc/date.hpp>
#include <sentarc/valence.hpp>

#include <cstddef>
#include <span>
#include <vector>

namespace sentarc {

inline constexpr std::size_t corpus_bins = 10000;
inline constexpr std::size_t artist_bins = 1000;
inline constexpr std::size_t default_low_pass = 10;

/// Default neighbourhood for local extrema: ceil(0.5% of n_bins).
std::size_t default_extrema_radius(std::size_t n_bins);

struct TrajectoryParams {
    std::size_t low_pass = default_low_pass;
    std::size_t n_bins = corpus_bins;
    std::size_t extrema_radius = 0; // 0 selects default_extrema_radius(n_bins)

    std::size_t radius() const
    {
        return extrema_radius == 0 ? default_extrema_radius(n_bins) : extrema_radius;
    }
};

/// Low-pass DCT resampling of `values` to `out_len` points.
///
/// Keeps the first `low_pass` coefficients of the unnormalised DCT-II
///     C_k = sum_t x_t cos(pi (2t+1) k / 2n)
/// and evaluates
///     y_j = (1/n) [C_0 + 2 sum_{k=1}^{L-1} C_k cos(pi (2j+1) k / 2N)]
/// so the output stays in input units and a constant maps to itself.
/// Throws PreconditionError for empty input, low_pass outside [1, n] or
/// out_len < 2.
std::vector<double> dct_lowpass_resample(std::span<const double> values, std::size_t low_pass,
                                         std::size_t out_len);

struct ScaledVector {
    std::vector<double> values;
    bool degenerate = false; // input was constant; values are all zero
};

/// Min-max scaling to [-1, +1]. A constant input scales to all zeros and
/// sets `degenerate`. Throws PreconditionError for empty input.
ScaledVector minmax_scale(std::span<const double> values);

struct Trajectory {
    std::vector<double> absolute;
    std::vector<double> relative;
    std::vector<Date> bin_dates;
    TrajectoryParams params;
    bool degenerate = false;

    std::size_t size() const { return absolute.size(); }
};

/// Resamples the series, scales it, and dates every bin from the stream.
/// Throws PreconditionError if the series is shorter than low_pass or
/// does not match the stream length.
Trajectory extract_trajectory(const TokenStream& stream, const ValenceSeries& series,
                              const TrajectoryParams& params);

enum class ExtremumKind { maximum, minimum };

struct LocalExtremum {
    std::size_t bin = 0;
    ExtremumKind kind = ExtremumKind::maximum;
    double value = 0.0;

    bool operator==(const LocalExtremum&) const = default;
};

/// Bin i is a maximum when values[i] >= every value within `radius` bins
/// and strictly greater than at least one; minima likewise. Boundary bins
/// are eligible. A plateau (run of equal values) reports each kind once, at its
/// leftmost qualifying bin. Sorted by bin, a maximum before a minimum on the same bin.
/// A constant input yields nothing. Throws PreconditionError unless
/// radius >= 1 and values.size() > 2 * radius.
std::vector<LocalExtremum> find_local_extrema(std::span<const double> values, std::size_t radius);

struct Extremum {
    std::size_t bin = 0;
    ExtremumKind kind = ExtremumKind::maximum;
    double value = 0.0;       // relative scale
    double progression = 0.0; // percent, 100 * (bin + 0.5) / n_bins
    Date date;
};

double progression_percent(std::size_t bin, std::size_t n_bins);

/// Extrema of the relative curve, dated through bin_dates.
std::vector<Extremum> find_extrema(const Trajectory& trajectory, std::size_t radius);

} // namespace sentarc

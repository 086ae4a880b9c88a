#include <sentarc/trajectory.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace sentarc {

std::size_t default_extrema_radius(std::size_t n_bins)
{
    // ceil(0.005 * n_bins) without floating point.
    return std::max<std::size_t>(1, (n_bins + 199) / 200);
}

std::vector<double> dct_lowpass_resample(std::span<const double> values, std::size_t low_pass,
                                         std::size_t out_len)
{
    const std::size_t n = values.size();
    if (n == 0) {
        throw PreconditionError("DCT resampling needs a non-empty input");
    }
    if (low_pass < 1 || low_pass > n) {
        throw PreconditionError(
            fmt::format("low-pass size {} must be in [1, {}] (the input length)", low_pass, n));
    }
    if (out_len < 2) {
        throw PreconditionError(fmt::format("output length {} must be at least 2", out_len));
    }

    constexpr double pi = std::numbers::pi;
    const double in_denominator = static_cast<double>(2 * n);
    std::vector<double> coeffs(low_pass, 0.0);
    for (std::size_t k = 0; k < low_pass; ++k) {
        double sum = 0.0;
        if (k == 0) {
            for (std::size_t t = 0; t < n; ++t) {
                sum += values[t];
            }
        } else {
            for (std::size_t t = 0; t < n; ++t) {
                const double angle = pi * static_cast<double>(2 * t + 1) * static_cast<double>(k) /
                                     in_denominator;
                sum += values[t] * std::cos(angle);
            }
        }
        coeffs[k] = sum;
    }

    const double out_denominator = static_cast<double>(2 * out_len);
    const double scale = static_cast<double>(n);
    std::vector<double> out(out_len, 0.0);
    for (std::size_t j = 0; j < out_len; ++j) {
        double sum = 0.0;
        for (std::size_t k = 1; k < low_pass; ++k) {
            const double angle = pi * static_cast<double>(2 * j + 1) * static_cast<double>(k) /
                                 out_denominator;
            sum += coeffs[k] * std::cos(angle);
        }
        out[j] = (coeffs[0] + 2.0 * sum) / scale;
    }
    return out;
}

ScaledVector minmax_scale(std::span<const double> values)
{
    if (values.empty()) {
        throw PreconditionError("cannot scale an empty vector");
    }
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it;
    const double hi = *hi_it;

    ScaledVector out;
    out.values.assign(values.size(), 0.0);
    if (!(hi > lo)) {
        out.degenerate = true;
        return out;
    }
    const double range = hi - lo;
    for (std::size_t i = 0; i < values.size(); ++i) {
        out.values[i] = -1.0 + 2.0 * (values[i] - lo) / range;
    }
    return out;
}

Trajectory extract_trajectory(const TokenStream& stream, const ValenceSeries& series,
                              const TrajectoryParams& params)
{
    if (series.values.size() != stream.size()) {
        throw PreconditionError(fmt::format("valence series has {} values but the stream has {} tokens",
                                            series.values.size(), stream.size()));
    }
    if (series.values.size() < params.low_pass) {
        throw PreconditionError(fmt::format("series of {} tokens is shorter than the low-pass size {}",
                                            series.values.size(), params.low_pass));
    }

    Trajectory trajectory;
    trajectory.params = params;
    trajectory.absolute = dct_lowpass_resample(series.values, params.low_pass, params.n_bins);
    auto scaled = minmax_scale(trajectory.absolute);
    trajectory.relative = std::move(scaled.values);
    trajectory.degenerate = scaled.degenerate;
    trajectory.bin_dates.reserve(params.n_bins);
    for (std::size_t bin = 0; bin < params.n_bins; ++bin) {
        trajectory.bin_dates.push_back(bin_to_date(stream, bin, params.n_bins));
    }
    return trajectory;
}

std::vector<LocalExtremum> find_local_extrema(std::span<const double> values, std::size_t radius)
{
    const std::size_t n = values.size();
    if (radius < 1) {
        throw PreconditionError("extrema radius must be at least 1");
    }
    if (n <= 2 * radius) {
        throw PreconditionError(
            fmt::format("extrema search needs more than {} bins (got {})", 2 * radius, n));
    }

    std::vector<LocalExtremum> found;
    // Whether the current run of equal values already produced a maximum / minimum.
    bool run_max = false;
    bool run_min = false;
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0 && values[i - 1] != values[i]) {
            run_max = false;
            run_min = false;
        }
        const std::size_t lo = i >= radius ? i - radius : 0;
        const std::size_t hi = std::min(n - 1, i + radius);
        bool ge_all = true;
        bool le_all = true;
        bool gt_any = false;
        bool lt_any = false;
        for (std::size_t j = lo; j <= hi; ++j) {
            if (values[j] > values[i]) {
                ge_all = false;
                lt_any = true;
            } else if (values[j] < values[i]) {
                le_all = false;
                gt_any = true;
            }
        }
        const bool is_max = ge_all && gt_any;
        const bool is_min = le_all && lt_any;
        if (is_max && !run_max) {
            found.push_back({i, ExtremumKind::maximum, values[i]});
        }
        if (is_min && !run_min) {
            found.push_back({i, ExtremumKind::minimum, values[i]});
        }
        run_max = run_max || is_max;
        run_min = run_min || is_min;
    }
    return found;
}

double progression_percent(std::size_t bin, std::size_t n_bins)
{
    return 100.0 * (static_cast<double>(bin) + 0.5) / static_cast<double>(n_bins);
}

std::vector<Extremum> find_extrema(const Trajectory& trajectory, std::size_t radius)
{
    if (trajectory.degenerate) {
        return {};
    }
    const std::size_t n = trajectory.relative.size();
    std::vector<Extremum> out;
    for (const auto& e : find_local_extrema(trajectory.relative, radius)) {
        out.push_back({e.bin, e.kind, e.value, progression_percent(e.bin, n),
                       trajectory.bin_dates.at(e.bin)});
    }
    return out;
}

} // namespace sentarc

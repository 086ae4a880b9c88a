#pragma once

#include <sentarc/analysis.hpp>
#include <sentarc/date.hpp>
#include <sentarc/trajectory.hpp>

#include <chrono>
#include <cstdlib>
#include <vector>

namespace fixtures {

// 1000 bins, bin b dated `start + b days`. The sentiment curve is a V with
// its only minimum at `trough_bin`. The crime curve has anchors on the 15th
// of every month and a single hump whose top sits on the anchor of
// `peak_month`.
struct LeadLag {
    sentarc::Trajectory sentiment;
    sentarc::AlignedSeries crime;
};

inline sentarc::Date plus_days(sentarc::Date d, long days)
{
    return sentarc::Date{std::chrono::sys_days{d} + std::chrono::days{days}};
}

inline LeadLag planted_lead_lag(std::size_t trough_bin, sentarc::Month peak_month,
                                std::string crime_type = "homicide")
{
    using namespace sentarc;
    constexpr std::size_t n = 1000;
    const Date start = *parse_date("2017-01-01");

    LeadLag f;
    f.sentiment.params.n_bins = n;
    f.sentiment.params.low_pass = 10;
    for (std::size_t b = 0; b < n; ++b) {
        const double v = std::abs(static_cast<double>(b) - static_cast<double>(trough_bin));
        f.sentiment.absolute.push_back(v);
        f.sentiment.bin_dates.push_back(plus_days(start, static_cast<long>(b)));
    }
    f.sentiment.relative = minmax_scale(f.sentiment.absolute).values;

    std::size_t peak_bin = 0;
    for (Month m = month_of(start);; m += std::chrono::months{1}) {
        const long bin = days_between(start, mid_month(m));
        if (bin >= static_cast<long>(n)) {
            break;
        }
        f.crime.anchors.push_back({m, static_cast<std::size_t>(bin), 10, false});
        if (m == peak_month) {
            peak_bin = static_cast<std::size_t>(bin);
        }
    }
    f.crime.crime_type = std::move(crime_type);
    f.crime.n_bins = n;
    f.crime.first_bin = f.crime.anchors.front().bin;
    for (std::size_t b = f.crime.first_bin; b <= f.crime.anchors.back().bin; ++b) {
        f.crime.smoothed.push_back(-std::abs(static_cast<double>(b) - static_cast<double>(peak_bin)));
    }
    f.crime.scaled = minmax_scale(f.crime.smoothed).values;
    return f;
}

} // namespace fixtures

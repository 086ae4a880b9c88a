#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace sentarc {

using Date = std::chrono::year_month_day;
using Month = std::chrono::year_month;

/// Parses a strict ISO 8601 calendar date `YYYY-MM-DD`.
/// Returns nullopt for anything else, including impossible dates.
std::optional<Date> parse_date(std::string_view text);

/// Parses `YYYY-MM`.
std::optional<Month> parse_month(std::string_view text);

std::string format_date(Date date);
std::string format_month(Month month);

/// Signed number of days from `from` to `to`.
long days_between(Date from, Date to);

/// Months since year 0; consecutive months differ by one.
long month_ordinal(Month month);

inline Month month_of(Date date) { return Month{date.year(), date.month()}; }

inline Date mid_month(Month month)
{
    return Date{month.year(), month.month(), std::chrono::day{15}};
}

} // namespace sentarc

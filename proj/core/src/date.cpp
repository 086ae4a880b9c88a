#include <sentarc/date.hpp>

#include <charconv>

#include <fmt/format.h>

namespace sentarc {

namespace {

bool parse_digits(std::string_view text, int& out)
{
    if (text.empty()) {
        return false;
    }
    for (char c : text) {
        if (c < '0' || c > '9') {
            return false;
        }
    }
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc{} && ptr == text.data() + text.size();
}

} // namespace

std::optional<Date> parse_date(std::string_view text)
{
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
        return std::nullopt;
    }
    int y = 0;
    int m = 0;
    int d = 0;
    if (!parse_digits(text.substr(0, 4), y) || !parse_digits(text.substr(5, 2), m) ||
        !parse_digits(text.substr(8, 2), d)) {
        return std::nullopt;
    }
    Date date{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
              std::chrono::day{static_cast<unsigned>(d)}};
    if (!date.ok()) {
        return std::nullopt;
    }
    return date;
}

std::optional<Month> parse_month(std::string_view text)
{
    if (text.size() != 7 || text[4] != '-') {
        return std::nullopt;
    }
    int y = 0;
    int m = 0;
    if (!parse_digits(text.substr(0, 4), y) || !parse_digits(text.substr(5, 2), m)) {
        return std::nullopt;
    }
    Month month{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)}};
    if (!month.ok()) {
        return std::nullopt;
    }
    return month;
}

std::string format_date(Date date)
{
    return fmt::format("{:04d}-{:02d}-{:02d}", static_cast<int>(date.year()),
                       static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
}

std::string format_month(Month month)
{
    return fmt::format("{:04d}-{:02d}", static_cast<int>(month.year()),
                       static_cast<unsigned>(month.month()));
}

long days_between(Date from, Date to)
{
    return static_cast<long>((std::chrono::sys_days{to} - std::chrono::sys_days{from}).count());
}

long month_ordinal(Month month)
{
    return static_cast<long>(static_cast<int>(month.year())) * 12 +
           static_cast<long>(static_cast<unsigned>(month.month())) - 1;
}

} // namespace sentarc

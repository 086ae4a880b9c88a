#pragma once

#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sentarc::csv {

// Minimal RFC 4180 reader: quoted fields may contain commas, doubled
// quotes and line breaks. Accepts both LF and CRLF line endings.
class Reader {
public:
    explicit Reader(std::istream& in) : in_(in) {}

    /// Reads the next record. Returns nullopt at end of input.
    /// Throws InputError on an unterminated quoted field.
    std::optional<std::vector<std::string>> next();

    /// 1-based physical line on which the last returned record started.
    std::size_t line() const { return record_line_; }

private:
    std::istream& in_;
    std::size_t line_ = 1;
    std::size_t record_line_ = 0;
};

/// Quotes a field if it contains a comma, quote or line break.
std::string escape(std::string_view field);

} // namespace sentarc::csv

#include <sentarc/csv.hpp>

#include <sentarc/error.hpp>

#include <fmt/format.h>

namespace sentarc::csv {

std::optional<std::vector<std::string>> Reader::next()
{
    int c = in_.get();
    if (c == std::char_traits<char>::eof()) {
        return std::nullopt;
    }
    record_line_ = line_;

    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    bool field_was_quoted = false;

    for (;; c = in_.get()) {
        if (c == std::char_traits<char>::eof()) {
            if (quoted) {
                throw InputError(fmt::format("line {}: unterminated quoted field", record_line_));
            }
            break;
        }
        const char ch = static_cast<char>(c);
        if (quoted) {
            if (ch == '"') {
                if (in_.peek() == '"') {
                    in_.get();
                    field.push_back('"');
                } else {
                    quoted = false;
                }
            } else {
                if (ch == '\n') {
                    ++line_;
                }
                field.push_back(ch);
            }
            continue;
        }
        if (ch == '"' && field.empty() && !field_was_quoted) {
            quoted = true;
            field_was_quoted = true;
        } else if (ch == ',') {
            fields.push_back(std::move(field));
            field.clear();
            field_was_quoted = false;
        } else if (ch == '\n') {
            ++line_;
            break;
        } else if (ch == '\r' && in_.peek() == '\n') {
            // CRLF: the '\n' ends the record on the next iteration.
        } else {
            field.push_back(ch);
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

std::string escape(std::string_view field)
{
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
        return std::string(field);
    }
    std::string out;
    out.reserve(field.size() + 2);
    out.push_back('"');
    for (char c : field) {
        if (c == '"') {
            out.push_back('"');
        }
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

} // namespace sentarc::csv

#include "cli/output.hpp"

#include <sentarc/error.hpp>

#include <chrono>
#include <fstream>

#include <fmt/chrono.h>
#include <fmt/format.h>

namespace sentarc::cli {

std::string_view tool_version() { return SENTARC_VERSION; }

void Metadata::add(std::string key, std::string value)
{
    entries_.emplace_back(std::move(key), std::move(value));
}

void Metadata::add(std::string key, double value) { add(std::move(key), fmt::format("{}", value)); }

void Metadata::add(std::string key, std::size_t value)
{
    add(std::move(key), fmt::format("{}", value));
}

void Metadata::add(std::string key, long value) { add(std::move(key), fmt::format("{}", value)); }

void Metadata::stamp()
{
    const auto now = std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
    add("generated", fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", now));
}

std::vector<std::string> Metadata::comment_lines() const
{
    std::vector<std::string> lines;
    lines.push_back(fmt::format("sentarc {}", tool_version()));
    lines.push_back(fmt::format("command: {}", command_));
    for (const auto& [key, value] : entries_) {
        lines.push_back(fmt::format("{}: {}", key, value));
    }
    return lines;
}

std::string Metadata::comment_block() const
{
    std::string block;
    for (const auto& line : comment_lines()) {
        block += "# ";
        block += line;
        block += '\n';
    }
    return block;
}

nlohmann::ordered_json Metadata::json() const
{
    nlohmann::ordered_json meta;
    meta["tool"] = fmt::format("sentarc {}", tool_version());
    meta["command"] = command_;
    for (const auto& [key, value] : entries_) {
        meta[key] = value;
    }
    return meta;
}

std::string fixed(double value, int digits)
{
    return fmt::format("{:.{}f}", value + 0.0, digits);
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content)
{
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw InputError(fmt::format("cannot write '{}'", path.string()));
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            throw InputError(fmt::format("failed writing '{}'", path.string()));
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw InputError(fmt::format("cannot move output into place at '{}'", path.string()));
    }
}

std::string slugify(std::string_view name)
{
    std::string slug;
    bool pending_sep = false;
    for (unsigned char c : name) {
        if (std::isalnum(c) != 0 && c < 0x80) {
            if (pending_sep && !slug.empty()) {
                slug.push_back('_');
            }
            pending_sep = false;
            slug.push_back(static_cast<char>(std::tolower(c)));
        } else {
            pending_sep = true;
        }
    }
    return slug.empty() ? std::string("unnamed") : slug;
}

} // namespace sentarc::cli

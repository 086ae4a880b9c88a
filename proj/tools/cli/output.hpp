#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

namespace sentarc::cli {

std::string_view tool_version();

/// Parameters recorded at the top of every output file, in insertion order.
class Metadata {
public:
    explicit Metadata(std::string command) : command_(std::move(command)) {}

    void add(std::string key, std::string value);
    void add(std::string key, double value);
    void add(std::string key, std::size_t value);
    void add(std::string key, long value);

    /// Adds the current UTC time; only used with --stamp.
    void stamp();

    /// "# sentarc <version>", "# command: ...", "# key: value", ...
    std::vector<std::string> comment_lines() const;
    std::string comment_block() const;
    nlohmann::ordered_json json() const;

private:
    std::string command_;
    std::vector<std::pair<std::string, std::string>> entries_;
};

/// Fixed-point formatting with negative zero printed as zero.
std::string fixed(double value, int digits);

/// Writes via a temporary sibling file and a rename.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Lowercase ASCII slug for file names; runs of other characters become '_'.
std::string slugify(std::string_view name);

} // namespace sentarc::cli

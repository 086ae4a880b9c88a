#pragma once

#include <sentarc/corpus.hpp>
#include <sentarc/error.hpp>

#include <cstddef>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

namespace sentarc {

/// term -> nonzero valence.
class SentimentLexicon {
public:
    SentimentLexicon() = default;

    /// Terms are lowercased. Throws InputError on duplicates and on zero or
    /// non-finite valences.
    explicit SentimentLexicon(std::vector<std::pair<std::string, double>> entries);

    std::optional<double> valence(std::string_view term) const;
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const std::map<std::string, double, std::less<>>& entries() const { return entries_; }

private:
    std::map<std::string, double, std::less<>> entries_;
};

enum class ShifterKind { negator, amplifier, deamplifier, adversative };

std::optional<ShifterKind> parse_shifter_kind(std::string_view name);
std::string_view to_string(ShifterKind kind);

class ShifterLexicon {
public:
    ShifterLexicon() = default;
    explicit ShifterLexicon(std::vector<std::pair<std::string, ShifterKind>> entries);

    std::optional<ShifterKind> kind(std::string_view term) const;
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

private:
    std::map<std::string, ShifterKind, std::less<>> entries_;
};

/// Single-token slang source -> one or more standard English tokens.
///
/// No replacement token may itself be a source term, so a single pass is
/// a complete rewrite and applying it twice changes nothing.
class SlangDictionary {
public:
    SlangDictionary() = default;
    explicit SlangDictionary(std::vector<std::pair<std::string, std::vector<std::string>>> entries);

    const std::vector<std::string>* lookup(std::string_view term) const;
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const std::map<std::string, std::vector<std::string>, std::less<>>& entries() const
    {
        return entries_;
    }

private:
    std::map<std::string, std::vector<std::string>, std::less<>> entries_;
};

/// Reference vocabulary in rank order, most frequent first.
class FrequencyList {
public:
    FrequencyList() = default;

    /// Words are lowercased. Exact duplicates are an error; words that only
    /// collide after lowercasing keep their first rank.
    explicit FrequencyList(std::vector<std::string> words, Diagnostics* diag = nullptr);

    bool contains(std::string_view word) const;
    std::optional<std::size_t> rank(std::string_view word) const;
    std::span<const std::string> words() const { return words_; }
    std::size_t size() const { return words_.size(); }
    bool empty() const { return words_.empty(); }

private:
    std::vector<std::string> words_;
    std::map<std::string, std::size_t, std::less<>> rank_;
};

struct LexiconSet {
    SentimentLexicon sentiment;
    ShifterLexicon shifters;
    SlangDictionary slang;
    FrequencyList reference;
};

struct LexiconPaths {
    std::optional<std::filesystem::path> sentiment;
    std::optional<std::filesystem::path> shifters;
    std::optional<std::filesystem::path> slang;
    std::optional<std::filesystem::path> frequency;
};

// Readers for the TSV / plain-text formats. Lines starting with '#' and
// blank lines are skipped. `source` names the input in error messages.
SentimentLexicon read_sentiment(std::istream& in, std::string_view source);
ShifterLexicon read_shifters(std::istream& in, std::string_view source);
/// Accepts `term<TAB>replacement` rows, or a filled-in OOV worksheet
/// (header `term<TAB>frequency<TAB>translation`; blank translations skipped).
SlangDictionary read_slang(std::istream& in, std::string_view source);
FrequencyList read_frequency_list(std::istream& in, std::string_view source,
                                  Diagnostics* diag = nullptr);

SentimentLexicon load_sentiment(const std::filesystem::path& path);
ShifterLexicon load_shifters(const std::filesystem::path& path);
SlangDictionary load_slang(const std::filesystem::path& path);
FrequencyList load_frequency_list(const std::filesystem::path& path, Diagnostics* diag = nullptr);

/// Loads whichever resources have a path; the rest stay empty.
LexiconSet load_lexicons(const LexiconPaths& paths, Diagnostics* diag = nullptr);

struct OovEntry {
    std::string term;
    std::size_t frequency = 0;

    bool operator==(const OovEntry&) const = default;
};

struct OovReport {
    std::size_t n_tokens = 0;
    std::size_t n_oov_tokens = 0;
    std::size_t n_types = 0;
    std::size_t n_oov_types = 0;
    double token_oov_rate = 0.0;
    double type_oov_rate = 0.0;
    /// Sorted by frequency descending, then term ascending.
    std::vector<OovEntry> ranked_oov;
};

/// Throws PreconditionError for an empty token list or reference.
OovReport oov_report(std::span<const std::string> tokens, const FrequencyList& reference,
                     std::size_t top_k);

/// One left-to-right pass; replacements are not re-examined.
std::vector<std::string> apply_slang(std::span<const std::string> tokens,
                                     const SlangDictionary& slang);

/// Applies the dictionary song by song, keeping provenance.
TokenStream apply_slang(const TokenStream& stream, const SlangDictionary& slang);

inline constexpr std::string_view worksheet_header = "term\tfrequency\ttranslation";

/// Writes (term, frequency, empty translation) rows under worksheet_header.
/// `preamble` lines are written first, each prefixed with "# ".
void write_oov_worksheet(std::ostream& out, const OovReport& report,
                         std::span<const std::string> preamble = {});

void export_oov_worksheet(const OovReport& report, const std::filesystem::path& path,
                          std::span<const std::string> preamble = {});

} // namespace sentarc

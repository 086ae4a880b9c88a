#include <sentarc/lexicon.hpp>

#include <sentarc/text.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <unordered_map>

#include <fmt/format.h>
#include <fmt/ranges.h>

namespace sentarc {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::string normalize_term(std::string_view term) { return to_lower_utf8(trim(term)); }

struct Line {
    std::size_t number;
    std::string text;
};

// Non-blank, non-comment lines with their 1-based line numbers.
std::vector<Line> content_lines(std::istream& in)
{
    std::vector<Line> lines;
    std::string text;
    std::size_t number = 0;
    while (std::getline(in, text)) {
        ++number;
        if (!text.empty() && text.back() == '\r') {
            text.pop_back();
        }
        if (number == 1 && text.starts_with("\xEF\xBB\xBF")) {
            text.erase(0, 3);
        }
        const auto t = trim(text);
        if (t.empty() || t.front() == '#') {
            continue;
        }
        lines.push_back({number, text});
    }
    return lines;
}

std::vector<std::string_view> split_tabs(std::string_view line)
{
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
        const auto tab = line.find('\t', start);
        if (tab == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
}

[[noreturn]] void fail_line(std::string_view source, std::size_t line, std::string_view what)
{
    throw InputError(fmt::format("{}:{}: {}", source, line, what));
}

std::ifstream open_input(const std::filesystem::path& path, std::string_view what)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError(fmt::format("cannot open {} file '{}'", what, path.string()));
    }
    return in;
}

} // namespace

// --- SentimentLexicon --------------------------------------------------------

SentimentLexicon::SentimentLexicon(std::vector<std::pair<std::string, double>> entries)
{
    for (auto& [term, valence] : entries) {
        auto key = normalize_term(term);
        if (key.empty()) {
            throw InputError("sentiment lexicon: empty term");
        }
        if (!std::isfinite(valence) || valence == 0.0) {
            throw InputError(fmt::format("sentiment lexicon: term '{}' has zero or non-finite valence",
                                         key));
        }
        if (!entries_.emplace(key, valence).second) {
            throw InputError(fmt::format("sentiment lexicon: duplicate term '{}'", key));
        }
    }
}

std::optional<double> SentimentLexicon::valence(std::string_view term) const
{
    auto it = entries_.find(term);
    if (it == entries_.end()) {
        return std::nullopt;
    }
    return it->second;
}

// --- ShifterLexicon ----------------------------------------------------------

std::optional<ShifterKind> parse_shifter_kind(std::string_view name)
{
    if (name == "negator") {
        return ShifterKind::negator;
    }
    if (name == "amplifier") {
        return ShifterKind::amplifier;
    }
    if (name == "deamplifier" || name == "de-amplifier") {
        return ShifterKind::deamplifier;
    }
    if (name == "adversative") {
        return ShifterKind::adversative;
    }
    return std::nullopt;
}

std::string_view to_string(ShifterKind kind)
{
    switch (kind) {
    case ShifterKind::negator:
        return "negator";
    case ShifterKind::amplifier:
        return "amplifier";
    case ShifterKind::deamplifier:
        return "deamplifier";
    case ShifterKind::adversative:
        return "adversative";
    }
    return "unknown";
}

ShifterLexicon::ShifterLexicon(std::vector<std::pair<std::string, ShifterKind>> entries)
{
    for (auto& [term, kind] : entries) {
        auto key = normalize_term(term);
        if (key.empty()) {
            throw InputError("shifter lexicon: empty term");
        }
        if (!entries_.emplace(key, kind).second) {
            throw InputError(fmt::format("shifter lexicon: duplicate term '{}'", key));
        }
    }
}

std::optional<ShifterKind> ShifterLexicon::kind(std::string_view term) const
{
    auto it = entries_.find(term);
    if (it == entries_.end()) {
        return std::nullopt;
    }
    return it->second;
}

// --- SlangDictionary ---------------------------------------------------------

SlangDictionary::SlangDictionary(
    std::vector<std::pair<std::string, std::vector<std::string>>> entries)
{
    for (auto& [term, replacement] : entries) {
        auto key = normalize_term(term);
        if (key.empty()) {
            throw InputError("slang dictionary: empty source term");
        }
        if (replacement.empty()) {
            throw InputError(fmt::format("slang dictionary: empty replacement for '{}'", key));
        }
        for (auto& word : replacement) {
            word = normalize_term(word);
        }
        if (!entries_.emplace(key, std::move(replacement)).second) {
            throw InputError(fmt::format("slang dictionary: duplicate term '{}'", key));
        }
    }
    for (const auto& [term, replacement] : entries_) {
        for (const auto& word : replacement) {
            if (entries_.contains(word)) {
                throw InputError(fmt::format(
                    "slang dictionary: cyclic rule '{}' -> '{}' ('{}' is itself a source term)",
                    term, fmt::join(replacement, " "), word));
            }
        }
    }
}

const std::vector<std::string>* SlangDictionary::lookup(std::string_view term) const
{
    auto it = entries_.find(term);
    return it == entries_.end() ? nullptr : &it->second;
}

// --- FrequencyList -----------------------------------------------------------

FrequencyList::FrequencyList(std::vector<std::string> words, Diagnostics* diag)
{
    std::map<std::string, std::size_t, std::less<>> raw;
    for (std::size_t i = 0; i < words.size(); ++i) {
        auto word = std::string(trim(words[i]));
        if (word.empty()) {
            continue;
        }
        if (!raw.emplace(word, i).second) {
            throw InputError(fmt::format("frequency list: duplicate word '{}'", word));
        }
        auto folded = to_lower_utf8(word);
        if (rank_.contains(folded)) {
            warn(diag, fmt::format("frequency list: '{}' folds onto an earlier entry", word));
            continue;
        }
        rank_.emplace(folded, words_.size());
        words_.push_back(std::move(folded));
    }
}

bool FrequencyList::contains(std::string_view word) const { return rank_.find(word) != rank_.end(); }

std::optional<std::size_t> FrequencyList::rank(std::string_view word) const
{
    auto it = rank_.find(word);
    if (it == rank_.end()) {
        return std::nullopt;
    }
    return it->second;
}

// --- readers -----------------------------------------------------------------

SentimentLexicon read_sentiment(std::istream& in, std::string_view source)
{
    std::vector<std::pair<std::string, double>> entries;
    std::map<std::string, std::size_t, std::less<>> seen;
    for (const auto& line : content_lines(in)) {
        const auto fields = split_tabs(line.text);
        if (fields.size() != 2) {
            fail_line(source, line.number, "expected 'term<TAB>valence'");
        }
        const auto value_text = trim(fields[1]);
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(value_text.data(), value_text.data() + value_text.size(),
                                         value);
        if (ec != std::errc{} || ptr != value_text.data() + value_text.size() || value_text.empty()) {
            fail_line(source, line.number, fmt::format("invalid valence '{}'", value_text));
        }
        if (!std::isfinite(value) || value == 0.0) {
            fail_line(source, line.number, fmt::format("zero or non-finite valence '{}'", value_text));
        }
        auto term = normalize_term(fields[0]);
        if (auto [it, fresh] = seen.emplace(term, line.number); !fresh) {
            fail_line(source, line.number,
                      fmt::format("duplicate term '{}' (first on line {})", term, it->second));
        }
        entries.emplace_back(std::move(term), value);
    }
    return SentimentLexicon(std::move(entries));
}

ShifterLexicon read_shifters(std::istream& in, std::string_view source)
{
    std::vector<std::pair<std::string, ShifterKind>> entries;
    std::map<std::string, std::size_t, std::less<>> seen;
    for (const auto& line : content_lines(in)) {
        const auto fields = split_tabs(line.text);
        if (fields.size() != 2) {
            fail_line(source, line.number, "expected 'term<TAB>category'");
        }
        const auto category = trim(fields[1]);
        auto kind = parse_shifter_kind(category);
        if (!kind) {
            fail_line(source, line.number,
                      fmt::format("unknown category '{}' (expected negator, amplifier, "
                                  "deamplifier or adversative)",
                                  category));
        }
        auto term = normalize_term(fields[0]);
        if (auto [it, fresh] = seen.emplace(term, line.number); !fresh) {
            fail_line(source, line.number,
                      fmt::format("duplicate term '{}' (first on line {})", term, it->second));
        }
        entries.emplace_back(std::move(term), *kind);
    }
    return ShifterLexicon(std::move(entries));
}

SlangDictionary read_slang(std::istream& in, std::string_view source)
{
    auto lines = content_lines(in);
    bool worksheet = !lines.empty() && trim(lines.front().text) == worksheet_header;
    if (worksheet) {
        lines.erase(lines.begin());
    }

    std::vector<std::pair<std::string, std::vector<std::string>>> entries;
    std::map<std::string, std::size_t, std::less<>> seen;
    for (const auto& line : lines) {
        const auto fields = split_tabs(line.text);
        std::string_view replacement_text;
        if (worksheet) {
            if (fields.size() < 2 || fields.size() > 3) {
                fail_line(source, line.number, "expected 'term<TAB>frequency<TAB>translation'");
            }
            if (fields.size() == 2 || trim(fields[2]).empty()) {
                continue; // not translated yet
            }
            replacement_text = fields[2];
        } else {
            if (fields.size() != 2) {
                fail_line(source, line.number, "expected 'term<TAB>replacement words'");
            }
            replacement_text = fields[1];
        }
        auto term = normalize_term(fields[0]);
        if (term.empty()) {
            fail_line(source, line.number, "empty source term");
        }
        if (term.find_first_of(" \t") != std::string::npos) {
            fail_line(source, line.number,
                      fmt::format("multi-word source '{}' is not supported", term));
        }
        auto replacement = tokenize(replacement_text);
        if (replacement.empty()) {
            fail_line(source, line.number, fmt::format("empty replacement for '{}'", term));
        }
        if (auto [it, fresh] = seen.emplace(term, line.number); !fresh) {
            fail_line(source, line.number,
                      fmt::format("duplicate term '{}' (first on line {})", term, it->second));
        }
        entries.emplace_back(std::move(term), std::move(replacement));
    }
    try {
        return SlangDictionary(std::move(entries));
    } catch (const InputError& e) {
        throw InputError(fmt::format("{}: {}", source, e.what()));
    }
}

FrequencyList read_frequency_list(std::istream& in, std::string_view source, Diagnostics* diag)
{
    std::vector<std::string> words;
    std::map<std::string, std::size_t, std::less<>> seen;
    for (const auto& line : content_lines(in)) {
        auto word = std::string(trim(line.text));
        if (auto [it, fresh] = seen.emplace(word, line.number); !fresh) {
            fail_line(source, line.number,
                      fmt::format("duplicate word '{}' (first on line {})", word, it->second));
        }
        words.push_back(std::move(word));
    }
    return FrequencyList(std::move(words), diag);
}

SentimentLexicon load_sentiment(const std::filesystem::path& path)
{
    auto in = open_input(path, "sentiment lexicon");
    return read_sentiment(in, path.string());
}

ShifterLexicon load_shifters(const std::filesystem::path& path)
{
    auto in = open_input(path, "shifter lexicon");
    return read_shifters(in, path.string());
}

SlangDictionary load_slang(const std::filesystem::path& path)
{
    auto in = open_input(path, "slang dictionary");
    return read_slang(in, path.string());
}

FrequencyList load_frequency_list(const std::filesystem::path& path, Diagnostics* diag)
{
    auto in = open_input(path, "frequency list");
    return read_frequency_list(in, path.string(), diag);
}

LexiconSet load_lexicons(const LexiconPaths& paths, Diagnostics* diag)
{
    LexiconSet set;
    if (paths.sentiment) {
        set.sentiment = load_sentiment(*paths.sentiment);
    }
    if (paths.shifters) {
        set.shifters = load_shifters(*paths.shifters);
    }
    if (paths.slang) {
        set.slang = load_slang(*paths.slang);
    }
    if (paths.frequency) {
        set.reference = load_frequency_list(*paths.frequency, diag);
    }
    return set;
}

// --- OOV ---------------------------------------------------------------------

OovReport oov_report(std::span<const std::string> tokens, const FrequencyList& reference,
                     std::size_t top_k)
{
    if (tokens.empty()) {
        throw PreconditionError("OOV rate is undefined for an empty token list");
    }
    if (reference.empty()) {
        throw PreconditionError("OOV report needs a non-empty reference list");
    }
    std::unordered_map<std::string_view, std::size_t> counts;
    for (const auto& token : tokens) {
        ++counts[token];
    }

    OovReport report;
    report.n_tokens = tokens.size();
    report.n_types = counts.size();
    std::vector<OovEntry> oov;
    for (const auto& [term, count] : counts) {
        if (!reference.contains(term)) {
            report.n_oov_tokens += count;
            ++report.n_oov_types;
            oov.push_back({std::string(term), count});
        }
    }
    report.token_oov_rate =
        static_cast<double>(report.n_oov_tokens) / static_cast<double>(report.n_tokens);
    report.type_oov_rate =
        static_cast<double>(report.n_oov_types) / static_cast<double>(report.n_types);

    std::sort(oov.begin(), oov.end(), [](const OovEntry& a, const OovEntry& b) {
        if (a.frequency != b.frequency) {
            return a.frequency > b.frequency;
        }
        return a.term < b.term;
    });
    if (oov.size() > top_k) {
        oov.resize(top_k);
    }
    report.ranked_oov = std::move(oov);
    return report;
}

std::vector<std::string> apply_slang(std::span<const std::string> tokens,
                                     const SlangDictionary& slang)
{
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const auto& token : tokens) {
        if (const auto* replacement = slang.lookup(token)) {
            out.insert(out.end(), replacement->begin(), replacement->end());
        } else {
            out.push_back(token);
        }
    }
    return out;
}

TokenStream apply_slang(const TokenStream& stream, const SlangDictionary& slang)
{
    if (slang.empty()) {
        return stream;
    }
    std::vector<std::string> tokens;
    tokens.reserve(stream.size());
    std::vector<SongSpan> spans;
    spans.reserve(stream.songs().size());
    for (const auto& span : stream.songs()) {
        auto translated =
            apply_slang(stream.tokens().subspan(span.first_token, span.token_count), slang);
        SongSpan copy = span;
        copy.first_token = tokens.size();
        copy.token_count = translated.size();
        std::move(translated.begin(), translated.end(), std::back_inserter(tokens));
        spans.push_back(std::move(copy));
    }
    return TokenStream(std::move(tokens), std::move(spans));
}

void write_oov_worksheet(std::ostream& out, const OovReport& report,
                         std::span<const std::string> preamble)
{
    for (const auto& line : preamble) {
        out << "# " << line << '\n';
    }
    out << worksheet_header << '\n';
    for (const auto& entry : report.ranked_oov) {
        out << entry.term << '\t' << entry.frequency << "\t\n";
    }
}

void export_oov_worksheet(const OovReport& report, const std::filesystem::path& path,
                          std::span<const std::string> preamble)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InputError(fmt::format("cannot write worksheet '{}'", path.string()));
    }
    write_oov_worksheet(out, report, preamble);
    out.flush();
    if (!out) {
        throw InputError(fmt::format("failed writing worksheet '{}'", path.string()));
    }
}

} // namespace sentarc

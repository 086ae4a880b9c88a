#include <sentarc/corpus.hpp>

#include <sentarc/csv.hpp>
#include <sentarc/text.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <tuple>

#include <fmt/format.h>
#include <json.hpp>

namespace sentarc {

bool song_order(const SongRecord& a, const SongRecord& b)
{
    return std::tie(a.date, a.artist, a.title, a.lyrics) <
           std::tie(b.date, b.artist, b.title, b.lyrics);
}

SongCollection::SongCollection(std::vector<SongRecord> songs) : songs_(std::move(songs))
{
    for (const auto& song : songs_) {
        if (song.artist.empty()) {
            throw InputError(fmt::format("song '{}': empty artist", song.title));
        }
        if (!song.date.ok()) {
            throw InputError(fmt::format("song '{}' by {}: invalid date", song.title, song.artist));
        }
        if (tokenize(song.lyrics).empty()) {
            throw InputError(
                fmt::format("song '{}' by {}: lyrics contain no tokens", song.title, song.artist));
        }
    }
    std::stable_sort(songs_.begin(), songs_.end(), song_order);
    for (std::size_t i = 0; i < songs_.size(); ++i) {
        by_artist_[songs_[i].artist].push_back(i);
    }
}

SongCollection SongCollection::filter_dates(std::optional<Date> min, std::optional<Date> max) const
{
    std::vector<SongRecord> kept;
    for (const auto& song : songs_) {
        if ((min && song.date < *min) || (max && song.date > *max)) {
            continue;
        }
        kept.push_back(song);
    }
    return SongCollection(std::move(kept));
}

std::optional<SongFormat> format_from_path(const std::filesystem::path& path)
{
    auto ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (ext == ".jsonl" || ext == ".json" || ext == ".ndjson") {
        return SongFormat::jsonl;
    }
    if (ext == ".csv") {
        return SongFormat::csv;
    }
    return std::nullopt;
}

namespace {

struct RowParser {
    std::string_view source;
    std::vector<std::string> errors;
    std::vector<SongRecord> songs;

    void add(std::size_t row, std::optional<std::string> artist, std::optional<std::string> title,
             std::optional<std::string> date, std::optional<std::string> lyrics)
    {
        const auto fail = [&](std::string_view field, std::string_view what) {
            errors.push_back(fmt::format("{}: row {}: field '{}': {}", source, row, field, what));
        };
        const std::size_t before = errors.size();
        if (!artist) {
            fail("artist", "missing");
        } else if (artist->empty()) {
            fail("artist", "empty");
        }
        std::optional<Date> parsed;
        if (!date) {
            fail("date", "missing");
        } else if (parsed = parse_date(*date); !parsed) {
            fail("date", fmt::format("invalid date '{}' (expected YYYY-MM-DD)", *date));
        }
        if (!lyrics) {
            fail("lyrics", "missing");
        } else if (tokenize(*lyrics).empty()) {
            fail("lyrics", "empty after tokenization");
        }
        if (errors.size() != before) {
            return;
        }
        songs.push_back(SongRecord{std::move(*artist), title.value_or(""), *parsed,
                                   std::move(*lyrics)});
    }
};

std::optional<std::string> json_string(const nlohmann::json& obj, const char* key,
                                       RowParser& parser, std::size_t row)
{
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) {
        return std::nullopt;
    }
    if (!it->is_string()) {
        parser.errors.push_back(
            fmt::format("{}: row {}: field '{}': not a string", parser.source, row, key));
        return std::string{};
    }
    return it->get<std::string>();
}

void read_jsonl(std::istream& in, RowParser& parser)
{
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.find_first_not_of(" \t") == std::string::npos) {
            continue;
        }
        nlohmann::json obj;
        try {
            obj = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            parser.errors.push_back(fmt::format("{}: row {}: invalid JSON: {}", parser.source, row,
                                                e.what()));
            continue;
        }
        if (!obj.is_object()) {
            parser.errors.push_back(
                fmt::format("{}: row {}: expected a JSON object", parser.source, row));
            continue;
        }
        const std::size_t before = parser.errors.size();
        auto artist = json_string(obj, "artist", parser, row);
        auto title = json_string(obj, "title", parser, row);
        auto date = json_string(obj, "date", parser, row);
        auto lyrics = json_string(obj, "lyrics", parser, row);
        if (parser.errors.size() != before) {
            continue;
        }
        parser.add(row, std::move(artist), std::move(title), std::move(date), std::move(lyrics));
    }
}

void read_csv(std::istream& in, RowParser& parser)
{
    csv::Reader reader(in);
    auto header = reader.next();
    if (!header) {
        throw InputError(fmt::format("{}: missing header row", parser.source));
    }
    if (!header->empty() && header->front().starts_with("\xEF\xBB\xBF")) {
        header->front().erase(0, 3);
    }
    std::optional<std::size_t> col_artist;
    std::optional<std::size_t> col_title;
    std::optional<std::size_t> col_date;
    std::optional<std::size_t> col_lyrics;
    for (std::size_t i = 0; i < header->size(); ++i) {
        const auto& name = (*header)[i];
        if (name == "artist") {
            col_artist = i;
        } else if (name == "title") {
            col_title = i;
        } else if (name == "date") {
            col_date = i;
        } else if (name == "lyrics") {
            col_lyrics = i;
        }
    }
    if (!col_artist || !col_date || !col_lyrics) {
        throw InputError(fmt::format(
            "{}: header must name the columns artist,title,date,lyrics", parser.source));
    }

    std::size_t row = 0;
    while (auto fields = reader.next()) {
        ++row;
        if (fields->size() == 1 && fields->front().empty()) {
            continue;
        }
        if (fields->size() != header->size()) {
            parser.errors.push_back(fmt::format("{}: row {} (line {}): expected {} fields, got {}",
                                                parser.source, row, reader.line(),
                                                header->size(), fields->size()));
            continue;
        }
        const auto get = [&](std::optional<std::size_t> col) -> std::optional<std::string> {
            if (!col) {
                return std::nullopt;
            }
            return (*fields)[*col];
        };
        parser.add(row, get(col_artist), get(col_title), get(col_date), get(col_lyrics));
    }
}

} // namespace

SongCollection read_songs(std::istream& in, SongFormat format, std::string_view source,
                          Diagnostics* diag)
{
    RowParser parser{source, {}, {}};
    if (format == SongFormat::jsonl) {
        read_jsonl(in, parser);
    } else {
        read_csv(in, parser);
    }
    if (!parser.errors.empty()) {
        std::string message = parser.errors.front();
        for (std::size_t i = 1; i < parser.errors.size(); ++i) {
            message += '\n';
            message += parser.errors[i];
        }
        throw InputError(message);
    }

    std::set<std::tuple<std::string, std::string, Date>> seen;
    for (const auto& song : parser.songs) {
        if (!seen.emplace(song.artist, song.title, song.date).second) {
            warn(diag, fmt::format("{}: duplicate song ({}, {}, {})", source, song.artist,
                                   song.title, format_date(song.date)));
        }
    }
    return SongCollection(std::move(parser.songs));
}

SongCollection load_songs(const std::filesystem::path& path, SongFormat format, Diagnostics* diag)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError(fmt::format("cannot open songs file '{}'", path.string()));
    }
    return read_songs(in, format, path.string(), diag);
}

TokenStream::TokenStream(std::vector<std::string> tokens, std::vector<SongSpan> songs)
    : tokens_(std::move(tokens)), songs_(std::move(songs))
{
    std::size_t next = 0;
    for (const auto& span : songs_) {
        if (span.first_token != next || span.token_count == 0) {
            throw InvariantError("token stream: song spans must tile the tokens in order");
        }
        next += span.token_count;
    }
    if (next != tokens_.size()) {
        throw InvariantError("token stream: song spans do not cover every token");
    }
}

std::vector<std::size_t> TokenStream::song_boundaries() const
{
    std::vector<std::size_t> starts;
    starts.reserve(songs_.size());
    for (const auto& span : songs_) {
        starts.push_back(span.first_token);
    }
    return starts;
}

std::size_t TokenStream::span_of_token(std::size_t i) const
{
    auto it = std::upper_bound(songs_.begin(), songs_.end(), i,
                               [](std::size_t token, const SongSpan& span) {
                                   return token < span.first_token;
                               });
    return static_cast<std::size_t>(std::distance(songs_.begin(), it)) - 1;
}

TokenProvenance TokenStream::provenance(std::size_t i) const
{
    const auto& span = songs_.at(span_of_token(i));
    return {span.song_index, span.artist, span.date};
}

TokenStream concatenate(const SongCollection& collection, std::span<const std::size_t> indices)
{
    if (indices.empty()) {
        throw PreconditionError("cannot concatenate an empty song collection");
    }
    std::vector<std::string> tokens;
    std::vector<SongSpan> spans;
    spans.reserve(indices.size());
    for (std::size_t index : indices) {
        const auto& song = collection[index];
        auto song_tokens = tokenize(song.lyrics);
        spans.push_back(SongSpan{index, song.artist, song.title, song.date, tokens.size(),
                                 song_tokens.size()});
        std::move(song_tokens.begin(), song_tokens.end(), std::back_inserter(tokens));
    }
    return TokenStream(std::move(tokens), std::move(spans));
}

TokenStream concatenate(const SongCollection& collection)
{
    std::vector<std::size_t> all(collection.size());
    for (std::size_t i = 0; i < all.size(); ++i) {
        all[i] = i;
    }
    return concatenate(collection, all);
}

std::map<std::string, TokenStream, std::less<>> group_by_artist(const SongCollection& collection)
{
    if (collection.empty()) {
        throw PreconditionError("cannot group an empty song collection");
    }
    std::map<std::string, TokenStream, std::less<>> streams;
    for (const auto& [artist, indices] : collection.by_artist()) {
        streams.emplace(artist, concatenate(collection, indices));
    }
    return streams;
}

CorpusStats corpus_stats(const SongCollection& collection)
{
    if (collection.empty()) {
        throw PreconditionError("cannot summarise an empty song collection");
    }
    std::vector<double> lengths;
    lengths.reserve(collection.size());
    CorpusStats stats;
    stats.n_songs = collection.size();
    stats.n_artists = collection.by_artist().size();
    stats.min_date = collection[0].date;
    stats.max_date = collection[0].date;
    for (const auto& song : collection.songs()) {
        const std::size_t n = tokenize(song.lyrics).size();
        stats.n_tokens += n;
        lengths.push_back(static_cast<double>(n));
        stats.min_date = std::min(stats.min_date, song.date);
        stats.max_date = std::max(stats.max_date, song.date);
    }
    double sum = 0.0;
    for (double x : lengths) {
        sum += x;
    }
    stats.mean_song_length = sum / static_cast<double>(lengths.size());
    if (lengths.size() > 1) {
        double ss = 0.0;
        for (double x : lengths) {
            ss += (x - stats.mean_song_length) * (x - stats.mean_song_length);
        }
        stats.sd_song_length = std::sqrt(ss / static_cast<double>(lengths.size() - 1));
    }
    return stats;
}

std::size_t bin_center_token(std::size_t bin, std::size_t n_bins, std::size_t n_tokens)
{
    // floor((bin + 0.5) / n_bins * n_tokens) in exact integer arithmetic.
    const auto num = static_cast<unsigned __int128>(2 * bin + 1) * n_tokens;
    return static_cast<std::size_t>(num / (2 * static_cast<unsigned __int128>(n_bins)));
}

Date bin_to_date(const TokenStream& stream, std::size_t bin, std::size_t n_bins)
{
    if (stream.empty()) {
        throw PreconditionError("bin_to_date: empty token stream");
    }
    if (bin >= n_bins) {
        throw PreconditionError(fmt::format("bin {} out of range [0, {})", bin, n_bins));
    }
    const std::size_t token = bin_center_token(bin, n_bins, stream.size());
    return stream.songs()[stream.span_of_token(token)].date;
}

} // namespace sentarc

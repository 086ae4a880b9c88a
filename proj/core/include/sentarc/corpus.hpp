#pragma once

#include <sentarc/date.hpp>
#include <sentarc/error.hpp>

#include <cstddef>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sentarc {

struct SongRecord {
    std::string artist;
    std::string title;
    Date date;
    std::string lyrics;
};

/// Total order used everywhere songs are time-ordered:
/// (date, artist, title, lyrics) ascending.
bool song_order(const SongRecord& a, const SongRecord& b);

/// An immutable, time-ordered set of songs with an artist index.
///
/// The constructor sorts by song_order(), so the order in which records
/// were loaded never shows up downstream.
class SongCollection {
public:
    SongCollection() = default;

    /// Throws InputError if any record has an empty artist, an invalid
    /// date, or lyrics that produce no tokens.
    explicit SongCollection(std::vector<SongRecord> songs);

    std::span<const SongRecord> songs() const { return songs_; }
    const SongRecord& operator[](std::size_t i) const { return songs_[i]; }
    std::size_t size() const { return songs_.size(); }
    bool empty() const { return songs_.empty(); }

    /// artist -> indices into songs(), ascending.
    const std::map<std::string, std::vector<std::size_t>, std::less<>>& by_artist() const
    {
        return by_artist_;
    }

    /// Keeps songs with min <= date <= max. Either bound may be absent.
    SongCollection filter_dates(std::optional<Date> min, std::optional<Date> max) const;

private:
    std::vector<SongRecord> songs_;
    std::map<std::string, std::vector<std::size_t>, std::less<>> by_artist_;
};

enum class SongFormat { jsonl, csv };

/// Infers the format from the file extension (.jsonl / .json / .csv).
std::optional<SongFormat> format_from_path(const std::filesystem::path& path);

/// Loads songs. Every malformed row is reported in a single InputError
/// naming the row and field. Duplicate (artist, title, date) triples are
/// kept and reported as warnings.
SongCollection load_songs(const std::filesystem::path& path, SongFormat format,
                          Diagnostics* diag = nullptr);

SongCollection read_songs(std::istream& in, SongFormat format, std::string_view source,
                          Diagnostics* diag = nullptr);

struct SongSpan {
    std::size_t song_index = 0; // index into the source SongCollection
    std::string artist;
    std::string title;
    Date date;
    std::size_t first_token = 0;
    std::size_t token_count = 0;
};

struct TokenProvenance {
    std::size_t song_index;
    std::string_view artist;
    Date date;
};

/// Concatenated tokens of several songs with per-token provenance.
class TokenStream {
public:
    TokenStream() = default;

    /// Song spans must tile the token vector in order, each non-empty.
    TokenStream(std::vector<std::string> tokens, std::vector<SongSpan> songs);

    std::span<const std::string> tokens() const { return tokens_; }
    std::span<const SongSpan> songs() const { return songs_; }
    std::size_t size() const { return tokens_.size(); }
    bool empty() const { return tokens_.empty(); }

    /// Token indices where a song starts; always begins with 0.
    std::vector<std::size_t> song_boundaries() const;

    /// Position of the song holding token i within songs().
    std::size_t span_of_token(std::size_t i) const;

    TokenProvenance provenance(std::size_t i) const;

private:
    std::vector<std::string> tokens_;
    std::vector<SongSpan> songs_;
};

/// Tokenises every song of the collection and joins them in time order.
TokenStream concatenate(const SongCollection& collection);

/// Builds the same stream for a subset of song indices (ascending).
TokenStream concatenate(const SongCollection& collection, std::span<const std::size_t> indices);

std::map<std::string, TokenStream, std::less<>> group_by_artist(const SongCollection& collection);

struct CorpusStats {
    std::size_t n_songs = 0;
    std::size_t n_tokens = 0;
    double mean_song_length = 0.0;
    double sd_song_length = 0.0; // sample SD (n - 1); 0 for a single song
    Date min_date;
    Date max_date;
    std::size_t n_artists = 0;
};

CorpusStats corpus_stats(const SongCollection& collection);

/// Publication date of the song holding the bin's centre token,
/// floor((bin + 0.5) / n_bins * n_tokens).
Date bin_to_date(const TokenStream& stream, std::size_t bin, std::size_t n_bins);

/// Token index at the centre of a bin, as used by bin_to_date().
std::size_t bin_center_token(std::size_t bin, std::size_t n_bins, std::size_t n_tokens);

} // namespace sentarc

#include "cli/commands.hpp"

#include "cli/output.hpp"
#include "cli/svg.hpp"

#include <sentarc/analysis.hpp>
#include <sentarc/corpus.hpp>
#include <sentarc/csv.hpp>
#include <sentarc/lexicon.hpp>
#include <sentarc/trajectory.hpp>
#include <sentarc/valence.hpp>

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <optional>
#include <set>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

namespace sentarc::cli {

namespace fs = std::filesystem;

namespace {

struct RunConfig {
    std::string command;

    fs::path songs;
    std::string format; // empty: infer from extension
    std::string min_date;
    std::string max_date;

    fs::path sentiment;
    fs::path shifters;
    fs::path slang;
    fs::path freq;
    fs::path crime;
    fs::path out = ".";

    std::string level = "corpus";
    std::size_t bins = 0; // 0: level default
    std::size_t artist_bins = sentarc::artist_bins;
    std::size_t low_pass = default_low_pass;
    std::size_t radius = 0; // 0: ceil(0.5% of bins)

    ShifterParams shifter;

    std::size_t top_k = 300;
    std::size_t min_songs = 1;
    std::size_t top = 6;
    double threshold = default_similarity_threshold;
    std::string basis = "relative";

    double span = default_loess_span;
    long max_lag = default_max_lag_days;

    unsigned threads = 0;
    bool stamp = false;
};

// Runs f(i) for i in [0, n) on up to `threads` workers. The exception of
// the lowest failing index is rethrown, so failures do not depend on
// scheduling.
template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& f)
{
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            f(i);
        }
        return;
    }
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    {
        std::vector<std::jthread> pool;
        const auto workers = std::min<std::size_t>(threads, n);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n; i = next++) {
                    try {
                        f(i);
                    } catch (...) {
                        errors[i] = std::current_exception();
                    }
                }
            });
        }
    }
    for (auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

unsigned effective_threads(unsigned requested)
{
    if (requested != 0) {
        return requested;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

class Context {
public:
    Context(const RunConfig& cfg, std::ostream& out, std::ostream& err)
        : cfg_(cfg), out_(out), err_(err)
    {
    }

    const RunConfig& cfg() const { return cfg_; }
    std::ostream& out() { return out_; }

    void flush_warnings()
    {
        for (const auto& w : diag_.warnings) {
            err_ << "warning: " << w << '\n';
        }
        diag_.warnings.clear();
    }

    Diagnostics* diag() { return &diag_; }

    Metadata metadata() const
    {
        Metadata meta(cfg_.command);
        if (cfg_.stamp) {
            meta.stamp();
        }
        return meta;
    }

    const SongCollection& songs()
    {
        if (!songs_) {
            auto format = cfg_.format.empty() ? format_from_path(cfg_.songs)
                                              : std::optional<SongFormat>(cfg_.format == "csv"
                                                                              ? SongFormat::csv
                                                                              : SongFormat::jsonl);
            if (!format) {
                throw InputError(fmt::format(
                    "cannot infer the format of '{}'; pass --format jsonl|csv", cfg_.songs.string()));
            }
            if (!fs::exists(cfg_.songs)) {
                throw InputError(fmt::format("songs file '{}' does not exist", cfg_.songs.string()));
            }
            auto loaded = load_songs(cfg_.songs, *format, &diag_);
            std::optional<Date> min;
            std::optional<Date> max;
            if (!cfg_.min_date.empty()) {
                min = parse_date(cfg_.min_date);
            }
            if (!cfg_.max_date.empty()) {
                max = parse_date(cfg_.max_date);
            }
            if (min || max) {
                loaded = loaded.filter_dates(min, max);
            }
            if (loaded.empty()) {
                throw PreconditionError("no songs left after date filtering");
            }
            songs_ = std::move(loaded);
        }
        return *songs_;
    }

    const LexiconSet& lexicons()
    {
        if (!lexicons_) {
            LexiconPaths paths;
            if (!cfg_.sentiment.empty()) {
                paths.sentiment = cfg_.sentiment;
            }
            if (!cfg_.shifters.empty()) {
                paths.shifters = cfg_.shifters;
            }
            if (!cfg_.slang.empty()) {
                paths.slang = cfg_.slang;
            }
            if (!cfg_.freq.empty()) {
                paths.frequency = cfg_.freq;
            }
            lexicons_ = load_lexicons(paths, &diag_);
        }
        return *lexicons_;
    }

    // Corpus stream after slang translation.
    const TokenStream& corpus_stream()
    {
        if (!corpus_stream_) {
            corpus_stream_ = apply_slang(concatenate(songs()), lexicons().slang);
        }
        return *corpus_stream_;
    }

    void require_sentiment()
    {
        if (cfg_.sentiment.empty()) {
            throw InputError(fmt::format("'{}' needs --sentiment", cfg_.command));
        }
    }

    void add_common(Metadata& meta) const
    {
        meta.add("songs", cfg_.songs.string());
        if (!cfg_.min_date.empty()) {
            meta.add("min_date", cfg_.min_date);
        }
        if (!cfg_.max_date.empty()) {
            meta.add("max_date", cfg_.max_date);
        }
    }

    void add_lexicon(Metadata& meta) const
    {
        meta.add("sentiment", cfg_.sentiment.string());
        meta.add("shifters", cfg_.shifters.empty() ? std::string("none") : cfg_.shifters.string());
        meta.add("slang", cfg_.slang.empty() ? std::string("none") : cfg_.slang.string());
        meta.add("window", cfg_.shifter.window);
        meta.add("amp_weight", cfg_.shifter.amp_weight);
        meta.add("adv_weight", cfg_.shifter.adv_weight);
        meta.add("floor", cfg_.shifter.floor);
    }

    void write(const fs::path& name, std::string_view content)
    {
        fs::create_directories(cfg_.out);
        write_file_atomic(cfg_.out / name, content);
    }

private:
    const RunConfig& cfg_;
    std::ostream& out_;
    std::ostream& err_;
    Diagnostics diag_;
    std::optional<SongCollection> songs_;
    std::optional<LexiconSet> lexicons_;
    std::optional<TokenStream> corpus_stream_;
};

// --- stats -------------------------------------------------------------------

void cmd_stats(Context& ctx)
{
    const auto stats = corpus_stats(ctx.songs());
    auto meta = ctx.metadata();
    ctx.add_common(meta);

    nlohmann::ordered_json j;
    j["meta"] = meta.json();
    j["n_songs"] = stats.n_songs;
    j["n_artists"] = stats.n_artists;
    j["n_tokens"] = stats.n_tokens;
    j["mean_song_length"] = stats.mean_song_length;
    j["sd_song_length"] = stats.sd_song_length;
    j["min_date"] = format_date(stats.min_date);
    j["max_date"] = format_date(stats.max_date);
    ctx.write("stats.json", j.dump(2) + "\n");

    auto& out = ctx.out();
    fmt::print(out, "songs:       {}\n", stats.n_songs);
    fmt::print(out, "artists:     {}\n", stats.n_artists);
    fmt::print(out, "tokens:      {}\n", stats.n_tokens);
    fmt::print(out, "mean length: {:.2f} tokens\n", stats.mean_song_length);
    fmt::print(out, "sd length:   {:.2f} tokens\n", stats.sd_song_length);
    fmt::print(out, "date range:  {} .. {}\n", format_date(stats.min_date),
               format_date(stats.max_date));
}

// --- oov ---------------------------------------------------------------------

nlohmann::ordered_json oov_json(const OovReport& r)
{
    nlohmann::ordered_json j;
    j["n_tokens"] = r.n_tokens;
    j["n_oov_tokens"] = r.n_oov_tokens;
    j["token_oov_rate"] = r.token_oov_rate;
    j["n_types"] = r.n_types;
    j["n_oov_types"] = r.n_oov_types;
    j["type_oov_rate"] = r.type_oov_rate;
    return j;
}

void cmd_oov(Context& ctx)
{
    const auto& cfg = ctx.cfg();
    if (cfg.freq.empty()) {
        throw InputError("'oov' needs --freq");
    }
    const auto& lex = ctx.lexicons();
    const auto raw = concatenate(ctx.songs());
    const auto raw_tokens = std::vector<std::string>(raw.tokens().begin(), raw.tokens().end());

    auto meta = ctx.metadata();
    ctx.add_common(meta);
    meta.add("freq", cfg.freq.string());
    meta.add("slang", cfg.slang.empty() ? std::string("none") : cfg.slang.string());
    meta.add("top_k", cfg.top_k);

    nlohmann::ordered_json j;
    j["meta"] = meta.json();
    OovReport report;
    std::optional<OovReport> before;
    if (!cfg.slang.empty()) {
        before = oov_report(raw_tokens, lex.reference, cfg.top_k);
        report = oov_report(apply_slang(raw_tokens, lex.slang), lex.reference, cfg.top_k);
    } else {
        report = oov_report(raw_tokens, lex.reference, cfg.top_k);
    }
    j.update(oov_json(report));
    if (before) {
        j["before_translation"] = oov_json(*before);
    }
    auto ranked = nlohmann::ordered_json::array();
    for (const auto& e : report.ranked_oov) {
        ranked.push_back({{"term", e.term}, {"frequency", e.frequency}});
    }
    j["ranked_oov"] = ranked;
    ctx.write("oov.json", j.dump(2) + "\n");

    std::ostringstream sheet;
    write_oov_worksheet(sheet, report, meta.comment_lines());
    ctx.write("oov_worksheet.tsv", sheet.str());

    auto& out = ctx.out();
    if (before) {
        fmt::print(out, "token OOV rate before translation: {:.4f} ({} of {} tokens)\n",
                   before->token_oov_rate, before->n_oov_tokens, before->n_tokens);
    }
    fmt::print(out, "token OOV rate: {:.4f} ({} of {} tokens)\n", report.token_oov_rate,
               report.n_oov_tokens, report.n_tokens);
    fmt::print(out, "type OOV rate:  {:.4f} ({} of {} types)\n", report.type_oov_rate,
               report.n_oov_types, report.n_types);
    fmt::print(out, "worksheet:      {} terms\n", report.ranked_oov.size());
}

// --- trajectories ------------------------------------------------------------

std::string trajectory_csv(const Trajectory& t, const Metadata& meta)
{
    std::string s = meta.comment_block();
    s += "bin,progression_pct,absolute,relative,date\n";
    const std::size_t n = t.size();
    for (std::size_t bin = 0; bin < n; ++bin) {
        s += fmt::format("{},{},{},{},{}\n", bin, fixed(progression_percent(bin, n), 4),
                         fixed(t.absolute[bin], 9), fixed(t.relative[bin], 9),
                         format_date(t.bin_dates[bin]));
    }
    return s;
}

std::string extrema_csv(std::span<const Extremum> extrema, const Metadata& meta)
{
    std::string s = meta.comment_block();
    s += "bin,progression_pct,kind,relative,date\n";
    for (const auto& e : extrema) {
        s += fmt::format("{},{},{},{},{}\n", e.bin, fixed(e.progression, 4),
                         e.kind == ExtremumKind::maximum ? "maximum" : "minimum",
                         fixed(e.value, 9), format_date(e.date));
    }
    return s;
}

std::vector<double> progression_axis(std::size_t n)
{
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = progression_percent(i, n);
    }
    return x;
}

std::pair<double, double> value_range(std::span<const double> v)
{
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    double a = *lo;
    double b = *hi;
    if (!(b > a)) {
        a -= 1.0;
        b += 1.0;
    }
    const double pad = 0.05 * (b - a);
    return {a - pad, b + pad};
}

TrajectoryParams trajectory_params(const RunConfig& cfg, std::size_t n_bins)
{
    TrajectoryParams p;
    p.low_pass = cfg.low_pass;
    p.n_bins = n_bins;
    p.extrema_radius = cfg.radius;
    return p;
}

void add_trajectory(Metadata& meta, const TrajectoryParams& p)
{
    meta.add("bins", p.n_bins);
    meta.add("low_pass", p.low_pass);
    meta.add("extrema_radius", p.radius());
}

Trajectory corpus_trajectory(Context& ctx, std::size_t n_bins)
{
    const auto& stream = ctx.corpus_stream();
    const auto series = score_tokens(stream, ctx.lexicons(), ctx.cfg().shifter);
    return extract_trajectory(stream, series, trajectory_params(ctx.cfg(), n_bins));
}

void write_corpus_trajectory(Context& ctx, std::size_t n_bins)
{
    ctx.require_sentiment();
    const auto t = corpus_trajectory(ctx, n_bins);
    auto meta = ctx.metadata();
    ctx.add_common(meta);
    meta.add("level", std::string("corpus"));
    ctx.add_lexicon(meta);
    add_trajectory(meta, t.params);

    ctx.write("trajectory_corpus.csv", trajectory_csv(t, meta));
    const auto extrema = find_extrema(t, t.params.radius());
    ctx.write("extrema_corpus.csv", extrema_csv(extrema, meta));

    const auto x = progression_axis(t.size());
    const auto [lo, hi] = value_range(t.absolute);
    std::vector<svg::Panel> panels{
        {"Absolute sentiment", lo, hi, {{"absolute", "#444444", x, t.absolute, 1.5}}},
        {"Relative sentiment (scaled to [-1, +1])", -1.05, 1.05,
         {{"relative", "#444444", x, t.relative, 1.5}}},
    };
    ctx.write("trajectory_corpus.svg",
              svg::render("Corpus sentiment trajectory", panels, meta.comment_lines()));

    if (t.degenerate) {
        ctx.diag()->warn("corpus trajectory is constant; relative curve is all zeros");
    }
    fmt::print(ctx.out(), "corpus trajectory: {} tokens -> {} bins, {} local extrema\n",
               ctx.corpus_stream().size(), t.size(), extrema.size());
}

struct ArtistResult {
    std::string artist;
    std::size_t song_count = 0;
    std::optional<Trajectory> trajectory;
    std::string skipped;
};

// Trajectories for the named artists, computed in parallel; output order
// follows `artists`.
std::vector<ArtistResult> artist_trajectories(Context& ctx, const std::vector<std::string>& artists,
                                              std::size_t n_bins)
{
    const auto& songs = ctx.songs();
    const auto& lex = ctx.lexicons();
    const auto& cfg = ctx.cfg();
    const auto params = trajectory_params(cfg, n_bins);

    std::vector<ArtistResult> results(artists.size());
    parallel_for(artists.size(), effective_threads(cfg.threads), [&](std::size_t i) {
        const auto& indices = songs.by_artist().find(artists[i])->second;
        auto& r = results[i];
        r.artist = artists[i];
        r.song_count = indices.size();
        const auto stream = apply_slang(concatenate(songs, indices), lex.slang);
        if (stream.size() < params.low_pass) {
            r.skipped = fmt::format("artist '{}' has {} tokens, fewer than the low-pass size {}",
                                    r.artist, stream.size(), params.low_pass);
            return;
        }
        const auto series = score_tokens(stream, lex, cfg.shifter);
        r.trajectory = extract_trajectory(stream, series, params);
    });
    for (const auto& r : results) {
        if (!r.skipped.empty()) {
            ctx.diag()->warn(r.skipped);
        }
    }
    return results;
}

std::vector<std::string> all_artists(const SongCollection& songs)
{
    std::vector<std::string> names;
    for (const auto& [artist, indices] : songs.by_artist()) {
        names.push_back(artist);
    }
    return names;
}

void write_artist_trajectories(Context& ctx, std::size_t n_bins)
{
    ctx.require_sentiment();
    const auto results = artist_trajectories(ctx, all_artists(ctx.songs()), n_bins);

    auto meta = ctx.metadata();
    ctx.add_common(meta);
    meta.add("level", std::string("artist"));
    ctx.add_lexicon(meta);
    add_trajectory(meta, trajectory_params(ctx.cfg(), n_bins));

    std::set<std::string> used;
    std::vector<svg::Line> lines;
    std::size_t written = 0;
    for (const auto& r : results) {
        if (!r.trajectory) {
            continue;
        }
        std::string slug = slugify(r.artist);
        for (int k = 2; !used.insert(slug).second; ++k) {
            slug = fmt::format("{}_{}", slugify(r.artist), k);
        }
        auto artist_meta = meta;
        artist_meta.add("artist", r.artist);
        artist_meta.add("artist_songs", r.song_count);
        ctx.write(fmt::format("trajectory_artist_{}.csv", slug),
                  trajectory_csv(*r.trajectory, artist_meta));
        lines.push_back({r.artist, std::string(svg::palette(lines.size())),
                         progression_axis(r.trajectory->size()), r.trajectory->relative, 1.2});
        ++written;
    }
    std::vector<svg::Panel> panels{{"Relative sentiment by artist", -1.05, 1.05, std::move(lines)}};
    ctx.write("trajectory_artists.svg",
              svg::render("Artist sentiment trajectories", panels, meta.comment_lines()));
    fmt::print(ctx.out(), "artist trajectories: {} written, {} bins each\n", written, n_bins);
}

void cmd_trajectory(Context& ctx)
{
    const auto& cfg = ctx.cfg();
    if (cfg.level == "corpus") {
        write_corpus_trajectory(ctx, cfg.bins == 0 ? corpus_bins : cfg.bins);
    } else {
        write_artist_trajectories(ctx, cfg.bins == 0 ? artist_bins : cfg.bins);
    }
}

// --- similarity --------------------------------------------------------------

void run_similarity(Context& ctx, std::size_t n_bins)
{
    ctx.require_sentiment();
    const auto& cfg = ctx.cfg();
    const auto& songs = ctx.songs();

    std::vector<std::pair<std::size_t, std::string>> ranked;
    for (const auto& [artist, indices] : songs.by_artist()) {
        if (indices.size() >= cfg.min_songs) {
            ranked.emplace_back(indices.size(), artist);
        }
    }
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    if (cfg.top > 0 && ranked.size() > cfg.top) {
        ranked.resize(cfg.top);
    }
    if (ranked.size() < 2) {
        throw PreconditionError(fmt::format(
            "similarity needs at least 2 artists with >= {} songs; {} qualify", cfg.min_songs,
            ranked.size()));
    }
    std::vector<std::string> names;
    for (const auto& [count, name] : ranked) {
        names.push_back(name);
    }

    std::vector<ArtistTrajectory> inputs;
    for (auto& r : artist_trajectories(ctx, names, n_bins)) {
        if (r.trajectory) {
            inputs.push_back({r.artist, r.song_count, std::move(*r.trajectory)});
        }
    }
    const auto basis = cfg.basis == "absolute" ? SimilarityBasis::absolute : SimilarityBasis::relative;
    const auto m = similarity_matrix(inputs, cfg.threshold, basis, ctx.diag());

    auto meta = ctx.metadata();
    ctx.add_common(meta);
    ctx.add_lexicon(meta);
    add_trajectory(meta, trajectory_params(cfg, n_bins));
    meta.add("min_songs", cfg.min_songs);
    meta.add("top", cfg.top);
    meta.add("threshold", cfg.threshold);
    meta.add("basis", cfg.basis);

    std::string s = meta.comment_block();
    s += "artist_a,artist_b,cosine,label\n";
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m.size(); ++j) {
            s += fmt::format("{},{},{},{}\n", csv::escape(m.artists[i]), csv::escape(m.artists[j]),
                             fixed(m.values[i][j], 9), to_string(m.labels[i][j]));
        }
    }
    ctx.write("similarity.csv", s);

    // Lower triangle: cosines. Upper triangle: labels.
    auto& out = ctx.out();
    std::size_t name_w = 6;
    for (const auto& a : m.artists) {
        name_w = std::max(name_w, a.size());
    }
    const std::size_t cell_w = std::max<std::size_t>(12, name_w);
    fmt::print(out, "{:<{}}", "", name_w + 2);
    for (const auto& a : m.artists) {
        fmt::print(out, "{:>{}}", a, cell_w + 1);
    }
    fmt::print(out, "\n");
    for (std::size_t i = 0; i < m.size(); ++i) {
        fmt::print(out, "{:<{}}", m.artists[i], name_w + 2);
        for (std::size_t j = 0; j < m.size(); ++j) {
            std::string cell = i == j  ? std::string("1.00")
                               : j < i ? fixed(m.values[i][j], 2)
                                       : std::string(to_string(m.labels[i][j]));
            fmt::print(out, "{:>{}}", cell, cell_w + 1);
        }
        fmt::print(out, "\n");
    }
}

void cmd_similarity(Context& ctx)
{
    run_similarity(ctx, ctx.cfg().bins == 0 ? artist_bins : ctx.cfg().bins);
}

// --- crime -------------------------------------------------------------------

nlohmann::ordered_json extremum_json(const Extremum& e)
{
    nlohmann::ordered_json j;
    j["bin"] = e.bin;
    j["progression_pct"] = e.progression;
    j["date"] = format_date(e.date);
    j["value"] = e.value;
    return j;
}

void run_crime(Context& ctx, std::size_t n_bins)
{
    ctx.require_sentiment();
    const auto& cfg = ctx.cfg();
    if (cfg.crime.empty()) {
        throw InputError("'crime' needs --crime");
    }
    const auto series_list = load_crime(cfg.crime);
    const auto sentiment = corpus_trajectory(ctx, n_bins);
    const auto& stream = ctx.corpus_stream();
    const std::size_t radius = sentiment.params.radius();

    auto meta = ctx.metadata();
    ctx.add_common(meta);
    ctx.add_lexicon(meta);
    add_trajectory(meta, sentiment.params);
    meta.add("crime", cfg.crime.string());
    meta.add("span", cfg.span);
    meta.add("max_lag_days", cfg.max_lag);

    std::vector<AlignedSeries> aligned;
    std::set<std::string> used;
    for (const auto& series : series_list) {
        try {
            aligned.push_back(smooth_anchors(series.crime_type,
                                             align_crime(series, stream, n_bins, ctx.diag()),
                                             n_bins, cfg.span));
        } catch (const PreconditionError& e) {
            ctx.diag()->warn(fmt::format("crime type '{}' skipped: {}", series.crime_type, e.what()));
            continue;
        }
        const auto& a = aligned.back();

        std::map<std::size_t, std::int64_t> anchor_counts;
        for (const auto& anchor : a.anchors) {
            anchor_counts.emplace(anchor.bin, anchor.count);
        }
        auto type_meta = meta;
        type_meta.add("crime_type", a.crime_type);
        std::string s = type_meta.comment_block();
        s += "bin,anchor_count,smoothed,scaled\n";
        for (std::size_t i = 0; i < a.smoothed.size(); ++i) {
            const std::size_t bin = a.first_bin + i;
            auto it = anchor_counts.find(bin);
            s += fmt::format("{},{},{},{}\n", bin,
                             it == anchor_counts.end() ? std::string() : std::to_string(it->second),
                             fixed(a.smoothed[i], 9), fixed(a.scaled[i], 9));
        }
        std::string slug = slugify(a.crime_type);
        for (int k = 2; !used.insert(slug).second; ++k) {
            slug = fmt::format("{}_{}", slugify(a.crime_type), k);
        }
        ctx.write(fmt::format("aligned_{}.csv", slug), s);
    }
    if (aligned.empty()) {
        throw PreconditionError("no crime series overlaps the corpus date range");
    }

    const auto candidates = lead_lag_candidates(sentiment, aligned, radius, cfg.max_lag);

    nlohmann::ordered_json j;
    j["meta"] = meta.json();
    auto minima = nlohmann::ordered_json::array();
    for (const auto& e : find_extrema(sentiment, radius)) {
        if (e.kind == ExtremumKind::minimum) {
            minima.push_back(extremum_json(e));
        }
    }
    j["sentiment_minima"] = minima;
    auto peaks = nlohmann::ordered_json::object();
    for (const auto& a : aligned) {
        auto list = nlohmann::ordered_json::array();
        for (const auto& e : crime_extrema(a, radius)) {
            if (e.kind == ExtremumKind::maximum) {
                list.push_back(extremum_json(e));
            }
        }
        peaks[a.crime_type] = list;
    }
    j["crime_maxima"] = peaks;
    auto cand = nlohmann::ordered_json::array();
    for (const auto& c : candidates) {
        nlohmann::ordered_json item;
        item["crime_type"] = c.crime_type;
        item["trough_bin"] = c.trough_bin;
        item["trough_progression_pct"] = c.trough_progression;
        item["trough_date"] = format_date(c.trough_date);
        item["peak_bin"] = c.peak_bin;
        item["peak_progression_pct"] = c.peak_progression;
        item["peak_date"] = format_date(c.peak_date);
        item["lag_days"] = c.lag_days;
        cand.push_back(item);
    }
    j["candidates"] = cand;
    ctx.write("leadlag.json", j.dump(2) + "\n");

    std::vector<svg::Line> lines;
    lines.push_back({"sentiment (relative)", "#999999", progression_axis(sentiment.size()),
                     sentiment.relative, 2.0});
    for (std::size_t k = 0; k < aligned.size(); ++k) {
        const auto& a = aligned[k];
        std::vector<double> x(a.scaled.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] = progression_percent(a.first_bin + i, n_bins);
        }
        lines.push_back({a.crime_type, std::string(svg::palette(k)), std::move(x), a.scaled, 1.2});
    }
    std::vector<svg::Panel> panels{
        {"Relative sentiment and scaled crime counts", -1.05, 1.05, std::move(lines)}};
    ctx.write("crime_overlay.svg",
              svg::render("Sentiment and crime trajectories", panels, meta.comment_lines()));

    auto& out = ctx.out();
    fmt::print(out, "aligned {} crime series; {} lead-lag candidate(s) within {} days\n",
               aligned.size(), candidates.size(), cfg.max_lag);
    for (const auto& c : candidates) {
        fmt::print(out, "  sentiment low {} ({:.2f}%) -> {} peak {} ({:.2f}%), lag {} days\n",
                   format_date(c.trough_date), c.trough_progression, c.crime_type,
                   format_date(c.peak_date), c.peak_progression, c.lag_days);
    }
}

void cmd_crime(Context& ctx) { run_crime(ctx, ctx.cfg().bins == 0 ? corpus_bins : ctx.cfg().bins); }

// --- report ------------------------------------------------------------------

void cmd_report(Context& ctx)
{
    const auto& cfg = ctx.cfg();
    const std::size_t n_bins = cfg.bins == 0 ? corpus_bins : cfg.bins;
    auto& out = ctx.out();

    fmt::print(out, "== stats\n");
    cmd_stats(ctx);
    if (!cfg.freq.empty()) {
        fmt::print(out, "== oov\n");
        cmd_oov(ctx);
    }
    fmt::print(out, "== trajectory\n");
    write_corpus_trajectory(ctx, n_bins);
    write_artist_trajectories(ctx, cfg.artist_bins);
    fmt::print(out, "== similarity\n");
    try {
        run_similarity(ctx, cfg.artist_bins);
    } catch (const PreconditionError& e) {
        ctx.diag()->warn(fmt::format("similarity skipped: {}", e.what()));
    }
    if (!cfg.crime.empty()) {
        fmt::print(out, "== crime\n");
        run_crime(ctx, n_bins);
    }
}

// --- flag wiring ---------------------------------------------------------------

void add_songs_flags(CLI::App* app, RunConfig& cfg)
{
    app->add_option("--songs", cfg.songs, "Songs file (.jsonl or .csv)")->required();
    app->add_option("--format", cfg.format, "Songs format; inferred from the extension by default")
        ->check(CLI::IsMember({"jsonl", "csv"}));
    const auto date_check = CLI::Validator(
        [](std::string& s) { return parse_date(s) ? std::string() : "expected YYYY-MM-DD"; },
        "DATE");
    app->add_option("--min-date", cfg.min_date, "Drop songs published before this date")
        ->check(date_check);
    app->add_option("--max-date", cfg.max_date, "Drop songs published after this date")
        ->check(date_check);
    app->add_option("--out", cfg.out, "Output directory")->capture_default_str();
    app->add_flag("--stamp", cfg.stamp, "Record the generation time in output headers");
}

void add_lexicon_flags(CLI::App* app, RunConfig& cfg)
{
    app->add_option("--sentiment", cfg.sentiment, "Sentiment lexicon TSV (term, valence)")
        ->check(CLI::ExistingFile);
    app->add_option("--shifters", cfg.shifters, "Valence shifter TSV (term, category)")
        ->check(CLI::ExistingFile);
    app->add_option("--slang", cfg.slang, "Slang translation TSV applied before scoring")
        ->check(CLI::ExistingFile);
    app->add_option("--window", cfg.shifter.window, "Shifter context window in tokens")
        ->capture_default_str()
        ->check(CLI::Range(std::size_t{1}, std::numeric_limits<std::size_t>::max()));
    app->add_option("--amp-weight", cfg.shifter.amp_weight, "Weight per net amplifier")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app->add_option("--adv-weight", cfg.shifter.adv_weight, "Boost after an adversative conjunction")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    app->add_option("--floor", cfg.shifter.floor, "Lower bound on the amplification factor, in (0, 1]")
        ->capture_default_str()
        ->check(CLI::Range(std::numeric_limits<double>::min(), 1.0));
}

void add_trajectory_flags(CLI::App* app, RunConfig& cfg, std::string_view bins_help)
{
    app->add_option("--bins", cfg.bins, std::string(bins_help))
        ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()));
    app->add_option("--low-pass", cfg.low_pass, "DCT coefficients kept (low-pass filter size)")
        ->capture_default_str()
        ->check(CLI::Range(std::size_t{1}, std::numeric_limits<std::size_t>::max()));
    app->add_option("--radius", cfg.radius,
                    "Neighbourhood in bins for local extrema (default: 0.5% of the bins)");
    app->add_option("--threads", cfg.threads, "Worker threads for per-artist work (0: all cores)")
        ->capture_default_str();
}

void add_similarity_flags(CLI::App* app, RunConfig& cfg)
{
    app->add_option("--min-songs", cfg.min_songs, "Only artists with at least this many songs")
        ->capture_default_str();
    app->add_option("--top", cfg.top, "Compare the N artists with the most songs (0: all)")
        ->capture_default_str();
    app->add_option("--threshold", cfg.threshold,
                    "Cosine above +t is similar, below -t dissimilar")
        ->capture_default_str()
        ->check(CLI::Range(0.0, 1.0));
    app->add_option("--basis", cfg.basis, "Compare relative (scaled) or absolute trajectories")
        ->capture_default_str()
        ->check(CLI::IsMember({"relative", "absolute"}));
}

void add_crime_flags(CLI::App* app, RunConfig& cfg, bool required)
{
    auto* opt = app->add_option("--crime", cfg.crime, "Monthly crime counts CSV (month,type,count)")
                    ->check(CLI::ExistingFile);
    if (required) {
        opt->required();
    }
    app->add_option("--span", cfg.span, "Loess span for crime smoothing")
        ->capture_default_str()
        ->check(CLI::Range(std::numeric_limits<double>::min(), 1.0));
    app->add_option("--max-lag", cfg.max_lag, "Longest trough-to-peak lag in days")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    RunConfig cfg;
    CLI::App app{"sentarc: sentiment trajectories of time-ordered lyric corpora", "sentarc"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(tool_version()));

    auto* stats = app.add_subcommand("stats", "Corpus size, song length and date range");
    add_songs_flags(stats, cfg);

    auto* oov = app.add_subcommand("oov", "Out-of-vocabulary rates and a translation worksheet");
    add_songs_flags(oov, cfg);
    oov->add_option("--freq", cfg.freq, "Reference word list, most frequent first")
        ->required()
        ->check(CLI::ExistingFile);
    oov->add_option("--slang", cfg.slang, "Slang translation TSV applied before counting")
        ->check(CLI::ExistingFile);
    oov->add_option("--top-k", cfg.top_k, "Worksheet rows (most frequent unmatched words)")
        ->capture_default_str();

    auto* trajectory = app.add_subcommand("trajectory", "Sentiment trajectory CSVs and plots");
    add_songs_flags(trajectory, cfg);
    add_lexicon_flags(trajectory, cfg);
    trajectory->add_option("--level", cfg.level, "corpus: whole corpus; artist: one per artist")
        ->capture_default_str()
        ->check(CLI::IsMember({"corpus", "artist"}));
    add_trajectory_flags(trajectory, cfg, "Trajectory length (default 10000 corpus, 1000 artist)");

    auto* similarity = app.add_subcommand("similarity", "Pairwise cosine similarity of artists");
    add_songs_flags(similarity, cfg);
    add_lexicon_flags(similarity, cfg);
    add_trajectory_flags(similarity, cfg, "Artist trajectory length (default 1000)");
    add_similarity_flags(similarity, cfg);

    auto* crime = app.add_subcommand("crime", "Align monthly crime counts and find lead-lag pairs");
    add_songs_flags(crime, cfg);
    add_lexicon_flags(crime, cfg);
    add_trajectory_flags(crime, cfg, "Corpus trajectory length (default 10000)");
    add_crime_flags(crime, cfg, true);

    auto* report = app.add_subcommand("report", "Run stats, oov, trajectory, similarity and crime");
    add_songs_flags(report, cfg);
    add_lexicon_flags(report, cfg);
    add_trajectory_flags(report, cfg, "Corpus trajectory length (default 10000)");
    report->add_option("--artist-bins", cfg.artist_bins, "Artist trajectory length")
        ->capture_default_str()
        ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()));
    report->add_option("--freq", cfg.freq, "Reference word list; enables the OOV step")
        ->check(CLI::ExistingFile);
    report->add_option("--top-k", cfg.top_k, "OOV worksheet rows")->capture_default_str();
    add_similarity_flags(report, cfg);
    add_crime_flags(report, cfg, false);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_input;
    }

    cfg.command = app.get_subcommands().front()->get_name();
    Context ctx(cfg, out, err);
    int code = exit_ok;
    try {
        cfg.shifter.validate();
        if (cfg.command == "stats") {
            cmd_stats(ctx);
        } else if (cfg.command == "oov") {
            cmd_oov(ctx);
        } else if (cfg.command == "trajectory") {
            cmd_trajectory(ctx);
        } else if (cfg.command == "similarity") {
            cmd_similarity(ctx);
        } else if (cfg.command == "crime") {
            cmd_crime(ctx);
        } else if (cfg.command == "report") {
            cmd_report(ctx);
        }
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        code = exit_input;
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << '\n';
        code = exit_precondition;
    } catch (const InvariantError& e) {
        err << "internal error: " << e.what() << '\n';
        code = exit_internal;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        code = exit_input;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        code = exit_internal;
    }
    ctx.flush_warnings();
    return code;
}

} // namespace sentarc::cli

#include <sentarc/analysis.hpp>

#include <sentarc/csv.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <tuple>

#include <fmt/format.h>

namespace sentarc {

// --- similarity --------------------------------------------------------------

double cosine_similarity(std::span<const double> u, std::span<const double> v)
{
    if (u.size() != v.size()) {
        throw PreconditionError(
            fmt::format("cosine similarity: length mismatch ({} vs {})", u.size(), v.size()));
    }
    if (u.empty()) {
        throw PreconditionError("cosine similarity: empty vectors");
    }
    double dot = 0.0;
    double uu = 0.0;
    double vv = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        dot += u[i] * v[i];
        uu += u[i] * u[i];
        vv += v[i] * v[i];
    }
    if (uu == 0.0 || vv == 0.0) {
        throw PreconditionError("cosine similarity: zero vector");
    }
    return dot / (std::sqrt(uu) * std::sqrt(vv));
}

std::string_view to_string(SimilarityLabel label)
{
    switch (label) {
    case SimilarityLabel::similar:
        return "similar";
    case SimilarityLabel::dissimilar:
        return "dissimilar";
    case SimilarityLabel::independent:
        return "independent";
    case SimilarityLabel::self:
        return "self";
    }
    return "unknown";
}

SimilarityLabel classify_similarity(double value, double threshold)
{
    if (value > threshold) {
        return SimilarityLabel::similar;
    }
    if (value < -threshold) {
        return SimilarityLabel::dissimilar;
    }
    return SimilarityLabel::independent;
}

SimilarityMatrix similarity_matrix(std::span<const ArtistTrajectory> trajectories,
                                   double threshold, SimilarityBasis basis, Diagnostics* diag)
{
    std::vector<const ArtistTrajectory*> kept;
    for (const auto& entry : trajectories) {
        if (entry.trajectory.degenerate) {
            warn(diag, fmt::format("artist '{}' has a constant trajectory and is excluded",
                                   entry.artist));
            continue;
        }
        kept.push_back(&entry);
    }
    if (kept.size() < 2) {
        throw PreconditionError(fmt::format(
            "similarity needs at least 2 artists with non-constant trajectories (have {})",
            kept.size()));
    }
    std::sort(kept.begin(), kept.end(), [](const ArtistTrajectory* a, const ArtistTrajectory* b) {
        if (a->song_count != b->song_count) {
            return a->song_count > b->song_count;
        }
        return a->artist < b->artist;
    });

    const auto vector_of = [basis](const ArtistTrajectory& a) -> std::span<const double> {
        return basis == SimilarityBasis::relative ? a.trajectory.relative : a.trajectory.absolute;
    };
    const std::size_t len = vector_of(*kept.front()).size();
    for (const auto* entry : kept) {
        if (vector_of(*entry).size() != len) {
            throw PreconditionError("similarity: trajectories differ in length");
        }
    }

    const std::size_t n = kept.size();
    SimilarityMatrix m;
    m.values.assign(n, std::vector<double>(n, 0.0));
    m.labels.assign(n, std::vector<SimilarityLabel>(n, SimilarityLabel::self));
    for (std::size_t i = 0; i < n; ++i) {
        m.artists.push_back(kept[i]->artist);
        m.values[i][i] = 1.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double c = cosine_similarity(vector_of(*kept[i]), vector_of(*kept[j]));
            m.values[i][j] = m.values[j][i] = c;
            m.labels[i][j] = m.labels[j][i] = classify_similarity(c, threshold);
        }
    }
    return m;
}

// --- crime input -------------------------------------------------------------

CrimeKind crime_kind(std::string_view label)
{
    if (label == "homicide") {
        return CrimeKind::homicide;
    }
    if (label == "robbery_personal") {
        return CrimeKind::robbery_personal;
    }
    if (label == "violence_with_injury") {
        return CrimeKind::violence_with_injury;
    }
    return CrimeKind::other;
}

std::int64_t CrimeSeries::total() const
{
    std::int64_t sum = 0;
    for (const auto& p : points) {
        sum += p.count;
    }
    return sum;
}

std::vector<CrimeSeries> read_crime(std::istream& in, std::string_view source)
{
    csv::Reader reader(in);
    std::optional<std::vector<std::string>> header;
    while ((header = reader.next())) {
        if (!(header->size() == 1 && header->front().empty()) && !header->front().starts_with("#")) {
            break;
        }
    }
    if (!header) {
        throw InputError(fmt::format("{}: missing header row", source));
    }
    if (header->front().starts_with("\xEF\xBB\xBF")) {
        header->front().erase(0, 3);
    }
    std::optional<std::size_t> col_month;
    std::optional<std::size_t> col_type;
    std::optional<std::size_t> col_count;
    for (std::size_t i = 0; i < header->size(); ++i) {
        const auto& name = (*header)[i];
        if (name == "month") {
            col_month = i;
        } else if (name == "type") {
            col_type = i;
        } else if (name == "count") {
            col_count = i;
        }
    }
    if (!col_month || !col_type || !col_count) {
        throw InputError(fmt::format("{}: header must be month,type,count", source));
    }

    std::map<std::string, std::map<long, CrimePoint>> by_type;
    std::vector<std::string> errors;
    std::size_t row = 0;
    while (auto fields = reader.next()) {
        ++row;
        if (fields->size() == 1 && fields->front().empty()) {
            continue;
        }
        const auto fail = [&](std::string_view what) {
            errors.push_back(fmt::format("{}: row {}: {}", source, row, what));
        };
        if (fields->size() != header->size()) {
            fail(fmt::format("expected {} fields, got {}", header->size(), fields->size()));
            continue;
        }
        const auto& month_text = (*fields)[*col_month];
        const auto& type = (*fields)[*col_type];
        const auto& count_text = (*fields)[*col_count];
        const auto month = parse_month(month_text);
        if (!month) {
            fail(fmt::format("invalid month '{}' (expected YYYY-MM)", month_text));
            continue;
        }
        if (type.empty()) {
            fail("empty crime type");
            continue;
        }
        std::int64_t count = 0;
        auto [ptr, ec] = std::from_chars(count_text.data(), count_text.data() + count_text.size(), count);
        if (count_text.empty() || ec != std::errc{} || ptr != count_text.data() + count_text.size()) {
            fail(fmt::format("invalid count '{}'", count_text));
            continue;
        }
        if (count < 0) {
            fail(fmt::format("negative count {}", count));
            continue;
        }
        auto& points = by_type[type];
        if (!points.emplace(month_ordinal(*month), CrimePoint{*month, count}).second) {
            fail(fmt::format("duplicate month {} for type '{}'", month_text, type));
        }
    }
    if (!errors.empty()) {
        std::string message = errors.front();
        for (std::size_t i = 1; i < errors.size(); ++i) {
            message += '\n';
            message += errors[i];
        }
        throw InputError(message);
    }

    std::vector<CrimeSeries> out;
    for (auto& [type, points] : by_type) {
        CrimeSeries series{type, {}};
        for (auto& [ordinal, point] : points) {
            series.points.push_back(point);
        }
        out.push_back(std::move(series));
    }
    return out;
}

std::vector<CrimeSeries> load_crime(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError(fmt::format("cannot open crime file '{}'", path.string()));
    }
    return read_crime(in, path.string());
}

// --- alignment ---------------------------------------------------------------

namespace {

struct MonthTokens {
    std::size_t first = 0;
    std::size_t count = 0;
};

std::size_t token_bin(std::size_t token, std::size_t n_bins, std::size_t n_tokens)
{
    return static_cast<std::size_t>(static_cast<unsigned __int128>(token) * n_bins / n_tokens);
}

} // namespace

std::vector<Anchor> align_crime(const CrimeSeries& series, const TokenStream& stream,
                                std::size_t n_bins, Diagnostics* diag)
{
    if (stream.empty()) {
        throw PreconditionError("cannot align crime counts to an empty token stream");
    }
    if (n_bins < 2) {
        throw PreconditionError("alignment needs at least 2 bins");
    }

    // Songs are time-ordered, so each month's tokens are contiguous.
    std::map<long, MonthTokens> months;
    for (const auto& span : stream.songs()) {
        auto& m = months[month_ordinal(month_of(span.date))];
        if (m.count == 0) {
            m.first = span.first_token;
        }
        m.count += span.token_count;
    }
    std::map<long, std::size_t> month_bins;
    for (const auto& [ordinal, m] : months) {
        const std::size_t median = m.first + (m.count - 1) / 2;
        month_bins.emplace(ordinal, token_bin(median, n_bins, stream.size()));
    }
    const long first_month = months.begin()->first;
    const long last_month = months.rbegin()->first;

    std::vector<Anchor> anchors;
    std::size_t outside = 0;
    for (const auto& point : series.points) {
        const long ordinal = month_ordinal(point.month);
        if (ordinal < first_month || ordinal > last_month) {
            ++outside;
            continue;
        }
        Anchor anchor{point.month, 0, point.count, false};
        if (auto it = month_bins.find(ordinal); it != month_bins.end()) {
            anchor.bin = it->second;
        } else {
            auto next = month_bins.upper_bound(ordinal);
            auto prev = std::prev(next);
            const auto span = static_cast<std::size_t>(next->first - prev->first);
            const auto before = static_cast<std::size_t>(ordinal - prev->first);
            const auto after = static_cast<std::size_t>(next->first - ordinal);
            // Round half up: floor((2 * num + den) / (2 * den)).
            const std::size_t num = prev->second * after + next->second * before;
            anchor.bin = (2 * num + span) / (2 * span);
            anchor.interpolated = true;
        }
        if (!anchors.empty() && anchor.bin <= anchors.back().bin) {
            warn(diag, fmt::format("{}: month {} maps to bin {} which does not follow the "
                                   "previous anchor; dropped",
                                   series.crime_type, format_month(point.month), anchor.bin));
            continue;
        }
        anchors.push_back(anchor);
    }
    if (outside > 0) {
        warn(diag, fmt::format("{}: {} month(s) outside the corpus date range dropped",
                               series.crime_type, outside));
    }
    if (anchors.empty()) {
        throw PreconditionError(
            fmt::format("{}: no months overlap the corpus date range", series.crime_type));
    }
    return anchors;
}

AlignedSeries smooth_anchors(std::string crime_type, std::vector<Anchor> anchors,
                             std::size_t n_bins, double span)
{
    if (anchors.size() < 4) {
        throw PreconditionError(fmt::format(
            "{}: smoothing needs at least 4 aligned months (have {})", crime_type, anchors.size()));
    }
    std::vector<double> x;
    std::vector<double> y;
    for (const auto& a : anchors) {
        x.push_back(static_cast<double>(a.bin));
        y.push_back(static_cast<double>(a.count));
    }
    AlignedSeries aligned;
    aligned.crime_type = std::move(crime_type);
    aligned.n_bins = n_bins;
    aligned.first_bin = anchors.front().bin;
    const std::size_t last = anchors.back().bin;
    std::vector<double> eval;
    eval.reserve(last - aligned.first_bin + 1);
    for (std::size_t b = aligned.first_bin; b <= last; ++b) {
        eval.push_back(static_cast<double>(b));
    }
    aligned.smoothed = loess_smooth(x, y, eval, span);
    auto scaled = minmax_scale(aligned.smoothed);
    aligned.scaled = std::move(scaled.values);
    aligned.degenerate = scaled.degenerate;
    aligned.anchors = std::move(anchors);
    return aligned;
}

AlignedSeries align_and_smooth(const CrimeSeries& series, const TokenStream& stream,
                               std::size_t n_bins, double span, Diagnostics* diag)
{
    return smooth_anchors(series.crime_type, align_crime(series, stream, n_bins, diag), n_bins,
                          span);
}

std::vector<Extremum> crime_extrema(const AlignedSeries& aligned, std::size_t radius)
{
    // A curve too short for the neighbourhood has no extrema to report.
    if (aligned.degenerate || aligned.scaled.size() <= 2 * radius) {
        return {};
    }
    std::vector<Extremum> out;
    for (const auto& e : find_local_extrema(aligned.scaled, radius)) {
        const std::size_t bin = aligned.first_bin + e.bin;
        const Anchor* nearest = &aligned.anchors.front();
        std::size_t best = std::numeric_limits<std::size_t>::max();
        for (const auto& a : aligned.anchors) {
            const std::size_t d = a.bin > bin ? a.bin - bin : bin - a.bin;
            if (d < best) {
                best = d;
                nearest = &a;
            }
        }
        out.push_back({bin, e.kind, e.value, progression_percent(bin, aligned.n_bins),
                       mid_month(nearest->month)});
    }
    return out;
}

// --- lead-lag ----------------------------------------------------------------

std::vector<LeadLagCandidate> lead_lag_candidates(std::span<const Extremum> sentiment,
                                                  std::span<const CrimeExtrema> crimes,
                                                  long max_lag_days)
{
    std::vector<LeadLagCandidate> out;
    for (const auto& trough : sentiment) {
        if (trough.kind != ExtremumKind::minimum) {
            continue;
        }
        for (const auto& crime : crimes) {
            for (const auto& peak : crime.extrema) {
                if (peak.kind != ExtremumKind::maximum) {
                    continue;
                }
                const long lag = days_between(trough.date, peak.date);
                if (lag <= 0 || lag > max_lag_days) {
                    continue;
                }
                out.push_back({crime.crime_type, trough.bin, trough.date, trough.progression,
                               peak.bin, peak.date, peak.progression, lag});
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const LeadLagCandidate& a, const LeadLagCandidate& b) {
        return std::tie(a.lag_days, a.trough_bin, a.crime_type, a.peak_bin) <
               std::tie(b.lag_days, b.trough_bin, b.crime_type, b.peak_bin);
    });
    return out;
}

std::vector<LeadLagCandidate> lead_lag_candidates(const Trajectory& sentiment,
                                                  std::span<const AlignedSeries> crimes,
                                                  std::size_t radius, long max_lag_days)
{
    const auto troughs = find_extrema(sentiment, radius);
    std::vector<CrimeExtrema> peaks;
    for (const auto& aligned : crimes) {
        peaks.push_back({aligned.crime_type, crime_extrema(aligned, radius)});
    }
    return lead_lag_candidates(troughs, peaks, max_lag_days);
}

} // namespace sentarc

#pragma once

#include <sentarc/corpus.hpp>
#include <sentarc/date.hpp>
#include <sentarc/error.hpp>
#include <sentarc/loess.hpp>
#include <sentarc/trajectory.hpp>

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sentarc {

// ---------------------------------------------------------------------------
// Trajectory similarity
// ---------------------------------------------------------------------------

inline constexpr double default_similarity_threshold = 0.40;

/// u.v / (|u| |v|). Throws PreconditionError on a length mismatch, empty
/// input, or an all-zero vector.
double cosine_similarity(std::span<const double> u, std::span<const double> v);

enum class SimilarityLabel { similar, dissimilar, independent, self };

std::string_view to_string(SimilarityLabel label);

/// Strictly above +threshold is similar, strictly below -threshold is
/// dissimilar, everything else (the boundaries included) is independent.
SimilarityLabel classify_similarity(double value,
                                    double threshold = default_similarity_threshold);

struct ArtistTrajectory {
    std::string artist;
    std::size_t song_count = 0;
    Trajectory trajectory;
};

struct SimilarityMatrix {
    std::vector<std::string> artists;
    std::vector<std::vector<double>> values;
    std::vector<std::vector<SimilarityLabel>> labels;

    std::size_t size() const { return artists.size(); }
};

enum class SimilarityBasis { relative, absolute };

/// Pairwise cosines, artists ordered by song count (descending) then name.
/// Degenerate trajectories are dropped with a warning. Throws
/// PreconditionError if fewer than two artists remain or lengths differ.
SimilarityMatrix similarity_matrix(std::span<const ArtistTrajectory> trajectories,
                                   double threshold = default_similarity_threshold,
                                   SimilarityBasis basis = SimilarityBasis::relative,
                                   Diagnostics* diag = nullptr);

// ---------------------------------------------------------------------------
// Crime series
// ---------------------------------------------------------------------------

enum class CrimeKind { homicide, robbery_personal, violence_with_injury, other };

CrimeKind crime_kind(std::string_view label);

struct CrimePoint {
    Month month;
    std::int64_t count = 0;
};

struct CrimeSeries {
    std::string crime_type; // label as it appears in the input
    std::vector<CrimePoint> points; // strictly increasing months

    CrimeKind kind() const { return crime_kind(crime_type); }
    std::int64_t total() const;
};

/// Reads `month,type,count` rows. One series per type, sorted by type.
/// Throws InputError on duplicate (month, type), negative or non-integer
/// counts, and malformed months, naming the row.
std::vector<CrimeSeries> read_crime(std::istream& in, std::string_view source);
std::vector<CrimeSeries> load_crime(const std::filesystem::path& path);

struct Anchor {
    Month month;
    std::size_t bin = 0;
    std::int64_t count = 0;
    bool interpolated = false;
};

/// Projects monthly counts onto trajectory bins.
///
/// A month with published songs anchors at the bin holding the median
/// token of that month's songs. A month inside the corpus range without
/// songs gets a bin linearly interpolated between its anchored neighbours.
/// Months outside the corpus range, and months whose bin would not
/// strictly exceed the previous anchor, are dropped with a warning.
/// Throws PreconditionError when no month overlaps the corpus.
std::vector<Anchor> align_crime(const CrimeSeries& series, const TokenStream& stream,
                                std::size_t n_bins, Diagnostics* diag = nullptr);

struct AlignedSeries {
    std::string crime_type;
    std::size_t n_bins = 0;
    std::vector<Anchor> anchors;
    std::size_t first_bin = 0;    // smoothed[0] corresponds to this bin
    std::vector<double> smoothed; // bins first_bin .. last anchor bin
    std::vector<double> scaled;   // minmax_scale(smoothed)
    bool degenerate = false;

    std::size_t last_bin() const { return first_bin + smoothed.size() - 1; }
};

/// align_crime, then loess over the anchors evaluated at every covered bin,
/// then min-max scaling. Needs at least 4 anchors.
AlignedSeries align_and_smooth(const CrimeSeries& series, const TokenStream& stream,
                               std::size_t n_bins, double span = default_loess_span,
                               Diagnostics* diag = nullptr);

/// Builds the smoothed curve from precomputed anchors.
AlignedSeries smooth_anchors(std::string crime_type, std::vector<Anchor> anchors,
                             std::size_t n_bins, double span = default_loess_span);

/// Extrema of the scaled crime curve, in absolute bins. Each is dated to
/// the 15th of the month of its nearest anchor (earlier anchor on a tie).
/// Empty when the curve is constant or spans no more than 2 * radius bins.
std::vector<Extremum> crime_extrema(const AlignedSeries& aligned, std::size_t radius);

// ---------------------------------------------------------------------------
// Lead-lag candidates
// ---------------------------------------------------------------------------

inline constexpr long default_max_lag_days = 90;

struct LeadLagCandidate {
    std::string crime_type;
    std::size_t trough_bin = 0;
    Date trough_date;
    double trough_progression = 0.0;
    std::size_t peak_bin = 0;
    Date peak_date;
    double peak_progression = 0.0;
    long lag_days = 0;
};

struct CrimeExtrema {
    std::string crime_type;
    std::vector<Extremum> extrema;
};

/// Every (sentiment minimum, crime maximum) pair with
/// 0 < peak_date - trough_date <= max_lag_days, sorted by lag, then trough
/// bin, crime type and peak bin.
std::vector<LeadLagCandidate> lead_lag_candidates(std::span<const Extremum> sentiment,
                                                  std::span<const CrimeExtrema> crimes,
                                                  long max_lag_days = default_max_lag_days);

/// Finds extrema on the sentiment relative curve and each scaled crime
/// curve with `radius`, then pairs them.
std::vector<LeadLagCandidate> lead_lag_candidates(const Trajectory& sentiment,
                                                  std::span<const AlignedSeries> crimes,
                                                  std::size_t radius,
                                                  long max_lag_days = default_max_lag_days);

} // namespace sentarc

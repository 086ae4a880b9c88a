#include <sentarc/lexicon.hpp>
#include <sentarc/trajectory.hpp>

#include "oracles.hpp"
#include "testing.hpp"

#include <doctest.h>

#include <algorithm>
#include <numbers>
#include <random>

using namespace sentarc;

namespace {

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b)
{
    REQUIRE(a.size() == b.size());
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d = std::max(d, std::abs(a[i] - b[i]));
    }
    return d;
}

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n, double scale = 1.0)
{
    std::uniform_real_distribution<double> u(-scale, scale);
    std::vector<double> v(n);
    for (auto& x : v) {
        x = u(rng);
    }
    return v;
}

std::vector<oracle::Extremum> as_oracle(const std::vector<LocalExtremum>& found)
{
    std::vector<oracle::Extremum> out;
    for (const auto& e : found) {
        out.push_back({e.bin, e.kind == ExtremumKind::maximum});
    }
    return out;
}

} // namespace

TEST_CASE("DCT: a constant resamples to itself")
{
    for (double c : {0.0, 1.0, -0.37, 1234.5}) {
        const std::vector<double> x(37, c);
        for (auto [l, n] : {std::pair<std::size_t, std::size_t>{1, 2}, {10, 1000}, {37, 5}}) {
            for (double y : dct_lowpass_resample(x, l, n)) {
                CHECK(std::abs(y - c) <= 1e-12 * std::max(1.0, std::abs(c)));
            }
        }
    }
}

TEST_CASE("DCT: a cosine below the cut-off passes unchanged")
{
    const std::size_t n = 64;
    std::vector<double> x(n);
    for (std::size_t t = 0; t < n; ++t) {
        x[t] = std::cos(std::numbers::pi * (2.0 * t + 1.0) * 3.0 / (2.0 * n));
    }
    CHECK(max_abs_diff(dct_lowpass_resample(x, 10, n), x) <= 1e-9);
}

TEST_CASE("DCT: the top frequency is removed")
{
    std::vector<double> x(64);
    for (std::size_t t = 0; t < x.size(); ++t) {
        x[t] = t % 2 == 0 ? 1.0 : -1.0;
    }
    for (double y : dct_lowpass_resample(x, 2, 64)) {
        CHECK(std::abs(y) < 0.05);
    }
}

TEST_CASE("DCT: agrees with the long-double oracle")
{
    std::mt19937_64 rng(1);
    for (int round = 0; round < 100; ++round) {
        const std::size_t n = 1 + rng() % 80;
        const std::size_t l = 1 + rng() % n;
        const std::size_t out = 2 + rng() % 120;
        const auto x = random_vector(rng, n);
        CHECK(max_abs_diff(dct_lowpass_resample(x, l, out), oracle::lowpass_resample(x, l, out)) <= 1e-9);
    }
}

TEST_CASE("DCT: full resolution is the identity")
{
    std::mt19937_64 rng(2);
    for (int round = 0; round < 50; ++round) {
        const std::size_t n = 2 + rng() % 100;
        const auto x = random_vector(rng, n, 3.0);
        CHECK(max_abs_diff(dct_lowpass_resample(x, n, n), x) <= 1e-9);
    }
}

TEST_CASE("DCT: linearity and mean preservation")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    for (int round = 0; round < 50; ++round) {
        const std::size_t n = 1 + rng() % 60;
        const std::size_t l = 1 + rng() % n;
        const std::size_t out = std::max<std::size_t>(2, l + rng() % 200);
        const auto x = random_vector(rng, n);
        const auto z = random_vector(rng, n);
        const double a = coef(rng);
        const double b = coef(rng);
        std::vector<double> mix(n);
        for (std::size_t i = 0; i < n; ++i) {
            mix[i] = a * x[i] + b * z[i];
        }
        const auto rx = dct_lowpass_resample(x, l, out);
        const auto rz = dct_lowpass_resample(z, l, out);
        std::vector<double> expect(out);
        for (std::size_t j = 0; j < out; ++j) {
            expect[j] = a * rx[j] + b * rz[j];
        }
        CHECK(max_abs_diff(dct_lowpass_resample(mix, l, out), expect) <= 1e-9);

        double in_mean = 0.0;
        for (double v : x) {
            in_mean += v;
        }
        in_mean /= static_cast<double>(n);
        double out_mean = 0.0;
        for (double v : rx) {
            out_mean += v;
        }
        out_mean /= static_cast<double>(out);
        CHECK(std::abs(out_mean - in_mean) <= 1e-9);
    }
}

TEST_CASE("DCT: preconditions")
{
    const std::vector<double> x{1.0, 2.0, 3.0};
    CHECK_THROWS_AS(dct_lowpass_resample({}, 1, 10), PreconditionError);
    CHECK_THROWS_AS(dct_lowpass_resample(x, 4, 10), PreconditionError);
    CHECK_THROWS_AS(dct_lowpass_resample(x, 0, 10), PreconditionError);
    CHECK_THROWS_AS(dct_lowpass_resample(x, 2, 1), PreconditionError);
}

TEST_CASE("minmax_scale")
{
    CHECK(minmax_scale(std::vector<double>{0, 5, 10}).values == std::vector<double>{-1, 0, 1});
    CHECK(minmax_scale(std::vector<double>{3, 1, 2}).values == std::vector<double>{1, -1, 0});
    const auto flat = minmax_scale(std::vector<double>{-2, -2, -2});
    CHECK(flat.values == std::vector<double>{0, 0, 0});
    CHECK(flat.degenerate);
    CHECK_THROWS_AS(minmax_scale(std::vector<double>{}), PreconditionError);
}

TEST_CASE("minmax_scale: endpoints and affine invariance")
{
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> a_dist(0.01, 100.0);
    std::uniform_real_distribution<double> b_dist(-50.0, 50.0);
    for (int round = 0; round < 300; ++round) {
        const auto x = random_vector(rng, 2 + rng() % 50);
        const auto s = minmax_scale(x);
        CHECK(*std::max_element(s.values.begin(), s.values.end()) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(*std::min_element(s.values.begin(), s.values.end()) == doctest::Approx(-1.0).epsilon(1e-12));
        const double a = a_dist(rng);
        const double b = b_dist(rng);
        std::vector<double> y(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            y[i] = a * x[i] + b;
        }
        CHECK(max_abs_diff(minmax_scale(y).values, s.values) <= 1e-12);
    }
}

TEST_CASE("extract_trajectory: all-zero series is degenerate")
{
    const SongCollection c({testing::song("A", "1", "2014-01-01", "a b c d e f g h i j k l")});
    const auto stream = concatenate(c);
    TrajectoryParams p;
    p.n_bins = 100;
    const auto t = extract_trajectory(stream, ValenceSeries{std::vector<double>(stream.size(), 0.0)}, p);
    CHECK(t.degenerate);
    CHECK(std::all_of(t.relative.begin(), t.relative.end(), [](double v) { return v == 0.0; }));
    CHECK(std::all_of(t.absolute.begin(), t.absolute.end(), [](double v) { return v == 0.0; }));
    CHECK(find_extrema(t, 1).empty());
}

TEST_CASE("extract_trajectory: a ramp stays monotone up to ripple")
{
    std::string lyrics;
    for (int i = 0; i < 500; ++i) {
        lyrics += "w ";
    }
    const auto stream = concatenate(SongCollection({testing::song("A", "1", "2014-01-01", lyrics)}));
    std::vector<double> ramp(500);
    for (std::size_t i = 0; i < ramp.size(); ++i) {
        ramp[i] = static_cast<double>(i) / 499.0;
    }
    TrajectoryParams p;
    p.n_bins = 1000;
    const auto t = extract_trajectory(stream, ValenceSeries{ramp}, p);
    double running_max = t.relative[0];
    for (double v : t.relative) {
        CHECK(v >= running_max - 0.05);
        running_max = std::max(running_max, v);
    }
    CHECK(t.relative.front() < -0.9);
    CHECK(t.relative.back() > 0.9);
}

TEST_CASE("extract_trajectory: series too short for the filter")
{
    const auto stream = concatenate(SongCollection({testing::song("A", "1", "2014-01-01", "a b c")}));
    CHECK_THROWS_AS(extract_trajectory(stream, ValenceSeries{{1.0, 0.0, -1.0}}, TrajectoryParams{}),
                    PreconditionError);
}

TEST_CASE("demo corpus: the planted dip lands in the middle third")
{
    const auto songs = load_songs(testing::data_dir() / "demo" / "songs.jsonl", SongFormat::jsonl);
    LexiconPaths paths;
    paths.sentiment = testing::data_dir() / "lexicon" / "sentiment.tsv";
    paths.shifters = testing::data_dir() / "lexicon" / "shifters.tsv";
    paths.slang = testing::data_dir() / "slang_starter.tsv";
    const auto lex = load_lexicons(paths);
    const auto stream = apply_slang(concatenate(songs), lex.slang);
    const auto series = score_tokens(stream, lex, ShifterParams{});
    const auto t = extract_trajectory(stream, series, TrajectoryParams{});

    const auto lowest = std::min_element(t.relative.begin(), t.relative.end()) - t.relative.begin();
    const double at = progression_percent(static_cast<std::size_t>(lowest), t.size());
    CHECK(at > 100.0 / 3.0);
    CHECK(at < 200.0 / 3.0);

    // Brute force: the lowest mean over windows of a fifth of the tokens.
    const std::size_t n = series.values.size();
    const std::size_t w = n / 5;
    double best = 1e300;
    std::size_t best_start = 0;
    for (std::size_t s = 0; s + w <= n; ++s) {
        double sum = 0.0;
        for (std::size_t i = s; i < s + w; ++i) {
            sum += series.values[i];
        }
        if (sum < best) {
            best = sum;
            best_start = s;
        }
    }
    const double window_centre = 100.0 * (static_cast<double>(best_start) + w / 2.0) / static_cast<double>(n);
    CHECK(std::abs(window_centre - at) <= 10.0);
}

TEST_CASE("bin dates are non-decreasing and match bin_to_date")
{
    const auto songs = load_songs(testing::data_dir() / "demo" / "songs.jsonl", SongFormat::jsonl);
    const auto stream = concatenate(songs);
    std::vector<double> v(stream.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = std::sin(static_cast<double>(i));
    }
    TrajectoryParams p;
    p.n_bins = 500;
    const auto t = extract_trajectory(stream, ValenceSeries{v}, p);
    for (std::size_t b = 0; b < t.size(); ++b) {
        CHECK(t.bin_dates[b] == bin_to_date(stream, b, t.size()));
        if (b > 0) {
            CHECK(t.bin_dates[b - 1] <= t.bin_dates[b]);
        }
    }
}

TEST_CASE("extrema: triangle")
{
    std::vector<double> tri(21);
    for (std::size_t i = 0; i < tri.size(); ++i) {
        tri[i] = 1.0 - std::abs(static_cast<double>(i) - 10.0) / 10.0;
    }
    const auto e = find_local_extrema(tri, 3);
    REQUIRE(e.size() == 3);
    CHECK(e[0] == LocalExtremum{0, ExtremumKind::minimum, 0.0});
    CHECK(e[1] == LocalExtremum{10, ExtremumKind::maximum, 1.0});
    CHECK(e[2] == LocalExtremum{20, ExtremumKind::minimum, 0.0});
}

TEST_CASE("extrema: constant input and preconditions")
{
    CHECK(find_local_extrema(std::vector<double>(10, 0.5), 2).empty());
    CHECK_THROWS_AS(find_local_extrema(std::vector<double>(10, 0.5), 0), PreconditionError);
    CHECK_THROWS_AS(find_local_extrema(std::vector<double>(10, 0.5), 5), PreconditionError);
}

TEST_CASE("extrema: plateaus report their leftmost bin")
{
    const std::vector<double> v{0, 1, 2, 2, 2, 1, 0, 0, 0, 1};
    const auto e = find_local_extrema(v, 1);
    CHECK(as_oracle(e) == oracle::extrema(v, 1));
    CHECK(e[0].bin == 0);
    CHECK(e[1] == LocalExtremum{2, ExtremumKind::maximum, 2.0});
    CHECK(e[2] == LocalExtremum{6, ExtremumKind::minimum, 0.0});
}

TEST_CASE("extrema: three-period cosine")
{
    const std::size_t n = 1000;
    std::vector<double> v(n);
    for (std::size_t j = 0; j < n; ++j) {
        v[j] = std::cos(2.0 * std::numbers::pi * 3.0 * static_cast<double>(j) / static_cast<double>(n));
    }
    const auto e = find_local_extrema(v, 5);
    CHECK(as_oracle(e) == oracle::extrema(v, 5));
    std::vector<std::size_t> maxima;
    for (const auto& x : e) {
        if (x.kind == ExtremumKind::maximum) {
            maxima.push_back(x.bin);
        }
    }
    CHECK(maxima == std::vector<std::size_t>{0, 333, 667, 999});
}

TEST_CASE("extrema: brute-force scan on random and quantised data")
{
    std::mt19937_64 rng(6);
    for (int round = 0; round < 300; ++round) {
        const std::size_t radius = 1 + rng() % 6;
        const std::size_t n = 2 * radius + 1 + rng() % 80;
        std::vector<double> v(n);
        for (auto& x : v) {
            x = static_cast<double>(rng() % 4); // many ties and plateaus
        }
        CHECK(as_oracle(find_local_extrema(v, radius)) == oracle::extrema(v, radius));
        const auto smooth = random_vector(rng, n);
        CHECK(as_oracle(find_local_extrema(smooth, radius)) == oracle::extrema(smooth, radius));
    }
}

TEST_CASE("default extrema radius is half a percent, rounded up")
{
    CHECK(default_extrema_radius(10000) == 50);
    CHECK(default_extrema_radius(1000) == 5);
    CHECK(default_extrema_radius(1001) == 6);
    CHECK(default_extrema_radius(10) == 1);
    CHECK(progression_percent(0, 10000) == 0.005);
}

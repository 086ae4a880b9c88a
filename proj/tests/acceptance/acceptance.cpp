// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <sentarc/analysis.hpp>
#include <sentarc/lexicon.hpp>
#include <sentarc/loess.hpp>
#include <sentarc/trajectory.hpp>
#include <sentarc/valence.hpp>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "testing.hpp"

#include <fmt/core.h>

#include <chrono>
#include <filesystem>
#include <functional>
#include <random>
#include <set>

using namespace sentarc;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(std::string why)
    {
        if (pass) {
            detail = std::move(why);
        }
        pass = false;
    }
};

// --- 1 -------------------------------------------------------------------------

Outcome classification()
{
    const double table[] = {0.68, -0.60, 0.44, 0.55, -0.05, -0.10, -0.32, 0.21,
                            0.04, -0.01, -0.37, 0.12, -0.07, -0.05, -0.11};
    int similar = 0;
    int dissimilar = 0;
    int independent = 0;
    for (double v : table) {
        switch (classify_similarity(v)) {
        case SimilarityLabel::similar: ++similar; break;
        case SimilarityLabel::dissimilar: ++dissimilar; break;
        default: ++independent; break;
        }
    }
    Outcome o;
    o.detail = fmt::format("{} similar / {} dissimilar / {} independent", similar, dissimilar, independent);
    if (similar != 3 || dissimilar != 3 || independent != 9) {
        o.pass = false;
        o.detail += "; expected 3/3/9. With the +/-0.40 rule only -0.60 is below -0.40, "
                    "-0.32 and -0.37 carry dissimilar reference labels but sit inside the band";
    }
    return o;
}

// --- 2 -------------------------------------------------------------------------

Outcome dct_suite()
{
    Outcome o;
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> val(-5.0, 5.0);
    for (int round = 0; round < 200; ++round) {
        const std::size_t n = 2 + rng() % 80;
        const std::size_t out_len = 2 + rng() % 200;
        const std::size_t keep = 1 + rng() % n;

        const double c = val(rng);
        const std::vector<double> flat(n, c);
        for (double y : dct_lowpass_resample(flat, keep, out_len)) {
            if (std::abs(y - c) > 1e-12) {
                o.fail(fmt::format("constant case {}: off by {:.3g}", round, std::abs(y - c)));
            }
        }

        std::vector<double> x(n);
        std::vector<double> z(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = val(rng);
            z[i] = val(rng);
        }
        const auto id = dct_lowpass_resample(x, n, n);
        for (std::size_t i = 0; i < n; ++i) {
            if (std::abs(id[i] - x[i]) > 1e-9) {
                o.fail(fmt::format("round trip case {}: off by {:.3g}", round, std::abs(id[i] - x[i])));
            }
        }

        const std::size_t freq = rng() % keep;
        std::vector<double> wave(n);
        for (std::size_t t = 0; t < n; ++t) {
            wave[t] = std::cos(std::numbers::pi * (2.0 * t + 1.0) * freq / (2.0 * n));
        }
        const auto kept = dct_lowpass_resample(wave, keep, n);
        for (std::size_t t = 0; t < n; ++t) {
            if (std::abs(kept[t] - wave[t]) > 1e-9) {
                o.fail(fmt::format("cosine case {}: off by {:.3g}", round, std::abs(kept[t] - wave[t])));
            }
        }

        const double a = val(rng);
        const double b = val(rng);
        std::vector<double> mix(n);
        for (std::size_t i = 0; i < n; ++i) {
            mix[i] = a * x[i] + b * z[i];
        }
        const auto fx = dct_lowpass_resample(x, keep, out_len);
        const auto fz = dct_lowpass_resample(z, keep, out_len);
        const auto fm = dct_lowpass_resample(mix, keep, out_len);
        const auto want = oracle::lowpass_resample(x, keep, out_len);
        double mean_in = 0.0;
        double mean_out = 0.0;
        for (double v : x) {
            mean_in += v;
        }
        for (std::size_t j = 0; j < out_len; ++j) {
            if (std::abs(fm[j] - (a * fx[j] + b * fz[j])) > 1e-9) {
                o.fail(fmt::format("linearity case {}", round));
            }
            if (std::abs(fx[j] - want[j]) > 1e-9) {
                o.fail(fmt::format("oracle case {}: off by {:.3g}", round, std::abs(fx[j] - want[j])));
            }
            mean_out += fx[j];
        }
        // Mean preservation holds while no kept frequency aliases onto 0 (keep <= 2 * out_len).
        if (keep <= 2 * out_len && std::abs(mean_in / n - mean_out / out_len) > 1e-9) {
            o.fail(fmt::format("mean case {}", round));
        }
    }
    if (o.pass) {
        o.detail = "200 randomized cases";
    }
    return o;
}

// --- 3 -------------------------------------------------------------------------

Outcome valence_oracle()
{
    Outcome o;
    const SentimentLexicon sentiment({{"good", 1.0}, {"bad", -1.0}});
    const ShifterLexicon shifters({{"not", ShifterKind::negator},
                                   {"very", ShifterKind::amplifier},
                                   {"slightly", ShifterKind::deamplifier},
                                   {"but", ShifterKind::adversative}});
    const oracle::Lexicon lex{
        {{"good", 1.0}, {"bad", -1.0}},
        {{"not", "negator"}, {"very", "amplifier"}, {"slightly", "deamplifier"}, {"but", "adversative"}}};
    const std::vector<std::string> words{"good", "bad", "not", "very", "slightly", "but", "other"};
    std::mt19937_64 rng(3);
    for (int round = 0; round < 1000; ++round) {
        std::vector<std::string> tokens;
        std::vector<std::size_t> starts;
        std::vector<std::size_t> song_of;
        const std::size_t len = 1 + rng() % 12;
        std::size_t song = 0;
        for (std::size_t i = 0; i < len; ++i) {
            if (i > 0 && rng() % 5 == 0) {
                starts.push_back(i);
                ++song;
            }
            tokens.push_back(words[rng() % words.size()]);
            song_of.push_back(song);
        }
        ShifterParams p;
        p.window = 1 + rng() % 6;
        const auto got = score_tokens(tokens, starts, sentiment, shifters, p).values;
        if (got != oracle::valence(tokens, song_of, lex, {p.window, p.amp_weight, p.adv_weight, p.floor})) {
            o.fail(fmt::format("stream {} differs", round));
        }
    }
    if (o.pass) {
        o.detail = "1000 streams, exact";
    }
    return o;
}

// --- 4 -------------------------------------------------------------------------

Outcome minmax_contract()
{
    Outcome o;
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> val(-1e3, 1e3);
    std::uniform_real_distribution<double> scale(1e-3, 1e3);
    for (int round = 0; round < 500; ++round) {
        std::vector<double> v(1 + rng() % 100);
        const bool constant = round % 25 == 0;
        for (auto& x : v) {
            x = constant ? 3.5 : val(rng);
        }
        const auto s = minmax_scale(v);
        const auto [lo, hi] = std::minmax_element(s.values.begin(), s.values.end());
        if (constant || v.size() == 1) {
            if (!s.degenerate || *lo != 0.0 || *hi != 0.0) {
                o.fail(fmt::format("constant vector {} not all zero", round));
            }
            continue;
        }
        if (std::abs(*hi - 1.0) > 1e-12 || std::abs(*lo + 1.0) > 1e-12) {
            o.fail(fmt::format("vector {}: range [{}, {}]", round, *lo, *hi));
        }
        const double a = scale(rng);
        const double b = val(rng);
        std::vector<double> w(v);
        for (auto& x : w) {
            x = a * x + b;
        }
        const auto t = minmax_scale(w);
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (std::abs(t.values[i] - s.values[i]) > 1e-12) {
                o.fail(fmt::format("vector {}: affine drift {:.3g}", round, std::abs(t.values[i] - s.values[i])));
            }
        }
    }
    if (o.pass) {
        o.detail = "500 vectors";
    }
    return o;
}

// --- 5 -------------------------------------------------------------------------

Outcome loess_checks()
{
    Outcome o;
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> gap(0.1, 5.0);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    std::uniform_real_distribution<double> yv(-50.0, 50.0);
    auto increasing = [&](std::size_t n) {
        std::vector<double> x(n);
        double at = 0.0;
        for (auto& v : x) {
            at += gap(rng);
            v = at;
        }
        return x;
    };
    for (int round = 0; round < 100; ++round) {
        const auto x = increasing(4 + rng() % 60);
        const int degree = round % 3;
        const double a = degree >= 2 ? coef(rng) : 0.0;
        const double b = degree >= 1 ? coef(rng) : 0.0;
        const double c = coef(rng);
        std::vector<double> y;
        for (double v : x) {
            y.push_back(a * v * v + b * v + c);
        }
        std::vector<double> eval;
        for (int i = 0; i <= 40; ++i) {
            eval.push_back(x.front() + (x.back() - x.front()) * i / 40.0);
        }
        const auto fit = loess_smooth(x, y, eval, 0.30);
        for (std::size_t i = 0; i < eval.size(); ++i) {
            const double want = a * eval[i] * eval[i] + b * eval[i] + c;
            if (std::abs(fit[i] - want) > 1e-6 * std::max(1.0, std::abs(want))) {
                o.fail(fmt::format("degree {} fixture {}: off by {:.3g}", degree, round, std::abs(fit[i] - want)));
            }
        }
    }
    for (int round = 0; round < 50; ++round) {
        const auto x = increasing(4 + rng() % 60);
        std::vector<double> y;
        for (std::size_t i = 0; i < x.size(); ++i) {
            y.push_back(yv(rng));
        }
        std::vector<double> eval(x);
        for (int i = 0; i <= 30; ++i) {
            eval.push_back(x.front() + (x.back() - x.front()) * i / 30.0);
        }
        const auto fit = loess_smooth(x, y, eval, 0.30);
        for (std::size_t i = 0; i < eval.size(); ++i) {
            const double want = oracle::loess_at(x, y, eval[i], 0.30);
            if (std::abs(fit[i] - want) > 1e-6 * std::max(1.0, std::abs(want))) {
                o.fail(fmt::format("oracle fixture {}: off by {:.3g}", round, std::abs(fit[i] - want)));
            }
        }
    }
    if (o.pass) {
        o.detail = "100 polynomial fixtures, 50 oracle fixtures at span 0.30";
    }
    return o;
}

// --- 6 -------------------------------------------------------------------------

Outcome oov_arithmetic()
{
    Outcome o;
    // 10 tokens, 6 types; "zz" x3 and "yy" x1 are out of vocabulary.
    const FrequencyList reference({"the", "a", "cat", "dog"});
    const std::vector<std::string> tokens{"the", "zz", "cat", "zz", "a", "yy", "the", "zz", "dog", "cat"};
    const auto r = oov_report(tokens, reference, 10);
    if (r.n_tokens != 10 || r.n_oov_tokens != 4 || r.token_oov_rate != 0.4 || r.n_types != 6 ||
        r.n_oov_types != 2 || r.type_oov_rate != 2.0 / 6.0) {
        o.fail("synthetic fixture rates");
    }
    if (r.ranked_oov != std::vector<OovEntry>{{"zz", 3}, {"yy", 1}}) {
        o.fail("synthetic fixture ranking");
    }

    std::mt19937_64 rng(6);
    std::vector<std::string> vocab;
    std::vector<std::string> slang;
    for (int i = 0; i < 40; ++i) {
        vocab.push_back(fmt::format("w{}", i));
        slang.push_back(fmt::format("s{}", i));
    }
    const FrequencyList ref(vocab);
    for (int round = 0; round < 100; ++round) {
        std::vector<std::pair<std::string, std::vector<std::string>>> entries;
        for (const auto& s : slang) {
            if (rng() % 2 == 0) {
                std::vector<std::string> repl;
                for (std::size_t k = 0, n = 1 + rng() % 3; k < n; ++k) {
                    repl.push_back(vocab[rng() % vocab.size()]);
                }
                entries.emplace_back(s, std::move(repl));
            }
        }
        const SlangDictionary dict(std::move(entries));
        std::vector<std::string> corpus;
        for (std::size_t i = 0, n = 1 + rng() % 200; i < n; ++i) {
            corpus.push_back(rng() % 3 == 0 ? slang[rng() % slang.size()] : vocab[rng() % vocab.size()]);
        }
        const auto before = oov_report(corpus, ref, 0);
        const auto after = oov_report(apply_slang(corpus, dict), ref, 0);
        if (after.token_oov_rate > before.token_oov_rate || after.type_oov_rate > before.type_oov_rate ||
            after.n_oov_tokens > before.n_oov_tokens) {
            o.fail(fmt::format("pair {}: OOV rose from {} to {}", round, before.token_oov_rate,
                               after.token_oov_rate));
        }
    }
    if (o.pass) {
        o.detail = "exact rates; 100 random dictionary/corpus pairs";
    }
    return o;
}

// --- 7 -------------------------------------------------------------------------

Outcome lead_lag()
{
    Outcome o;
    const auto peak = *parse_month("2018-01");
    auto near = fixtures::planted_lead_lag(339, peak);
    const auto found = lead_lag_candidates(near.sentiment, std::span(&near.crime, 1), 5, 90);
    if (found.size() != 1 || found[0].lag_days != 40) {
        o.fail("40-day lag not flagged");
    }
    auto far = fixtures::planted_lead_lag(259, peak);
    if (!lead_lag_candidates(far.sentiment, std::span(&far.crime, 1), 5, 90).empty()) {
        o.fail("120-day lag flagged");
    }
    const std::vector<Extremum> trough{{100, ExtremumKind::minimum, -1.0, 10.05, *parse_date("2018-01-28")}};
    const std::vector<CrimeExtrema> crime{
        {"homicide", {{200, ExtremumKind::maximum, 1.0, 20.05, mid_month(*parse_month("2018-03"))}}}};
    const auto dated = lead_lag_candidates(trough, crime, 90);
    if (dated.size() != 1 || dated[0].lag_days != 46) {
        o.fail("2018-01-28 -> mid-March is not 46 days");
    }
    if (o.pass) {
        o.detail = "40 flagged, 120 rejected, example lag 46 days";
    }
    return o;
}

// --- 8, 9 ----------------------------------------------------------------------

std::vector<std::string> report_args(const fs::path& out, int threads)
{
    const auto data = testing::data_dir();
    return {"report",
            "--songs", (data / "demo" / "songs.jsonl").string(),
            "--sentiment", (data / "lexicon" / "sentiment.tsv").string(),
            "--shifters", (data / "lexicon" / "shifters.tsv").string(),
            "--slang", (data / "slang_starter.tsv").string(),
            "--freq", (data / "lexicon" / "freq_test.txt").string(),
            "--crime", (data / "demo" / "crime.csv").string(),
            "--threads", std::to_string(threads),
            "--out", out.string()};
}

std::map<std::string, std::string> directory_contents(const fs::path& dir)
{
    std::map<std::string, std::string> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        files[entry.path().filename().string()] = testing::read_text(entry.path());
    }
    return files;
}

Outcome determinism()
{
    Outcome o;
    testing::TempDir a("accept_a");
    testing::TempDir b("accept_b");
    testing::TempDir c("accept_c");
    const std::pair<const testing::TempDir*, int> runs[] = {{&a, 1}, {&b, 1}, {&c, 8}};
    for (const auto& [dir, threads] : runs) {
        const auto r = testing::run_cli(report_args(dir->path(), threads));
        if (r.code != 0) {
            o.fail(fmt::format("report exited {}: {}", r.code, r.err));
            return o;
        }
    }
    const auto first = directory_contents(a.path());
    if (first != directory_contents(b.path())) {
        o.fail("two 1-thread runs differ");
    }
    if (first != directory_contents(c.path())) {
        o.fail("1-thread and 8-thread runs differ");
    }
    if (o.pass) {
        o.detail = fmt::format("{} files identical across 3 runs", first.size());
    }
    return o;
}

Outcome goldens()
{
    Outcome o;
    testing::TempDir dir("accept_golden");
    const auto r = testing::run_cli(report_args(dir.path(), 0));
    if (r.code != 0) {
        o.fail(fmt::format("report exited {}: {}", r.code, r.err));
        return o;
    }
    std::size_t n = 0;
    for (const auto& entry : fs::directory_iterator(fs::path(SENTARC_GOLDEN_DIR))) {
        const auto name = entry.path().filename().string();
        const auto produced = dir / name;
        if (!fs::exists(produced)) {
            o.fail(name + " not produced");
            continue;
        }
        if (testing::lines_without_comments(testing::read_text(produced)) !=
            testing::lines_without_comments(testing::read_text(entry.path()))) {
            o.fail(name + " differs from golden");
        }
        ++n;
    }
    if (n == 0) {
        o.fail("no golden files found");
    }
    if (o.pass) {
        o.detail = fmt::format("{} golden files match", n);
    }
    return o;
}

struct Criterion {
    int id;
    std::string name;
    double limit_ms;
    std::function<Outcome()> check;
};

} // namespace

int main()
{
    const std::vector<Criterion> criteria{
        {1, "classification of the 15 reference cosines", 1.0, classification},
        {2, "DCT resampling suite", 1000.0, dct_suite},
        {3, "valence matches the enumeration oracle", 1000.0, valence_oracle},
        {4, "min-max scaling contract", 1000.0, minmax_contract},
        {5, "loess reproduction and oracle agreement", 1000.0, loess_checks},
        {6, "OOV arithmetic and translation monotonicity", 1000.0, oov_arithmetic},
        {7, "lead-lag lag window", 1000.0, lead_lag},
        {8, "report determinism across runs and threads", 10000.0, determinism},
        {9, "demo outputs match goldens", 10000.0, goldens},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        if (o.pass && ms > c.limit_ms) {
            o.fail(fmt::format("took {:.1f} ms, limit {:.0f} ms", ms, c.limit_ms));
        }
        failures += o.pass ? 0 : 1;
        fmt::print("[{}] {} {} ({:.1f} ms): {}\n", o.pass ? "PASS" : "FAIL", c.id, c.name, ms, o.detail);
    }
    fmt::print("{} of {} criteria passed\n", criteria.size() - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}

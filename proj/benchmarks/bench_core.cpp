#include <sentarc/analysis.hpp>
#include <sentarc/loess.hpp>
#include <sentarc/trajectory.hpp>
#include <sentarc/valence.hpp>

#include <benchmark/benchmark.h>

#include <random>

using namespace sentarc;

namespace {

std::vector<double> noise(std::size_t n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> d(0.0, 1.0);
    std::vector<double> v(n);
    for (auto& x : v) {
        x = d(rng);
    }
    return v;
}

void BM_DctResample(benchmark::State& state)
{
    const auto x = noise(static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(dct_lowpass_resample(x, default_low_pass, corpus_bins));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DctResample)->Arg(1'000)->Arg(10'000)->Arg(100'000);

void BM_Valence(benchmark::State& state)
{
    const SentimentLexicon sentiment({{"good", 1.0}, {"bad", -1.0}, {"love", 0.8}, {"hate", -0.8}});
    const ShifterLexicon shifters({{"not", ShifterKind::negator},
                                   {"very", ShifterKind::amplifier},
                                   {"slightly", ShifterKind::deamplifier},
                                   {"but", ShifterKind::adversative}});
    const std::vector<std::string> words{"good", "bad", "love", "hate", "not", "very",
                                         "slightly", "but", "the", "road", "night", "we"};
    std::mt19937_64 rng(2);
    std::vector<std::string> tokens(static_cast<std::size_t>(state.range(0)));
    for (auto& t : tokens) {
        t = words[rng() % words.size()];
    }
    std::vector<std::size_t> starts;
    for (std::size_t i = 300; i < tokens.size(); i += 300) {
        starts.push_back(i);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(score_tokens(tokens, starts, sentiment, shifters, ShifterParams{}));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Valence)->Arg(10'000)->Arg(200'000);

void BM_Loess(benchmark::State& state)
{
    // Monthly anchors smoothed onto every trajectory bin, as in crime alignment.
    const auto n = static_cast<std::size_t>(state.range(0));
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = static_cast<double>(i) * 10000.0 / static_cast<double>(n);
    }
    const auto y = noise(n, 3);
    std::vector<double> eval(corpus_bins);
    for (std::size_t i = 0; i < eval.size(); ++i) {
        eval[i] = static_cast<double>(i) * x.back() / static_cast<double>(eval.size() - 1);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(loess_smooth(x, y, eval, default_loess_span));
    }
}
BENCHMARK(BM_Loess)->Arg(60)->Arg(240);

void BM_Extrema(benchmark::State& state)
{
    const auto v = dct_lowpass_resample(noise(5'000, 4), default_low_pass, corpus_bins);
    for (auto _ : state) {
        benchmark::DoNotOptimize(find_local_extrema(v, default_extrema_radius(corpus_bins)));
    }
}
BENCHMARK(BM_Extrema);

void BM_Cosine(benchmark::State& state)
{
    const auto u = noise(artist_bins, 5);
    const auto v = noise(artist_bins, 6);
    for (auto _ : state) {
        benchmark::DoNotOptimize(cosine_similarity(u, v));
    }
}
BENCHMARK(BM_Cosine);

} // namespace
BENCHMARK_MAIN();

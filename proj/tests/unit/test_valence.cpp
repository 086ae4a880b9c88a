#include <sentarc/valence.hpp>

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace sentarc;
using Tokens = std::vector<std::string>;

namespace {

const SentimentLexicon& sentiment()
{
    static const SentimentLexicon lex({{"good", 1.0}, {"bad", -1.0}});
    return lex;
}

const ShifterLexicon& shifters()
{
    static const ShifterLexicon lex({{"not", ShifterKind::negator},
                                     {"very", ShifterKind::amplifier},
                                     {"slightly", ShifterKind::deamplifier},
                                     {"but", ShifterKind::adversative}});
    return lex;
}

std::vector<double> score(const Tokens& tokens, std::vector<std::size_t> starts = {},
                          ShifterParams params = {})
{
    return score_tokens(tokens, starts, sentiment(), shifters(), params).values;
}

void check_close(const std::vector<double>& got, const std::vector<double>& want)
{
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
        CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-15));
    }
}

} // namespace

TEST_CASE("shifter weighting on small streams")
{
    check_close(score({"good"}), {1.0});
    check_close(score({"not", "good"}), {0.0, -1.0});
    check_close(score({"very", "good"}), {0.0, 1.8});
    check_close(score({"slightly", "bad"}), {0.0, -0.2});
    check_close(score({"not", "very", "good"}), {0.0, 0.0, -0.2});
    check_close(score({"good", "but", "bad"}), {1.0, 0.0, -1.25});
    check_close(score({"not", "but", "good"}), {0.0, 0.0, 1.25});
    check_close(score({"not", "not", "good"}), {0.0, 0.0, 1.0});
    check_close(score({"very", "very", "good"}), {0.0, 0.0, 2.6});
}

TEST_CASE("window reaches exactly `window` tokens back")
{
    check_close(score({"not", "x", "x", "x", "good"}), {0, 0, 0, 0, -1.0});
    check_close(score({"not", "x", "x", "x", "x", "good"}), {0, 0, 0, 0, 0, 1.0});
    ShifterParams wide;
    wide.window = 5;
    check_close(score({"not", "x", "x", "x", "x", "good"}, {}, wide), {0, 0, 0, 0, 0, -1.0});
}

TEST_CASE("song boundaries stop the window")
{
    check_close(score({"not", "good"}, {0, 1}), {0.0, 1.0});
    check_close(score({"very", "x", "good"}, {0, 1}), {0.0, 0.0, 1.0});
}

TEST_CASE("parameters are validated")
{
    ShifterParams p;
    p.window = 0;
    CHECK_THROWS_AS(score({"good"}, {}, p), PreconditionError);
    p = {};
    p.floor = 0.0;
    CHECK_THROWS_AS(score({"good"}, {}, p), PreconditionError);
    p = {};
    p.amp_weight = -1.0;
    CHECK_THROWS_AS(score({"good"}, {}, p), PreconditionError);
    p = {};
    p.adv_weight = -0.1;
    CHECK_THROWS_AS(score({"good"}, {}, p), PreconditionError);
}

namespace {

struct RandomCase {
    Tokens tokens;
    std::vector<std::size_t> starts;
    std::vector<std::size_t> song_of;
};

RandomCase random_case(std::mt19937_64& rng, std::size_t max_len)
{
    static const Tokens words{"good", "bad", "not", "very", "slightly", "but", "x"};
    RandomCase c;
    const std::size_t len = 1 + rng() % max_len;
    std::size_t song = 0;
    for (std::size_t i = 0; i < len; ++i) {
        if (i > 0 && rng() % 6 == 0) {
            ++song;
            c.starts.push_back(i);
        }
        c.tokens.push_back(words[rng() % words.size()]);
        c.song_of.push_back(song);
    }
    return c;
}

oracle::Lexicon oracle_lexicon()
{
    return {{{"good", 1.0}, {"bad", -1.0}},
            {{"not", "negator"}, {"very", "amplifier"}, {"slightly", "deamplifier"}, {"but", "adversative"}}};
}

} // namespace

TEST_CASE("matches the enumeration oracle exactly")
{
    std::mt19937_64 rng(101);
    const auto lex = oracle_lexicon();
    for (int round = 0; round < 2000; ++round) {
        const auto c = random_case(rng, 12);
        ShifterParams p;
        p.window = 1 + rng() % 6;
        oracle::Weights w{p.window, p.amp_weight, p.adv_weight, p.floor};
        CHECK(score(c.tokens, c.starts, p) == oracle::valence(c.tokens, c.song_of, lex, w));
    }
}

TEST_CASE("zero preservation, floor and sign rule")
{
    std::mt19937_64 rng(202);
    for (int round = 0; round < 1000; ++round) {
        const auto c = random_case(rng, 20);
        const auto v = score(c.tokens, c.starts);
        for (std::size_t i = 0; i < v.size(); ++i) {
            const auto base = sentiment().valence(c.tokens[i]);
            CHECK((v[i] == 0.0) == !base.has_value());
            if (!base) {
                continue;
            }
            CHECK(std::abs(v[i]) >= 0.2 * std::abs(*base) - 1e-15);

            // Sign rule in contexts without an adversative.
            int negators = 0;
            bool adversative = false;
            for (std::size_t back = 1; back <= 4 && back <= i && c.song_of[i - back] == c.song_of[i]; ++back) {
                const auto k = shifters().kind(c.tokens[i - back]);
                adversative = adversative || k == ShifterKind::adversative;
                negators += k == ShifterKind::negator;
            }
            if (!adversative) {
                CHECK((v[i] > 0) == ((*base > 0) == (negators % 2 == 0)));
            }
        }
    }
}

TEST_CASE("window locality")
{
    std::mt19937_64 rng(303);
    static const Tokens words{"good", "bad", "not", "very", "slightly", "but", "x"};
    for (int round = 0; round < 500; ++round) {
        auto c = random_case(rng, 20);
        const auto before = score(c.tokens, c.starts);
        const std::size_t i = rng() % c.tokens.size();
        if (i < 5) {
            continue;
        }
        const std::size_t j = rng() % (i - 4); // more than 4 tokens before i
        c.tokens[j] = words[rng() % words.size()];
        CHECK(score(c.tokens, c.starts)[i] == before[i]);
    }
}

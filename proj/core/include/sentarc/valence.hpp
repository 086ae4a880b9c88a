#pragma once

#include <sentarc/corpus.hpp>
#include <sentarc/lexicon.hpp>

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace sentarc {

/// Constants of the valence-shifter weighting.
struct ShifterParams {
    std::size_t window = 4;  // preceding tokens examined
    double amp_weight = 0.8; // per net amplifier
    double adv_weight = 0.25; // boost after an adversative conjunction
    double floor = 0.2;      // lower bound on the amplification factor

    /// Throws PreconditionError unless window >= 1, amp_weight > 0,
    /// 0 < floor <= 1 and adv_weight >= 0.
    void validate() const;
};

/// One modified sentiment value per token; zero exactly where the token has
/// no sentiment-lexicon entry.
struct ValenceSeries {
    std::vector<double> values;
};

/// Scores each sentiment-bearing token from its backward context.
///
/// The context is at most `window` preceding tokens, cut at the start of
/// the token's song and at the most recent adversative. Within it, count
/// negators N, amplifiers A and de-amplifiers D; an odd N swaps A and D.
/// The value is
///
///     v * (-1)^N * max(floor, 1 + amp_weight * (A - D)) * (1 + adv_weight * [cut by adversative])
///
/// `song_starts` lists token indices where a song begins (0 may be omitted).
ValenceSeries score_tokens(std::span<const std::string> tokens,
                           std::span<const std::size_t> song_starts,
                           const SentimentLexicon& sentiment, const ShifterLexicon& shifters,
                           const ShifterParams& params);

ValenceSeries score_tokens(const TokenStream& stream, const LexiconSet& lexicons,
                           const ShifterParams& params);

} // namespace sentarc

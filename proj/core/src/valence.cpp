#include <sentarc/valence.hpp>

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace sentarc {

void ShifterParams::validate() const
{
    if (window < 1) {
        throw PreconditionError("shifter window must be at least 1");
    }
    if (!(amp_weight > 0.0) || !std::isfinite(amp_weight)) {
        throw PreconditionError(fmt::format("amp_weight must be > 0 (got {})", amp_weight));
    }
    if (!(floor > 0.0 && floor <= 1.0)) {
        throw PreconditionError(fmt::format("floor must be in (0, 1] (got {})", floor));
    }
    if (!(adv_weight >= 0.0) || !std::isfinite(adv_weight)) {
        throw PreconditionError(fmt::format("adv_weight must be >= 0 (got {})", adv_weight));
    }
}

ValenceSeries score_tokens(std::span<const std::string> tokens,
                           std::span<const std::size_t> song_starts,
                           const SentimentLexicon& sentiment, const ShifterLexicon& shifters,
                           const ShifterParams& params)
{
    params.validate();

    ValenceSeries series;
    series.values.assign(tokens.size(), 0.0);

    auto next_start = song_starts.begin();
    std::size_t song_start = 0;

    for (std::size_t i = 0; i < tokens.size(); ++i) {
        while (next_start != song_starts.end() && *next_start <= i) {
            song_start = *next_start++;
        }
        const auto base = sentiment.valence(tokens[i]);
        if (!base) {
            continue;
        }

        const std::size_t lower = i - std::min(params.window, i - song_start);
        int negators = 0;
        int amplifiers = 0;
        int deamplifiers = 0;
        bool adversative = false;
        for (std::size_t j = i; j > lower; --j) {
            const auto kind = shifters.kind(tokens[j - 1]);
            if (!kind) {
                continue;
            }
            if (*kind == ShifterKind::adversative) {
                adversative = true;
                break;
            }
            switch (*kind) {
            case ShifterKind::negator:
                ++negators;
                break;
            case ShifterKind::amplifier:
                ++amplifiers;
                break;
            case ShifterKind::deamplifier:
                ++deamplifiers;
                break;
            case ShifterKind::adversative:
                break;
            }
        }
        if (negators % 2 == 1) {
            std::swap(amplifiers, deamplifiers);
        }

        const double sign = negators % 2 == 1 ? -1.0 : 1.0;
        const double amplification =
            std::max(params.floor, 1.0 + params.amp_weight * static_cast<double>(amplifiers - deamplifiers));
        const double contrast = 1.0 + params.adv_weight * (adversative ? 1.0 : 0.0);
        series.values[i] = *base * sign * amplification * contrast;
    }
    return series;
}

ValenceSeries score_tokens(const TokenStream& stream, const LexiconSet& lexicons,
                           const ShifterParams& params)
{
    const auto starts = stream.song_boundaries();
    return score_tokens(stream.tokens(), starts, lexicons.sentiment, lexicons.shifters, params);
}

} // namespace sentarc

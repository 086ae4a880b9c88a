#include <sentarc/loess.hpp>

#include <sentarc/error.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include <fmt/format.h>

namespace sentarc {

namespace {

double tricube(double r)
{
    if (r >= 1.0) {
        return 0.0;
    }
    const double t = 1.0 - r * r * r;
    return t * t * t;
}

// Weighted least squares by Householder QR on the sqrt(w)-scaled design
// [1, u, u^2, ...] (no normal equations, so tiny weights stay usable).
// Returns the intercept, or nothing when a column is numerically dependent
// on the earlier ones.
std::optional<double> wls_intercept(std::span<const double> u, std::span<const double> sw,
                                    std::span<const double> swy, std::size_t cols)
{
    const std::size_t m = u.size();
    if (m < cols) {
        return std::nullopt;
    }
    std::vector<std::array<double, 3>> a(m);
    std::vector<double> b(swy.begin(), swy.end());
    for (std::size_t i = 0; i < m; ++i) {
        double p = sw[i];
        for (std::size_t c = 0; c < cols; ++c) {
            a[i][c] = p;
            p *= u[i];
        }
    }
    std::array<double, 3> diag{};
    for (std::size_t k = 0; k < cols; ++k) {
        double col_sq = 0.0; // of the original column, for the rank test
        for (std::size_t i = 0; i < m; ++i) {
            double p = sw[i];
            for (std::size_t c = 0; c < k; ++c) {
                p *= u[i];
            }
            col_sq += p * p;
        }
        double sq = 0.0;
        for (std::size_t i = k; i < m; ++i) {
            sq += a[i][k] * a[i][k];
        }
        const double col_norm = std::sqrt(col_sq);
        const double norm = std::sqrt(sq);
        if (!(norm > 1e-12 * col_norm)) {
            return std::nullopt;
        }
        const double alpha = a[k][k] > 0.0 ? -norm : norm;
        // v = a[k:, k] - alpha e_1, applied as H = I - 2 v v^T / (v^T v)
        std::vector<double> v(m - k);
        for (std::size_t i = k; i < m; ++i) {
            v[i - k] = a[i][k];
        }
        v[0] -= alpha;
        double vv = 0.0;
        for (double e : v) {
            vv += e * e;
        }
        for (std::size_t c = k + 1; c < cols; ++c) {
            double dot = 0.0;
            for (std::size_t i = k; i < m; ++i) {
                dot += v[i - k] * a[i][c];
            }
            const double f = 2.0 * dot / vv;
            for (std::size_t i = k; i < m; ++i) {
                a[i][c] -= f * v[i - k];
            }
        }
        double dot = 0.0;
        for (std::size_t i = k; i < m; ++i) {
            dot += v[i - k] * b[i];
        }
        const double f = 2.0 * dot / vv;
        for (std::size_t i = k; i < m; ++i) {
            b[i] -= f * v[i - k];
        }
        diag[k] = alpha;
    }
    std::array<double, 3> beta{};
    for (std::size_t r = cols; r-- > 0;) {
        double acc = b[r];
        for (std::size_t c = r + 1; c < cols; ++c) {
            acc -= a[r][c] * beta[c];
        }
        beta[r] = acc / diag[r];
    }
    if (!std::isfinite(beta[0])) {
        return std::nullopt;
    }
    return beta[0];
}

double fit_at(std::span<const double> x, std::span<const double> y, double x0, std::size_t q)
{
    const std::size_t n = x.size();

    // Grow a window of the q nearest points outward from x0; on equal
    // distance the left point wins.
    std::size_t right = static_cast<std::size_t>(std::lower_bound(x.begin(), x.end(), x0) - x.begin());
    std::size_t left = right; // window is [left, right)
    double h = 0.0;
    for (std::size_t taken = 0; taken < q; ++taken) {
        const bool has_left = left > 0;
        const bool has_right = right < n;
        const double dl = has_left ? x0 - x[left - 1] : 0.0;
        const double dr = has_right ? x[right] - x0 : 0.0;
        if (has_left && (!has_right || dl <= dr)) {
            --left;
            h = std::max(h, dl);
        } else {
            ++right;
            h = std::max(h, dr);
        }
    }

    std::vector<double> u;
    std::vector<double> sw;
    std::vector<double> swy;
    double weight_sum = 0.0;
    double weighted_y = 0.0;
    for (std::size_t i = left; i < right; ++i) {
        const double d = std::abs(x[i] - x0);
        const double w = h > 0.0 ? tricube(d / h) : 1.0;
        if (w <= 0.0) {
            continue;
        }
        const double s = std::sqrt(w);
        u.push_back((x[i] - x0) / (h > 0.0 ? h : 1.0));
        sw.push_back(s);
        swy.push_back(s * y[i]);
        weight_sum += w;
        weighted_y += w * y[i];
    }

    for (std::size_t cols : {3, 2}) {
        if (auto intercept = wls_intercept(u, sw, swy, cols)) {
            return *intercept;
        }
    }
    return weighted_y / weight_sum;
}

} // namespace

std::vector<double> loess_smooth(std::span<const double> x, std::span<const double> y,
                                 std::span<const double> eval_at, double span)
{
    if (x.size() != y.size()) {
        throw PreconditionError(fmt::format("loess: {} x values but {} y values", x.size(), y.size()));
    }
    if (x.size() < 4) {
        throw PreconditionError(fmt::format("loess needs at least 4 points (got {})", x.size()));
    }
    if (!(span > 0.0 && span <= 1.0)) {
        throw PreconditionError(fmt::format("loess span must be in (0, 1] (got {})", span));
    }
    for (std::size_t i = 1; i < x.size(); ++i) {
        if (!(x[i] > x[i - 1])) {
            throw PreconditionError("loess: x values must be strictly increasing");
        }
    }

    const std::size_t n = x.size();
    const auto spanned = static_cast<std::size_t>(std::ceil(span * static_cast<double>(n)));
    const std::size_t q = std::min(n, std::max<std::size_t>(4, spanned));

    std::vector<double> out;
    out.reserve(eval_at.size());
    for (double x0 : eval_at) {
        out.push_back(fit_at(x, y, x0, q));
    }
    return out;
}

} // namespace sentarc

#include "cli/svg.hpp"

#include <algorithm>
#include <array>

#include <fmt/format.h>

namespace sentarc::cli::svg {

namespace {

constexpr double width = 900.0;
constexpr double panel_height = 260.0;
constexpr double margin_left = 60.0;
constexpr double margin_right = 170.0;
constexpr double margin_top = 40.0;
constexpr double panel_gap = 50.0;
constexpr std::size_t max_points = 1000;

std::string escape_xml(std::string_view text)
{
    std::string out;
    for (char c : text) {
        switch (c) {
        case '&':
            out += "&amp;";
            break;
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        case '"':
            out += "&quot;";
            break;
        default:
            out.push_back(c);
        }
    }
    return out;
}

// "--" may not appear inside an XML comment.
std::string escape_comment(std::string_view text)
{
    std::string out(text);
    for (std::size_t pos = 0; (pos = out.find("--", pos)) != std::string::npos;) {
        out.replace(pos, 2, "- -");
    }
    return out;
}

} // namespace

std::string_view palette(std::size_t i)
{
    static constexpr std::array<std::string_view, 8> colors{
        "#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"};
    return colors[i % colors.size()];
}

std::string render(std::string_view title, std::span<const Panel> panels,
                   std::span<const std::string> comment_lines)
{
    const double plot_w = width - margin_left - margin_right;
    const double height = margin_top + static_cast<double>(panels.size()) * (panel_height + panel_gap);

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<!--\n";
    for (const auto& line : comment_lines) {
        out += escape_comment(line);
        out += '\n';
    }
    out += "-->\n";
    out += fmt::format("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" "
                       "viewBox=\"0 0 {:.0f} {:.0f}\" font-family=\"sans-serif\" font-size=\"11\">\n",
                       width, height, width, height);
    out += fmt::format("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    out += fmt::format("<text x=\"{:.1f}\" y=\"22\" font-size=\"14\">{}</text>\n", margin_left,
                       escape_xml(title));

    for (std::size_t p = 0; p < panels.size(); ++p) {
        const auto& panel = panels[p];
        const double top = margin_top + static_cast<double>(p) * (panel_height + panel_gap) + 10.0;
        const double bottom = top + panel_height - 30.0;
        const double span = panel.y_max > panel.y_min ? panel.y_max - panel.y_min : 1.0;
        const auto px = [&](double x) { return margin_left + plot_w * std::clamp(x, 0.0, 100.0) / 100.0; };
        const auto py = [&](double y) { return bottom - (bottom - top) * (y - panel.y_min) / span; };

        out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\">{}</text>\n", margin_left, top - 4.0,
                           escape_xml(panel.title));
        out += fmt::format("<rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"{:.1f}\" height=\"{:.1f}\" "
                           "fill=\"none\" stroke=\"#999\"/>\n",
                           margin_left, top, plot_w, bottom - top);
        if (panel.y_min < 0.0 && panel.y_max > 0.0) {
            out += fmt::format("<line x1=\"{:.1f}\" y1=\"{:.2f}\" x2=\"{:.1f}\" y2=\"{:.2f}\" "
                               "stroke=\"#ccc\" stroke-dasharray=\"4 3\"/>\n",
                               margin_left, py(0.0), margin_left + plot_w, py(0.0));
        }
        for (int tick = 0; tick <= 10; ++tick) {
            const double x = px(tick * 10.0);
            out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{}%</text>\n",
                               x, bottom + 14.0, tick * 10);
        }
        out += fmt::format("<text x=\"{:.1f}\" y=\"{:.2f}\" text-anchor=\"end\">{:.2f}</text>\n",
                           margin_left - 4.0, py(panel.y_max) + 4.0, panel.y_max);
        out += fmt::format("<text x=\"{:.1f}\" y=\"{:.2f}\" text-anchor=\"end\">{:.2f}</text>\n",
                           margin_left - 4.0, py(panel.y_min), panel.y_min);

        for (std::size_t l = 0; l < panel.lines.size(); ++l) {
            const auto& line = panel.lines[l];
            const std::size_t n = std::min(line.x.size(), line.y.size());
            const std::size_t stride = std::max<std::size_t>(1, (n + max_points - 1) / max_points);
            std::string points;
            for (std::size_t i = 0; i < n; i += stride) {
                points += fmt::format("{:.2f},{:.2f} ", px(line.x[i]), py(line.y[i]));
            }
            if (n > 0 && (n - 1) % stride != 0) {
                points += fmt::format("{:.2f},{:.2f} ", px(line.x[n - 1]), py(line.y[n - 1]));
            }
            if (!points.empty()) {
                points.pop_back();
            }
            out += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"{:.1f}\" "
                               "points=\"{}\"/>\n",
                               line.color, line.width, points);
            const double ly = top + 14.0 + 16.0 * static_cast<double>(l);
            const double lx = margin_left + plot_w + 10.0;
            out += fmt::format("<line x1=\"{:.1f}\" y1=\"{:.1f}\" x2=\"{:.1f}\" y2=\"{:.1f}\" "
                               "stroke=\"{}\" stroke-width=\"2\"/>\n",
                               lx, ly - 4.0, lx + 18.0, ly - 4.0, line.color);
            out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\">{}</text>\n", lx + 24.0, ly,
                               escape_xml(line.label));
        }
    }
    out += "</svg>\n";
    return out;
}

} // namespace sentarc::cli::svg

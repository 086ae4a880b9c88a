#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sentarc::cli::svg {

struct Line {
    std::string label;
    std::string color;
    std::vector<double> x; // progression percent, 0..100
    std::vector<double> y;
    double width = 1.5;
};

struct Panel {
    std::string title;
    double y_min = -1.0;
    double y_max = 1.0;
    std::vector<Line> lines;
};

/// Static line chart: panels stacked vertically over a shared 0-100% x axis.
/// `comment_lines` are embedded in an XML comment at the top.
std::string render(std::string_view title, std::span<const Panel> panels,
                   std::span<const std::string> comment_lines);

/// Fixed palette used for crime series and artists, cycled.
std::string_view palette(std::size_t i);

} // namespace sentarc::cli::svg

#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace couette::cli {

/// Raster-of-rects heat map. Values shade each cell; flagged cells (the
/// certified region) are drawn in blue, the rest in warm gray.
struct HeatMap {
    int nx = 0;
    int ny = 0;
    double x_min = 0.0, x_max = 1.0;
    double y_min = 0.0, y_max = 1.0;
    std::string x_label = "x";
    std::string y_label = "y";
    std::string title;
    std::vector<double> value;       // nx * ny, row-major in y
    std::vector<std::uint8_t> flag;  // same layout
};

void write_svg_heatmap(std::ostream& os, const HeatMap& map);

} // namespace couette::cli

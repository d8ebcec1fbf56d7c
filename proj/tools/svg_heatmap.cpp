#include "svg_heatmap.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace couette::cli {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

} // namespace

void write_svg_heatmap(std::ostream& os, const HeatMap& map) {
    const int cell = 6;
    const int margin_left = 64, margin_bottom = 48, margin_top = 36,
              margin_right = 16;
    const int plot_w = map.nx * cell;
    const int plot_h = map.ny * cell;
    const int width = margin_left + plot_w + margin_right;
    const int height = margin_top + plot_h + margin_bottom;

    double vmax = 0.0;
    for (double v : map.value) {
        if (std::isfinite(v)) vmax = std::max(vmax, std::abs(v));
    }
    if (vmax == 0.0) vmax = 1.0;

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
       << "\" height=\"" << height << "\">\n";
    os << "<rect width=\"" << width << "\" height=\"" << height
       << "\" fill=\"white\"/>\n";
    if (!map.title.empty()) {
        os << "<text x=\"" << margin_left << "\" y=\"20\" font-family=\"monospace\" "
              "font-size=\"13\">"
           << map.title << "</text>\n";
    }

    for (int j = 0; j < map.ny; ++j) {
        for (int i = 0; i < map.nx; ++i) {
            const std::size_t idx =
                static_cast<std::size_t>(j) * static_cast<std::size_t>(map.nx) +
                static_cast<std::size_t>(i);
            const double t =
                std::clamp(std::abs(map.value[idx]) / vmax, 0.0, 1.0);
            int r, g, b;
            if (map.flag[idx]) {
                r = static_cast<int>(235 - 180 * t);
                g = static_cast<int>(242 - 140 * t);
                b = 255;
            } else {
                r = 250;
                g = static_cast<int>(245 - 110 * t);
                b = static_cast<int>(240 - 160 * t);
            }
            // y axis points up: row 0 is the bottom of the plot.
            const int px = margin_left + i * cell;
            const int py = margin_top + (map.ny - 1 - j) * cell;
            os << "<rect x=\"" << px << "\" y=\"" << py << "\" width=\"" << cell
               << "\" height=\"" << cell << "\" fill=\"rgb(" << r << ',' << g
               << ',' << b << ")\"/>\n";
        }
    }

    os << "<rect x=\"" << margin_left << "\" y=\"" << margin_top << "\" width=\""
       << plot_w << "\" height=\"" << plot_h
       << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";

    const int y_axis = margin_top + plot_h;
    os << "<text x=\"" << margin_left << "\" y=\"" << y_axis + 16
       << "\" font-family=\"monospace\" font-size=\"11\">" << fmt(map.x_min)
       << "</text>\n";
    os << "<text x=\"" << margin_left + plot_w - 24 << "\" y=\"" << y_axis + 16
       << "\" font-family=\"monospace\" font-size=\"11\">" << fmt(map.x_max)
       << "</text>\n";
    os << "<text x=\"" << margin_left + plot_w / 2 << "\" y=\"" << y_axis + 32
       << "\" font-family=\"monospace\" font-size=\"12\">" << map.x_label
       << "</text>\n";
    os << "<text x=\"8\" y=\"" << y_axis << "\" font-family=\"monospace\" "
          "font-size=\"11\">"
       << fmt(map.y_min) << "</text>\n";
    os << "<text x=\"8\" y=\"" << margin_top + 10
       << "\" font-family=\"monospace\" font-size=\"11\">" << fmt(map.y_max)
       << "</text>\n";
    os << "<text x=\"8\" y=\"" << margin_top + plot_h / 2
       << "\" font-family=\"monospace\" font-size=\"12\">" << map.y_label
       << "</text>\n";
    os << "</svg>\n";
}

} // namespace couette::cli

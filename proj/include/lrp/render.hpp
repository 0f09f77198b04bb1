#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lrp/graph.hpp"

namespace lrp {

struct RasterImage {
    Index width = 0;
    Index height = 0;
    std::vector<std::uint8_t> rgb;  // row-major, 3 bytes per pixel
};

// L x L raster of a d = 2 graph: largest component blue, second-largest red,
// origin's component green when it is neither, every other site gray.
// Pixel columns follow axis 0 left to right, rows follow axis 1 top to
// bottom starting at the maximal coordinate.
RasterImage render_components(const SampledGraph& graph);

// Binary portable pixmap (P6).
void write_ppm(const std::string& path, const RasterImage& image);

}  // namespace lrp

#include "lrp/render.hpp"

#include <fstream>
#include <stdexcept>

#include "lrp/components.hpp"

namespace lrp {

RasterImage render_components(const SampledGraph& graph) {
    if (graph.box().dim() != 2) throw std::invalid_argument("render_components: requires d = 2");
    const LatticeBox& box = graph.box();
    const Index L = box.side();
    const Index n = box.site_count();

    UnionFind uf(n);
    for (const auto& e : graph.edges()) uf.unite(e.first, e.second);

    // Leading roots under the same tie-break as the component report.
    Index c1_root = -1, c2_root = -1, best = 0, second = 0;
    std::vector<Index> first_seen;
    {
        std::vector<std::uint8_t> seen(static_cast<std::size_t>(n), 0);
        for (Index i = 0; i < n; ++i) {
            Index r = uf.find(i);
            if (seen[static_cast<std::size_t>(r)]) continue;
            seen[static_cast<std::size_t>(r)] = 1;
            Index s = uf.component_size(r);
            if (s > best) {
                second = best;
                c2_root = c1_root;
                best = s;
                c1_root = r;
            } else if (s > second) {
                second = s;
                c2_root = r;
            }
        }
    }
    if (best == n) c2_root = -1;
    const Index c0_root = uf.find(box.origin_index());

    const std::uint8_t kGiant[3] = {53, 101, 213};
    const std::uint8_t kRunnerUp[3] = {213, 62, 53};
    const std::uint8_t kOrigin[3] = {53, 176, 88};
    const std::uint8_t kOther[3] = {168, 168, 168};

    RasterImage img;
    img.width = L;
    img.height = L;
    img.rgb.assign(static_cast<std::size_t>(3 * L * L), 0);
    std::vector<Coord> c(2);
    for (Index i = 0; i < n; ++i) {
        box.coord_of(i, c);
        Index px = c[0] - box.lo();
        Index py = box.hi() - c[1];
        std::size_t at = static_cast<std::size_t>(3 * (py * L + px));
        Index r = uf.find(i);
        const std::uint8_t* color = kOther;
        if (r == c1_root) color = kGiant;
        else if (r == c2_root) color = kRunnerUp;
        else if (r == c0_root) color = kOrigin;
        img.rgb[at] = color[0];
        img.rgb[at + 1] = color[1];
        img.rgb[at + 2] = color[2];
    }
    return img;
}

void write_ppm(const std::string& path, const RasterImage& image) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "P6\n" << image.width << ' ' << image.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(image.rgb.data()), static_cast<std::streamsize>(image.rgb.size()));
}

}  // namespace lrp

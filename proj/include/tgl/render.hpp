#pragma once

// Strip-style SVG rendering: leaves on two vertical lines, trees fanned out
// to either side, matching drawn as straight segments. Output is byte-stable
// for fixed input and options.

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include "tgl/common.hpp"
#include "tgl/tanglegram.hpp"

namespace tgl {

struct RenderSpec {
    int width = 800;
    int height = 600;
    int leaf_gap = 24;
    bool show_crossing_count = false;
};

struct Segment {
    double x1, y1, x2, y2;
};

namespace detail {

constexpr double kRenderMargin = 20.0;

inline void check_render_spec(const RenderSpec& spec, int n) {
    if (spec.width <= 0 || spec.height <= 0 || spec.leaf_gap <= 0)
        throw std::invalid_argument("render: dimensions must be positive");
    double usable = spec.height - 2 * kRenderMargin;
    if (usable <= 0 || (n - 1) * static_cast<double>(spec.leaf_gap) > usable)
        throw std::invalid_argument("render: leaves do not fit at the given gap");
}

// y of each leaf label, centered in the strip.
inline std::vector<double> leaf_y(const Tree& t, const std::vector<uint8_t>& orient, const RenderSpec& spec) {
    std::vector<int> pos = leaf_positions(t, orient);
    double span = (t.n_leaves - 1) * static_cast<double>(spec.leaf_gap);
    double top = kRenderMargin + (spec.height - 2 * kRenderMargin - span) / 2;
    std::vector<double> y(t.n_leaves);
    for (int l = 0; l < t.n_leaves; ++l) y[l] = top + pos[l] * static_cast<double>(spec.leaf_gap);
    return y;
}

inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

} // namespace detail

// Straight matching segments in final pixel coordinates; the same geometry
// the SVG emits, so intersection counts can be checked against the layout.
inline std::vector<Segment> matching_segments(const Layout& d, const RenderSpec& spec) {
    const int n = d.tg.size();
    detail::check_render_spec(spec, n);
    double x_left = spec.width * 0.35, x_right = spec.width * 0.65;
    std::vector<double> ly = detail::leaf_y(d.tg.left, d.orient_left, spec);
    std::vector<double> ry = detail::leaf_y(d.tg.right, d.orient_right, spec);
    std::vector<Segment> segs(n);
    for (int l = 0; l < n; ++l) segs[l] = {x_left, ly[l], x_right, ry[d.tg.sigma[l]]};
    return segs;
}

inline std::string render_svg(const Layout& d, const RenderSpec& spec) {
    const int n = d.tg.size();
    detail::check_render_spec(spec, n);
    double x_left = spec.width * 0.35, x_right = spec.width * 0.65;
    std::vector<double> ly = detail::leaf_y(d.tg.left, d.orient_left, spec);
    std::vector<double> ry = detail::leaf_y(d.tg.right, d.orient_right, spec);

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(spec.width) + "\" height=\"" +
           std::to_string(spec.height) + "\" viewBox=\"0 0 " + std::to_string(spec.width) + " " +
           std::to_string(spec.height) + "\">\n";

    // tree edges: internal vertices sit at the midpoint height of their
    // children, one depth step further out per level above the leaves
    auto draw_tree = [&](const Tree& t, const std::vector<double>& leafy, double x_line, bool leftwards) {
        int V = t.vertex_count();
        std::vector<int> level(V, 0);
        std::vector<double> y(V, 0.0), x(V, 0.0);
        std::vector<int> order(V);
        for (int v = 0; v < V; ++v) order[v] = v;
        std::sort(order.begin(), order.end(), [&](int a, int b) { return t.depth[a] > t.depth[b]; });
        int max_level = 0;
        for (int v : order) {
            if (t.is_leaf(v)) {
                y[v] = leafy[t.leaf_label[v]];
                continue;
            }
            level[v] = 1 + std::max(level[t.child[v][0]], level[t.child[v][1]]);
            y[v] = (y[t.child[v][0]] + y[t.child[v][1]]) / 2;
            max_level = std::max(max_level, level[v]);
        }
        double room = leftwards ? x_line - detail::kRenderMargin : spec.width - detail::kRenderMargin - x_line;
        double dx = max_level > 0 ? room / max_level : 0.0;
        for (int v = 0; v < V; ++v) x[v] = leftwards ? x_line - level[v] * dx : x_line + level[v] * dx;
        for (int v = 0; v < V; ++v) {
            if (t.is_leaf(v)) continue;
            for (int c : t.child[v])
                svg += "  <line class=\"tree\" x1=\"" + detail::fmt(x[v]) + "\" y1=\"" + detail::fmt(y[v]) +
                       "\" x2=\"" + detail::fmt(x[c]) + "\" y2=\"" + detail::fmt(y[c]) +
                       "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        }
    };
    draw_tree(d.tg.left, ly, x_left, true);
    draw_tree(d.tg.right, ry, x_right, false);

    for (const Segment& s : matching_segments(d, spec))
        svg += "  <line class=\"match\" x1=\"" + detail::fmt(s.x1) + "\" y1=\"" + detail::fmt(s.y1) + "\" x2=\"" +
               detail::fmt(s.x2) + "\" y2=\"" + detail::fmt(s.y2) + "\" stroke=\"crimson\" stroke-width=\"1\"/>\n";

    if (spec.show_crossing_count)
        svg += "  <text x=\"" + detail::fmt(detail::kRenderMargin) + "\" y=\"" +
               detail::fmt(spec.height - detail::kRenderMargin / 2) + "\" font-size=\"12\">crossings " +
               std::to_string(crossings(d)) + "</text>\n";

    svg += "</svg>\n";
    return svg;
}

} // namespace tgl

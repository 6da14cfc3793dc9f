#include "rigidkit/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "rigidkit/errors.hpp"

namespace rigidkit {

namespace {

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", x);
    return buf;
}

}  // namespace

std::string render_svg(const SimpleGraph& g, const Placement& p, const std::optional<Velocity>& flex) {
    if (p.dim() != 2) throw InputError("render draws 2D frameworks only (got d=" + std::to_string(p.dim()) + ")");
    if (p.num_vertices() != g.num_vertices()) throw InputError("placement does not match the graph");
    const int n = g.num_vertices();
    if (n == 0) throw InputError("nothing to render");
    Eigen::Vector2d lo = p.points.colwise().minCoeff().transpose(), hi = p.points.colwise().maxCoeff().transpose();
    double side = std::max({hi.x() - lo.x(), hi.y() - lo.y(), 1e-9});

    double arrowScale = 0.0;
    if (flex) {
        if (flex->size() != 2 * n) throw InputError("flex does not match the placement");
        double longest = 0.0;
        for (int v = 0; v < n; ++v) longest = std::max(longest, flex->segment(2 * v, 2).norm());
        if (longest > 0) arrowScale = 0.15 * side / longest;
    }

    // Map to a 400-unit canvas with a margin of one arrow length, y pointing up.
    const double margin = 0.2 * side, canvas = 400.0;
    const double scale = canvas / (side + 2 * margin);
    auto X = [&](double x) { return (x - lo.x() + margin) * scale; };
    auto Y = [&](double y) { return (hi.y() - y + margin) * scale; };
    const double w = (hi.x() - lo.x() + 2 * margin) * scale, h = (hi.y() - lo.y() + 2 * margin) * scale;

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(w) << "\" height=\"" << fmt(h) << "\" viewBox=\"0 0 "
        << fmt(w) << ' ' << fmt(h) << "\">\n";
    out << "<defs><marker id=\"head\" markerWidth=\"8\" markerHeight=\"8\" refX=\"6\" refY=\"3\" orient=\"auto\">"
           "<path d=\"M0,0 L6,3 L0,6 z\" fill=\"#c0392b\"/></marker></defs>\n";
    for (const auto& e : g.edges())
        out << "<line x1=\"" << fmt(X(p.points(e.first, 0))) << "\" y1=\"" << fmt(Y(p.points(e.first, 1))) << "\" x2=\""
            << fmt(X(p.points(e.second, 0))) << "\" y2=\"" << fmt(Y(p.points(e.second, 1)))
            << "\" stroke=\"#222\" stroke-width=\"2\"/>\n";
    if (flex && arrowScale > 0)
        for (int v = 0; v < n; ++v) {
            Eigen::Vector2d a = p.points.row(v).transpose(), b = a + arrowScale * flex->segment(2 * v, 2);
            if ((b - a).norm() < 1e-12 * side) continue;
            out << "<line x1=\"" << fmt(X(a.x())) << "\" y1=\"" << fmt(Y(a.y())) << "\" x2=\"" << fmt(X(b.x())) << "\" y2=\""
                << fmt(Y(b.y())) << "\" stroke=\"#c0392b\" stroke-width=\"1.5\" marker-end=\"url(#head)\"/>\n";
        }
    for (int v = 0; v < n; ++v)
        out << "<circle cx=\"" << fmt(X(p.points(v, 0))) << "\" cy=\"" << fmt(Y(p.points(v, 1)))
            << "\" r=\"4\" fill=\"#fff\" stroke=\"#222\" stroke-width=\"1.5\"><title>" << g.label(v).value
            << "</title></circle>\n";
    out << "</svg>\n";
    return out.str();
}

}  // namespace rigidkit

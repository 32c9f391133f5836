#include "sphcap/svg.hpp"

#include "sphcap/io.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace sphcap {

namespace {

    constexpr double kPanel = 500.0;
    constexpr double kMargin = 0.08;

    std::string num(double v)
    {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3f", v);
        std::string s = buf;
        return s == "-0.000" ? "0.000" : s;
    }

    void panel(std::ostringstream& out, const MultiPolygon& poly, double offset_x, double radius, const char* title)
    {
        const double half = kPanel / 2.0;
        const double k = half * (1.0 - kMargin) / radius;
        auto px = [&](double x) { return num(offset_x + half + k * x); };
        auto py = [&](double y) { return num(half - k * y); };

        out << "  <g>\n";
        out << "    <text x=\"" << num(offset_x + half) << "\" y=\"24.000\" text-anchor=\"middle\" "
            << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";
        out << "    <circle cx=\"" << px(0) << "\" cy=\"" << py(0) << "\" r=\"" << num(k * radius)
            << "\" fill=\"none\" stroke=\"#555555\" stroke-width=\"1\" stroke-dasharray=\"6 4\"/>\n";
        out << "    <line x1=\"" << px(-radius) << "\" y1=\"" << py(0) << "\" x2=\"" << px(radius) << "\" y2=\"" << py(0)
            << "\" stroke=\"#aaaaaa\" stroke-width=\"0.5\" stroke-dasharray=\"2 3\"/>\n";
        out << "    <path fill=\"#7aa6d6\" fill-opacity=\"0.8\" stroke=\"#1f3b5a\" stroke-width=\"1\" "
            << "fill-rule=\"evenodd\" d=\"";
        for (const auto& ring : poly.rings) {
            for (std::size_t i = 0; i < ring.size(); ++i)
                out << (i == 0 ? "M" : " L") << px(ring[i].x) << ',' << py(ring[i].y);
            out << " Z ";
        }
        out << "\"/>\n  </g>\n";
    }

} // namespace

std::string render_svg(const MultiPolygon& original, const MultiPolygon& rearranged)
{
    const double radius = std::max({original.scale(), rearranged.scale(), 1e-12});
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 500\" width=\"1000\" height=\"500\">\n";
    out << "  <rect x=\"0\" y=\"0\" width=\"1000\" height=\"500\" fill=\"white\"/>\n";
    panel(out, original, 0.0, radius, "E");
    panel(out, rearranged, kPanel, radius, "F_v");
    out << "</svg>\n";
    return out.str();
}

void render(const MultiPolygon& original, const MultiPolygon& rearranged, const std::string& path)
{
    write_file_atomic(path, render_svg(original, rearranged));
}

} // namespace sphcap

#include "cubeshape/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "cubeshape/quadform.hpp"

namespace cubeshape {

namespace {

const char* kPalette[] = {"#1f6fb4", "#000000", "#c23b21", "#2c8a4b", "#8a52a0", "#b88a00"};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

}  // namespace

void plot_svg(const std::vector<FieldRecord>& records,
              const std::vector<std::pair<std::string, BQF>>& arcs, std::ostream& os,
              int samples_per_arc) {
    const double x_lo = -0.05, x_hi = 0.55, y_lo = 0.9;
    double y_hi = 1.6;
    std::vector<std::vector<std::complex<double>>> arc_pts;
    for (const auto& [id, q] : arcs) {
        auto pts = geodesic_arc_samples(geodesic_context(q), samples_per_arc);
        for (const auto& z : pts) y_hi = std::max(y_hi, z.imag());
        arc_pts.push_back(std::move(pts));
    }
    for (const auto& r : records) y_hi = std::max(y_hi, r.shape_y);
    y_hi += 0.05;

    const double width = 720.0;
    const double scale = width / (x_hi - x_lo);
    const double height = scale * (y_hi - y_lo);
    auto px = [&](double x) { return (x - x_lo) * scale; };
    auto py = [&](double y) { return (y_hi - y) * scale; };

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width) << "\" height=\""
       << fmt(height) << "\" viewBox=\"0 0 " << fmt(width) << " " << fmt(height) << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

    // Gauss domain boundary: two vertical rays and the unit-circle arc
    os << "<path class=\"domain\" fill=\"none\" stroke=\"#888888\" stroke-width=\"1\" d=\"";
    os << "M " << fmt(px(0)) << " " << fmt(py(y_hi)) << " L " << fmt(px(0)) << " " << fmt(py(1));
    for (int i = 0; i <= 64; ++i) {
        double ang = M_PI / 2 - (M_PI / 2 - M_PI / 3) * i / 64.0;
        os << " L " << fmt(px(std::cos(ang))) << " " << fmt(py(std::sin(ang)));
    }
    os << " L " << fmt(px(0.5)) << " " << fmt(py(y_hi));
    os << "\"/>\n";

    for (size_t k = 0; k < arcs.size(); ++k) {
        const char* color = kPalette[k % (sizeof kPalette / sizeof *kPalette)];
        os << "<path class=\"arc\" fill=\"none\" stroke=\"" << color
           << "\" stroke-width=\"1.2\" d=\"";
        bool pen_down = false;
        std::complex<double> prev;
        for (const auto& z : arc_pts[k]) {
            if (pen_down && std::abs(z - prev) > 0.05) pen_down = false;
            os << (pen_down ? " L " : " M ") << fmt(px(z.real())) << " " << fmt(py(z.imag()));
            pen_down = true;
            prev = z;
        }
        os << "\"/>\n";
    }

    // markers, colored by the record's class id when it matches an arc
    for (const auto& r : records) {
        const char* color = "#555555";
        for (size_t k = 0; k < arcs.size(); ++k)
            if (arcs[k].first == r.class_id)
                color = kPalette[k % (sizeof kPalette / sizeof *kPalette)];
        os << "<circle class=\"pt\" cx=\"" << fmt(px(r.shape_x)) << "\" cy=\""
           << fmt(py(r.shape_y)) << "\" r=\"2\" fill=\"" << color << "\"/>\n";
    }
    os << "</svg>\n";
}

}  // namespace cubeshape

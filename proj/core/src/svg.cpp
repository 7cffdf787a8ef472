#include "mvsol/svg.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <vector>

namespace mvsol {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string fmt1(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.1f", v);
    return buf;
}

struct Panel {
    double x0 = 0.0; // left edge
    double width = 560.0;
    double height = 400.0;
};

// Angles (radians from the +x1 axis) for k interfaces, evenly spread across
// the upper half plane; the diagram is schematic, slopes appear as labels.
std::vector<double> interface_angles(std::size_t k) {
    std::vector<double> a(k);
    const double lo = 20.0 * std::numbers::pi / 180.0;
    const double hi = 160.0 * std::numbers::pi / 180.0;
    for (std::size_t i = 0; i < k; ++i) {
        a[i] = k == 1 ? 0.5 * (lo + hi) : hi - (hi - lo) * i / (k - 1);
    }
    return a;
}

void draw_fan_panel(std::ostringstream& out, const Panel& p,
                    const std::vector<double>& speeds,
                    const std::vector<std::string>& wedge_labels,
                    const std::vector<std::string>& wedge_sublabels,
                    const std::string& caption) {
    const double ox = p.x0 + p.width / 2.0;
    const double oy = p.height - 50.0;
    const double ray = p.height - 110.0;

    out << "<g>\n";
    // x1 axis and t arrow
    out << "<line x1=\"" << fmt1(p.x0 + 20) << "\" y1=\"" << fmt1(oy) << "\" x2=\""
        << fmt1(p.x0 + p.width - 20) << "\" y2=\"" << fmt1(oy)
        << "\" stroke=\"#888\" stroke-width=\"1\"/>\n";
    out << "<line x1=\"" << fmt1(ox) << "\" y1=\"" << fmt1(oy) << "\" x2=\"" << fmt1(ox)
        << "\" y2=\"" << fmt1(oy - ray - 14) << "\" stroke=\"#ccc\" stroke-width=\"1\" "
        << "stroke-dasharray=\"4 4\"/>\n";
    out << "<text x=\"" << fmt1(ox + 6) << "\" y=\"" << fmt1(oy - ray - 16)
        << "\" font-size=\"12\" fill=\"#555\">t</text>\n";
    out << "<text x=\"" << fmt1(p.x0 + p.width - 28) << "\" y=\"" << fmt1(oy + 16)
        << "\" font-size=\"12\" fill=\"#555\">x1</text>\n";

    const std::vector<double> angles = interface_angles(speeds.size());
    for (std::size_t i = 0; i < speeds.size(); ++i) {
        const double ex = ox + ray * std::cos(angles[i]);
        const double ey = oy - ray * std::sin(angles[i]);
        out << "<line x1=\"" << fmt1(ox) << "\" y1=\"" << fmt1(oy) << "\" x2=\"" << fmt1(ex)
            << "\" y2=\"" << fmt1(ey) << "\" stroke=\"#1a3a6b\" stroke-width=\"1.5\"/>\n";
        const double lx = ox + (ray + 12) * std::cos(angles[i]);
        const double ly = oy - (ray + 12) * std::sin(angles[i]);
        out << "<text x=\"" << fmt1(lx) << "\" y=\"" << fmt1(ly)
            << "\" font-size=\"11\" fill=\"#1a3a6b\" text-anchor=\"middle\">x1 = "
            << fmt(speeds[i]) << " t</text>\n";
    }

    // Wedge labels along bisector directions.
    for (std::size_t w = 0; w < wedge_labels.size(); ++w) {
        double a_left = w == 0 ? std::numbers::pi : angles[w - 1];
        double a_right = w == wedge_labels.size() - 1 ? 0.0 : angles[w];
        const double mid = 0.5 * (a_left + a_right);
        const double lx = ox + 0.62 * ray * std::cos(mid);
        const double ly = oy - 0.62 * ray * std::sin(mid);
        out << "<text x=\"" << fmt1(lx) << "\" y=\"" << fmt1(ly)
            << "\" font-size=\"12\" fill=\"#222\" text-anchor=\"middle\">" << wedge_labels[w]
            << "</text>\n";
        if (!wedge_sublabels[w].empty()) {
            out << "<text x=\"" << fmt1(lx) << "\" y=\"" << fmt1(ly + 14)
                << "\" font-size=\"10\" fill=\"#555\" text-anchor=\"middle\">"
                << wedge_sublabels[w] << "</text>\n";
        }
    }

    out << "<text x=\"" << fmt1(ox) << "\" y=\"" << fmt1(p.height - 16)
        << "\" font-size=\"13\" fill=\"#000\" text-anchor=\"middle\">" << caption
        << "</text>\n";
    out << "</g>\n";
}

std::string state_label(const PrimitiveState& s) {
    std::ostringstream out;
    out << "rho=" << fmt(s.rho) << ", v=(" << fmt(s.v) << ", " << fmt(s.u)
        << "), p=" << fmt(s.p);
    return out.str();
}

std::string svg_open(double width, double height) {
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt1(width)
        << "\" height=\"" << fmt1(height) << "\" viewBox=\"0 0 " << fmt1(width) << " "
        << fmt1(height) << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    return out.str();
}

} // namespace

std::string fan_svg(const FanSolution& f, const std::string& title) {
    validate(f);
    Panel p;
    std::ostringstream out;
    out << svg_open(p.width, p.height + 30);
    if (!title.empty()) {
        out << "<text x=\"" << fmt1(p.width / 2) << "\" y=\"20\" font-size=\"14\" "
            << "text-anchor=\"middle\">" << title << "</text>\n";
    }
    std::vector<double> speeds = interface_speeds(f);
    std::vector<std::string> labels, sublabels;
    for (const Wedge& w : f.wedges) {
        labels.push_back(state_label(w.state));
        sublabels.emplace_back();
    }
    Panel shifted = p;
    shifted.height = p.height;
    draw_fan_panel(out, shifted, speeds, labels, sublabels,
                   f.label.empty() ? "self-similar fan" : f.label);
    out << "</svg>\n";
    return out.str();
}

std::string wild_svg(const WildFans& fans, const std::string& title) {
    Panel left, right;
    left.width = 560.0;
    right.width = 560.0;
    right.x0 = 580.0;
    const double width = 1160.0, height = 430.0;

    std::ostringstream out;
    out << svg_open(width, height);
    if (!title.empty()) {
        out << "<text x=\"" << fmt1(width / 2) << "\" y=\"20\" font-size=\"14\" "
            << "text-anchor=\"middle\">" << title << "</text>\n";
    }

    {
        std::vector<double> speeds = interface_speeds(fans.fan_alpha);
        std::vector<std::string> labels, sublabels;
        for (const Wedge& w : fans.fan_alpha.wedges) {
            labels.push_back(state_label(w.state));
            sublabels.emplace_back();
        }
        draw_fan_panel(out, left, speeds, labels, sublabels, "fan alpha (one-shock)");
    }
    {
        std::vector<double> speeds;
        std::vector<std::string> labels, sublabels;
        const auto& regions = fans.fan_beta_skeleton.regions;
        for (std::size_t i = 0; i + 1 < regions.size(); ++i)
            speeds.push_back(regions[i].sigma_right);
        for (const BetaRegion& r : regions) {
            labels.push_back(r.name);
            switch (r.status) {
                case RegionStatus::Resolved:
                    sublabels.push_back(state_label(r.state));
                    break;
                case RegionStatus::MacroscopicApprox:
                    sublabels.push_back(state_label(r.state) + " (macroscopic)");
                    break;
                case RegionStatus::Unresolved:
                    sublabels.push_back("unresolved, rho=" + fmt(r.rho_hint));
                    break;
            }
        }
        draw_fan_panel(out, right, speeds, labels, sublabels, "fan beta (skeleton)");
    }

    out << "<text x=\"" << fmt1(width / 2) << "\" y=\"" << fmt1(height - 6)
        << "\" font-size=\"11\" fill=\"#333\" text-anchor=\"middle\">overlap wedge: "
        << fmt(fans.overlap.sigma_left) << " &lt; x1/t &lt; " << fmt(fans.overlap.sigma_right)
        << "</text>\n";
    out << "</svg>\n";
    return out.str();
}

} // namespace mvsol

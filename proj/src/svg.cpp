#include "okb/svg.hpp"

#include "okb/linalg.hpp"

#include <algorithm>
#include <cstdio>

namespace okb {

namespace {

constexpr double kUnit = 40.0;
constexpr double kMargin = 30.0;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else if (c == '&') out += "&amp;";
        else out += c;
    }
    return out;
}

std::string header(double w, double h) {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(w) + "\" height=\"" + num(h) +
           "\" viewBox=\"0 0 " + num(w) + " " + num(h) + "\">\n";
}

}  // namespace

std::string polygon_svg(const Polygon2& p, const std::string& title) {
    double max_x = 1, max_y = 1;
    for (const auto& v : p.vertices()) {
        max_x = std::max(max_x, v.x.get_d());
        max_y = std::max(max_y, v.y.get_d());
    }
    const double w = max_x * kUnit + 2 * kMargin;
    const double h = max_y * kUnit + 2 * kMargin;
    auto sx = [&](const Rational& x) { return num(kMargin + x.get_d() * kUnit); };
    auto sy = [&](const Rational& y) { return num(h - kMargin - y.get_d() * kUnit); };

    std::string out = header(w, h);
    out += "  <title>" + escape(title) + "</title>\n";
    // axes
    out += "  <line x1=\"" + num(kMargin) + "\" y1=\"" + num(h - kMargin) + "\" x2=\"" + num(w - kMargin / 2) + "\" y2=\"" +
           num(h - kMargin) + "\" stroke=\"#888\"/>\n";
    out += "  <line x1=\"" + num(kMargin) + "\" y1=\"" + num(h - kMargin) + "\" x2=\"" + num(kMargin) + "\" y2=\"" +
           num(kMargin / 2) + "\" stroke=\"#888\"/>\n";
    out += "  <text x=\"" + num(w - kMargin / 2) + "\" y=\"" + num(h - kMargin / 3) + "\" font-size=\"12\">t</text>\n";
    out += "  <text x=\"" + num(kMargin / 3) + "\" y=\"" + num(kMargin / 2) + "\" font-size=\"12\">y</text>\n";

    const auto& vs = p.vertices();
    if (vs.size() >= 3) {
        out += "  <polygon points=\"";
        for (std::size_t i = 0; i < vs.size(); ++i) out += (i ? " " : "") + sx(vs[i].x) + "," + sy(vs[i].y);
        out += "\" fill=\"#9cc3e6\" stroke=\"#1f4e79\" stroke-width=\"2\"/>\n";
    } else if (vs.size() == 2) {
        out += "  <line x1=\"" + sx(vs[0].x) + "\" y1=\"" + sy(vs[0].y) + "\" x2=\"" + sx(vs[1].x) + "\" y2=\"" +
               sy(vs[1].y) + "\" stroke=\"#1f4e79\" stroke-width=\"3\"/>\n";
    }
    for (const auto& v : vs) {
        out += "  <circle cx=\"" + sx(v.x) + "\" cy=\"" + sy(v.y) + "\" r=\"3\" fill=\"#1f4e79\"/>\n";
        out += "  <text x=\"" + num(kMargin + v.x.get_d() * kUnit + 5) + "\" y=\"" + num(h - kMargin - v.y.get_d() * kUnit - 5) +
               "\" font-size=\"11\">(" + to_string(v.x) + "," + to_string(v.y) + ")</text>\n";
    }
    out += "</svg>\n";
    return out;
}

std::string fan_svg(const RationalCone& eff, const MinkowskiFan& fan, const std::vector<std::string>& labels) {
    const std::size_t rho = eff.ambient_dim();
    std::vector<std::pair<double, double>> pts;
    if (rho == 3) {
        // Chart {l = 1} with l positive on the cone, coordinates along a basis
        // of ker l.
        Vector l = zero_vector(3);
        for (const auto& f : eff.inequalities()) l = add(l, f);
        const auto basis = kernel(Matrix::from_rows({l}, 3));
        for (const auto& r : fan.rays) {
            const Rational s = dot(l, r);
            pts.emplace_back(Rational(dot(basis[0], r) / s).get_d(), Rational(dot(basis[1], r) / s).get_d());
        }
    } else if (rho == 2) {
        for (const auto& r : fan.rays) {
            const double x = r[0].get_d(), y = r[1].get_d();
            const double n = std::max(std::abs(x), std::abs(y));
            pts.emplace_back(x / n, y / n);
        }
    } else {
        throw InputError("fan_svg: only ranks 2 and 3 can be drawn");
    }
    double min_x = 0, max_x = 0, min_y = 0, max_y = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i == 0 || pts[i].first < min_x) min_x = pts[i].first;
        if (i == 0 || pts[i].first > max_x) max_x = pts[i].first;
        if (i == 0 || pts[i].second < min_y) min_y = pts[i].second;
        if (i == 0 || pts[i].second > max_y) max_y = pts[i].second;
    }
    if (rho == 2) {
        min_x = std::min(min_x, 0.0), min_y = std::min(min_y, 0.0);
        max_x = std::max(max_x, 0.0), max_y = std::max(max_y, 0.0);
    }
    const double span = std::max({max_x - min_x, max_y - min_y, 1e-9});
    const double scale = 8 * kUnit / span;
    const double w = (max_x - min_x) * scale + 2 * kMargin + 60;
    const double h = (max_y - min_y) * scale + 2 * kMargin;
    auto px = [&](std::size_t i) { return num(kMargin + (pts[i].first - min_x) * scale); };
    auto py = [&](std::size_t i) { return num(h - kMargin - (pts[i].second - min_y) * scale); };
    const std::string ox = num(kMargin + (0 - min_x) * scale), oy = num(h - kMargin - (0 - min_y) * scale);

    std::string out = header(w, h);
    out += "  <title>Minkowski chambers</title>\n";
    for (const auto& k : fan.chambers) {
        if (rho == 3) {
            out += "  <polygon points=\"" + px(k[0]) + "," + py(k[0]) + " " + px(k[1]) + "," + py(k[1]) + " " + px(k[2]) +
                   "," + py(k[2]) + "\" fill=\"#e8f0f8\" stroke=\"#1f4e79\" stroke-width=\"1.5\"/>\n";
        } else {
            out += "  <polygon points=\"" + ox + "," + oy + " " + px(k[0]) + "," + py(k[0]) + " " + px(k[1]) + "," + py(k[1]) +
                   "\" fill=\"#e8f0f8\" stroke=\"#1f4e79\" stroke-width=\"1.5\"/>\n";
        }
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
        out += "  <circle cx=\"" + px(i) + "\" cy=\"" + py(i) + "\" r=\"3\" fill=\"#1f4e79\"/>\n";
        out += "  <text x=\"" + px(i) + "\" y=\"" + py(i) + "\" dx=\"5\" dy=\"-5\" font-size=\"11\">" +
               escape(format_class(labels, fan.rays[i])) + "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace okb

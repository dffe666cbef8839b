#include "salp/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "salp/stats.hpp"

namespace salp::plot {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#17becf"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

double log_clamped(double v, double floor) { return std::log10(std::max(v, floor)); }

struct LogAxis {
    double lo = 0, hi = 1;

    static LogAxis covering(const std::vector<Series>& series, double floor) {
        double lo = HUGE_VAL, hi = -HUGE_VAL;
        for (const auto& [_, values] : series)
            for (double v : values) {
                const double l = log_clamped(v, floor);
                lo = std::min(lo, l);
                hi = std::max(hi, l);
            }
        if (!(lo <= hi)) lo = hi = 0;
        lo = std::floor(lo);
        hi = std::ceil(hi);
        if (hi - lo < 1) hi = lo + 1;
        return {lo, hi};
    }
};

void header(std::ostringstream& os, int w, int h, const std::string& title, double floor) {
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << w << "\" height=\"" << h
       << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n";
    if (floor > 0) os << "<metadata>log-floor=" << sci(floor) << "</metadata>\n";
    os << "<rect x=\"0\" y=\"0\" width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n"
       << "<text x=\"" << w / 2 << "\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
       << escape(title) << "</text>\n";
}

void decade_ticks(std::ostringstream& os, const LogAxis& axis, double left, double right, double top, double bottom) {
    const int span = static_cast<int>(axis.hi - axis.lo);
    const int step = std::max(1, span / 8);
    for (int d = static_cast<int>(axis.lo); d <= static_cast<int>(axis.hi); d += step) {
        const double y = bottom - (d - axis.lo) / (axis.hi - axis.lo) * (bottom - top);
        os << "<line x1=\"" << num(left) << "\" y1=\"" << num(y) << "\" x2=\"" << num(right) << "\" y2=\"" << num(y)
           << "\" stroke=\"#dddddd\"/>\n"
           << "<text x=\"" << num(left - 6) << "\" y=\"" << num(y + 4)
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">1e" << d << "</text>\n";
    }
}

} // namespace

std::string abf_svg(const std::string& title, const std::vector<Series>& curves, double floor) {
    constexpr int W = 640, H = 400;
    constexpr double left = 70, right = 490, top = 40, bottom = 350;
    std::ostringstream os;
    header(os, W, H, title, floor);
    const auto axis = LogAxis::covering(curves, floor);
    decade_ticks(os, axis, left, right, top, bottom);

    std::size_t longest = 1;
    for (const auto& c : curves) longest = std::max(longest, c.second.size());
    os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << right - left << "\" height=\"" << bottom - top
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    os << "<text x=\"" << num((left + right) / 2) << "\" y=\"" << H - 15
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">iteration</text>\n";
    os << "<text x=\"" << num(left) << "\" y=\"" << num(bottom + 14)
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">1</text>\n";
    os << "<text x=\"" << num(right) << "\" y=\"" << num(bottom + 14)
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" << longest << "</text>\n";

    for (std::size_t k = 0; k < curves.size(); ++k) {
        const auto& [label, values] = curves[k];
        const char* color = kPalette[k % std::size(kPalette)];
        os << "<polyline data-series=\"" << escape(label) << "\" fill=\"none\" stroke=\"" << color
           << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < values.size(); ++i) {
            const double x = longest > 1 ? left + static_cast<double>(i) / static_cast<double>(longest - 1) * (right - left)
                                         : left;
            const double y = bottom - (log_clamped(values[i], floor) - axis.lo) / (axis.hi - axis.lo) * (bottom - top);
            os << (i ? " " : "") << num(x) << ',' << num(y);
        }
        os << "\"/>\n";
        const double ly = top + 10 + 18.0 * static_cast<double>(k);
        os << "<line x1=\"505\" y1=\"" << num(ly) << "\" x2=\"525\" y2=\"" << num(ly) << "\" stroke=\"" << color
           << "\" stroke-width=\"2\"/>\n"
           << "<text x=\"530\" y=\"" << num(ly + 4) << "\" font-family=\"sans-serif\" font-size=\"11\">" << escape(label)
           << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string box_svg(const std::string& title, const std::vector<Series>& samples, double floor) {
    constexpr int H = 400;
    constexpr double left = 70, top = 40, bottom = 340, slot = 90;
    const int W = static_cast<int>(left + slot * static_cast<double>(std::max<std::size_t>(samples.size(), 1)) + 30);
    const double right = W - 30;
    std::ostringstream os;
    header(os, W, H, title, floor);
    const auto axis = LogAxis::covering(samples, floor);
    decade_ticks(os, axis, left, right, top, bottom);
    os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << num(right - left) << "\" height=\""
       << bottom - top << "\" fill=\"none\" stroke=\"black\"/>\n";
    auto ymap = [&](double v) {
        return bottom - (log_clamped(v, floor) - axis.lo) / (axis.hi - axis.lo) * (bottom - top);
    };

    for (std::size_t k = 0; k < samples.size(); ++k) {
        const auto& [label, values] = samples[k];
        if (values.empty()) continue;
        const double cx = left + slot * (static_cast<double>(k) + 0.5);
        const double q1 = stats::quantile(values, 0.25);
        const double med = stats::quantile(values, 0.5);
        const double q3 = stats::quantile(values, 0.75);
        const double iqr = q3 - q1;
        double lo_w = q3, hi_w = q1;
        for (double v : values) {
            if (v >= q1 - 1.5 * iqr) lo_w = std::min(lo_w, v);
            if (v <= q3 + 1.5 * iqr) hi_w = std::max(hi_w, v);
        }
        const char* color = kPalette[k % std::size(kPalette)];
        os << "<g data-series=\"" << escape(label) << "\">\n"
           << "<line class=\"whisker\" x1=\"" << num(cx) << "\" y1=\"" << num(ymap(lo_w)) << "\" x2=\"" << num(cx) << "\" y2=\""
           << num(ymap(hi_w)) << "\" stroke=\"black\"/>\n"
           << "<rect class=\"box\" x=\"" << num(cx - 25) << "\" y=\"" << num(ymap(q3)) << "\" width=\"50\" height=\""
           << num(std::max(0.5, ymap(q1) - ymap(q3))) << "\" fill=\"" << color << "\" fill-opacity=\"0.4\" stroke=\""
           << color << "\"/>\n"
           << "<line class=\"median\" x1=\"" << num(cx - 25) << "\" y1=\"" << num(ymap(med)) << "\" x2=\"" << num(cx + 25) << "\" y2=\""
           << num(ymap(med)) << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
        for (double v : values)
            if (v < lo_w || v > hi_w)
                os << "<circle class=\"outlier\" cx=\"" << num(cx) << "\" cy=\"" << num(ymap(v)) << "\" r=\"2\" fill=\"none\" stroke=\"black\"/>\n";
        os << "<text x=\"" << num(cx) << "\" y=\"" << num(bottom + 16)
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << escape(label) << "</text>\n"
           << "</g>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string dynamics_svg(const std::string& title, const Bounds& bounds, const Snapshot& initial,
                         const std::vector<Snapshot>& snapshots, std::size_t leader_index) {
    constexpr int cols = 4;
    constexpr double panel = 170, gap = 20, top0 = 40;
    const std::size_t count = snapshots.size() + 1;
    const std::size_t rows = (count + cols - 1) / cols;
    const int W = static_cast<int>(cols * (panel + gap) + gap);
    const int H = static_cast<int>(top0 + static_cast<double>(rows) * (panel + gap + 14) + gap);
    std::ostringstream os;
    header(os, W, H, title, 0.0);

    const std::size_t ydim = bounds.dimension() > 1 ? 1 : 0;
    auto draw = [&](std::size_t idx, const Snapshot& s, const std::string& caption, bool start) {
        const double px = gap + static_cast<double>(idx % cols) * (panel + gap);
        const double py = top0 + static_cast<double>(idx / cols) * (panel + gap + 14) + 14;
        auto mx = [&](double x) { return px + (x - bounds.lower(0)) / bounds.width(0) * panel; };
        auto my = [&](double y) { return py + panel - (y - bounds.lower(ydim)) / bounds.width(ydim) * panel; };
        os << "<g data-panel=\"" << idx << "\">\n"
           << "<text x=\"" << num(px + panel / 2) << "\" y=\"" << num(py - 4)
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << escape(caption) << "</text>\n"
           << "<rect x=\"" << num(px) << "\" y=\"" << num(py) << "\" width=\"" << num(panel) << "\" height=\""
           << num(panel) << "\" fill=\"none\" stroke=\"black\"/>\n";
        if (bounds.lower(0) < 0 && bounds.upper(0) > 0)
            os << "<line x1=\"" << num(mx(0)) << "\" y1=\"" << num(py) << "\" x2=\"" << num(mx(0)) << "\" y2=\""
               << num(py + panel) << "\" stroke=\"#eeeeee\"/>\n";
        if (bounds.lower(ydim) < 0 && bounds.upper(ydim) > 0)
            os << "<line x1=\"" << num(px) << "\" y1=\"" << num(my(0)) << "\" x2=\"" << num(px + panel) << "\" y2=\""
               << num(my(0)) << "\" stroke=\"#eeeeee\"/>\n";
        for (std::size_t m = 0; m < s.size(); ++m) {
            if (m == leader_index) continue;
            os << "<circle cx=\"" << num(mx(s[m][0])) << "\" cy=\"" << num(my(s[m][ydim]))
               << "\" r=\"2\" fill=\"#1f77b4\"/>\n";
        }
        if (leader_index < s.size()) {
            const double lx = mx(s[leader_index][0]), ly = my(s[leader_index][ydim]);
            os << "<circle class=\"leader\" data-member=\"" << leader_index << "\" cx=\"" << num(lx) << "\" cy=\""
               << num(ly) << "\" r=\"5\" fill=\"none\" stroke=\"#ff7f0e\" stroke-width=\"2\"/>\n";
            if (start)
                os << "<text x=\"" << num(lx + 7) << "\" y=\"" << num(ly - 7)
                   << "\" font-family=\"sans-serif\" font-size=\"10\">Start</text>\n";
        }
        os << "</g>\n";
    };
    draw(0, initial, "start", true);
    for (std::size_t t = 0; t < snapshots.size(); ++t) draw(t + 1, snapshots[t], "iteration " + std::to_string(t + 1), false);
    os << "</svg>\n";
    return os.str();
}

} // namespace salp::plot

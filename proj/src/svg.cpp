#include "g2mono/svg.hpp"

#include "g2mono/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace g2mono {

namespace {

const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", x);
    return buf;
}

}  // namespace

std::string line_plot(const std::vector<PlotSeries>& series, const PlotOptions& o) {
    double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
    for (const auto& s : series) {
        if (s.x.size() != s.y.size()) throw DomainError("plot series '" + s.label + "' has mismatched lengths");
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            x0 = std::min(x0, s.x[i]);
            x1 = std::max(x1, s.x[i]);
            y0 = std::min(y0, s.y[i]);
            y1 = std::max(y1, s.y[i]);
        }
    }
    if (!(x1 >= x0)) x0 = 0, x1 = 1;
    if (!(y1 >= y0)) y0 = 0, y1 = 1;
    if (x1 == x0) x1 = x0 + 1;
    if (y1 == y0) y1 = y0 + 1;

    const double L = 70, R = 20, T = 40, B = 50;
    const double W = o.width - L - R, H = o.height - T - B;
    auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * W; };
    auto py = [&](double y) { return T + (y1 - y) / (y1 - y0) * H; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << o.width << "\" height=\"" << o.height
       << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << o.width / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << escape(o.title)
       << "</text>\n";
    os << "<path d=\"M" << L << ' ' << T << " V" << T + H << " H" << L + W << "\" stroke=\"black\" fill=\"none\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double xv = x0 + (x1 - x0) * k / 4.0, yv = y0 + (y1 - y0) * k / 4.0;
        os << "<text x=\"" << px(xv) << "\" y=\"" << T + H + 16 << "\" text-anchor=\"middle\">" << num(xv)
           << "</text>\n";
        os << "<text x=\"" << L - 6 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\">" << num(yv) << "</text>\n";
    }
    os << "<text x=\"" << L + W / 2 << "\" y=\"" << o.height - 10 << "\" text-anchor=\"middle\">"
       << escape(o.x_label) << "</text>\n";
    os << "<text x=\"14\" y=\"" << T + H / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 14 " << T + H / 2
       << ")\">" << escape(o.y_label) << "</text>\n";

    std::size_t idx = 0;
    for (const auto& s : series) {
        const char* color = kColors[idx % (sizeof kColors / sizeof kColors[0])];
        os << "<path fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" d=\"";
        bool pen = false;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
                pen = false;
                continue;
            }
            os << (pen ? " L" : " M") << num(px(s.x[i])) << ' ' << num(py(s.y[i]));
            pen = true;
        }
        os << "\"/>\n";
        os << "<text x=\"" << L + W - 4 << "\" y=\"" << T + 14 + 14 * idx << "\" text-anchor=\"end\" fill=\"" << color
           << "\">" << escape(s.label) << "</text>\n";
        ++idx;
    }
    os << "</svg>\n";
    return os.str();
}

void write_svg(const std::string& path, const std::string& svg) {
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write " + path);
    out << svg;
}

}  // namespace g2mono

#include "wka/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "wka/errors.hpp"

namespace wka {

namespace {

constexpr double kW = 800.0, kH = 600.0;
constexpr double kLeft = 70.0, kRight = 20.0, kTop = 40.0, kBottom = 50.0;
const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

LinePlot::LinePlot(std::string title, std::string x_label, std::string y_label, bool log_x, bool log_y)
    : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)), log_x_(log_x),
      log_y_(log_y) {}

void LinePlot::add_series(std::string name, std::vector<double> x, std::vector<double> y) {
    if (x.size() != y.size()) throw ValidationError("plot series length mismatch");
    series_.push_back({std::move(name), std::move(x), std::move(y)});
}

std::string LinePlot::render() const {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    auto tx = [&](double v) { return log_x_ ? std::log10(v) : v; };
    auto ty = [&](double v) { return log_y_ ? std::log10(v) : v; };
    for (const auto& s : series_)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (log_x_ && !(s.x[i] > 0.0)) continue;
            if (log_y_ && !(s.y[i] > 0.0)) continue;
            xmin = std::min(xmin, tx(s.x[i]));
            xmax = std::max(xmax, tx(s.x[i]));
            ymin = std::min(ymin, ty(s.y[i]));
            ymax = std::max(ymax, ty(s.y[i]));
        }
    if (!(xmin <= xmax)) {
        xmin = 0;
        xmax = 1;
        ymin = 0;
        ymax = 1;
    }
    if (xmax - xmin < 1e-12) xmax = xmin + 1.0;
    if (ymax - ymin < 1e-12) ymax = ymin + 1.0;

    auto px = [&](double v) { return kLeft + (tx(v) - xmin) / (xmax - xmin) * (kW - kLeft - kRight); };
    auto py = [&](double v) { return kH - kBottom - (ty(v) - ymin) / (ymax - ymin) * (kH - kTop - kBottom); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 600\">\n";
    svg << "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
    svg << "<text x=\"400\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << title_ << "</text>\n";
    svg << "<line x1=\"" << kLeft << "\" y1=\"" << kH - kBottom << "\" x2=\"" << kW - kRight << "\" y2=\""
        << kH - kBottom << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << kH - kBottom
        << "\" stroke=\"black\"/>\n";

    // Ticks: decades on log axes, 5 even steps otherwise.
    auto emit_x_tick = [&](double raw, const std::string& label) {
        const double x = kLeft + (raw - xmin) / (xmax - xmin) * (kW - kLeft - kRight);
        svg << "<line x1=\"" << x << "\" y1=\"" << kH - kBottom << "\" x2=\"" << x << "\" y2=\"" << kH - kBottom + 6
            << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << x << "\" y=\"" << kH - kBottom + 22 << "\" text-anchor=\"middle\" font-size=\"11\">"
            << label << "</text>\n";
    };
    auto emit_y_tick = [&](double raw, const std::string& label) {
        const double y = kH - kBottom - (raw - ymin) / (ymax - ymin) * (kH - kTop - kBottom);
        svg << "<line x1=\"" << kLeft - 6 << "\" y1=\"" << y << "\" x2=\"" << kLeft << "\" y2=\"" << y
            << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << kLeft - 10 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\" font-size=\"11\">" << label
            << "</text>\n";
    };
    if (log_x_) {
        for (int d = static_cast<int>(std::ceil(xmin)); d <= static_cast<int>(std::floor(xmax)); ++d)
            emit_x_tick(d, "1e" + std::to_string(d));
    } else {
        for (int i = 0; i <= 5; ++i) {
            const double v = xmin + (xmax - xmin) * i / 5.0;
            emit_x_tick(v, fmt(v));
        }
    }
    if (log_y_) {
        for (int d = static_cast<int>(std::ceil(ymin)); d <= static_cast<int>(std::floor(ymax)); ++d)
            emit_y_tick(d, "1e" + std::to_string(d));
    } else {
        for (int i = 0; i <= 5; ++i) {
            const double v = ymin + (ymax - ymin) * i / 5.0;
            emit_y_tick(v, fmt(v));
        }
    }

    svg << "<text x=\"" << (kLeft + kW - kRight) / 2 << "\" y=\"" << kH - 8
        << "\" text-anchor=\"middle\" font-size=\"13\">" << x_label_ << "</text>\n";
    svg << "<text x=\"16\" y=\"" << (kTop + kH - kBottom) / 2 << "\" text-anchor=\"middle\" font-size=\"13\" "
        << "transform=\"rotate(-90 16 " << (kTop + kH - kBottom) / 2 << ")\">" << y_label_ << "</text>\n";

    int color = 0;
    double legend_y = kTop + 6;
    for (const auto& s : series_) {
        const char* c = kColors[color++ % 6];
        svg << "<polyline fill=\"none\" stroke=\"" << c << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (log_x_ && !(s.x[i] > 0.0)) continue;
            if (log_y_ && !(s.y[i] > 0.0)) continue;
            svg << fmt(px(s.x[i])) << ',' << fmt(py(s.y[i])) << ' ';
        }
        svg << "\"/>\n";
        svg << "<text x=\"" << kW - kRight - 8 << "\" y=\"" << legend_y << "\" text-anchor=\"end\" font-size=\"12\" "
            << "fill=\"" << c << "\">" << s.name << "</text>\n";
        legend_y += 16;
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace wka

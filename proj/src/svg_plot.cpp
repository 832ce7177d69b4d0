#include "slsim/svg_plot.hpp"

#include <algorithm>
#include <cstdio>
#include <string>

#include "slsim/errors.hpp"

namespace slsim {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 500.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 770.0;
constexpr double kTop = 50.0;
constexpr double kBottom = 450.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                          "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string escape_xml(const std::string& s) {
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

}  // namespace

std::string render_belief_chart(const std::vector<PlotSeries>& series,
                                const std::string& title) {
    if (series.empty()) throw ContractError("nothing to plot");
    std::size_t max_len = 0;
    for (const auto& s : series) max_len = std::max(max_len, s.values.size());
    if (max_len < 2) {
        throw ContractError("series need at least two points to plot");
    }
    const double x_max = static_cast<double>(max_len - 1);
    auto sx = [&](double iter) {
        return kLeft + (kRight - kLeft) * iter / x_max;
    };
    auto sy = [&](double belief) {
        return kBottom - (kBottom - kTop) * belief;
    };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) +
           "\" height=\"" + num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) +
           " " + num(kHeight) + "\">\n";
    svg += "<rect width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) +
           "\" fill=\"white\"/>\n";
    svg += "<text x=\"" + num(kWidth / 2) +
           "\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"18\">" +
           escape_xml(title) + "</text>\n";

    // Axes.
    svg += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kBottom) + "\" x2=\"" +
           num(kRight) + "\" y2=\"" + num(kBottom) +
           "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    svg += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop) + "\" x2=\"" +
           num(kLeft) + "\" y2=\"" + num(kBottom) +
           "\" stroke=\"black\" stroke-width=\"1\"/>\n";

    // Y ticks every 0.25.
    for (int i = 0; i <= 4; ++i) {
        const double belief = 0.25 * i;
        const double y = sy(belief);
        svg += "<line x1=\"" + num(kLeft - 5) + "\" y1=\"" + num(y) + "\" x2=\"" +
               num(kLeft) + "\" y2=\"" + num(y) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + num(kLeft - 10) + "\" y=\"" + num(y + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" "
               "font-size=\"12\">" +
               num(belief) + "</text>\n";
        if (i > 0) {
            svg += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(y) +
                   "\" x2=\"" + num(kRight) + "\" y2=\"" + num(y) +
                   "\" stroke=\"#dddddd\" stroke-width=\"0.5\"/>\n";
        }
    }
    // X ticks: 5 evenly spaced.
    for (int i = 0; i <= 4; ++i) {
        const double iter = x_max * i / 4.0;
        const double x = sx(iter);
        svg += "<line x1=\"" + num(x) + "\" y1=\"" + num(kBottom) + "\" x2=\"" +
               num(x) + "\" y2=\"" + num(kBottom + 5) + "\" stroke=\"black\"/>\n";
        char label[32];
        std::snprintf(label, sizeof(label), "%.0f", iter);
        svg += "<text x=\"" + num(x) + "\" y=\"" + num(kBottom + 20) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
               "font-size=\"12\">" +
               label + "</text>\n";
    }
    svg += "<text x=\"" + num((kLeft + kRight) / 2) + "\" y=\"" +
           num(kBottom + 40) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"14\">iteration</text>\n";
    svg += "<text x=\"18\" y=\"" + num((kTop + kBottom) / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"14\" transform=\"rotate(-90 18 " +
           num((kTop + kBottom) / 2) +
           ")\">average belief on true state</text>\n";

    // Series polylines and legend.
    for (std::size_t s = 0; s < series.size(); ++s) {
        const auto& entry = series[s];
        if (entry.values.size() < 2) {
            throw ContractError("series '" + entry.label +
                                "' needs at least two points");
        }
        const char* color = kPalette[s % (sizeof(kPalette) / sizeof(*kPalette))];
        std::string points;
        for (std::size_t i = 0; i < entry.values.size(); ++i) {
            points += num(sx(static_cast<double>(i)));
            points += ',';
            points += num(sy(entry.values[i]));
            points += ' ';
        }
        svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
               "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";

        const double ly = kTop + 18.0 * static_cast<double>(s);
        svg += "<line x1=\"" + num(kRight - 150) + "\" y1=\"" + num(ly) +
               "\" x2=\"" + num(kRight - 120) + "\" y2=\"" + num(ly) +
               "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
        svg += "<text x=\"" + num(kRight - 114) + "\" y=\"" + num(ly + 4) +
               "\" font-family=\"sans-serif\" font-size=\"12\">" +
               escape_xml(entry.label) + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace slsim

#pragma once

#include <string>
#include <vector>

namespace slsim {

/// One labelled belief series for the chart, indexed by iteration.
struct PlotSeries {
    std::string label;
    std::vector<double> values;
};

/// Renders a standalone SVG line chart: x = iteration, y = average belief
/// in [0, 1], one polyline per series, with axes, ticks, legend and title.
/// No external assets. Requires at least one non-empty series.
std::string render_belief_chart(const std::vector<PlotSeries>& series,
                                const std::string& title);

}  // namespace slsim

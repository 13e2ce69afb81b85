#pragma once

#include <string>
#include <utility>
#include <vector>

namespace liefact::cli {

// Command-line entry point. Exit codes: 0 success, 1 internal error,
// 2 invalid input / infeasible parameters.
int run(int argc, const char* const* argv);

// 17-significant-digit decimal rendering; round-trip exact for doubles.
std::string format_double(double x);

// Minimal standalone SVG line plot of (tau, u) polylines. Each segment
// becomes one <polyline>, so validity gaps and singularities show as breaks.
std::string render_curve_svg(
    const std::vector<std::vector<std::pair<double, double>>>& segments,
    const std::string& title);

}  // namespace liefact::cli

#pragma once

// Static SVG renderings of Q-Q / P-P scatters and PIT histograms.

#include <array>
#include <cstddef>
#include <span>
#include <string>

namespace levyprem::cli {

/// Points are thinned to at most 2000; `diagonal` draws y = x.
std::string scatter_svg(std::span<const std::array<double, 2>> points, const std::string& title,
                        const std::string& x_label, const std::string& y_label, bool diagonal);

/// Bars over [0, 1] with a dashed line at the uniform expectation.
std::string histogram_svg(std::span<const std::size_t> counts, const std::string& title);

}  // namespace levyprem::cli

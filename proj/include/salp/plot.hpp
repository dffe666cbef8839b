#pragma once

#include <string>
#include <utility>
#include <vector>

#include "salp/core.hpp"

namespace salp::plot {

using Series = std::pair<std::string, std::vector<double>>;

/// ABF curves on a log10 fitness axis, one polyline per series.  Values
/// <= floor are drawn at floor; the floor is written into the SVG metadata.
std::string abf_svg(const std::string& title, const std::vector<Series>& curves, double floor = 1e-16);

/// Box summaries (quartiles, median, whiskers at 1.5 IQR, outliers) on a
/// log10 axis, one box per series.
std::string box_svg(const std::string& title, const std::vector<Series>& samples, double floor = 1e-16);

/// Grid of scatter panels: the initial positions ("Start") followed by one
/// panel per snapshot. Only the first two coordinates are drawn; the member
/// at leader_index is circled.
std::string dynamics_svg(const std::string& title, const Bounds& bounds, const Snapshot& initial,
                         const std::vector<Snapshot>& snapshots, std::size_t leader_index);

} // namespace salp::plot

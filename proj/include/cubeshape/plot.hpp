#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "cubeshape/enumerate.hpp"

namespace cubeshape {

// SVG of the Gauss fundamental domain with one path per class arc and one
// marker per record shape, color-keyed by class id. Deterministic bytes for
// fixed input. Viewport x in [-0.05, 0.55], y from 0.9 up.
void plot_svg(const std::vector<FieldRecord>& records,
              const std::vector<std::pair<std::string, BQF>>& arcs, std::ostream& os,
              int samples_per_arc = 1024);

}  // namespace cubeshape

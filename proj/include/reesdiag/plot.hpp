#pragma once

#include "reesdiag/model.hpp"

#include <string>

namespace reesdiag {

// Exact-rational JSON rendering of the tropical functions of a level's
// sections (any skeleton dimension).
nlohmann::json trop_functions_json(const SkeletonComplex& k,
                                   const std::vector<LaurentPoly>& sections,
                                   const std::vector<std::string>& var_names);

// SVG rendering: PL graphs over 1-simplices, shaded arrangement cells over
// 2-simplices. UnsupportedDimension for anything higher.
std::string emit_plot_svg(const SkeletonComplex& k, const std::vector<LaurentPoly>& sections,
                          const std::vector<std::string>& var_names, const std::string& title);

} // namespace reesdiag

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "elastica/curve.hpp"
#include "elastica/reparam.hpp"

namespace elastica::svg {

/// SVG 1.1 figure for a geodesic: one cell per path curve (class "step",
/// shared scale) and a panel with the warp in blue over the identity in red.
std::string geodesic_figure(const std::vector<PlaneCurve>& steps,
                            const Reparameterization& gamma);

void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace elastica::svg

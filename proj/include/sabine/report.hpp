#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sabine/billiards.hpp"
#include "sabine/resonance.hpp"

namespace sabine {

std::string oracle_csv(const std::vector<ResonanceCandidate>& candidates, double alpha, double V0);
std::string search_csv(const std::vector<ResonanceCandidate>& candidates);
std::string orbit_csv(const std::vector<OrbitSegment>& orbit);
std::string sabine_csv(const std::vector<SabineReport>& reports);

/// Scatter of (Re z / h, Im z / h) with the bound drawn as a polyline in the
/// same coordinates. Output is a pure function of the inputs.
std::string render_plot(const std::vector<ResonanceCandidate>& candidates,
                        const std::vector<std::pair<double, double>>& bound_curve, const std::string& title);

void emit_plot(const std::vector<ResonanceCandidate>& candidates,
               const std::vector<std::pair<double, double>>& bound_curve, const std::string& path,
               const std::string& title = "resonances");

void write_text_file(const std::string& path, const std::string& content);

}  // namespace sabine

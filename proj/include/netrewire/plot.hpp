#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace netrewire {

struct PlotOutcome {
    std::vector<std::filesystem::path> written;
    std::vector<std::string> warnings; // one per skipped plot
};

// Renders SVG figures from the CSVs of a sweep directory. `focus_rf` picks the
// rewired curves shown on the per-degree and load plots (closest grid value).
PlotOutcome emit_plots(const std::filesystem::path& results_dir, const std::filesystem::path& out_dir,
                       double focus_rf = 0.05);

} // namespace netrewire

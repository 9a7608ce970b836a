#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace dkg::runner {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Dashed reference line of the given log-log slope, drawn through the
/// first plotted point of the first series.
struct GuideLine {
  std::string label;
  double slope = 0.0;
};

/// Self-contained log-log SVG. Points with non-positive coordinates are
/// skipped, so every drawn point is a sample of the input.
std::string loglog_svg(const std::string& title, const std::vector<PlotSeries>& series,
                       const std::vector<GuideLine>& guides);

void write_loglog_svg(const std::filesystem::path& path, const std::string& title,
                      const std::vector<PlotSeries>& series,
                      const std::vector<GuideLine>& guides);

}  // namespace dkg::runner

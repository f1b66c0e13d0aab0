#pragma once

#include <string>
#include <vector>

namespace sr::plot {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

std::string line_chart(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                       const std::vector<Series>& series);

// Bars with +-err whiskers.
std::string bar_chart(const std::string& title, const std::string& ylabel, const std::vector<std::string>& labels,
                      const std::vector<double>& values, const std::vector<double>& errors);

// Bucket means so long trajectories stay light; keeps at most max_points.
Series downsample(const std::string& name, const std::vector<double>& y, std::size_t max_points = 1000);

}  // namespace sr::plot

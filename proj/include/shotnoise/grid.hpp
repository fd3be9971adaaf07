#pragma once
// Evaluation grids and their CSV/JSON serialization.

#include <string>
#include <vector>

namespace shotnoise {

// parse "start:stop:count" into an inclusive uniform grid
std::vector<double> parse_grid_spec(const std::string& spec);

struct GridColumn {
  std::string name;
  std::vector<double> values;
};

struct DensityGrid {
  std::vector<double> x;
  std::vector<double> f;
  std::string method;  // fourier-split | saddle | closed-form | monte-carlo
  double x1 = 0.0, x2 = 0.0, step = 0.0;  // scheme cutoffs, 0 when not used
  double err_estimate = 0.0;
  std::vector<GridColumn> extra;  // e.g. stderr for monte-carlo histograms

  void validate() const;  // aligned lengths, f >= -1e-9 pointwise
  double trapezoid() const;
};

std::string to_csv(const DensityGrid& g);   // columns x,f,method,err[,extra...]
DensityGrid from_csv(const std::string& text);

std::string to_json(const DensityGrid& g);  // fields plus config echo
DensityGrid from_json(const std::string& text);

}  // namespace shotnoise

// Copyright 2026 The dpconsensus Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#ifndef DPC_PLOT_HPP_
#define DPC_PLOT_HPP_

#include <string>
#include <vector>

#include "dpc/sim.hpp"

namespace dpc {

struct Series {
  std::string label;
  std::vector<double> y;  // plotted against k = 0, 1, ...
};

// Line plot against the step index. With `log_y`, non-positive values are
// dropped and the polyline breaks there.
std::string line_plot_svg(const std::string& title,
                          const std::vector<Series>& series, bool log_y);

// Paired bars per bin: factual and counterfactual counts.
std::string histogram_svg(const std::string& title, const HistogramResult& h);

}  // namespace dpc

#endif  // DPC_PLOT_HPP_

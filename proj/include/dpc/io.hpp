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
#ifndef DPC_IO_HPP_
#define DPC_IO_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "dpc/sim.hpp"

namespace dpc {

using Json = nlohmann::ordered_json;

struct PrivacyOptions {
  std::optional<double> eps_star;
  double tol = kDefaultTol;
  bool strict_paper = false;
};

// A scenario file after every random draw has been resolved.
struct Scenario {
  ScenarioConfig config;
  TopologySpec topology;
  int runs = 500;
  PrivacyOptions privacy;
  // Fully explicit form of the file; loading it back reproduces `config`.
  Json echo;
};

// Seeds in decreasing precedence: command line, the file's sim.seed, the
// environment, then 0.
struct SeedSources {
  std::optional<std::uint64_t> cli;
  std::optional<std::uint64_t> env;
};

// Parses a scenario document. Schema violations raise ValidationError with a
// JSON pointer to the offending value; randomized c/g intervals and box
// initial states are drawn from the resolved seed.
Scenario parse_scenario(const Json& doc, const SeedSources& seeds = {});
Scenario load_scenario(const std::string& path, const SeedSources& seeds = {});

// "%.17g"; NaN and infinities as nan, inf, -inf.
std::string format_double(double v);

// JSON encodings shared by the summary writer.
Json to_json(const Matrix& m);  // row-major nested arrays
Json to_json(const std::vector<double>& v);
Json to_json(const ConditionReport& report);
Json to_json(const EpsilonReport& report);
Json to_json(const LedgerResult& ledger);

// Table writers. Rows of `trace.csv` cover components 0..max(n, r)-1 with an
// empty cell where a field has fewer components; x, xhat and theta are the
// physical values.
std::string trace_csv(const SimTrace& trace);
std::string norms_csv(const SimTrace& trace);
std::string ms_csv(const MsEstimate& ms);
std::string histogram_csv(const HistogramResult& h);
// The same tables as JSON arrays of row objects.
Json trace_json(const SimTrace& trace);
Json norms_json(const SimTrace& trace);
Json ms_json(const MsEstimate& ms);
Json histogram_json(const HistogramResult& h);

// Reads back the output of ms_csv.
MsEstimate parse_ms_csv(const std::string& text);

// Writes `content` to dir/name, creating dir. Raises NumericError on I/O
// failure.
void write_file(const std::string& dir, const std::string& name,
                const std::string& content);
std::string read_file(const std::string& path);

}  // namespace dpc

#endif  // DPC_IO_HPP_

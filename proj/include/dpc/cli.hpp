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
#ifndef DPC_CLI_HPP_
#define DPC_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace dpc {

// Runs one command line (args excludes the program name). The summary goes
// to `out`, diagnostics to `err`. Returns 0 on success, 2 on validation
// errors, 3 on infeasibility (including unmet stability conditions in
// `check`), 4 on numeric or I/O failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace dpc

#endif  // DPC_CLI_HPP_

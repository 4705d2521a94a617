// Copyright 2026 The balcover Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Subcommands of the balcover tool. Each returns a process exit status:
// 0 success, 1 usage, 2 input data, 3 enumeration budget refused,
// 4 internal or numerical failure.

#ifndef BALCOVER_TOOLS_COMMANDS_HPP
#define BALCOVER_TOOLS_COMMANDS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "balcover/generators.hpp"
#include "balcover/ingest.hpp"
#include "balcover/oracle.hpp"
#include "balcover/rounding.hpp"

namespace balcover::cli {

inline constexpr int kExitOk = 0;

struct BuildMatrixArgs {
  std::string clonesPath;
  std::string probesPath;
  std::string outPath;
  AmbiguityPolicy ambiguity = AmbiguityPolicy::kReject;
  MatchEngine engine = MatchEngine::kAutomaton;
};

struct SolveArgs {
  std::string matrixPath;
  std::int64_t s = 0;
  ObjectiveKind objective = ObjectiveKind::kCmin;
  std::optional<Algorithm> algorithm;  // default depends on the objective
  std::optional<std::uint64_t> seed;   // absent: drawn and printed
  std::size_t restarts = 1;
  PadPolicy pad = PadPolicy::kRandom;
  RepairPolicy repair = RepairPolicy::kRandom;
  std::string outPath;  // empty: standard output
  bool omitTiming = false;
};

struct OracleArgs {
  std::string matrixPath;
  std::int64_t s = 0;
  ObjectiveKind objective = ObjectiveKind::kCmin;
  std::uint64_t budget = kDefaultEnumerationBudget;
  std::string outPath;
};

struct GenArgs {
  GeneratorSpec spec;
  std::optional<std::uint64_t> seed;
  std::string inputPath;  // replicate only
  std::string outPath;
};

struct BenchArgs {
  std::vector<std::pair<std::size_t, std::size_t>> sizes{{100, 30}};
  std::vector<double> densities{0.5};
  std::int64_t sFrom = 20;
  std::int64_t sTo = 90;
  std::int64_t sStep = 5;
  std::vector<Algorithm> algorithms{Algorithm::kRcm};
  std::size_t matrices = 1;  // per (size, density)
  std::size_t trials = 10;
  std::optional<std::uint64_t> seed;
  PadPolicy pad = PadPolicy::kRandom;
  RepairPolicy repair = RepairPolicy::kRandom;
  std::string outCsv;  // empty: standard output
  bool omitTiming = false;
};

int cmdBuildMatrix(const BuildMatrixArgs& args, std::ostream& out,
                   std::ostream& err);
int cmdSolve(const SolveArgs& args, std::ostream& out, std::ostream& err);
int cmdOracle(const OracleArgs& args, std::ostream& out, std::ostream& err);
int cmdGen(const GenArgs& args, std::ostream& out, std::ostream& err);
int cmdBench(const BenchArgs& args, std::ostream& out, std::ostream& err);

/// Parses "balcover <subcommand> [flags]" and dispatches. args[0] is the
/// program name.
int runCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace balcover::cli

#endif  // BALCOVER_TOOLS_COMMANDS_HPP

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

// File formats used by the command-line tool: the plain-text matrix file and
// its name sidecar, the JSON result record and the bench CSV.

#ifndef BALCOVER_TOOLS_IO_HPP
#define BALCOVER_TOOLS_IO_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "balcover/core.hpp"
#include "balcover/oracle.hpp"
#include "balcover/rounding.hpp"

namespace balcover::cli {

inline constexpr int kResultSchemaVersion = 1;

inline constexpr const char* kBenchCsvHeader =
    "matrixId,m,n,density,s,objective,algorithm,trial,seed,lpValue,"
    "roundedValue,ratio,wallTimeMs";

/// A parsed matrix file. `comments` keeps the leading '#' lines verbatim.
struct MatrixFile {
  Instance instance;
  std::vector<std::string> comments;
};

/// Parses "m n" followed by m rows of n 0/1 tokens. Leading lines starting
/// with '#' are comments; blank lines are ignored.
MatrixFile parseMatrix(std::istream& in, const std::string& source = "<input>");

/// Writes comments, the header and the rows. Names are not written here.
void writeMatrix(std::ostream& out, const Instance& instance,
                 const std::vector<std::string>& comments = {});

std::filesystem::path namesPath(const std::filesystem::path& matrixPath);

/// Sidecar: clone names one per line, a blank line, probe names.
void writeNames(std::ostream& out, const Instance& instance);

/// Reads a matrix file and, if present, its sidecar.
MatrixFile readMatrixFile(const std::filesystem::path& path);

/// Writes the matrix file and its sidecar.
void writeMatrixFile(const std::filesystem::path& path, const Instance& instance,
                     const std::vector<std::string>& comments = {});

/// Value of a fraction in lowest terms.
Fraction reduced(Fraction f);

struct ResultContext {
  std::int64_t s = 0;
  std::uint64_t seed = 0;
  std::size_t restarts = 1;
  double wallTimeMs = 0.0;
};

nlohmann::ordered_json resultRecord(const Instance& instance,
                                    const RoundingReport& report,
                                    const ResultContext& context);

nlohmann::ordered_json exactRecord(const Instance& instance, std::int64_t s,
                                   const ExactResult& result);

/// Ratio of rounded to LP value, oriented so 1 is ideal and values lie in
/// [0, 1] whenever the LP bound holds: rounded/lp for maximization and
/// lp/rounded for dmax. A zero denominator gives 1.
double qualityRatio(ObjectiveKind objective, double lpValue, double rounded);

/// Shortest decimal rendering that parses back to the same double.
std::string formatDouble(double value);

/// Reads a whole file; throws InputError when it cannot be opened.
std::string readFile(const std::filesystem::path& path);

}  // namespace balcover::cli

#endif  // BALCOVER_TOOLS_IO_HPP

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

#include "io.hpp"

#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>
#include <system_error>

#include "balcover/error.hpp"

namespace balcover::cli {

namespace {

bool isBlank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

std::size_t parsePositive(const std::string& token, const std::string& where) {
  std::size_t value = 0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end || value == 0) {
    throw InputError(where + ": expected a positive integer, got '" + token +
                     "'");
  }
  return value;
}

}  // namespace

MatrixFile parseMatrix(std::istream& in, const std::string& source) {
  std::vector<std::string> comments;
  std::string line;
  std::size_t lineNo = 0;
  std::optional<std::pair<std::size_t, std::size_t>> header;
  std::vector<std::uint8_t> bits;
  std::size_t rows = 0;
  auto where = [&] { return source + ":" + std::to_string(lineNo); };

  while (std::getline(in, line)) {
    ++lineNo;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!header && !line.empty() && line.front() == '#') {
      comments.push_back(line);
      continue;
    }
    if (isBlank(line)) continue;
    const auto tok = tokens(line);
    if (!header) {
      if (tok.size() != 2) {
        throw InputError(where() + ": header must be 'm n'");
      }
      header.emplace(parsePositive(tok[0], where()),
                     parsePositive(tok[1], where()));
      bits.reserve(header->first * header->second);
      continue;
    }
    if (rows == header->first) {
      throw InputError(where() + ": more than m = " +
                       std::to_string(header->first) + " rows");
    }
    if (tok.size() != header->second) {
      throw InputError(where() + ": row has " + std::to_string(tok.size()) +
                       " entries, expected n = " +
                       std::to_string(header->second));
    }
    for (const auto& t : tok) {
      if (t != "0" && t != "1") {
        throw InputError(where() + ": entry '" + t + "' is not 0 or 1");
      }
      bits.push_back(t == "1" ? 1 : 0);
    }
    ++rows;
  }
  if (!header) throw InputError(source + ": missing 'm n' header");
  if (rows != header->first) {
    throw InputError(source + ": found " + std::to_string(rows) +
                     " rows, header says m = " + std::to_string(header->first));
  }
  return {Instance(header->first, header->second, std::move(bits)),
          std::move(comments)};
}

void writeMatrix(std::ostream& out, const Instance& instance,
                 const std::vector<std::string>& comments) {
  for (const auto& c : comments) out << c << '\n';
  out << instance.numClones() << ' ' << instance.numProbes() << '\n';
  std::string line;
  for (std::size_t i = 0; i < instance.numClones(); ++i) {
    line.clear();
    for (auto a : instance.row(i)) {
      if (!line.empty()) line += ' ';
      line += a ? '1' : '0';
    }
    out << line << '\n';
  }
}

std::filesystem::path namesPath(const std::filesystem::path& matrixPath) {
  return std::filesystem::path(matrixPath.string() + ".names");
}

void writeNames(std::ostream& out, const Instance& instance) {
  for (const auto& name : instance.cloneNames()) out << name << '\n';
  out << '\n';
  for (const auto& name : instance.probeNames()) out << name << '\n';
}

std::string readFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

MatrixFile readMatrixFile(const std::filesystem::path& path) {
  std::istringstream in(readFile(path));
  MatrixFile file = parseMatrix(in, path.string());
  const auto sidecar = namesPath(path);
  if (!std::filesystem::exists(sidecar)) return file;

  std::istringstream names(readFile(sidecar));
  std::vector<std::string> clones;
  std::vector<std::string> probes;
  bool inProbes = false;
  for (std::string line; std::getline(names, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      if (inProbes) break;
      inProbes = true;
      continue;
    }
    (inProbes ? probes : clones).push_back(line);
  }
  const Instance& a = file.instance;
  if (clones.size() != a.numClones() || probes.size() != a.numProbes()) {
    throw InputError(sidecar.string() + ": expected " +
                     std::to_string(a.numClones()) + " clone and " +
                     std::to_string(a.numProbes()) + " probe names");
  }
  file.instance = Instance(a.numClones(), a.numProbes(), a.adjacency(),
                           std::move(clones), std::move(probes));
  return file;
}

void writeMatrixFile(const std::filesystem::path& path, const Instance& instance,
                     const std::vector<std::string>& comments) {
  {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path.string() + "'");
    writeMatrix(out, instance, comments);
  }
  std::ofstream names(namesPath(path), std::ios::binary);
  if (!names) throw InputError("cannot write '" + namesPath(path).string() + "'");
  writeNames(names, instance);
}

Fraction reduced(Fraction f) {
  const std::int64_t g = std::gcd(f.num, f.den);
  if (g > 1) {
    f.num /= g;
    f.den /= g;
  }
  return f;
}

std::string formatDouble(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) return std::to_string(value);
  return std::string(buf, ptr);
}

nlohmann::ordered_json resultRecord(const Instance& instance,
                                    const RoundingReport& report,
                                    const ResultContext& context) {
  const RoundingRun& best = report.best;
  const Fraction exact = reduced(best.value);
  nlohmann::ordered_json j;
  j["schemaVersion"] = kResultSchemaVersion;
  j["algorithm"] = toString(report.algorithm);
  j["objective"] = toString(report.objective);
  j["m"] = instance.numClones();
  j["n"] = instance.numProbes();
  j["s"] = context.s;
  j["seed"] = context.seed;
  j["restarts"] = context.restarts;
  j["lpValue"] = report.lp.zStar;
  j["bestValue"] = exact.toDouble();
  j["bestValueExactNum"] = exact.num;
  j["bestValueExactDen"] = exact.den;
  j["selectedIndices"] = best.cover.selected;
  j["degrees"] = best.cover.degrees;
  if (report.epsilonOrLambda) {
    j["epsilonOrLambda"] = *report.epsilonOrLambda;
  } else {
    j["epsilonOrLambda"] = nullptr;
  }
  j["violationsRepaired"] = best.violations;
  j["wallTimeMs"] = context.wallTimeMs;
  return j;
}

nlohmann::ordered_json exactRecord(const Instance& instance, std::int64_t s,
                                   const ExactResult& result) {
  const Fraction opt = reduced(result.optimum);
  nlohmann::ordered_json j;
  j["schemaVersion"] = kResultSchemaVersion;
  j["objective"] = toString(result.objective);
  j["m"] = instance.numClones();
  j["n"] = instance.numProbes();
  j["s"] = s;
  j["optimum"] = opt.toDouble();
  j["optimumExactNum"] = opt.num;
  j["optimumExactDen"] = opt.den;
  j["witness"] = result.witness;
  j["degrees"] = computeDegrees(instance, result.witness);
  j["enumerated"] = result.enumerated;
  if (result.optimumAtMost) {
    const Fraction at = reduced(*result.optimumAtMost);
    j["optimumAtMost"] = at.toDouble();
    j["witnessAtMost"] = result.witnessAtMost;
  }
  return j;
}

double qualityRatio(ObjectiveKind objective, double lpValue, double rounded) {
  if (objective == ObjectiveKind::kDmax) {
    return rounded == 0.0 ? 1.0 : lpValue / rounded;
  }
  return lpValue == 0.0 ? 1.0 : rounded / lpValue;
}

}  // namespace balcover::cli

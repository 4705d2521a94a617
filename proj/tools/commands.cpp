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

#include "commands.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "balcover/error.hpp"
#include "balcover/lp.hpp"
#include "io.hpp"

namespace balcover::cli {

namespace {

using Clock = std::chrono::steady_clock;

double millisSince(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "balcover: " << e.what() << '\n';
    return e.exitCode();
  } catch (const std::exception& e) {
    err << "balcover: internal error: " << e.what() << '\n';
    return static_cast<int>(ErrorKind::kInternal);
  }
}

/// The given seed, or a fresh one from system entropy, reported on `err`.
std::uint64_t resolveSeed(const std::optional<std::uint64_t>& seed,
                          std::ostream& err) {
  if (seed) return *seed;
  std::random_device device;
  const std::uint64_t drawn =
      (static_cast<std::uint64_t>(device()) << 32) ^ device();
  err << "balcover: no --seed given, using --seed " << drawn << '\n';
  return drawn;
}

/// Writes `text` to `path`, or to `out` when the path is empty.
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot write '" + path + "'");
  file << text;
}

std::vector<SequenceRecord> readSequences(const std::string& path,
                                          AmbiguityPolicy policy,
                                          bool probes) {
  std::istringstream in(readFile(path));
  try {
    return probes ? parseProbes(in, policy) : parseFasta(in, policy);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

}  // namespace

int cmdBuildMatrix(const BuildMatrixArgs& args, std::ostream& out,
                   std::ostream& err) {
  return guarded(err, [&] {
    const auto clones = readSequences(args.clonesPath, args.ambiguity, false);
    const auto probes = readSequences(args.probesPath, args.ambiguity, true);
    const Instance instance = buildInstance(clones, probes, args.engine);
    writeMatrixFile(args.outPath, instance);
    out << "m " << instance.numClones() << '\n'
        << "n " << instance.numProbes() << '\n'
        << "edges " << instance.edgeCount() << '\n';
    return kExitOk;
  });
}

int cmdSolve(const SolveArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Algorithm algorithm =
        args.algorithm ? *args.algorithm : defaultAlgorithmFor(args.objective);
    const MatrixFile file = readMatrixFile(args.matrixPath);
    RoundingConfig config;
    config.algorithm = algorithm;
    config.seed = resolveSeed(args.seed, err);
    config.restarts = args.restarts;
    config.padPolicy = args.pad;
    config.repairPolicy = args.repair;

    const auto start = Clock::now();
    const RoundingReport report =
        solveEndToEnd(file.instance, args.s, args.objective, config);
    const double elapsed = args.omitTiming ? 0.0 : millisSince(start);

    const auto record = resultRecord(
        file.instance, report, {args.s, config.seed, args.restarts, elapsed});
    emit(args.outPath, record.dump(2) + "\n", out);
    return kExitOk;
  });
}

int cmdOracle(const OracleArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const MatrixFile file = readMatrixFile(args.matrixPath);
    OracleOptions options;
    options.budget = args.budget;
    const ExactResult result =
        exactOptimum(file.instance, args.s, args.objective, options);
    emit(args.outPath, exactRecord(file.instance, args.s, result).dump(2) + "\n",
         out);
    return kExitOk;
  });
}

int cmdGen(const GenArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (args.outPath.empty()) throw UsageError("gen needs --out");
    GeneratorSpec spec = args.spec;
    spec.seed = resolveSeed(args.seed, err);

    std::vector<std::string> comments;
    std::optional<Instance> instance;
    std::optional<std::int64_t> budget;
    std::string truth;

    switch (spec.kind) {
      case GeneratorKind::kRandom:
        instance = genRandom(spec.m, spec.n, spec.density, spec.seed);
        break;
      case GeneratorKind::kX3cReduction: {
        if (spec.universe % 3 != 0 || spec.universe < 6) {
          throw InputError("x3c needs --universe divisible by 3 and >= 6");
        }
        if (spec.triples == 0) spec.triples = 2 * spec.universe / 3;
        std::vector<std::size_t> planted;
        const X3cInstance x3c = randomX3c(spec.universe / 3, spec.triples,
                                          spec.plantCover, spec.seed, &planted);
        ReducedInstance reduced =
            genFromX3c(x3c, spec.plantCover
                                ? std::optional<std::vector<std::size_t>>(planted)
                                : std::nullopt);
        instance = std::move(reduced.instance);
        budget = reduced.s;
        truth = !reduced.groundTruth ? "unknown"
                : *reduced.groundTruth ? "balanced-cover-exists"
                                       : "no-balanced-cover";
        break;
      }
      case GeneratorKind::kSetCoverReduction: {
        const SetCoverInstance sc = randomSetCover(spec.universe, spec.sets,
                                                   spec.setDensity, spec.seed);
        if (spec.b == 0) {
          const auto best = minSetCoverSize(sc);
          if (!best) {
            throw InputError("the drawn family does not cover the universe; "
                             "pass --b explicitly or raise --set-density");
          }
          spec.b = *best;
        }
        ReducedInstance reduced = genFromSetCover(sc, spec.b);
        instance = std::move(reduced.instance);
        budget = reduced.s;
        truth = !reduced.groundTruth ? "unknown"
                : *reduced.groundTruth ? "size-s-cover-exists"
                                       : "no-size-s-cover";
        break;
      }
      case GeneratorKind::kReplicate: {
        if (args.inputPath.empty()) throw UsageError("replicate needs --in");
        MatrixFile source = readMatrixFile(args.inputPath);
        comments = source.comments;
        instance = replicateProbes(source.instance, spec.r);
        break;
      }
    }

    comments.push_back("# generator: " + spec.describe());
    if (!truth.empty()) comments.push_back("# ground-truth: " + truth);
    if (budget) comments.push_back("# s: " + std::to_string(*budget));
    writeMatrixFile(args.outPath, *instance, comments);
    out << "m " << instance->numClones() << '\n'
        << "n " << instance->numProbes() << '\n';
    if (budget) out << "s " << *budget << '\n';
    if (!truth.empty()) out << "ground-truth " << truth << '\n';
    return kExitOk;
  });
}

int cmdBench(const BenchArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (args.trials < 1) throw UsageError("--trials must be at least 1");
    if (args.matrices < 1) throw UsageError("--matrices must be at least 1");
    if (args.sStep < 1) throw UsageError("--s-step must be at least 1");
    if (args.sFrom < 1 || args.sTo < args.sFrom) {
      throw UsageError("need 1 <= --s-from <= --s-to");
    }
    if (args.sizes.empty() || args.densities.empty() || args.algorithms.empty()) {
      throw UsageError("bench needs at least one size, density and algorithm");
    }
    const std::uint64_t seed = resolveSeed(args.seed, err);

    std::ostringstream csv;
    csv << kBenchCsvHeader << '\n';
    std::ostringstream summary;
    summary << "matrixId,s,algorithm,trials,lpValue,meanRounded,bestRounded,"
               "meanRatio\n";

    std::uint64_t matrixCounter = 0;
    for (const auto& [m, n] : args.sizes) {
      for (double density : args.densities) {
        for (std::size_t rep = 0; rep < args.matrices; ++rep) {
          const std::uint64_t matrixSeed = deriveSeed(seed, matrixCounter++);
          const std::string matrixId = "M" + std::to_string(matrixCounter);
          const Instance instance = genRandom(m, n, density, matrixSeed);
          for (std::int64_t s = args.sFrom; s <= args.sTo; s += args.sStep) {
            if (static_cast<std::size_t>(s) > m) break;
            // One LP per formulation, shared by the algorithms using it.
            std::map<Formulation, std::pair<FractionalSolution, double>> lps;
            for (Algorithm algorithm : args.algorithms) {
              const Formulation f = formulationOf(algorithm);
              if (!lps.count(f)) {
                const auto start = Clock::now();
                auto lp = solveLp(buildLp(instance, s, f));
                lps.emplace(f, std::make_pair(std::move(lp), millisSince(start)));
              }
              const auto& [lp, lpMs] = lps.at(f);
              const ObjectiveKind objective = objectiveOf(algorithm);
              double sumRounded = 0.0;
              double sumRatio = 0.0;
              std::optional<Fraction> best;
              for (std::size_t t = 0; t < args.trials; ++t) {
                RoundingConfig config;
                config.algorithm = algorithm;
                config.seed = deriveSeed(deriveSeed(matrixSeed, s), t);
                config.padPolicy = args.pad;
                config.repairPolicy = args.repair;
                const auto start = Clock::now();
                const RoundingRun run = roundOnce(instance, s, lp, config);
                const double ms = args.omitTiming ? 0.0 : lpMs + millisSince(start);
                const double rounded = run.value.toDouble();
                const double ratio = qualityRatio(objective, lp.zStar, rounded);
                sumRounded += rounded;
                sumRatio += ratio;
                if (!best || (isMaximize(objective) ? run.value > *best
                                                    : run.value < *best)) {
                  best = run.value;
                }
                csv << matrixId << ',' << m << ',' << n << ','
                    << formatDouble(density) << ',' << s << ','
                    << toString(objective) << ',' << toString(algorithm) << ','
                    << t << ',' << config.seed << ',' << formatDouble(lp.zStar)
                    << ',' << formatDouble(rounded) << ',' << formatDouble(ratio)
                    << ',' << formatDouble(ms) << '\n';
              }
              const double trials = static_cast<double>(args.trials);
              summary << matrixId << ',' << s << ',' << toString(algorithm)
                      << ',' << args.trials << ',' << formatDouble(lp.zStar)
                      << ',' << formatDouble(sumRounded / trials) << ','
                      << formatDouble(best->toDouble()) << ','
                      << formatDouble(sumRatio / trials) << '\n';
            }
          }
        }
      }
    }
    emit(args.outCsv, csv.str(), out);
    // Keep stdout machine-readable when the CSV itself goes there.
    (args.outCsv.empty() ? err : out) << summary.str();
    return kExitOk;
  });
}

namespace {

std::pair<std::size_t, std::size_t> parseSize(const std::string& text) {
  const auto x = text.find('x');
  try {
    if (x == std::string::npos) throw std::invalid_argument(text);
    std::size_t used = 0;
    const auto m = std::stoull(text.substr(0, x), &used);
    if (used != x) throw std::invalid_argument(text);
    const auto rest = text.substr(x + 1);
    const auto n = std::stoull(rest, &used);
    if (used != rest.size() || m == 0 || n == 0) throw std::invalid_argument(text);
    return {m, n};
  } catch (const std::logic_error&) {
    throw UsageError("size '" + text + "' is not of the form MxN");
  }
}

AmbiguityPolicy parseAmbiguity(const std::string& text) {
  if (text == "reject") return AmbiguityPolicy::kReject;
  if (text == "never-match") return AmbiguityPolicy::kNeverMatch;
  throw UsageError("unknown --ambiguity '" + text +
                   "' (expected reject or never-match)");
}

MatchEngine parseEngine(const std::string& text) {
  if (text == "automaton") return MatchEngine::kAutomaton;
  if (text == "naive") return MatchEngine::kNaive;
  throw UsageError("unknown --engine '" + text + "' (expected automaton or naive)");
}

}  // namespace

int runCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Balanced covering of clone/probe hybridization graphs", "balcover"};
  app.require_subcommand(1);

  // Raw flag values; enums are parsed after CLI11 so that bad values map to
  // the usage exit code with a specific message.
  std::string ambiguity = "reject";
  std::string engine = "automaton";
  std::string objective = "cmin";
  std::string algorithm;
  std::string pad = "random";
  std::string repair = "random";
  std::string kind = "random";
  std::vector<std::string> sizes{"100x30"};
  std::vector<std::string> algorithms{"rcm"};
  std::uint64_t seedValue = 0;

  BuildMatrixArgs build;
  auto* cBuild = app.add_subcommand("build-matrix",
                                    "Build the adjacency matrix from FASTA files");
  cBuild->add_option("--clones", build.clonesPath, "Clone FASTA file")->required();
  cBuild->add_option("--probes", build.probesPath,
                     "Probe FASTA file or one probe per line")->required();
  cBuild->add_option("--out", build.outPath, "Output matrix file")->required();
  cBuild->add_option("--ambiguity", ambiguity,
                     "Non-ACGT characters: reject or never-match");
  cBuild->add_option("--engine", engine, "Matcher: automaton or naive");

  SolveArgs solve;
  auto* cSolve = app.add_subcommand("solve", "LP relaxation plus randomized rounding");
  cSolve->add_option("--matrix", solve.matrixPath, "Matrix file")->required();
  cSolve->add_option("--s", solve.s, "Number of clones to select")->required();
  cSolve->add_option("--objective", objective, "cmin, cavg or dmax");
  cSolve->add_option("--alg", algorithm, "rcm, rcm2, rdm, rca or rca2");
  auto* solveSeed = cSolve->add_option("--seed", seedValue, "Random seed");
  cSolve->add_option("--restarts", solve.restarts, "Independent rounding trials");
  cSolve->add_option("--pad", pad, "Padding: none, random or greedy");
  cSolve->add_option("--repair", repair, "Repair: random or lowest-fraction");
  cSolve->add_option("--out", solve.outPath, "Result file (default stdout)");
  cSolve->add_flag("--omit-timing", solve.omitTiming, "Write wallTimeMs as 0");

  OracleArgs oracle;
  auto* cOracle = app.add_subcommand("oracle", "Exact optimum by enumeration");
  cOracle->add_option("--matrix", oracle.matrixPath, "Matrix file")->required();
  cOracle->add_option("--s", oracle.s, "Number of clones to select")->required();
  cOracle->add_option("--objective", objective, "cmin, cavg, dmax or davg");
  cOracle->add_option("--budget", oracle.budget, "Maximum subsets to enumerate");
  cOracle->add_option("--out", oracle.outPath, "Result file (default stdout)");

  GenArgs gen;
  auto* cGen = app.add_subcommand("gen", "Generate an instance");
  cGen->add_option("--kind", kind, "random, x3c, setcover or replicate");
  auto* genSeed = cGen->add_option("--seed", seedValue, "Random seed");
  cGen->add_option("--m", gen.spec.m, "Clones (random)");
  cGen->add_option("--n", gen.spec.n, "Probes (random)");
  cGen->add_option("--density", gen.spec.density, "Edge probability (random)");
  cGen->add_option("--universe", gen.spec.universe, "Universe size (x3c, setcover)");
  cGen->add_option("--triples", gen.spec.triples, "Number of triples (x3c)");
  cGen->add_flag("--plant-cover", gen.spec.plantCover, "Plant an exact cover (x3c)");
  cGen->add_option("--sets", gen.spec.sets, "Family size (setcover)");
  cGen->add_option("--set-density", gen.spec.setDensity,
                   "Item membership probability (setcover)");
  cGen->add_option("--b", gen.spec.b, "Target cover size (setcover)");
  cGen->add_option("--r", gen.spec.r, "Copies per probe (replicate)");
  cGen->add_option("--in", gen.inputPath, "Input matrix (replicate)");
  cGen->add_option("--out", gen.outPath, "Output matrix file")->required();

  BenchArgs bench;
  auto* cBench = app.add_subcommand("bench", "Rounding-versus-LP sweep on random matrices");
  cBench->add_option("--sizes", sizes, "Matrix sizes MxN")->delimiter(',');
  cBench->add_option("--densities", bench.densities, "Edge probabilities")
      ->delimiter(',');
  cBench->add_option("--s-from", bench.sFrom, "First s");
  cBench->add_option("--s-to", bench.sTo, "Last s");
  cBench->add_option("--s-step", bench.sStep, "Step between values of s");
  cBench->add_option("--algorithms", algorithms, "Algorithms")->delimiter(',');
  cBench->add_option("--matrices", bench.matrices, "Matrices per size and density");
  cBench->add_option("--trials", bench.trials, "Rounding trials per cell");
  auto* benchSeed = cBench->add_option("--seed", seedValue, "Random seed");
  cBench->add_option("--pad", pad, "Padding: none, random or greedy");
  cBench->add_option("--repair", repair, "Repair: random or lowest-fraction");
  cBench->add_option("--out", bench.outCsv, "CSV file (default stdout)");
  cBench->add_flag("--omit-timing", bench.omitTiming, "Write wallTimeMs as 0");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : static_cast<int>(ErrorKind::kUsage);
  }

  return guarded(err, [&] {
    if (cBuild->parsed()) {
      build.ambiguity = parseAmbiguity(ambiguity);
      build.engine = parseEngine(engine);
      return cmdBuildMatrix(build, out, err);
    }
    if (cSolve->parsed()) {
      solve.objective = parseObjective(objective);
      if (!algorithm.empty()) solve.algorithm = parseAlgorithm(algorithm);
      if (solveSeed->count()) solve.seed = seedValue;
      solve.pad = parsePadPolicy(pad);
      solve.repair = parseRepairPolicy(repair);
      return cmdSolve(solve, out, err);
    }
    if (cOracle->parsed()) {
      oracle.objective = parseObjective(objective);
      return cmdOracle(oracle, out, err);
    }
    if (cGen->parsed()) {
      gen.spec.kind = parseGeneratorKind(kind);
      if (genSeed->count()) gen.seed = seedValue;
      return cmdGen(gen, out, err);
    }
    bench.sizes.clear();
    for (const auto& size : sizes) bench.sizes.push_back(parseSize(size));
    bench.algorithms.clear();
    for (const auto& a : algorithms) bench.algorithms.push_back(parseAlgorithm(a));
    if (benchSeed->count()) bench.seed = seedValue;
    bench.pad = parsePadPolicy(pad);
    bench.repair = parseRepairPolicy(repair);
    return cmdBench(bench, out, err);
  });
}

}  // namespace balcover::cli

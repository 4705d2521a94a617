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

// Instance generators: Bernoulli random matrices, the reductions from
// Exact Cover by 3-Sets and from Set Cover, and probe replication.

#ifndef BALCOVER_GENERATORS_HPP
#define BALCOVER_GENERATORS_HPP

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "balcover/core.hpp"
#include "balcover/error.hpp"
#include "balcover/random.hpp"

namespace balcover {

/// m x n matrix with independent entries, 1 with probability `density`.
inline Instance genRandom(std::size_t m, std::size_t n, double density,
                          std::uint64_t seed) {
  if (m < 1 || n < 1) throw InputError("random instance needs m, n >= 1");
  if (!(density > 0.0 && density <= 1.0)) {
    throw InputError("density must lie in (0, 1]");
  }
  Rng rng(seed);
  std::vector<std::uint8_t> bits(m * n);
  for (auto& b : bits) b = rng.bernoulli(density) ? 1 : 0;
  return Instance(m, n, std::move(bits));
}

/// Reduction output: the instance, its budget and, when known, whether the
/// source instance is a yes-instance.
struct ReducedInstance {
  Instance instance;
  std::int64_t s = 0;
  std::optional<bool> groundTruth;
};

// ---------------------------------------------------------------------------
// Exact Cover by 3-Sets.

using Triple = std::array<std::size_t, 3>;

struct X3cInstance {
  std::size_t universe = 0;  // items 0..universe-1, universe = 3m'
  std::vector<Triple> triples;

  std::size_t groups() const { return universe / 3; }

  void validate() const {
    if (universe % 3 != 0) {
      throw InputError("X3C universe size " + std::to_string(universe) +
                       " is not divisible by 3");
    }
    if (groups() < 2) {
      throw InputError("X3C reduction needs a universe of at least 6 items");
    }
    for (std::size_t t = 0; t < triples.size(); ++t) {
      const auto& tr = triples[t];
      for (std::size_t k = 0; k < 3; ++k) {
        if (tr[k] >= universe) {
          throw InputError("triple " + std::to_string(t + 1) +
                           " names an item outside the universe");
        }
      }
      if (tr[0] == tr[1] || tr[0] == tr[2] || tr[1] == tr[2]) {
        throw InputError("triple " + std::to_string(t + 1) +
                         " repeats an item");
      }
    }
    if (triples.size() < groups()) {
      throw InputError("X3C reduction needs at least universe/3 = " +
                       std::to_string(groups()) + " triples, got " +
                       std::to_string(triples.size()));
    }
  }
};

inline constexpr std::size_t kGroundTruthLimit = 12;

/// Backtracking exact-cover search: branch on the lowest uncovered item.
/// Returns the indices of a covering sub-collection, if one exists.
inline std::optional<std::vector<std::size_t>> solveExactCover(
    const X3cInstance& x3c) {
  std::vector<std::uint8_t> covered(x3c.universe, 0);
  std::vector<std::size_t> chosen;
  auto recurse = [&](auto&& self) -> bool {
    auto it = std::find(covered.begin(), covered.end(), std::uint8_t{0});
    if (it == covered.end()) return true;
    const auto item = static_cast<std::size_t>(it - covered.begin());
    for (std::size_t t = 0; t < x3c.triples.size(); ++t) {
      const auto& tr = x3c.triples[t];
      if (tr[0] != item && tr[1] != item && tr[2] != item) continue;
      if (covered[tr[0]] || covered[tr[1]] || covered[tr[2]]) continue;
      for (auto x : tr) covered[x] = 1;
      chosen.push_back(t);
      if (self(self)) return true;
      chosen.pop_back();
      for (auto x : tr) covered[x] = 0;
    }
    return false;
  };
  if (recurse(recurse)) return chosen;
  return std::nullopt;
}

/// Clones are the triples followed by m'-2 clones adjacent to every item;
/// probes are the items; s = 2m' - 2. The instance has a perfectly balanced
/// cover iff the triples contain an exact cover.
///
/// Ground truth comes from `plantedCover` when given (it is checked), else
/// from exhaustive search when the universe has at most 12 items.
inline ReducedInstance genFromX3c(
    const X3cInstance& x3c,
    const std::optional<std::vector<std::size_t>>& plantedCover = std::nullopt) {
  x3c.validate();
  const std::size_t groups = x3c.groups();
  const std::size_t numTriples = x3c.triples.size();
  const std::size_t universal = groups - 2;
  const std::size_t m = numTriples + universal;
  const std::size_t n = x3c.universe;

  std::vector<std::uint8_t> bits(m * n, 0);
  std::vector<std::string> cloneNames;
  for (std::size_t t = 0; t < numTriples; ++t) {
    for (auto x : x3c.triples[t]) bits[t * n + x] = 1;
    cloneNames.push_back("t" + std::to_string(t + 1));
  }
  for (std::size_t w = 0; w < universal; ++w) {
    std::fill_n(bits.begin() + (numTriples + w) * n, n, std::uint8_t{1});
    cloneNames.push_back("w" + std::to_string(w + 1));
  }
  std::vector<std::string> probeNames;
  for (std::size_t x = 0; x < n; ++x) {
    probeNames.push_back("x" + std::to_string(x + 1));
  }

  ReducedInstance out{Instance(m, n, std::move(bits), std::move(cloneNames),
                               std::move(probeNames)),
                      static_cast<std::int64_t>(2 * groups - 2), std::nullopt};
  if (plantedCover) {
    std::vector<std::uint8_t> hit(n, 0);
    for (std::size_t t : *plantedCover) {
      if (t >= numTriples) throw InputError("planted cover index out of range");
      for (auto x : x3c.triples[t]) {
        if (hit[x]) throw InputError("planted cover is not disjoint");
        hit[x] = 1;
      }
    }
    if (std::find(hit.begin(), hit.end(), std::uint8_t{0}) != hit.end()) {
      throw InputError("planted cover does not cover the universe");
    }
    out.groundTruth = true;
  } else if (x3c.universe <= kGroundTruthLimit) {
    out.groundTruth = solveExactCover(x3c).has_value();
  }
  return out;
}

/// Random X3C instance with `numTriples` distinct triples drawn uniformly.
/// With `plantCover`, a random partition of the universe into triples is
/// inserted first and the remaining triples are decoys; the partition's
/// positions are returned through `planted`.
inline X3cInstance randomX3c(std::size_t groups, std::size_t numTriples,
                             bool plantCover, std::uint64_t seed,
                             std::vector<std::size_t>* planted = nullptr) {
  const std::size_t universe = 3 * groups;
  const std::uint64_t distinct =
      universe < 3 ? 0
                   : static_cast<std::uint64_t>(universe) * (universe - 1) *
                         (universe - 2) / 6;
  if (numTriples > distinct) {
    throw InputError("cannot draw " + std::to_string(numTriples) +
                     " distinct triples from " + std::to_string(universe) +
                     " items");
  }
  if (plantCover && numTriples < groups) {
    throw InputError("a planted cover needs at least universe/3 triples");
  }
  Rng rng(seed);
  std::set<Triple> seen;
  std::vector<Triple> triples;
  std::vector<std::uint8_t> isPlanted;
  if (plantCover) {
    std::vector<std::size_t> items(universe);
    for (std::size_t i = 0; i < universe; ++i) items[i] = i;
    rng.shuffle(items);
    for (std::size_t g = 0; g < groups; ++g) {
      Triple tr{items[3 * g], items[3 * g + 1], items[3 * g + 2]};
      std::sort(tr.begin(), tr.end());
      seen.insert(tr);
      triples.push_back(tr);
      isPlanted.push_back(1);
    }
  }
  while (triples.size() < numTriples) {
    Triple tr{};
    tr[0] = static_cast<std::size_t>(rng.below(universe));
    do tr[1] = static_cast<std::size_t>(rng.below(universe)); while (tr[1] == tr[0]);
    do tr[2] = static_cast<std::size_t>(rng.below(universe));
    while (tr[2] == tr[0] || tr[2] == tr[1]);
    std::sort(tr.begin(), tr.end());
    if (!seen.insert(tr).second) continue;
    triples.push_back(tr);
    isPlanted.push_back(0);
  }
  // Shuffle so the planted triples are not simply the first ones.
  std::vector<std::size_t> order(triples.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  rng.shuffle(order);
  X3cInstance out{universe, {}};
  if (planted) planted->clear();
  for (std::size_t k = 0; k < order.size(); ++k) {
    out.triples.push_back(triples[order[k]]);
    if (planted && isPlanted[order[k]]) planted->push_back(k);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Set Cover.

struct SetCoverInstance {
  std::size_t universe = 0;
  std::vector<std::vector<std::size_t>> family;

  void validate() const {
    if (universe < 1) throw InputError("set cover universe is empty");
    if (family.empty()) throw InputError("set cover family is empty");
    for (std::size_t q = 0; q < family.size(); ++q) {
      for (std::size_t x : family[q]) {
        if (x >= universe) {
          throw InputError("set " + std::to_string(q + 1) +
                           " names an item outside the universe");
        }
      }
    }
  }
};

/// Smallest number of sets covering the universe, by enumeration in order of
/// increasing size; nullopt when the union misses an item.
inline std::optional<std::size_t> minSetCoverSize(const SetCoverInstance& sc) {
  sc.validate();
  const std::size_t k = sc.family.size();
  if (k > 24) throw InputError("minimum set cover by enumeration needs <= 24 sets");
  std::vector<std::uint32_t> masks(k, 0);
  for (std::size_t q = 0; q < k; ++q) {
    for (std::size_t x : sc.family[q]) masks[q] |= 1u << x;
  }
  if (sc.universe > 31) throw InputError("universe too large for enumeration");
  const std::uint32_t full = (1u << sc.universe) - 1u;
  std::optional<std::size_t> best;
  for (std::uint32_t pick = 0; pick < (1u << k); ++pick) {
    const auto size = static_cast<std::size_t>(std::popcount(pick));
    if (best && size >= *best) continue;
    std::uint32_t covered = 0;
    for (std::size_t q = 0; q < k; ++q) {
      if (pick & (1u << q)) covered |= masks[q];
    }
    if (covered == full) best = size;
  }
  return best;
}

/// Clones are the sets followed by q0; probes are the items followed by x0.
/// Every set is adjacent to x0, q0 has no edges, and s = b + 1. The instance
/// has a size-s cover iff some b sets cover the universe.
inline ReducedInstance genFromSetCover(const SetCoverInstance& sc,
                                       std::size_t b) {
  sc.validate();
  if (b < 1) throw InputError("set cover target b must be at least 1");
  if (b > sc.family.size()) {
    throw InputError("set cover target b = " + std::to_string(b) +
                     " exceeds the family size " +
                     std::to_string(sc.family.size()));
  }
  const std::size_t m = sc.family.size() + 1;
  const std::size_t n = sc.universe + 1;
  std::vector<std::uint8_t> bits(m * n, 0);
  std::vector<std::string> cloneNames;
  for (std::size_t q = 0; q < sc.family.size(); ++q) {
    for (std::size_t x : sc.family[q]) bits[q * n + x] = 1;
    bits[q * n + sc.universe] = 1;
    cloneNames.push_back("q" + std::to_string(q + 1));
  }
  cloneNames.push_back("q0");
  std::vector<std::string> probeNames;
  for (std::size_t x = 0; x < sc.universe; ++x) {
    probeNames.push_back("x" + std::to_string(x + 1));
  }
  probeNames.push_back("x0");

  ReducedInstance out{Instance(m, n, std::move(bits), std::move(cloneNames),
                               std::move(probeNames)),
                      static_cast<std::int64_t>(b + 1), std::nullopt};
  if (sc.family.size() <= kGroundTruthLimit && sc.universe <= 31) {
    const auto best = minSetCoverSize(sc);
    out.groundTruth = best.has_value() && *best <= b;
  }
  return out;
}

/// Random family: each set contains each item independently with
/// probability `density`.
inline SetCoverInstance randomSetCover(std::size_t universe,
                                       std::size_t numSets, double density,
                                       std::uint64_t seed) {
  if (universe < 1 || numSets < 1) {
    throw InputError("set cover needs a nonempty universe and family");
  }
  if (!(density > 0.0 && density <= 1.0)) {
    throw InputError("density must lie in (0, 1]");
  }
  Rng rng(seed);
  SetCoverInstance out{universe, std::vector<std::vector<std::size_t>>(numSets)};
  for (auto& set : out.family) {
    for (std::size_t x = 0; x < universe; ++x) {
      if (rng.bernoulli(density)) set.push_back(x);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

/// Every probe column repeated r times (copies adjacent, probe-major).
inline Instance replicateProbes(const Instance& instance, std::size_t r) {
  if (r < 1) throw InputError("replication factor must be at least 1");
  if (r == 1) return instance;
  const std::size_t m = instance.numClones();
  const std::size_t n = instance.numProbes();
  std::vector<std::uint8_t> bits;
  bits.reserve(m * n * r);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      bits.insert(bits.end(), r, instance.row(i)[j]);
    }
  }
  std::vector<std::string> probeNames;
  for (const auto& name : instance.probeNames()) {
    for (std::size_t k = 1; k <= r; ++k) {
      probeNames.push_back(name + "." + std::to_string(k));
    }
  }
  return Instance(m, n * r, std::move(bits), instance.cloneNames(),
                  std::move(probeNames));
}

// ---------------------------------------------------------------------------

enum class GeneratorKind { kRandom, kX3cReduction, kSetCoverReduction, kReplicate };

inline std::string_view toString(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::kRandom: return "random";
    case GeneratorKind::kX3cReduction: return "x3c";
    case GeneratorKind::kSetCoverReduction: return "setcover";
    case GeneratorKind::kReplicate: return "replicate";
  }
  return "?";
}

inline GeneratorKind parseGeneratorKind(std::string_view name) {
  for (auto k : {GeneratorKind::kRandom, GeneratorKind::kX3cReduction,
                 GeneratorKind::kSetCoverReduction, GeneratorKind::kReplicate}) {
    if (toString(k) == name) return k;
  }
  throw UsageError("unknown generator kind '" + std::string(name) +
                   "' (expected random, x3c, setcover or replicate)");
}

/// Flat parameter record; fields irrelevant to `kind` are ignored.
struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::kRandom;
  std::uint64_t seed = 0;
  // random
  std::size_t m = 0;
  std::size_t n = 0;
  double density = 0.5;
  // x3c
  std::size_t universe = 0;
  std::size_t triples = 0;  // 0: 2 * universe / 3
  bool plantCover = false;
  // setcover (universe shared with x3c)
  std::size_t sets = 0;
  double setDensity = 0.3;
  std::size_t b = 0;  // 0: minimum cover size
  // replicate
  std::size_t r = 1;

  /// Single-line key=value rendering, recorded in generated matrix files.
  std::string describe() const {
    std::ostringstream out;
    out << "kind=" << toString(kind) << " seed=" << seed;
    switch (kind) {
      case GeneratorKind::kRandom:
        out << " m=" << m << " n=" << n << " density=" << density;
        break;
      case GeneratorKind::kX3cReduction:
        out << " universe=" << universe << " triples=" << triples
            << " plant-cover=" << (plantCover ? "true" : "false");
        break;
      case GeneratorKind::kSetCoverReduction:
        out << " universe=" << universe << " sets=" << sets
            << " set-density=" << setDensity << " b=" << b;
        break;
      case GeneratorKind::kReplicate:
        out << " r=" << r;
        break;
    }
    return out.str();
  }
};

}  // namespace balcover

#endif  // BALCOVER_GENERATORS_HPP

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

// Instances, cover solutions and exact evaluation of the four balance
// objectives. Half-integral quantities are carried doubled so every
// comparison is done in integers.

#ifndef BALCOVER_CORE_HPP
#define BALCOVER_CORE_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "balcover/error.hpp"

namespace balcover {

enum class ObjectiveKind { kCmin, kCavg, kDmax, kDavg };

inline constexpr bool isMaximize(ObjectiveKind kind) {
  return kind == ObjectiveKind::kCmin || kind == ObjectiveKind::kCavg;
}

inline std::string_view toString(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::kCmin: return "cmin";
    case ObjectiveKind::kCavg: return "cavg";
    case ObjectiveKind::kDmax: return "dmax";
    case ObjectiveKind::kDavg: return "davg";
  }
  return "?";
}

inline ObjectiveKind parseObjective(std::string_view name) {
  for (auto kind : {ObjectiveKind::kCmin, ObjectiveKind::kCavg,
                    ObjectiveKind::kDmax, ObjectiveKind::kDavg}) {
    if (toString(kind) == name) return kind;
  }
  throw UsageError("unknown objective '" + std::string(name) +
                   "' (expected cmin, cavg, dmax or davg)");
}

/// Nonnegative rational with positive denominator, not reduced.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double toDouble() const { return static_cast<double>(num) / den; }

  friend bool operator==(const Fraction& a, const Fraction& b) {
    return a.num * b.den == b.num * a.den;
  }
  friend bool operator<(const Fraction& a, const Fraction& b) {
    return a.num * b.den < b.num * a.den;
  }
  friend bool operator>(const Fraction& a, const Fraction& b) { return b < a; }
  friend bool operator<=(const Fraction& a, const Fraction& b) {
    return !(b < a);
  }
  friend bool operator>=(const Fraction& a, const Fraction& b) {
    return !(a < b);
  }
};

/// Bipartite clone/probe hybridization graph as a dense 0/1 matrix.
/// Rows are clones, columns are probes. Immutable after construction.
class Instance {
 public:
  Instance(std::size_t numClones, std::size_t numProbes,
           std::vector<std::uint8_t> adjacency,
           std::vector<std::string> cloneNames = {},
           std::vector<std::string> probeNames = {})
      : numClones_(numClones),
        numProbes_(numProbes),
        adjacency_(std::move(adjacency)),
        cloneNames_(std::move(cloneNames)),
        probeNames_(std::move(probeNames)) {
    if (numClones_ == 0) throw InputError("instance has no clones");
    if (numProbes_ == 0) throw InputError("instance has no probes");
    if (adjacency_.size() != numClones_ * numProbes_) {
      throw InputError("adjacency has " + std::to_string(adjacency_.size()) +
                       " entries, expected " +
                       std::to_string(numClones_ * numProbes_));
    }
    for (std::uint8_t a : adjacency_) {
      if (a > 1) throw InputError("adjacency entries must be 0 or 1");
    }
    cloneNames_ = checkedNames(std::move(cloneNames_), numClones_, 'c');
    probeNames_ = checkedNames(std::move(probeNames_), numProbes_, 'p');
  }

  /// Builds from a list of rows; every row must have the same length.
  static Instance fromRows(const std::vector<std::vector<int>>& rows) {
    if (rows.empty()) throw InputError("instance has no clones");
    const std::size_t n = rows.front().size();
    std::vector<std::uint8_t> bits;
    bits.reserve(rows.size() * n);
    for (const auto& row : rows) {
      if (row.size() != n) throw InputError("ragged adjacency rows");
      for (int a : row) {
        if (a != 0 && a != 1) throw InputError("adjacency entries must be 0 or 1");
        bits.push_back(static_cast<std::uint8_t>(a));
      }
    }
    return Instance(rows.size(), n, std::move(bits));
  }

  std::size_t numClones() const { return numClones_; }
  std::size_t numProbes() const { return numProbes_; }

  bool adjacent(std::size_t clone, std::size_t probe) const {
    return adjacency_[clone * numProbes_ + probe] != 0;
  }
  std::span<const std::uint8_t> row(std::size_t clone) const {
    return {adjacency_.data() + clone * numProbes_, numProbes_};
  }
  const std::vector<std::uint8_t>& adjacency() const { return adjacency_; }

  const std::vector<std::string>& cloneNames() const { return cloneNames_; }
  const std::vector<std::string>& probeNames() const { return probeNames_; }

  std::size_t edgeCount() const {
    return static_cast<std::size_t>(
        std::count(adjacency_.begin(), adjacency_.end(), std::uint8_t{1}));
  }

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.numClones_ == b.numClones_ && a.numProbes_ == b.numProbes_ &&
           a.adjacency_ == b.adjacency_ && a.cloneNames_ == b.cloneNames_ &&
           a.probeNames_ == b.probeNames_;
  }

 private:
  static std::vector<std::string> checkedNames(std::vector<std::string> names,
                                               std::size_t count,
                                               char prefix) {
    if (names.empty()) {
      names.reserve(count);
      for (std::size_t i = 1; i <= count; ++i) {
        names.push_back(prefix + std::to_string(i));
      }
      return names;
    }
    if (names.size() != count) {
      throw InputError("expected " + std::to_string(count) + " names, got " +
                       std::to_string(names.size()));
    }
    std::unordered_set<std::string> seen;
    for (const auto& name : names) {
      if (!seen.insert(name).second) {
        throw InputError("duplicate name '" + name + "'");
      }
    }
    return names;
  }

  std::size_t numClones_;
  std::size_t numProbes_;
  std::vector<std::uint8_t> adjacency_;
  std::vector<std::string> cloneNames_;
  std::vector<std::string> probeNames_;
};

/// Objective numerators. cavg = cavgNum/n, dmax = dmaxX2/2,
/// davg = davgNumX2/(2n).
struct Objectives {
  std::int64_t cmin = 0;
  std::int64_t cavgNum = 0;
  std::int64_t dmaxX2 = 0;
  std::int64_t davgNumX2 = 0;

  friend bool operator==(const Objectives&, const Objectives&) = default;
};

struct CoverSolution {
  std::vector<std::size_t> selected;  // sorted, distinct
  std::int64_t budget = 0;
  std::vector<std::int64_t> degrees;
  Objectives objectives;

  std::size_t numProbes() const { return degrees.size(); }
};

namespace detail {

inline std::vector<std::size_t> checkedSelection(
    const Instance& instance, std::span<const std::size_t> selected) {
  std::vector<std::size_t> sorted(selected.begin(), selected.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    if (sorted[k] >= instance.numClones()) {
      throw InputError("clone index " + std::to_string(sorted[k]) +
                       " out of range [0, " +
                       std::to_string(instance.numClones()) + ")");
    }
    if (k > 0 && sorted[k] == sorted[k - 1]) {
      throw InputError("clone index " + std::to_string(sorted[k]) +
                       " selected twice");
    }
  }
  return sorted;
}

inline Objectives objectivesFromDegrees(std::span<const std::int64_t> degrees,
                                        std::int64_t s) {
  Objectives out;
  out.cmin = degrees.empty() ? 0 : INT64_MAX;
  for (std::int64_t d : degrees) {
    const std::int64_t balance = std::min(d, s - d);
    const std::int64_t deviation = std::llabs(2 * d - s);
    out.cmin = std::min(out.cmin, balance);
    out.cavgNum += balance;
    out.dmaxX2 = std::max(out.dmaxX2, deviation);
    out.davgNumX2 += deviation;
  }
  return out;
}

}  // namespace detail

/// Per-probe degree with respect to the selected clones (a set: indices in
/// range and distinct).
inline std::vector<std::int64_t> computeDegrees(
    const Instance& instance, std::span<const std::size_t> selected) {
  std::vector<std::int64_t> degrees(instance.numProbes(), 0);
  for (std::size_t clone : detail::checkedSelection(instance, selected)) {
    auto row = instance.row(clone);
    for (std::size_t j = 0; j < row.size(); ++j) degrees[j] += row[j];
  }
  return degrees;
}

/// Evaluates all four objectives of `selected` against budget s.
/// Requires |selected| <= s <= m and s >= 1.
inline CoverSolution evaluate(const Instance& instance,
                              std::span<const std::size_t> selected,
                              std::int64_t s) {
  if (s < 1) throw InputError("budget s must be at least 1");
  if (static_cast<std::size_t>(s) > instance.numClones()) {
    throw InputError("budget s = " + std::to_string(s) + " exceeds m = " +
                     std::to_string(instance.numClones()));
  }
  if (selected.size() > static_cast<std::size_t>(s)) {
    throw InputError("selection of " + std::to_string(selected.size()) +
                     " clones exceeds budget s = " + std::to_string(s));
  }
  CoverSolution out;
  out.selected = detail::checkedSelection(instance, selected);
  out.budget = s;
  out.degrees = computeDegrees(instance, out.selected);
  out.objectives = detail::objectivesFromDegrees(out.degrees, s);
  return out;
}

/// Exact value of one objective for the given numerators and probe count.
inline Fraction objectiveValue(const Objectives& o, std::size_t numProbes,
                               ObjectiveKind kind) {
  const auto n = static_cast<std::int64_t>(numProbes);
  switch (kind) {
    case ObjectiveKind::kCmin: return {o.cmin, 1};
    case ObjectiveKind::kCavg: return {o.cavgNum, n};
    case ObjectiveKind::kDmax: return {o.dmaxX2, 2};
    case ObjectiveKind::kDavg: return {o.davgNumX2, 2 * n};
  }
  return {};
}

inline Fraction objectiveValue(const CoverSolution& solution,
                               ObjectiveKind kind) {
  return objectiveValue(solution.objectives, solution.numProbes(), kind);
}

/// Objective of the integer program for a selection of any size: balances
/// use the selection's own cardinality, min(deg, |D| - deg). Equals
/// objectiveValue(evaluate(instance, D, s), kind) whenever |D| = s.
inline Fraction selectionValue(const Instance& instance,
                               std::span<const std::size_t> selected,
                               ObjectiveKind kind) {
  const auto degrees = computeDegrees(instance, selected);
  const auto size = static_cast<std::int64_t>(selected.size());
  return objectiveValue(detail::objectivesFromDegrees(degrees, size),
                        instance.numProbes(), kind);
}

/// Checks 2*cmin + dmaxX2 == s and 2*cavgNum + davgNumX2 == s*n, the
/// doubled forms of Dmax = s/2 - Cmin and Davg = s/2 - Cavg.
/// Meaningful for |selected| == budget.
inline bool complementIdentityCheck(const CoverSolution& solution) {
  const auto& o = solution.objectives;
  const auto n = static_cast<std::int64_t>(solution.numProbes());
  return 2 * o.cmin + o.dmaxX2 == solution.budget &&
         2 * o.cavgNum + o.davgNumX2 == solution.budget * n;
}

}  // namespace balcover

#endif  // BALCOVER_CORE_HPP

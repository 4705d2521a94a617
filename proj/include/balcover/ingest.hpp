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

// Sequence input and clone/probe matching. A probe hybridizes a clone when
// the probe or its reverse complement occurs in the clone as a substring.

#ifndef BALCOVER_INGEST_HPP
#define BALCOVER_INGEST_HPP

#include <array>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <queue>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "balcover/core.hpp"
#include "balcover/error.hpp"

namespace balcover {

struct SequenceRecord {
  std::string name;
  std::string bases;
};

/// What to do with characters outside A/C/G/T (after uppercasing).
enum class AmbiguityPolicy {
  kReject,      // input error
  kNeverMatch,  // keep as 'N'; no probe occurrence may cover it
};

enum class MatchEngine { kNaive, kAutomaton };

namespace detail {

inline int baseCode(char c) {
  switch (c) {
    case 'A': return 0;
    case 'C': return 1;
    case 'G': return 2;
    case 'T': return 3;
    default: return -1;
  }
}

inline std::string describeBadBase(char c, std::size_t pos,
                                   std::string_view context) {
  std::string out = "invalid base '";
  out += std::isprint(static_cast<unsigned char>(c)) ? std::string(1, c)
                                                     : std::string("?");
  out += "' at position " + std::to_string(pos + 1);
  if (!context.empty()) {
    out += " of ";
    out += context;
  }
  return out;
}

/// Uppercases and validates; strict A/C/G/T.
inline std::string strictDna(std::string_view seq, std::string_view context) {
  std::string out(seq);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[i])));
    if (baseCode(out[i]) < 0) {
      throw InputError(describeBadBase(seq[i], i, context));
    }
  }
  return out;
}

inline bool hasAmbiguous(std::string_view seq) {
  for (char c : seq) {
    if (baseCode(c) < 0) return true;
  }
  return false;
}

inline std::string reverseComplementUnchecked(std::string_view seq) {
  std::string out(seq.rbegin(), seq.rend());
  for (char& c : out) {
    switch (c) {
      case 'A': c = 'T'; break;
      case 'T': c = 'A'; break;
      case 'C': c = 'G'; break;
      case 'G': c = 'C'; break;
      default: break;
    }
  }
  return out;
}

/// Both arguments normalized; ambiguous positions are 'N'.
inline bool matchesNormalized(std::string_view clone, std::string_view probe) {
  if (probe.empty() || probe.size() > clone.size() || hasAmbiguous(probe)) {
    return false;
  }
  if (clone.find(probe) != std::string_view::npos) return true;
  const std::string rc = reverseComplementUnchecked(probe);
  return clone.find(rc) != std::string_view::npos;
}

}  // namespace detail

/// Uppercases `bases`, strips whitespace, and applies `policy` to anything
/// that is not A/C/G/T.
inline std::string normalizeBases(std::string_view bases,
                                  AmbiguityPolicy policy,
                                  std::string_view context = {}) {
  std::string out;
  out.reserve(bases.size());
  for (std::size_t i = 0; i < bases.size(); ++i) {
    const auto raw = static_cast<unsigned char>(bases[i]);
    if (std::isspace(raw)) continue;
    const char c = static_cast<char>(std::toupper(raw));
    if (detail::baseCode(c) < 0) {
      if (policy == AmbiguityPolicy::kReject) {
        throw InputError(detail::describeBadBase(bases[i], i, context));
      }
      out.push_back('N');
    } else {
      out.push_back(c);
    }
  }
  return out;
}

inline std::string reverseComplement(std::string_view seq) {
  return detail::reverseComplementUnchecked(detail::strictDna(seq, {}));
}

/// True iff `probe` or its reverse complement is a substring of `clone`.
inline bool matches(std::string_view clone, std::string_view probe) {
  const std::string c = detail::strictDna(clone, "clone");
  const std::string p = detail::strictDna(probe, "probe");
  return detail::matchesNormalized(c, p);
}

/// Aho-Corasick automaton over A/C/G/T. Every probe is inserted in both
/// orientations; scanning a clone reports the set of probes that occur.
/// Any non-ACGT character in the text resets the scan to the root.
class ProbeAutomaton {
 public:
  explicit ProbeAutomaton(const std::vector<std::string>& probes)
      : numProbes_(probes.size()) {
    nodes_.emplace_back();
    for (std::size_t p = 0; p < probes.size(); ++p) {
      if (probes[p].empty() || detail::hasAmbiguous(probes[p])) continue;
      insert(probes[p], p);
      insert(detail::reverseComplementUnchecked(probes[p]), p);
    }
    link();
  }

  /// hits[p] is set to 1 for every probe p found in `text`.
  void scan(std::string_view text, std::span<std::uint8_t> hits) const {
    std::int32_t state = 0;
    for (char c : text) {
      const int code = detail::baseCode(c);
      if (code < 0) {
        state = 0;
        continue;
      }
      state = nodes_[state].next[code];
      for (std::int32_t v = state; v > 0; v = nodes_[v].outputLink) {
        if (nodes_[v].patterns.empty()) continue;
        for (std::size_t p : nodes_[v].patterns) hits[p] = 1;
      }
    }
  }

  std::size_t numProbes() const { return numProbes_; }

 private:
  struct Node {
    std::array<std::int32_t, 4> next{-1, -1, -1, -1};
    std::int32_t fail = 0;
    std::int32_t outputLink = 0;  // nearest proper suffix node with patterns
    std::vector<std::size_t> patterns;
  };

  void insert(std::string_view word, std::size_t id) {
    std::int32_t v = 0;
    for (char c : word) {
      const int code = detail::baseCode(c);
      if (nodes_[v].next[code] < 0) {
        nodes_[v].next[code] = static_cast<std::int32_t>(nodes_.size());
        nodes_.emplace_back();
      }
      v = nodes_[v].next[code];
    }
    auto& ids = nodes_[v].patterns;
    if (ids.empty() || ids.back() != id) ids.push_back(id);
  }

  void link() {
    std::queue<std::int32_t> order;
    for (auto& child : nodes_[0].next) {
      if (child < 0) {
        child = 0;
      } else {
        nodes_[child].fail = 0;
        order.push(child);
      }
    }
    while (!order.empty()) {
      const std::int32_t v = order.front();
      order.pop();
      const std::int32_t f = nodes_[v].fail;
      nodes_[v].outputLink =
          nodes_[f].patterns.empty() ? nodes_[f].outputLink : f;
      for (int code = 0; code < 4; ++code) {
        std::int32_t& child = nodes_[v].next[code];
        if (child < 0) {
          child = nodes_[f].next[code];
        } else {
          nodes_[child].fail = nodes_[f].next[code];
          order.push(child);
        }
      }
    }
  }

  std::size_t numProbes_;
  std::vector<Node> nodes_;
};

/// Adjacency a_ij = 1 iff probe j matches clone i. Records must already be
/// normalized (see normalizeBases); names must be distinct within each list.
inline Instance buildInstance(const std::vector<SequenceRecord>& clones,
                              const std::vector<SequenceRecord>& probes,
                              MatchEngine engine = MatchEngine::kNaive) {
  if (clones.empty()) throw InputError("no clone sequences");
  if (probes.empty()) throw InputError("no probe sequences");

  auto validate = [](const std::vector<SequenceRecord>& records,
                     std::string_view what) {
    std::vector<std::string> names;
    std::unordered_set<std::string> seen;
    for (const auto& r : records) {
      if (r.bases.empty()) {
        throw InputError(std::string(what) + " '" + r.name +
                         "' has an empty sequence");
      }
      for (std::size_t i = 0; i < r.bases.size(); ++i) {
        if (detail::baseCode(r.bases[i]) < 0 && r.bases[i] != 'N') {
          throw InputError(detail::describeBadBase(
              r.bases[i], i, std::string(what) + " '" + r.name + "'"));
        }
      }
      if (!seen.insert(r.name).second) {
        throw InputError("duplicate " + std::string(what) + " name '" +
                         r.name + "'");
      }
      names.push_back(r.name);
    }
    return names;
  };
  auto cloneNames = validate(clones, "clone");
  auto probeNames = validate(probes, "probe");

  const std::size_t m = clones.size();
  const std::size_t n = probes.size();
  std::vector<std::uint8_t> bits(m * n, 0);
  if (engine == MatchEngine::kNaive) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        bits[i * n + j] =
            detail::matchesNormalized(clones[i].bases, probes[j].bases) ? 1 : 0;
      }
    }
  } else {
    std::vector<std::string> patterns;
    patterns.reserve(n);
    for (const auto& p : probes) patterns.push_back(p.bases);
    const ProbeAutomaton automaton(patterns);
    for (std::size_t i = 0; i < m; ++i) {
      automaton.scan(clones[i].bases,
                     std::span<std::uint8_t>(bits.data() + i * n, n));
    }
  }
  return Instance(m, n, std::move(bits), std::move(cloneNames),
                  std::move(probeNames));
}

/// FASTA: '>' starts a record named by the rest of the line; following lines
/// are concatenated with whitespace removed. ';' lines are comments.
inline std::vector<SequenceRecord> parseFasta(std::istream& in,
                                              AmbiguityPolicy policy) {
  std::vector<SequenceRecord> records;
  std::string line;
  std::string raw;
  bool open = false;
  auto flush = [&] {
    if (!open) return;
    records.back().bases =
        normalizeBases(raw, policy, "record '" + records.back().name + "'");
    raw.clear();
  };
  std::size_t lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty() && line.front() == ';') continue;
    if (!line.empty() && line.front() == '>') {
      flush();
      std::string name = line.substr(1);
      const auto first = name.find_first_not_of(" \t");
      const auto last = name.find_last_not_of(" \t");
      name = first == std::string::npos ? std::string()
                                        : name.substr(first, last - first + 1);
      if (name.empty()) {
        throw InputError("FASTA header without a name on line " +
                         std::to_string(lineNo));
      }
      records.push_back({std::move(name), {}});
      open = true;
      continue;
    }
    if (!open) {
      if (line.find_first_not_of(" \t") == std::string::npos) continue;
      throw InputError("sequence data before the first FASTA header on line " +
                       std::to_string(lineNo));
    }
    raw += line;
  }
  flush();
  return records;
}

/// Probe list: FASTA if the first non-blank line starts with '>', otherwise
/// one probe per non-blank line, named p1..pn.
inline std::vector<SequenceRecord> parseProbes(std::istream& in,
                                               AmbiguityPolicy policy) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  for (const auto& l : lines) {
    const auto pos = l.find_first_not_of(" \t");
    if (pos == std::string::npos) continue;
    if (l[pos] == '>') {
      std::string joined;
      for (const auto& x : lines) joined += x + "\n";
      std::istringstream fasta(joined);
      return parseFasta(fasta, policy);
    }
    break;
  }
  std::vector<SequenceRecord> records;
  for (const auto& l : lines) {
    if (l.find_first_not_of(" \t") == std::string::npos) continue;
    std::string name = "p" + std::to_string(records.size() + 1);
    std::string bases = normalizeBases(l, policy, "probe " + name);
    records.push_back({std::move(name), std::move(bases)});
  }
  return records;
}

}  // namespace balcover

#endif  // BALCOVER_INGEST_HPP

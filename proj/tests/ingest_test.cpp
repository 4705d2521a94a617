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

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "balcover/ingest.hpp"
#include "test_util.hpp"

namespace balcover {
namespace {

std::vector<SequenceRecord> readFasta(const std::string& name) {
  std::ifstream in(testing::dataPath(name));
  return parseFasta(in, AmbiguityPolicy::kReject);
}

std::string cloneSeq(std::size_t index) {
  return readFasta("sample_clones.fa").at(index).bases;
}

TEST(ReverseComplement, Examples) {
  EXPECT_EQ(reverseComplement("CTGGC"), "GCCAG");
  EXPECT_EQ(reverseComplement("A"), "T");
  EXPECT_EQ(reverseComplement("ACGT"), "ACGT");
  EXPECT_EQ(reverseComplement("acgg"), "CCGT");
}

TEST(ReverseComplement, RejectsOtherCharactersWithPosition) {
  try {
    reverseComplement("ACNT");
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("position 3"), std::string::npos)
        << e.what();
  }
}

TEST(ReverseComplement, IsAnInvolution) {
  Rng rng(5);
  const char bases[] = "ACGT";
  for (int t = 0; t < 500; ++t) {
    std::string s(1 + rng.below(40), 'A');
    for (char& c : s) c = bases[rng.below(4)];
    EXPECT_EQ(reverseComplement(reverseComplement(s)), s);
  }
}

TEST(Matches, SampleExamples) {
  EXPECT_TRUE(matches(cloneSeq(0), "CTGGC"));   // direct
  EXPECT_TRUE(matches(cloneSeq(1), "CTGGC"));   // reverse complement only
  EXPECT_EQ(cloneSeq(1).find("CTGGC"), std::string::npos);
  EXPECT_TRUE(matches(cloneSeq(5), "CTGGC"));
  EXPECT_FALSE(matches(cloneSeq(3), "CTGGC"));
}

TEST(Matches, EdgeCases) {
  EXPECT_FALSE(matches("ACG", "ACGT"));  // longer probe
  EXPECT_TRUE(matches("ACGT", "ACGT"));
  EXPECT_FALSE(matches("AAAA", "C"));
  EXPECT_THROW(matches("ACXT", "A"), InputError);
  EXPECT_THROW(matches("ACGT", "R"), InputError);
}

TEST(Matches, SymmetricUnderReverseComplement) {
  Rng rng(6);
  const char bases[] = "ACGT";
  auto randomDna = [&](std::size_t len) {
    std::string s(len, 'A');
    for (char& c : s) c = bases[rng.below(4)];
    return s;
  };
  for (int t = 0; t < 1000; ++t) {
    const std::string c = randomDna(20 + rng.below(30));
    const std::string p = randomDna(1 + rng.below(5));
    EXPECT_EQ(matches(c, p), matches(c, reverseComplement(p)));
  }
}

TEST(BuildInstance, GoldenSampleMatrixBothEngines) {
  const auto clones = readFasta("sample_clones.fa");
  const auto probes = readFasta("sample_probes.fa");
  const Instance expected = testing::sampleInstance();
  for (auto engine : {MatchEngine::kNaive, MatchEngine::kAutomaton}) {
    const Instance g = buildInstance(clones, probes, engine);
    EXPECT_EQ(g.adjacency(), expected.adjacency());
    EXPECT_EQ(g.cloneNames().front(), "c1");
    EXPECT_EQ(g.probeNames().back(), "p7");
  }
}

TEST(BuildInstance, TinyCases) {
  const Instance none = buildInstance({{"c", "AAAA"}}, {{"p", "C"}});
  EXPECT_FALSE(none.adjacent(0, 0));
  const Instance same = buildInstance({{"c", "ACGT"}}, {{"p", "ACGT"}});
  EXPECT_TRUE(same.adjacent(0, 0));
}

TEST(BuildInstance, Validation) {
  EXPECT_THROW(buildInstance({}, {{"p", "A"}}), InputError);
  EXPECT_THROW(buildInstance({{"c", "A"}}, {}), InputError);
  EXPECT_THROW(buildInstance({{"c", "A"}}, {{"p", "A"}, {"p", "C"}}),
               InputError);
  EXPECT_THROW(buildInstance({{"c", "A"}, {"c", "C"}}, {{"p", "A"}}),
               InputError);
  EXPECT_THROW(buildInstance({{"c", ""}}, {{"p", "A"}}), InputError);
}

TEST(BuildInstance, AutomatonAgreesWithNaive) {
  Rng rng(77);
  // A small alphabet bias makes overlapping and nested probes common.
  const char bases[] = "AACGT";
  auto randomDna = [&](std::size_t len) {
    std::string s(len, 'A');
    for (char& c : s) c = bases[rng.below(5)];
    return s;
  };
  for (int t = 0; t < 100; ++t) {
    std::vector<SequenceRecord> clones, probes;
    for (std::size_t i = 0; i < 6; ++i) {
      clones.push_back({"c" + std::to_string(i), randomDna(10 + rng.below(40))});
    }
    for (std::size_t j = 0; j < 8; ++j) {
      probes.push_back({"p" + std::to_string(j), randomDna(1 + rng.below(4))});
    }
    EXPECT_EQ(buildInstance(clones, probes, MatchEngine::kNaive),
              buildInstance(clones, probes, MatchEngine::kAutomaton));
  }
}

TEST(ParseFasta, NormalizesAndConcatenates) {
  std::istringstream in(">c1 first\nacg\n tT \n; comment\n>c2\nGG\n");
  const auto recs = parseFasta(in, AmbiguityPolicy::kReject);
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(recs[0].name, "c1 first");
  EXPECT_EQ(recs[0].bases, "ACGTT");
  EXPECT_EQ(recs[1].bases, "GG");
}

TEST(ParseFasta, AmbiguityPolicy) {
  {
    std::istringstream in(">c1\nACNGT\n");
    EXPECT_THROW(parseFasta(in, AmbiguityPolicy::kReject), InputError);
  }
  std::istringstream in(">c1\nACNGT\n");
  const auto recs = parseFasta(in, AmbiguityPolicy::kNeverMatch);
  EXPECT_EQ(recs[0].bases, "ACNGT");
  // An N never takes part in a match, in either engine.
  for (auto engine : {MatchEngine::kNaive, MatchEngine::kAutomaton}) {
    const Instance g =
        buildInstance(recs, {{"p1", "CNG"}, {"p2", "CG"}, {"p3", "GT"}}, engine);
    EXPECT_FALSE(g.adjacent(0, 0));
    EXPECT_FALSE(g.adjacent(0, 1));
    EXPECT_TRUE(g.adjacent(0, 2));
  }
}

TEST(ParseFasta, Errors) {
  std::istringstream noHeader("ACGT\n");
  EXPECT_THROW(parseFasta(noHeader, AmbiguityPolicy::kReject), InputError);
  std::istringstream emptyName(">\nACGT\n");
  EXPECT_THROW(parseFasta(emptyName, AmbiguityPolicy::kReject), InputError);
}

TEST(ParseProbes, PlainTextAndFasta) {
  std::istringstream plain("ctggc\n\nTACAT\n");
  const auto a = parseProbes(plain, AmbiguityPolicy::kReject);
  ASSERT_EQ(a.size(), 2u);
  EXPECT_EQ(a[0].name, "p1");
  EXPECT_EQ(a[0].bases, "CTGGC");
  EXPECT_EQ(a[1].name, "p2");
  std::istringstream fasta("\n>x\nCTGGC\n");
  const auto b = parseProbes(fasta, AmbiguityPolicy::kReject);
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b[0].name, "x");
}

}  // namespace
}  // namespace balcover

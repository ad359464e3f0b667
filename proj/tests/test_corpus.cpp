#include <gtest/gtest.h>

#include <map>
#include <random>

#include "oa2net/collection.hpp"
#include "oa2net/corpus.hpp"
#include "support.hpp"

using namespace oa2net;
using testing_support::TempDir;

namespace {

// a->x, b->x, c->x, a->y
WeightedNetwork toy() {
  WeightedNetwork net({"W1", "W2", "W3", "W10", "W20"}, Directedness::Directed);
  net.add_link(NodeId(1), NodeId(4), 1);
  net.add_link(NodeId(2), NodeId(4), 1);
  net.add_link(NodeId(3), NodeId(4), 1);
  net.add_link(NodeId(1), NodeId(5), 1);
  return net;
}

class UniverseSource : public WorkSource {
 public:
  explicit UniverseSource(std::map<std::string, WorkRecord> universe) : universe_(std::move(universe)) {}

  std::vector<WorkRecord> fetch_works_by_ids(std::span<const std::string> ids) override {
    ++calls;
    std::vector<WorkRecord> out;
    for (const auto& id : ids) {
      auto it = universe_.find(id);
      if (it != universe_.end()) out.push_back(it->second);
    }
    return out;
  }

  int calls = 0;

 private:
  std::map<std::string, WorkRecord> universe_;
};

WorkRecord rec(std::string id, std::vector<std::string> refs) {
  WorkRecord w;
  w.id = std::move(id);
  w.referenced_works = std::move(refs);
  return w;
}

}  // namespace

TEST(Expansion, CountsCitationsFromKnownWorks) {
  WorkList known({"W1", "W2", "W3"});
  auto table = expansion_candidates(toy(), known);
  EXPECT_EQ(table, (ExpansionTable{{"W10", 3}, {"W20", 1}}));
}

TEST(Expansion, ArcsFromOutsideKnownAreIgnored) {
  WorkList known({"W1"});
  EXPECT_EQ(expansion_candidates(toy(), known), (ExpansionTable{{"W10", 1}, {"W20", 1}}));
}

TEST(Expansion, EmptyCases) {
  WorkList all({"W1", "W2", "W3", "W10", "W20"});
  EXPECT_TRUE(expansion_candidates(toy(), all).empty());
  WeightedNetwork empty({}, Directedness::Directed);
  EXPECT_TRUE(expansion_candidates(empty, WorkList({"W1"})).empty());
  // Unknown ids in the known list are harmless.
  EXPECT_EQ(expansion_candidates(toy(), WorkList({"W1", "W2", "W3", "W777"})).size(), 2u);
  EXPECT_THROW(expansion_candidates(WeightedNetwork({"W1"}, Directedness::Undirected), all), Error);
}

TEST(Expansion, TiesSortById) {
  WeightedNetwork net({"W1", "W9", "W5", "W7"}, Directedness::Directed);
  net.add_link(NodeId(1), NodeId(2), 1);
  net.add_link(NodeId(1), NodeId(3), 1);
  net.add_link(NodeId(1), NodeId(4), 1);
  EXPECT_EQ(expansion_candidates(net, WorkList({"W1"})), (ExpansionTable{{"W5", 1}, {"W7", 1}, {"W9", 1}}));
}

TEST(Threshold, FiltersInTableOrder) {
  ExpansionTable table{{"W10", 3}, {"W20", 1}};
  EXPECT_EQ(apply_threshold(table, 2).ids(), std::vector<std::string>{"W10"});
  EXPECT_EQ(apply_threshold(table, 1).ids(), (std::vector<std::string>{"W10", "W20"}));
  EXPECT_TRUE(apply_threshold(table, 4).empty());
  EXPECT_THROW(apply_threshold(table, 0), Error);
}

TEST(JoinLists, UnionKeepsOrder) {
  EXPECT_EQ(join_lists(WorkList({"W1", "W2"}), WorkList({"W2", "W3"})).ids(),
            (std::vector<std::string>{"W1", "W2", "W3"}));
  EXPECT_EQ(join_lists(WorkList(), WorkList({"W5"})).ids(), std::vector<std::string>{"W5"});
  EXPECT_EQ(join_lists(WorkList({"W5"}), WorkList()).ids(), std::vector<std::string>{"W5"});
}

TEST(WorkListType, RejectsBadAndDuplicateIds) {
  EXPECT_THROW(WorkList({"W1", "W1"}), Error);
  EXPECT_THROW(WorkList({"A1"}), Error);
  WorkList l;
  EXPECT_TRUE(l.add("W3"));
  EXPECT_FALSE(l.add("W3"));
}

TEST(Saturation, FixedPoint) {
  UniverseSource source({{"W1", rec("W1", {"W2"})}, {"W2", rec("W2", {"W1"})}});
  WorkList seed({"W1", "W2"});
  auto step = saturation_step(seed, 1, source);
  EXPECT_TRUE(step.converged);
  EXPECT_EQ(step.works, seed);
  EXPECT_TRUE(step.table.empty());
}

TEST(Saturation, AddsWorkCitedThreeTimes) {
  UniverseSource source({{"W1", rec("W1", {"W50", "W60"})},
                         {"W2", rec("W2", {"W50"})},
                         {"W3", rec("W3", {"W50", "W1"})}});
  WorkList seed({"W1", "W2", "W3"});
  auto step = saturation_step(seed, 2, source);
  EXPECT_FALSE(step.converged);
  EXPECT_EQ(step.works.ids(), (std::vector<std::string>{"W1", "W2", "W3", "W50"}));
  EXPECT_EQ(step.table, (ExpansionTable{{"W50", 3}, {"W60", 1}}));

  auto strict = saturation_step(seed, 4, source);
  EXPECT_TRUE(strict.converged);
  EXPECT_EQ(strict.works, seed);
  EXPECT_THROW(saturation_step(seed, 0, source), Error);
}

TEST(Saturation, GrowsMonotonicallyAndTerminates) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> pick(1, 60);
  std::uniform_int_distribution<int> nrefs(0, 5);
  std::uniform_int_distribution<std::size_t> threshold(1, 2);
  for (int round = 0; round < 30; ++round) {
    std::map<std::string, WorkRecord> universe;
    for (int i = 1; i <= 60; ++i) {
      std::vector<std::string> refs;
      for (int k = nrefs(rng); k > 0; --k) refs.push_back("W" + std::to_string(pick(rng)));
      universe["W" + std::to_string(i)] = rec("W" + std::to_string(i), refs);
    }
    UniverseSource source(universe);
    WorkList current({"W" + std::to_string(pick(rng))});
    auto t = threshold(rng);
    int steps = 0;
    while (true) {
      auto step = saturation_step(current, t, source);
      for (const auto& id : current.ids()) EXPECT_TRUE(step.works.contains(id));
      ASSERT_LE(++steps, 61);
      if (step.converged) {
        EXPECT_EQ(step.works, current);
        break;
      }
      EXPECT_GT(step.works.size(), current.size());
      current = step.works;
    }
  }
}

TEST(WorkListFile, RoundTripAndCsvTolerance) {
  TempDir dir;
  WorkList list({"W3", "W1", "W2"});
  write_work_list(list, dir / "w.csv");
  EXPECT_EQ(testing_support::slurp(dir / "w.csv"), "W3\nW1\nW2\n");
  EXPECT_EQ(read_work_list(dir / "w.csv"), list);

  testing_support::spit(dir / "x.csv", "id,title\r\n\"https://openalex.org/W7\",x\r\n\r\nW8\r\nW7\r\n");
  EXPECT_EQ(read_work_list(dir / "x.csv").ids(), (std::vector<std::string>{"W7", "W8"}));

  testing_support::spit(dir / "bad.csv", "W1\nnope\n");
  try {
    read_work_list(dir / "bad.csv");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Parse);
    EXPECT_NE(std::string(e.what()).find("bad.csv:2"), std::string::npos);
  }
}

TEST(ExpansionFile, TwoColumnCsv) {
  TempDir dir;
  write_expansion_csv({{"W10", 3}, {"W20", 1}}, dir / "e.csv");
  EXPECT_EQ(testing_support::slurp(dir / "e.csv"), "id,indegree\nW10,3\nW20,1\n");
}

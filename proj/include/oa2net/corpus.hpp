#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "oa2net/netmodel.hpp"
#include "oa2net/openalex.hpp"

namespace oa2net {

/// Ordered, duplicate-free list of OpenAlex work ids.
class WorkList {
 public:
  WorkList() = default;
  /// Throws InvalidArgument on malformed or repeated ids.
  explicit WorkList(std::vector<std::string> ids);

  /// Appends when absent; returns whether the id was added.
  bool add(const std::string& id);
  bool contains(const std::string& id) const { return members_.contains(id); }
  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  const std::vector<std::string>& ids() const { return ids_; }

  bool operator==(const WorkList& other) const { return ids_ == other.ids_; }

 private:
  std::vector<std::string> ids_;
  std::unordered_set<std::string> members_;
};

struct ExpansionRow {
  std::string id;
  std::size_t indegree = 0;

  bool operator==(const ExpansionRow&) const = default;
};

/// Sorted by in-degree descending, then id ascending.
using ExpansionTable = std::vector<ExpansionRow>;

/// In-degree of every node outside `known`, counting only arcs that start
/// inside `known`. Rows with in-degree 0 are omitted.
ExpansionTable expansion_candidates(const WeightedNetwork& cite, const WorkList& known);

WorkList apply_threshold(const ExpansionTable& table, std::size_t min_indegree);

/// `old` in order, then ids of `added` not already present.
WorkList join_lists(const WorkList& old, const WorkList& added);

struct SaturationStep {
  WorkList works;
  bool converged = false;
  ExpansionTable table;
};

/// Fetches the seed records, expands the citation network by the outside
/// works cited at least `threshold` times from the seed, and joins them in.
SaturationStep saturation_step(const WorkList& seed, std::size_t threshold, WorkSource& source);

WorkList read_work_list(const std::filesystem::path& path);
void write_work_list(const WorkList& list, const std::filesystem::path& path);
void write_expansion_csv(const ExpansionTable& table, const std::filesystem::path& path);

}  // namespace oa2net

#pragma once

#include <filesystem>
#include <limits>
#include <set>
#include <utility>
#include <vector>

#include "oa2net/netmodel.hpp"

namespace oa2net {

struct CoreDecomposition {
  std::vector<std::string> labels;
  /// Core level per node, aligned to labels.
  std::vector<double> level;
  /// Nodes in the order they were peeled off.
  std::vector<NodeId> ordering;
};

/// Weighted-degree (generalized) cores: repeatedly remove a node of minimum
/// remaining weighted degree (ties: smallest label) and give it the largest
/// minimum seen so far. Self-loops are ignored; directed networks are taken
/// as their undirected view with in+out weights.
CoreDecomposition weighted_degree_cores(const WeightedNetwork& net);

/// Nodes with level >= t, ascending.
std::vector<NodeId> core_at_level(const CoreDecomposition& dec, double t);

/// For every node, arcs to its k heaviest neighbours (ties: smallest label).
/// Input must be undirected; self-loops are ignored.
WeightedNetwork k_neighbor_skeleton(const WeightedNetwork& net, std::size_t k);

using NodePair = std::pair<NodeId, NodeId>;  // first < second

/// Unordered pairs linked by arcs in both directions.
std::set<NodePair> mutual_pairs(const WeightedNetwork& skeleton);

/// Same nodes, only links with weight >= threshold.
WeightedNetwork link_cut(const WeightedNetwork& net, double threshold);

/// Pajek vector of levels plus a `label,level` CSV.
void write_cores(const CoreDecomposition& dec, const std::filesystem::path& vec_path,
                 const std::filesystem::path& csv_path);

}  // namespace oa2net

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace oa2net {

/// 1-based vertex number, following the Pajek convention.
class NodeId {
 public:
  constexpr explicit NodeId(std::size_t one_based) : value_(one_based) {}

  static constexpr NodeId from_offset(std::size_t offset) { return NodeId(offset + 1); }

  constexpr std::size_t value() const { return value_; }
  constexpr std::size_t offset() const { return value_ - 1; }

  auto operator<=>(const NodeId&) const = default;

 private:
  std::size_t value_;
};

enum class Directedness { Undirected, Directed };

struct Link {
  NodeId source;
  NodeId target;
  double weight;

  bool operator==(const Link&) const = default;
};

/// Labeled one-mode network with positive weights. A missing link means "no
/// value" (NA), which is distinct from a weight of zero. Self-loops are
/// allowed; undirected links are stored once with source <= target.
class WeightedNetwork {
 public:
  WeightedNetwork() = default;
  WeightedNetwork(std::vector<std::string> labels, Directedness directedness);

  void add_link(NodeId source, NodeId target, double weight);

  std::size_t vertex_count() const { return labels_.size(); }
  std::size_t link_count() const { return links_.size(); }
  bool directed() const { return directedness_ == Directedness::Directed; }
  Directedness directedness() const { return directedness_; }

  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(NodeId id) const;
  std::optional<NodeId> find(const std::string& label) const;
  NodeId require(const std::string& label) const;

  /// Links in insertion order.
  std::span<const Link> links() const { return links_; }
  std::optional<double> weight(NodeId source, NodeId target) const;

  /// Indices into links() of every link touching the node (loops once).
  std::span<const std::size_t> incident(NodeId id) const;

  void check_node(NodeId id) const;

  /// Same labels in the same order, same directedness, same link set.
  friend bool operator==(const WeightedNetwork& a, const WeightedNetwork& b);

 private:
  std::pair<std::size_t, std::size_t> key(NodeId source, NodeId target) const;

  std::vector<std::string> labels_;
  Directedness directedness_ = Directedness::Undirected;
  std::vector<Link> links_;
  std::vector<std::vector<std::size_t>> incident_;
  std::unordered_map<std::string, std::size_t> index_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> link_index_;
};

/// Bipartite network; links only join mode 1 to mode 2. The target of a
/// link is numbered within mode 2 (1..mode2_count).
class TwoModeNetwork {
 public:
  TwoModeNetwork() = default;
  TwoModeNetwork(std::vector<std::string> mode1_labels, std::vector<std::string> mode2_labels);

  void add_link(NodeId mode1, NodeId mode2, double weight);

  const std::vector<std::string>& mode1_labels() const { return mode1_; }
  const std::vector<std::string>& mode2_labels() const { return mode2_; }
  std::span<const Link> links() const { return links_; }
  std::size_t link_count() const { return links_.size(); }

  friend bool operator==(const TwoModeNetwork& a, const TwoModeNetwork& b);

 private:
  std::vector<std::string> mode1_;
  std::vector<std::string> mode2_;
  std::vector<Link> links_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> link_index_;
};

struct NodeVector {
  std::vector<double> values;

  bool operator==(const NodeVector&) const = default;
};

struct NodePartition {
  std::vector<std::int64_t> classes;
  /// Optional class -> description legend.
  std::map<std::int64_t, std::string> legend;

  bool operator==(const NodePartition&) const = default;
};

/// Sum of weights of links joining `v` to members of `within` other than v.
/// Directed networks count both in- and out-links.
double weighted_degree(const WeightedNetwork& net, NodeId v, std::span<const NodeId> within);

/// Induced subnetwork on `keep`; vertices keep their original relative order
/// and are renumbered 1..|keep|.
WeightedNetwork relabel_subnetwork(const WeightedNetwork& net, std::span<const NodeId> keep);

}  // namespace oa2net

#include "oa2net/netmodel.hpp"

#include <algorithm>
#include <cmath>

#include "oa2net/error.hpp"

namespace oa2net {

namespace {

void check_weight(double weight) {
  if (!(weight > 0.0) || !std::isfinite(weight)) {
    fail(ErrorKind::InvalidArgument, "link weights must be positive and finite, got " +
                                         std::to_string(weight));
  }
}

std::vector<Link> sorted_links(std::span<const Link> links) {
  std::vector<Link> out(links.begin(), links.end());
  std::sort(out.begin(), out.end(), [](const Link& a, const Link& b) {
    return std::tie(a.source, a.target, a.weight) < std::tie(b.source, b.target, b.weight);
  });
  return out;
}

}  // namespace

WeightedNetwork::WeightedNetwork(std::vector<std::string> labels, Directedness directedness)
    : labels_(std::move(labels)), directedness_(directedness), incident_(labels_.size()) {
  index_.reserve(labels_.size());
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (!index_.emplace(labels_[i], i).second) {
      fail(ErrorKind::InvalidArgument, "duplicate vertex label \"" + labels_[i] + "\"");
    }
  }
}

void WeightedNetwork::check_node(NodeId id) const {
  if (id.value() == 0 || id.value() > labels_.size()) {
    fail(ErrorKind::InvalidNode, "node " + std::to_string(id.value()) + " outside 1.." +
                                     std::to_string(labels_.size()));
  }
}

std::pair<std::size_t, std::size_t> WeightedNetwork::key(NodeId source, NodeId target) const {
  auto s = source.offset();
  auto t = target.offset();
  if (!directed() && t < s) std::swap(s, t);
  return {s, t};
}

void WeightedNetwork::add_link(NodeId source, NodeId target, double weight) {
  check_node(source);
  check_node(target);
  check_weight(weight);
  auto k = key(source, target);
  if (link_index_.contains(k)) {
    fail(ErrorKind::InvalidArgument, "duplicate link " + labels_[k.first] + " - " +
                                         labels_[k.second]);
  }
  link_index_.emplace(k, links_.size());
  incident_[k.first].push_back(links_.size());
  if (k.second != k.first) incident_[k.second].push_back(links_.size());
  links_.push_back({NodeId::from_offset(k.first), NodeId::from_offset(k.second), weight});
}

const std::string& WeightedNetwork::label(NodeId id) const {
  check_node(id);
  return labels_[id.offset()];
}

std::optional<NodeId> WeightedNetwork::find(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return NodeId::from_offset(it->second);
}

NodeId WeightedNetwork::require(const std::string& label) const {
  auto id = find(label);
  if (!id) fail(ErrorKind::InvalidNode, "unknown vertex \"" + label + "\"");
  return *id;
}

std::optional<double> WeightedNetwork::weight(NodeId source, NodeId target) const {
  check_node(source);
  check_node(target);
  auto it = link_index_.find(key(source, target));
  if (it == link_index_.end()) return std::nullopt;
  return links_[it->second].weight;
}

std::span<const std::size_t> WeightedNetwork::incident(NodeId id) const {
  check_node(id);
  return incident_[id.offset()];
}

bool operator==(const WeightedNetwork& a, const WeightedNetwork& b) {
  return a.labels_ == b.labels_ && a.directedness_ == b.directedness_ &&
         sorted_links(a.links_) == sorted_links(b.links_);
}

TwoModeNetwork::TwoModeNetwork(std::vector<std::string> mode1_labels,
                               std::vector<std::string> mode2_labels)
    : mode1_(std::move(mode1_labels)), mode2_(std::move(mode2_labels)) {
  for (const auto* mode : {&mode1_, &mode2_}) {
    std::vector<std::string> sorted = *mode;
    std::sort(sorted.begin(), sorted.end());
    auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup != sorted.end()) {
      fail(ErrorKind::InvalidArgument, "duplicate vertex label \"" + *dup + "\"");
    }
  }
}

void TwoModeNetwork::add_link(NodeId mode1, NodeId mode2, double weight) {
  if (mode1.value() == 0 || mode1.value() > mode1_.size()) {
    fail(ErrorKind::InvalidNode, "mode-1 node " + std::to_string(mode1.value()) + " out of range");
  }
  if (mode2.value() == 0 || mode2.value() > mode2_.size()) {
    fail(ErrorKind::InvalidNode, "mode-2 node " + std::to_string(mode2.value()) + " out of range");
  }
  check_weight(weight);
  std::pair k{mode1.offset(), mode2.offset()};
  if (link_index_.contains(k)) {
    fail(ErrorKind::InvalidArgument,
         "duplicate link " + mode1_[k.first] + " - " + mode2_[k.second]);
  }
  link_index_.emplace(k, links_.size());
  links_.push_back({mode1, mode2, weight});
}

bool operator==(const TwoModeNetwork& a, const TwoModeNetwork& b) {
  return a.mode1_ == b.mode1_ && a.mode2_ == b.mode2_ &&
         sorted_links(a.links_) == sorted_links(b.links_);
}

double weighted_degree(const WeightedNetwork& net, NodeId v, std::span<const NodeId> within) {
  net.check_node(v);
  std::vector<bool> member(net.vertex_count(), false);
  for (NodeId id : within) {
    net.check_node(id);
    member[id.offset()] = true;
  }
  if (!member[v.offset()]) {
    fail(ErrorKind::Precondition, "node " + net.label(v) + " is not in the given node set");
  }
  double sum = 0.0;
  for (std::size_t li : net.incident(v)) {
    const Link& link = net.links()[li];
    if (link.source == link.target) continue;
    NodeId other = link.source == v ? link.target : link.source;
    if (member[other.offset()]) sum += link.weight;
  }
  return sum;
}

WeightedNetwork relabel_subnetwork(const WeightedNetwork& net, std::span<const NodeId> keep) {
  std::vector<bool> member(net.vertex_count(), false);
  for (NodeId id : keep) {
    net.check_node(id);
    member[id.offset()] = true;
  }
  std::vector<std::size_t> remap(net.vertex_count(), 0);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < net.vertex_count(); ++i) {
    if (!member[i]) continue;
    labels.push_back(net.labels()[i]);
    remap[i] = labels.size();
  }
  WeightedNetwork out(std::move(labels), net.directedness());
  for (const Link& link : net.links()) {
    if (member[link.source.offset()] && member[link.target.offset()]) {
      out.add_link(NodeId(remap[link.source.offset()]), NodeId(remap[link.target.offset()]),
                   link.weight);
    }
  }
  return out;
}

}  // namespace oa2net

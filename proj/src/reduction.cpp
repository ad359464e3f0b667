#include "oa2net/reduction.hpp"

#include <algorithm>
#include <queue>
#include <tuple>

#include "oa2net/error.hpp"
#include "oa2net/pajek.hpp"

namespace oa2net {

CoreDecomposition weighted_degree_cores(const WeightedNetwork& net) {
  const std::size_t n = net.vertex_count();
  CoreDecomposition dec;
  dec.labels = net.labels();
  dec.level.assign(n, 0.0);

  std::vector<double> degree(n, 0.0);
  for (const Link& l : net.links()) {
    if (l.source == l.target) continue;
    degree[l.source.offset()] += l.weight;
    degree[l.target.offset()] += l.weight;
  }

  // Min-heap on (degree, label) with lazy invalidation of stale entries.
  using Entry = std::tuple<double, const std::string*, std::size_t>;
  auto greater = [](const Entry& a, const Entry& b) {
    if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) > std::get<0>(b);
    return *std::get<1>(a) > *std::get<1>(b);
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(greater)> heap(greater);
  for (std::size_t v = 0; v < n; ++v) heap.emplace(degree[v], &dec.labels[v], v);

  std::vector<bool> removed(n, false);
  double running_max = 0.0;
  while (!heap.empty()) {
    auto [d, label, v] = heap.top();
    heap.pop();
    if (removed[v] || d != degree[v]) continue;
    removed[v] = true;
    running_max = std::max(running_max, d);
    dec.level[v] = running_max;
    dec.ordering.push_back(NodeId::from_offset(v));
    for (std::size_t li : net.incident(NodeId::from_offset(v))) {
      const Link& l = net.links()[li];
      if (l.source == l.target) continue;
      std::size_t u = l.source.offset() == v ? l.target.offset() : l.source.offset();
      if (removed[u]) continue;
      degree[u] -= l.weight;
      heap.emplace(degree[u], &dec.labels[u], u);
    }
  }
  return dec;
}

std::vector<NodeId> core_at_level(const CoreDecomposition& dec, double t) {
  std::vector<NodeId> out;
  for (std::size_t v = 0; v < dec.level.size(); ++v) {
    if (dec.level[v] >= t) out.push_back(NodeId::from_offset(v));
  }
  return out;
}

WeightedNetwork k_neighbor_skeleton(const WeightedNetwork& net, std::size_t k) {
  if (k < 1) fail(ErrorKind::Precondition, "k must be >= 1");
  if (net.directed()) fail(ErrorKind::Precondition, "k-neighbour skeleton needs an undirected network");
  WeightedNetwork out(net.labels(), Directedness::Directed);
  const auto& labels = net.labels();
  for (std::size_t v = 0; v < net.vertex_count(); ++v) {
    std::vector<std::pair<std::size_t, double>> neighbours;
    for (std::size_t li : net.incident(NodeId::from_offset(v))) {
      const Link& l = net.links()[li];
      if (l.source == l.target) continue;
      std::size_t u = l.source.offset() == v ? l.target.offset() : l.source.offset();
      neighbours.emplace_back(u, l.weight);
    }
    std::sort(neighbours.begin(), neighbours.end(), [&](const auto& a, const auto& b) {
      if (a.second != b.second) return a.second > b.second;
      return labels[a.first] < labels[b.first];
    });
    if (neighbours.size() > k) neighbours.resize(k);
    for (auto [u, w] : neighbours) out.add_link(NodeId::from_offset(v), NodeId::from_offset(u), w);
  }
  return out;
}

std::set<NodePair> mutual_pairs(const WeightedNetwork& skeleton) {
  std::set<NodePair> out;
  if (!skeleton.directed()) fail(ErrorKind::Precondition, "mutual pairs need a directed skeleton");
  for (const Link& l : skeleton.links()) {
    if (l.source < l.target && skeleton.weight(l.target, l.source)) out.emplace(l.source, l.target);
  }
  return out;
}

WeightedNetwork link_cut(const WeightedNetwork& net, double threshold) {
  WeightedNetwork out(net.labels(), net.directedness());
  for (const Link& l : net.links()) {
    if (l.weight >= threshold) out.add_link(l.source, l.target, l.weight);
  }
  return out;
}

void write_cores(const CoreDecomposition& dec, const std::filesystem::path& vec_path,
                 const std::filesystem::path& csv_path) {
  pajek::write_vector(NodeVector{dec.level}, vec_path);
  std::string csv = "label,level\n";
  for (std::size_t v = 0; v < dec.labels.size(); ++v) {
    csv += "\"" + dec.labels[v] + "\"," + pajek::format_number(dec.level[v]) + "\n";
  }
  pajek::write_text_file(csv_path, csv);
}

}  // namespace oa2net

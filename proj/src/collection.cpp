#include "oa2net/collection.hpp"

#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "oa2net/error.hpp"
#include "oa2net/pajek.hpp"

namespace oa2net {

namespace {

void require_unique_ids(std::span<const WorkRecord> works) {
  std::unordered_set<std::string> seen;
  for (const auto& w : works) {
    if (!seen.insert(w.id).second) fail(ErrorKind::Precondition, "duplicate work id " + w.id);
  }
}

const std::vector<std::string>& layer_values(const WorkRecord& w, Layer layer) {
  switch (layer) {
    case Layer::Authors: return w.author_ids;
    case Layer::Sources: return w.source_ids;
    case Layer::Keywords: return w.keywords;
    case Layer::Countries: return w.countries;
  }
  return w.countries;
}

TwoModeNetwork two_mode_over(std::span<const WorkRecord> works, Layer layer,
                             std::vector<std::string> mode1) {
  std::vector<std::string> mode2;
  std::unordered_map<std::string, std::size_t> mode2_index;
  std::vector<std::map<std::size_t, double>> weights(works.size());
  for (std::size_t i = 0; i < works.size(); ++i) {
    for (const auto& value : layer_values(works[i], layer)) {
      auto [it, inserted] = mode2_index.emplace(value, mode2.size());
      if (inserted) mode2.push_back(value);
      weights[i][it->second] += 1.0;
    }
  }
  TwoModeNetwork net(std::move(mode1), std::move(mode2));
  for (std::size_t i = 0; i < works.size(); ++i) {
    for (auto [j, w] : weights[i]) net.add_link(NodeId::from_offset(i), NodeId::from_offset(j), w);
  }
  return net;
}

NodePartition classify(std::span<const WorkRecord> works,
                       const std::optional<std::string> WorkRecord::*field) {
  NodePartition p;
  p.legend[0] = "unknown";
  std::map<std::string, std::int64_t> classes;
  for (const auto& w : works) {
    const auto& value = w.*field;
    if (!value || value->empty()) {
      p.classes.push_back(0);
      continue;
    }
    auto [it, inserted] = classes.emplace(*value, static_cast<std::int64_t>(classes.size()) + 1);
    if (inserted) p.legend[it->second] = *value;
    p.classes.push_back(it->second);
  }
  return p;
}

void write_legend(const NodePartition& p, const std::filesystem::path& path) {
  std::string out = "class,label\n";
  for (const auto& [cls, label] : p.legend) {
    out += std::to_string(cls) + ",\"";
    for (char c : label) {
      if (c == '"') out += '"';
      out += c;
    }
    out += "\"\n";
  }
  pajek::write_text_file(path, out);
}

}  // namespace

WeightedNetwork build_citation(std::span<const WorkRecord> works, CitationBoundary boundary) {
  require_unique_ids(works);
  std::vector<std::string> labels;
  std::unordered_map<std::string, std::size_t> index;
  for (const auto& w : works) {
    index.emplace(w.id, labels.size());
    labels.push_back(w.id);
  }
  std::vector<std::pair<std::size_t, std::size_t>> arcs;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t i = 0; i < works.size(); ++i) {
    for (const auto& ref : works[i].referenced_works) {
      auto it = index.find(ref);
      if (it == index.end()) {
        if (boundary == CitationBoundary::InternalOnly) continue;
        it = index.emplace(ref, labels.size()).first;
        labels.push_back(ref);
      }
      if (seen.emplace(i, it->second).second) arcs.emplace_back(i, it->second);
    }
  }
  WeightedNetwork net(std::move(labels), Directedness::Directed);
  for (auto [s, t] : arcs) net.add_link(NodeId::from_offset(s), NodeId::from_offset(t), 1.0);
  return net;
}

TwoModeNetwork build_two_mode(std::span<const WorkRecord> works, Layer layer) {
  require_unique_ids(works);
  std::vector<std::string> mode1;
  for (const auto& w : works) mode1.push_back(w.id);
  return two_mode_over(works, layer, std::move(mode1));
}

WorkVectors build_vectors(std::span<const WorkRecord> works) {
  require_unique_ids(works);
  WorkVectors v;
  for (const auto& w : works) {
    v.year.values.push_back(w.publication_year.value_or(0));
    v.cited.values.push_back(static_cast<double>(w.cited_by_count));
    std::uint64_t distinct = w.countries_distinct_count.value_or(
        std::set<std::string>(w.countries.begin(), w.countries.end()).size());
    v.distinct.values.push_back(static_cast<double>(distinct));
    v.referenced.values.push_back(static_cast<double>(w.referenced_works.size()));
  }
  v.type = classify(works, &WorkRecord::type);
  v.language = classify(works, &WorkRecord::language);
  return v;
}

NetworkCollection build_collection(std::span<const WorkRecord> works, CitationBoundary boundary) {
  NetworkCollection c;
  c.cite = build_citation(works, boundary);
  const auto& labels = c.cite.labels();
  std::size_t extra = labels.size() - works.size();

  // Cited-only nodes carry no records; they get empty rows in every layer.
  std::vector<WorkRecord> padded(works.begin(), works.end());
  for (std::size_t i = works.size(); i < labels.size(); ++i) {
    WorkRecord stub;
    stub.id = labels[i];
    padded.push_back(std::move(stub));
  }

  c.wa = two_mode_over(padded, Layer::Authors, labels);
  c.wj = two_mode_over(padded, Layer::Sources, labels);
  c.wk = two_mode_over(padded, Layer::Keywords, labels);
  c.wc = two_mode_over(padded, Layer::Countries, labels);
  c.vectors = build_vectors(padded);
  for (std::size_t i = works.size(); i < labels.size(); ++i) c.vectors.referenced.values[i] = 0;
  c.boundary.classes.assign(works.size(), 1);
  c.boundary.classes.insert(c.boundary.classes.end(), extra, 2);
  c.boundary.legend = {{1, "work"}, {2, "cited only"}};
  return c;
}

void write_collection(const NetworkCollection& c, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorKind::Io, "cannot create " + dir.string());
  pajek::write_network(c.cite, dir / "Cite.net");
  pajek::write_network(c.wa, dir / "WA.net");
  pajek::write_network(c.wj, dir / "WJ.net");
  pajek::write_network(c.wk, dir / "WK.net");
  pajek::write_network(c.wc, dir / "WC.net");
  pajek::write_vector(c.vectors.year, dir / "year.vec");
  pajek::write_vector(c.vectors.cited, dir / "cited.vec");
  pajek::write_vector(c.vectors.distinct, dir / "distinct.vec");
  pajek::write_vector(c.vectors.referenced, dir / "referenced.vec");
  pajek::write_partition(c.vectors.type, dir / "type.clu");
  pajek::write_partition(c.vectors.language, dir / "language.clu");
  pajek::write_partition(c.boundary, dir / "boundary.clu");
  write_legend(c.vectors.type, dir / "type.legend.csv");
  write_legend(c.vectors.language, dir / "language.legend.csv");
  write_legend(c.boundary, dir / "boundary.legend.csv");
}

}  // namespace oa2net

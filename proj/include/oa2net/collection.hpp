#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "oa2net/netmodel.hpp"
#include "oa2net/openalex.hpp"

namespace oa2net {

enum class CitationBoundary { InternalOnly, IncludeCited };

enum class Layer { Authors, Sources, Keywords, Countries };

/// Work -> referenced-work arcs of weight 1. With IncludeCited, works that
/// are only cited are appended as terminal nodes in first-seen order.
WeightedNetwork build_citation(std::span<const WorkRecord> works, CitationBoundary boundary);

/// Mode 1 = works in input order, mode 2 = distinct layer values in
/// first-seen order. Weights count repeats of a value on one work.
TwoModeNetwork build_two_mode(std::span<const WorkRecord> works, Layer layer);

struct WorkVectors {
  NodeVector year;        // 0 when unknown
  NodeVector cited;
  NodeVector distinct;
  NodeVector referenced;
  NodePartition type;     // class 0 = unknown
  NodePartition language; // class 0 = unknown
};

WorkVectors build_vectors(std::span<const WorkRecord> works);

struct NetworkCollection {
  WeightedNetwork cite;
  TwoModeNetwork wa, wj, wk, wc;
  WorkVectors vectors;
  /// 1 = work from the input set, 2 = cited-only boundary node.
  NodePartition boundary;
};

/// Every component is aligned to cite.labels().
NetworkCollection build_collection(std::span<const WorkRecord> works, CitationBoundary boundary);

/// Cite.net, WA.net, WJ.net, WK.net, WC.net, year/cited/distinct/referenced.vec,
/// type/language/boundary.clu and legend CSVs for the partitions.
void write_collection(const NetworkCollection& collection, const std::filesystem::path& dir);

}  // namespace oa2net

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "oa2net/coauthorship.hpp"
#include "oa2net/netmodel.hpp"
#include "oa2net/normalization.hpp"

namespace oa2net {

struct DissimilarityMatrix {
  std::vector<std::string> labels;
  std::vector<double> values;  // row-major, symmetric, zero diagonal

  std::size_t size() const { return labels.size(); }
  double at(std::size_t i, std::size_t j) const { return values[i * size() + j]; }
};

/// log2 of every present count, absent cells set to 0. Throws Domain for
/// counts below 1.
IndexMatrix prepare_for_clustering(const CoMatrix& co);

/// Absent cells become 0; imputed flags are ignored.
IndexMatrix fill_absent(const IndexMatrix& m, double value = 0.0);

/// D[a,b] = sqrt((m[a,b]-m[b,a])^2 + (m[a,a]-m[b,b])^2 + sum_{c!=a,b} (m[a,c]-m[b,c])^2).
/// Every cell must be present.
DissimilarityMatrix corrected_euclidean(const IndexMatrix& m);

enum class Linkage { Ward, Complete, Average };

const char* to_string(Linkage linkage) noexcept;

/// Node numbering: leaves 0..n-1, the cluster created at step s is n+s.
struct Merge {
  std::size_t left = 0;
  std::size_t right = 0;
  double height = 0.0;
  std::size_t size = 0;
};

struct Dendrogram {
  std::vector<std::string> labels;
  std::vector<Merge> merges;

  std::size_t leaf_count() const { return labels.size(); }
};

/// Lance-Williams agglomeration. Ward works on squared dissimilarities and
/// reports heights as square roots. Ties go to the pair whose smaller
/// cluster-minimum labels compare lowest; values within 1e-12 relative
/// count as ties.
Dendrogram agglomerate(const DissimilarityMatrix& d, Linkage linkage);

/// Leaf indices left to right; at each merge the child holding the smaller
/// minimum label goes first.
std::vector<std::size_t> leaf_order(const Dendrogram& dg);

/// Undo the k-1 last merges. Classes are 1-based, numbered by first
/// appearance in leaf order, aligned to dg.labels.
NodePartition cut(const Dendrogram& dg, std::size_t k);

std::string format_newick(const Dendrogram& dg);
/// `step,left,right,height,size`; leaves by label, clusters as `m<step>`.
std::string format_merges_csv(const Dendrogram& dg);

struct OrderedExport {
  std::string csv;
  /// `order=`, `clusters=` and `boundaries=` lines for plotting tools.
  std::string meta;
};

/// Rows and columns permuted by `order`; absent cells stay empty. Block
/// boundaries are positions where the cluster changes along the order.
OrderedExport ordered_matrix_export(const IndexMatrix& m, const std::vector<std::size_t>& order,
                                    const NodePartition* partition = nullptr);

}  // namespace oa2net

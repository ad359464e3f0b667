#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "oa2net/coauthorship.hpp"
#include "oa2net/netmodel.hpp"

namespace oa2net {

enum class IndexKind { Plain, Stochastic, Jaccard, Salton, Expected, Activity, LogActivity };

const char* to_string(IndexKind kind) noexcept;

struct CellIssue {
  std::size_t row = 0;
  std::size_t col = 0;
  std::string message;
};

/// Labeled square matrix of optional reals. Cells that could not be computed
/// are absent and listed in `issues`.
struct IndexMatrix {
  std::vector<std::string> labels;
  IndexKind kind = IndexKind::Plain;
  std::vector<std::optional<double>> cells;
  /// Only meaningful for LogActivity: cells set to 0 because A was absent or 0.
  std::vector<bool> imputed;
  std::vector<CellIssue> issues;

  IndexMatrix() = default;
  IndexMatrix(std::vector<std::string> labels, IndexKind kind);

  std::size_t size() const { return labels.size(); }
  std::optional<double> at(std::size_t row, std::size_t col) const { return cells[row * size() + col]; }
  void set(std::size_t row, std::size_t col, std::optional<double> value) { cells[row * size() + col] = value; }
  bool is_imputed(std::size_t row, std::size_t col) const {
    return !imputed.empty() && imputed[row * size() + col];
  }
};

enum class WeightTransform { Sqrt, Log2 };

/// Throws Domain for sqrt of a negative value or log2 of a value below 1.
double transform_weight(double value, WeightTransform fn);

/// Network weights must stay positive, so log2 also rejects a weight of 1.
WeightedNetwork transform_weights(const WeightedNetwork& net, WeightTransform fn);
IndexMatrix transform_weights(const CoMatrix& co, WeightTransform fn);
IndexMatrix transform_weights(const IndexMatrix& m, WeightTransform fn);

enum class Normalization { Stochastic, Jaccard, Salton };

/// M = Co[a,b]/R(a); J = Co[a,b]/(Co[a,a]+Co[b,b]-Co[a,b]);
/// S = Co[a,b]/sqrt(Co[a,a]*Co[b,b]). Absent cells stay absent.
IndexMatrix normalize(const CoMatrix& co, Normalization method);

/// E[a,b] = R(a) * Q(b) / T for every cell. Throws Domain when T == 0.
IndexMatrix expected_matrix(const CoMatrix& co);

/// A(a,b) = Co[a,b] * T / (R(a) * Q(b)) over present cells.
IndexMatrix activity_index(const CoMatrix& co);

/// B = log2 A where A > 0; absent or zero A gives B = 0 flagged as imputed.
IndexMatrix log_activity(const IndexMatrix& activity);

std::string format_index_csv(const IndexMatrix& m);
/// Same layout, 1 where the cell was imputed, 0 elsewhere.
std::string format_imputed_csv(const IndexMatrix& m);
void write_index_csv(const IndexMatrix& m, const std::filesystem::path& path);
void write_imputed_csv(const IndexMatrix& m, const std::filesystem::path& path);

}  // namespace oa2net

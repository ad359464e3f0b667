#include "oa2net/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "oa2net/error.hpp"
#include "oa2net/pajek.hpp"

namespace oa2net {

const char* to_string(Linkage linkage) noexcept {
  switch (linkage) {
    case Linkage::Ward: return "ward";
    case Linkage::Complete: return "complete";
    case Linkage::Average: return "average";
  }
  return "unknown";
}

IndexMatrix prepare_for_clustering(const CoMatrix& co) {
  return fill_absent(transform_weights(co, WeightTransform::Log2));
}

IndexMatrix fill_absent(const IndexMatrix& m, double value) {
  IndexMatrix out(m.labels, m.kind);
  for (std::size_t k = 0; k < m.cells.size(); ++k) out.cells[k] = m.cells[k].value_or(value);
  return out;
}

DissimilarityMatrix corrected_euclidean(const IndexMatrix& m) {
  const std::size_t n = m.size();
  if (m.cells.size() != n * n) fail(ErrorKind::InvalidArgument, "matrix is not square");
  for (const auto& c : m.cells) {
    if (!c) fail(ErrorKind::InvalidArgument, "absent cells must be resolved before computing distances");
  }
  auto v = [&](std::size_t i, std::size_t j) { return *m.cells[i * n + j]; };
  DissimilarityMatrix d{m.labels, std::vector<double>(n * n, 0.0)};
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      double mutual = v(a, b) - v(b, a);
      double diag = v(a, a) - v(b, b);
      double sum = mutual * mutual + diag * diag;
      for (std::size_t c = 0; c < n; ++c) {
        if (c == a || c == b) continue;
        double diff = v(a, c) - v(b, c);
        sum += diff * diff;
      }
      d.values[a * n + b] = d.values[b * n + a] = std::sqrt(sum);
    }
  }
  return d;
}

namespace {
constexpr double kTieTolerance = 1e-12;
}  // namespace

Dendrogram agglomerate(const DissimilarityMatrix& d, Linkage linkage) {
  const std::size_t n = d.size();
  if (d.values.size() != n * n) fail(ErrorKind::InvalidArgument, "dissimilarity matrix is not square");
  Dendrogram dg{d.labels, {}};
  if (n < 2) return dg;

  std::vector<double> work = d.values;
  if (linkage == Linkage::Ward) {
    for (double& x : work) x *= x;
  }
  std::vector<bool> active(n, true);
  std::vector<std::size_t> node(n), size(n, 1);
  std::vector<const std::string*> min_label(n);
  std::iota(node.begin(), node.end(), 0);
  for (std::size_t i = 0; i < n; ++i) min_label[i] = &d.labels[i];

  auto pair_key = [&](std::size_t p, std::size_t q) {
    const std::string* lo = min_label[p];
    const std::string* hi = min_label[q];
    if (*hi < *lo) std::swap(lo, hi);
    return std::pair<const std::string&, const std::string&>(*lo, *hi);
  };

  for (std::size_t step = 0; step + 1 < n; ++step) {
    std::size_t best_p = n, best_q = n;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < n; ++p) {
      if (!active[p]) continue;
      for (std::size_t q = p + 1; q < n; ++q) {
        if (!active[q]) continue;
        double x = work[p * n + q];
        // Values equal up to rounding count as ties so that the label rule,
        // not the update arithmetic, decides between them.
        bool tie = best_p != n && std::abs(x - best) <= kTieTolerance * std::max(std::abs(x), std::abs(best));
        if (best_p == n || (!tie && x < best) || (tie && pair_key(p, q) < pair_key(best_p, best_q))) {
          best = x;
          best_p = p;
          best_q = q;
        }
      }
    }
    std::size_t p = best_p, q = best_q;
    if (*min_label[q] < *min_label[p]) std::swap(p, q);

    const double np = static_cast<double>(size[p]);
    const double nq = static_cast<double>(size[q]);
    for (std::size_t k = 0; k < n; ++k) {
      if (!active[k] || k == p || k == q) continue;
      const double dkp = work[k * n + p];
      const double dkq = work[k * n + q];
      double updated = 0.0;
      switch (linkage) {
        case Linkage::Complete: updated = std::max(dkp, dkq); break;
        case Linkage::Average: updated = (np * dkp + nq * dkq) / (np + nq); break;
        case Linkage::Ward: {
          const double nk = static_cast<double>(size[k]);
          updated = ((nk + np) * dkp + (nk + nq) * dkq - nk * best) / (nk + np + nq);
          break;
        }
      }
      work[k * n + p] = work[p * n + k] = updated;
    }
    double height = linkage == Linkage::Ward ? std::sqrt(std::max(0.0, best)) : best;
    dg.merges.push_back({node[p], node[q], height, size[p] + size[q]});
    node[p] = n + step;
    size[p] += size[q];
    active[q] = false;
  }
  return dg;
}

namespace {

// Minimum label index of every dendrogram node.
std::vector<std::size_t> subtree_min(const Dendrogram& dg) {
  const std::size_t n = dg.leaf_count();
  std::vector<std::size_t> best(n + dg.merges.size());
  std::iota(best.begin(), best.begin() + static_cast<std::ptrdiff_t>(n), 0);
  auto less = [&](std::size_t a, std::size_t b) { return dg.labels[a] < dg.labels[b]; };
  for (std::size_t s = 0; s < dg.merges.size(); ++s) {
    best[n + s] = std::min(best[dg.merges[s].left], best[dg.merges[s].right], less);
  }
  return best;
}

}  // namespace

std::vector<std::size_t> leaf_order(const Dendrogram& dg) {
  const std::size_t n = dg.leaf_count();
  std::vector<std::size_t> order;
  if (n == 0) return order;
  if (dg.merges.size() + 1 != n) fail(ErrorKind::InvalidArgument, "dendrogram is not a single tree");
  auto mins = subtree_min(dg);
  std::vector<std::size_t> stack{n + dg.merges.size() - 1};
  if (n == 1) stack = {0};
  while (!stack.empty()) {
    std::size_t id = stack.back();
    stack.pop_back();
    if (id < n) {
      order.push_back(id);
      continue;
    }
    const Merge& m = dg.merges[id - n];
    std::size_t first = m.left, second = m.right;
    if (dg.labels[mins[second]] < dg.labels[mins[first]]) std::swap(first, second);
    stack.push_back(second);
    stack.push_back(first);
  }
  return order;
}

NodePartition cut(const Dendrogram& dg, std::size_t k) {
  const std::size_t n = dg.leaf_count();
  if (k < 1 || k > n) fail(ErrorKind::Precondition, "cluster count must be in [1, leaf count]");
  std::vector<std::size_t> parent(n + dg.merges.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t s = 0; s < n - k; ++s) {
    parent[find(dg.merges[s].left)] = n + s;
    parent[find(dg.merges[s].right)] = n + s;
  }
  NodePartition p;
  p.classes.assign(n, 0);
  std::vector<std::int64_t> class_of_root(parent.size(), 0);
  std::int64_t next = 1;
  for (std::size_t leaf : leaf_order(dg)) {
    auto& c = class_of_root[find(leaf)];
    if (c == 0) c = next++;
    p.classes[leaf] = c;
  }
  return p;
}

namespace {

std::string newick_label(const std::string& label) {
  if (label.find_first_of(" ():;,[]'") == std::string::npos) return label;
  std::string out = "'";
  for (char c : label) {
    if (c == '\'') out += '\'';
    out += c;
  }
  return out + "'";
}

}  // namespace

std::string format_newick(const Dendrogram& dg) {
  const std::size_t n = dg.leaf_count();
  if (n == 0) return ";\n";
  if (n == 1) return newick_label(dg.labels[0]) + ";\n";
  auto mins = subtree_min(dg);
  auto height = [&](std::size_t id) { return id < n ? 0.0 : dg.merges[id - n].height; };

  std::string out;
  // Iterative post-order; (node, parent height, stage).
  struct Frame {
    std::size_t id;
    double parent_height;
    int stage;
  };
  std::vector<Frame> stack{{n + dg.merges.size() - 1, -1.0, 0}};
  while (!stack.empty()) {
    Frame& f = stack.back();
    auto branch = [&](const Frame& fr) {
      if (fr.parent_height >= 0) out += ":" + pajek::format_number(fr.parent_height - height(fr.id));
    };
    if (f.id < n) {
      out += newick_label(dg.labels[f.id]);
      branch(f);
      stack.pop_back();
      continue;
    }
    const Merge& m = dg.merges[f.id - n];
    std::size_t first = m.left, second = m.right;
    if (dg.labels[mins[second]] < dg.labels[mins[first]]) std::swap(first, second);
    double h = m.height;
    if (f.stage == 0) {
      out += '(';
      f.stage = 1;
      stack.push_back({first, h, 0});
    } else if (f.stage == 1) {
      out += ',';
      f.stage = 2;
      stack.push_back({second, h, 0});
    } else {
      out += ')';
      branch(f);
      stack.pop_back();
    }
  }
  return out + ";\n";
}

std::string format_merges_csv(const Dendrogram& dg) {
  const std::size_t n = dg.leaf_count();
  auto name = [&](std::size_t id) {
    return id < n ? "\"" + dg.labels[id] + "\"" : "m" + std::to_string(id - n + 1);
  };
  std::string out = "step,left,right,height,size\n";
  for (std::size_t s = 0; s < dg.merges.size(); ++s) {
    const Merge& m = dg.merges[s];
    out += std::to_string(s + 1) + "," + name(m.left) + "," + name(m.right) + "," +
           pajek::format_number(m.height) + "," + std::to_string(m.size) + "\n";
  }
  return out;
}

OrderedExport ordered_matrix_export(const IndexMatrix& m, const std::vector<std::size_t>& order,
                                    const NodePartition* partition) {
  const std::size_t n = m.size();
  std::vector<bool> seen(n, false);
  if (order.size() != n) fail(ErrorKind::InvalidArgument, "order is not a permutation of the matrix labels");
  for (auto i : order) {
    if (i >= n || seen[i]) fail(ErrorKind::InvalidArgument, "order is not a permutation of the matrix labels");
    seen[i] = true;
  }
  if (partition && partition->classes.size() != n) {
    fail(ErrorKind::InvalidArgument, "partition length does not match the matrix");
  }
  OrderedExport out;
  for (auto i : order) out.csv += "," + m.labels[i];
  out.csv += '\n';
  for (auto i : order) {
    out.csv += m.labels[i];
    for (auto j : order) {
      out.csv += ',';
      if (auto v = m.at(i, j)) out.csv += pajek::format_number(*v);
    }
    out.csv += '\n';
  }
  out.meta = "order=";
  for (std::size_t k = 0; k < n; ++k) out.meta += (k ? "," : "") + m.labels[order[k]];
  out.meta += '\n';
  if (partition) {
    out.meta += "clusters=";
    for (std::size_t k = 0; k < n; ++k) {
      out.meta += (k ? "," : "") + std::to_string(partition->classes[order[k]]);
    }
    out.meta += "\nboundaries=";
    bool first = true;
    for (std::size_t k = 1; k < n; ++k) {
      if (partition->classes[order[k]] != partition->classes[order[k - 1]]) {
        out.meta += (first ? "" : ",") + std::to_string(k);
        first = false;
      }
    }
    out.meta += '\n';
  }
  return out;
}

}  // namespace oa2net

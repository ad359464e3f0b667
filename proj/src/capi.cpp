#include "oa2net/oa2net.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <limits>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "oa2net/clustering.hpp"
#include "oa2net/coauthorship.hpp"
#include "oa2net/collection.hpp"
#include "oa2net/corpus.hpp"
#include "oa2net/error.hpp"
#include "oa2net/netmodel.hpp"
#include "oa2net/normalization.hpp"
#include "oa2net/openalex.hpp"
#include "oa2net/pajek.hpp"
#include "oa2net/reduction.hpp"

struct oa2net_network {
  oa2net::WeightedNetwork net;
};
struct oa2net_cores {
  oa2net::CoreDecomposition dec;
};
struct oa2net_comatrix {
  oa2net::CoMatrix co;
};
struct oa2net_matrix {
  oa2net::IndexMatrix m;
  std::vector<std::string> issue_text;
};
struct oa2net_dissimilarity {
  oa2net::DissimilarityMatrix d;
};
struct oa2net_dendrogram {
  oa2net::Dendrogram dg;
};
struct oa2net_client {
  oa2net::OpenAlexClient client;
};
struct oa2net_works {
  std::vector<oa2net::WorkRecord> records;
};
struct oa2net_worklist {
  oa2net::WorkList list;
};
struct oa2net_series {
  oa2net::TemporalCoSeries series;
};

namespace {

thread_local std::string g_last_error;

oa2net_status status_for(oa2net::ErrorKind kind) {
  using oa2net::ErrorKind;
  switch (kind) {
    case ErrorKind::InvalidArgument: return OA2NET_ERR_INVALID_ARGUMENT;
    case ErrorKind::InvalidNode: return OA2NET_ERR_INVALID_NODE;
    case ErrorKind::Precondition: return OA2NET_ERR_PRECONDITION;
    case ErrorKind::Io: return OA2NET_ERR_IO;
    case ErrorKind::Parse: return OA2NET_ERR_PARSE;
    case ErrorKind::Transport: return OA2NET_ERR_TRANSPORT;
    case ErrorKind::Domain: return OA2NET_ERR_DOMAIN;
  }
  return OA2NET_ERR_INTERNAL;
}

template <typename F>
oa2net_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return OA2NET_OK;
  } catch (const oa2net::Error& e) {
    g_last_error = e.what();
    return status_for(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return OA2NET_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return OA2NET_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return OA2NET_ERR_INTERNAL;
  }
}

void need(const void* ptr, const char* name) {
  if (ptr == nullptr) oa2net::fail(oa2net::ErrorKind::InvalidArgument, std::string(name) + " must not be NULL");
}

char* dup_string(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename T>
T* dup_array(const std::vector<T>& values) {
  auto* out = static_cast<T*>(std::malloc(std::max<std::size_t>(1, values.size()) * sizeof(T)));
  if (out == nullptr) throw std::bad_alloc();
  std::copy(values.begin(), values.end(), out);
  return out;
}

oa2net::WeightTransform transform_of(oa2net_transform fn) {
  switch (fn) {
    case OA2NET_TRANSFORM_SQRT: return oa2net::WeightTransform::Sqrt;
    case OA2NET_TRANSFORM_LOG2: return oa2net::WeightTransform::Log2;
  }
  oa2net::fail(oa2net::ErrorKind::InvalidArgument, "unknown transform");
}

oa2net::Linkage linkage_of(oa2net_linkage linkage) {
  switch (linkage) {
    case OA2NET_LINKAGE_WARD: return oa2net::Linkage::Ward;
    case OA2NET_LINKAGE_COMPLETE: return oa2net::Linkage::Complete;
    case OA2NET_LINKAGE_AVERAGE: return oa2net::Linkage::Average;
  }
  oa2net::fail(oa2net::ErrorKind::InvalidArgument, "unknown linkage");
}

oa2net_matrix* wrap(oa2net::IndexMatrix m) {
  auto* out = new oa2net_matrix{std::move(m), {}};
  for (const auto& issue : out->m.issues) {
    out->issue_text.push_back(out->m.labels[issue.row] + "," + out->m.labels[issue.col] + ": " + issue.message);
  }
  return out;
}

oa2net::WorksFilter filter_of(const char* const* fields, const char* const* values, std::size_t count) {
  oa2net::WorksFilter filter;
  if (count > 0) {
    need(fields, "fields");
    need(values, "values");
  }
  for (std::size_t i = 0; i < count; ++i) {
    need(fields[i], "fields[i]");
    need(values[i], "values[i]");
    filter.where(fields[i], values[i]);
  }
  return filter;
}

void check_index(std::size_t index, std::size_t size, const char* what) {
  if (index >= size) {
    oa2net::fail(oa2net::ErrorKind::InvalidArgument,
                 std::string(what) + " index " + std::to_string(index) + " out of range");
  }
}

}  // namespace

extern "C" {

const char* oa2net_version(void) { return "0.1.0"; }

const char* oa2net_last_error(void) { return g_last_error.c_str(); }

const char* oa2net_status_name(oa2net_status status) {
  switch (status) {
    case OA2NET_OK: return "ok";
    case OA2NET_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case OA2NET_ERR_INVALID_NODE: return "invalid_node";
    case OA2NET_ERR_PRECONDITION: return "precondition";
    case OA2NET_ERR_IO: return "io";
    case OA2NET_ERR_PARSE: return "parse";
    case OA2NET_ERR_TRANSPORT: return "transport";
    case OA2NET_ERR_DOMAIN: return "domain";
    case OA2NET_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

void oa2net_free(void* ptr) { std::free(ptr); }

oa2net_status oa2net_sha256_file(const char* path, char out_hex[65]) {
  return guarded([&] {
    need(path, "path");
    need(out_hex, "out_hex");
    auto digest = oa2net::sha256_hex(oa2net::pajek::read_text_file(path));
    std::memcpy(out_hex, digest.c_str(), 65);
  });
}

/* networks */

oa2net_status oa2net_network_create(const char* const* labels, size_t count, int directed, oa2net_network** out) {
  return guarded([&] {
    need(out, "out");
    if (count > 0) need(labels, "labels");
    std::vector<std::string> names;
    for (std::size_t i = 0; i < count; ++i) {
      need(labels[i], "labels[i]");
      names.emplace_back(labels[i]);
    }
    *out = new oa2net_network{oa2net::WeightedNetwork(
        std::move(names), directed ? oa2net::Directedness::Directed : oa2net::Directedness::Undirected)};
  });
}

oa2net_status oa2net_network_add_link(oa2net_network* net, size_t source, size_t target, double weight) {
  return guarded([&] {
    need(net, "net");
    net->net.add_link(oa2net::NodeId(source), oa2net::NodeId(target), weight);
  });
}

oa2net_status oa2net_network_read(const char* path, oa2net_network** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new oa2net_network{oa2net::pajek::read_one_mode(path)};
  });
}

oa2net_status oa2net_network_write(const oa2net_network* net, const char* path) {
  return guarded([&] {
    need(net, "net");
    need(path, "path");
    oa2net::pajek::write_network(net->net, path);
  });
}

void oa2net_network_free(oa2net_network* net) { delete net; }

size_t oa2net_network_vertex_count(const oa2net_network* net) { return net ? net->net.vertex_count() : 0; }
size_t oa2net_network_link_count(const oa2net_network* net) { return net ? net->net.link_count() : 0; }
int oa2net_network_is_directed(const oa2net_network* net) { return net && net->net.directed() ? 1 : 0; }

const char* oa2net_network_label(const oa2net_network* net, size_t node) {
  if (net == nullptr || node == 0 || node > net->net.vertex_count()) return nullptr;
  return net->net.labels()[node - 1].c_str();
}

oa2net_status oa2net_network_link(const oa2net_network* net, size_t index, size_t* source, size_t* target,
                                  double* weight) {
  return guarded([&] {
    need(net, "net");
    check_index(index, net->net.link_count(), "link");
    const auto& link = net->net.links()[index];
    if (source) *source = link.source.value();
    if (target) *target = link.target.value();
    if (weight) *weight = link.weight;
  });
}

oa2net_status oa2net_weighted_degree(const oa2net_network* net, size_t node, const size_t* within,
                                     size_t within_count, double* out) {
  return guarded([&] {
    need(net, "net");
    need(out, "out");
    if (within_count > 0) need(within, "within");
    std::vector<oa2net::NodeId> set;
    for (std::size_t i = 0; i < within_count; ++i) set.emplace_back(within[i]);
    *out = oa2net::weighted_degree(net->net, oa2net::NodeId(node), set);
  });
}

oa2net_status oa2net_network_transform(const oa2net_network* net, oa2net_transform fn, oa2net_network** out) {
  return guarded([&] {
    need(net, "net");
    need(out, "out");
    *out = new oa2net_network{oa2net::transform_weights(net->net, transform_of(fn))};
  });
}

/* cores and skeletons */

oa2net_status oa2net_cores_compute(const oa2net_network* net, oa2net_cores** out) {
  return guarded([&] {
    need(net, "net");
    need(out, "out");
    *out = new oa2net_cores{oa2net::weighted_degree_cores(net->net)};
  });
}

size_t oa2net_cores_count(const oa2net_cores* cores) { return cores ? cores->dec.level.size() : 0; }

double oa2net_cores_level(const oa2net_cores* cores, size_t node) {
  if (cores == nullptr || node == 0 || node > cores->dec.level.size()) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return cores->dec.level[node - 1];
}

oa2net_status oa2net_cores_write(const oa2net_cores* cores, const char* vec_path, const char* csv_path) {
  return guarded([&] {
    need(cores, "cores");
    need(vec_path, "vec_path");
    need(csv_path, "csv_path");
    oa2net::write_cores(cores->dec, vec_path, csv_path);
  });
}

void oa2net_cores_free(oa2net_cores* cores) { delete cores; }

oa2net_status oa2net_skeleton_k_neighbor(const oa2net_network* net, size_t k, oa2net_network** out) {
  return guarded([&] {
    need(net, "net");
    need(out, "out");
    *out = new oa2net_network{oa2net::k_neighbor_skeleton(net->net, k)};
  });
}

oa2net_status oa2net_link_cut(const oa2net_network* net, double threshold, oa2net_network** out) {
  return guarded([&] {
    need(net, "net");
    need(out, "out");
    *out = new oa2net_network{oa2net::link_cut(net->net, threshold)};
  });
}

oa2net_status oa2net_skeleton_write(const oa2net_network* skeleton, int merge_mutual, const char* path) {
  return guarded([&] {
    need(skeleton, "skeleton");
    need(path, "path");
    oa2net::pajek::write_text_file(path, oa2net::pajek::format_skeleton(skeleton->net, merge_mutual != 0));
  });
}

oa2net_status oa2net_mutual_pairs_write_csv(const oa2net_network* skeleton, const char* path) {
  return guarded([&] {
    need(skeleton, "skeleton");
    need(path, "path");
    std::ostringstream csv;
    csv << "a,b,weight\n";
    for (const auto& [a, b] : oa2net::mutual_pairs(skeleton->net)) {
      double w = skeleton->net.weight(a, b).value_or(0.0);
      csv << skeleton->net.label(a) << ',' << skeleton->net.label(b) << ','
          << oa2net::pajek::format_number(w) << '\n';
    }
    oa2net::pajek::write_text_file(path, csv.str());
  });
}

/* co-authorship matrices */

oa2net_status oa2net_comatrix_read_csv(const char* path, oa2net_comatrix** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new oa2net_comatrix{oa2net::read_co_csv(path)};
  });
}

oa2net_status oa2net_comatrix_write_csv(const oa2net_comatrix* co, const char* path) {
  return guarded([&] {
    need(co, "co");
    need(path, "path");
    oa2net::write_co_csv(co->co, path);
  });
}

oa2net_status oa2net_comatrix_from_works(const oa2net_works* works, oa2net_comatrix** out) {
  return guarded([&] {
    need(works, "works");
    need(out, "out");
    *out = new oa2net_comatrix{oa2net::co_matrix_from_works(works->records)};
  });
}

oa2net_status oa2net_comatrix_to_network(const oa2net_comatrix* co, int include_loops, oa2net_network** out) {
  return guarded([&] {
    need(co, "co");
    need(out, "out");
    *out = new oa2net_network{oa2net::co_matrix_to_network(co->co, include_loops != 0)};
  });
}

size_t oa2net_comatrix_size(const oa2net_comatrix* co) { return co ? co->co.size() : 0; }

oa2net_status oa2net_comatrix_code(const oa2net_comatrix* co, size_t index, char out[3]) {
  return guarded([&] {
    need(co, "co");
    need(out, "out");
    check_index(index, co->co.size(), "country");
    auto code = co->co.codes()[index].str();
    out[0] = code[0];
    out[1] = code[1];
    out[2] = '\0';
  });
}

oa2net_status oa2net_comatrix_cell(const oa2net_comatrix* co, size_t row, size_t col, uint64_t* value,
                                   int* present) {
  return guarded([&] {
    need(co, "co");
    check_index(row, co->co.size(), "row");
    check_index(col, co->co.size(), "column");
    auto cell = co->co.at(row, col);
    if (present) *present = cell.has_value() ? 1 : 0;
    if (value) *value = cell.value_or(0);
  });
}

void oa2net_comatrix_free(oa2net_comatrix* co) { delete co; }

/* index matrices */

oa2net_status oa2net_index_compute(const oa2net_comatrix* co, oa2net_index_kind kind, oa2net_matrix** out) {
  return guarded([&] {
    need(co, "co");
    need(out, "out");
    switch (kind) {
      case OA2NET_INDEX_STOCHASTIC:
        *out = wrap(oa2net::normalize(co->co, oa2net::Normalization::Stochastic));
        return;
      case OA2NET_INDEX_JACCARD:
        *out = wrap(oa2net::normalize(co->co, oa2net::Normalization::Jaccard));
        return;
      case OA2NET_INDEX_SALTON:
        *out = wrap(oa2net::normalize(co->co, oa2net::Normalization::Salton));
        return;
      case OA2NET_INDEX_EXPECTED:
        *out = wrap(oa2net::expected_matrix(co->co));
        return;
      case OA2NET_INDEX_ACTIVITY:
        *out = wrap(oa2net::activity_index(co->co));
        return;
      case OA2NET_INDEX_LOG_ACTIVITY:
        *out = wrap(oa2net::log_activity(oa2net::activity_index(co->co)));
        return;
    }
    oa2net::fail(oa2net::ErrorKind::InvalidArgument, "unknown index kind");
  });
}

oa2net_status oa2net_comatrix_transform(const oa2net_comatrix* co, oa2net_transform fn, oa2net_matrix** out) {
  return guarded([&] {
    need(co, "co");
    need(out, "out");
    *out = wrap(oa2net::transform_weights(co->co, transform_of(fn)));
  });
}

size_t oa2net_matrix_size(const oa2net_matrix* m) { return m ? m->m.size() : 0; }

const char* oa2net_matrix_label(const oa2net_matrix* m, size_t index) {
  if (m == nullptr || index >= m->m.size()) return nullptr;
  return m->m.labels[index].c_str();
}

oa2net_status oa2net_matrix_cell(const oa2net_matrix* m, size_t row, size_t col, double* value, int* present) {
  return guarded([&] {
    need(m, "m");
    check_index(row, m->m.size(), "row");
    check_index(col, m->m.size(), "column");
    auto cell = m->m.at(row, col);
    if (present) *present = cell.has_value() ? 1 : 0;
    if (value) *value = cell.value_or(std::numeric_limits<double>::quiet_NaN());
  });
}

int oa2net_matrix_is_imputed(const oa2net_matrix* m, size_t row, size_t col) {
  if (m == nullptr || row >= m->m.size() || col >= m->m.size()) return 0;
  return m->m.is_imputed(row, col) ? 1 : 0;
}

size_t oa2net_matrix_issue_count(const oa2net_matrix* m) { return m ? m->issue_text.size() : 0; }

const char* oa2net_matrix_issue(const oa2net_matrix* m, size_t index) {
  if (m == nullptr || index >= m->issue_text.size()) return nullptr;
  return m->issue_text[index].c_str();
}

oa2net_status oa2net_matrix_write_csv(const oa2net_matrix* m, const char* path) {
  return guarded([&] {
    need(m, "m");
    need(path, "path");
    oa2net::write_index_csv(m->m, path);
  });
}

oa2net_status oa2net_matrix_write_imputed_csv(const oa2net_matrix* m, const char* path) {
  return guarded([&] {
    need(m, "m");
    need(path, "path");
    oa2net::write_imputed_csv(m->m, path);
  });
}

oa2net_status oa2net_matrix_fill_absent(const oa2net_matrix* m, double value, oa2net_matrix** out) {
  return guarded([&] {
    need(m, "m");
    need(out, "out");
    *out = wrap(oa2net::fill_absent(m->m, value));
  });
}

oa2net_status oa2net_matrix_drop_imputed(const oa2net_matrix* m, oa2net_matrix** out) {
  return guarded([&] {
    need(m, "m");
    need(out, "out");
    auto copy = m->m;
    for (std::size_t i = 0; i < copy.size(); ++i) {
      for (std::size_t j = 0; j < copy.size(); ++j) {
        if (copy.is_imputed(i, j)) copy.set(i, j, std::nullopt);
      }
    }
    copy.imputed.clear();
    *out = wrap(std::move(copy));
  });
}

void oa2net_matrix_free(oa2net_matrix* m) { delete m; }

/* clustering */

oa2net_status oa2net_prepare_for_clustering(const oa2net_comatrix* co, oa2net_matrix** out) {
  return guarded([&] {
    need(co, "co");
    need(out, "out");
    *out = wrap(oa2net::prepare_for_clustering(co->co));
  });
}

oa2net_status oa2net_corrected_euclidean(const oa2net_matrix* m, oa2net_dissimilarity** out) {
  return guarded([&] {
    need(m, "m");
    need(out, "out");
    *out = new oa2net_dissimilarity{oa2net::corrected_euclidean(m->m)};
  });
}

double oa2net_dissimilarity_at(const oa2net_dissimilarity* d, size_t row, size_t col) {
  if (d == nullptr || row >= d->d.size() || col >= d->d.size()) return std::numeric_limits<double>::quiet_NaN();
  return d->d.at(row, col);
}

void oa2net_dissimilarity_free(oa2net_dissimilarity* d) { delete d; }

oa2net_status oa2net_agglomerate(const oa2net_dissimilarity* d, oa2net_linkage linkage, oa2net_dendrogram** out) {
  return guarded([&] {
    need(d, "d");
    need(out, "out");
    *out = new oa2net_dendrogram{oa2net::agglomerate(d->d, linkage_of(linkage))};
  });
}

size_t oa2net_dendrogram_leaf_count(const oa2net_dendrogram* dg) { return dg ? dg->dg.leaf_count() : 0; }

oa2net_status oa2net_dendrogram_merge(const oa2net_dendrogram* dg, size_t step, size_t* left, size_t* right,
                                      double* height) {
  return guarded([&] {
    need(dg, "dg");
    check_index(step, dg->dg.merges.size(), "merge");
    const auto& merge = dg->dg.merges[step];
    if (left) *left = merge.left;
    if (right) *right = merge.right;
    if (height) *height = merge.height;
  });
}

oa2net_status oa2net_dendrogram_leaf_order(const oa2net_dendrogram* dg, size_t* order, size_t count) {
  return guarded([&] {
    need(dg, "dg");
    if (count != dg->dg.leaf_count()) {
      oa2net::fail(oa2net::ErrorKind::InvalidArgument, "order buffer must hold leaf_count entries");
    }
    if (count > 0) need(order, "order");
    auto result = oa2net::leaf_order(dg->dg);
    std::copy(result.begin(), result.end(), order);
  });
}

oa2net_status oa2net_dendrogram_cut(const oa2net_dendrogram* dg, size_t k, int64_t* classes, size_t count) {
  return guarded([&] {
    need(dg, "dg");
    if (count != dg->dg.leaf_count()) {
      oa2net::fail(oa2net::ErrorKind::InvalidArgument, "classes buffer must hold leaf_count entries");
    }
    if (count > 0) need(classes, "classes");
    auto partition = oa2net::cut(dg->dg, k);
    std::copy(partition.classes.begin(), partition.classes.end(), classes);
  });
}

oa2net_status oa2net_dendrogram_write_newick(const oa2net_dendrogram* dg, const char* path) {
  return guarded([&] {
    need(dg, "dg");
    need(path, "path");
    oa2net::pajek::write_text_file(path, oa2net::format_newick(dg->dg));
  });
}

oa2net_status oa2net_dendrogram_write_merges_csv(const oa2net_dendrogram* dg, const char* path) {
  return guarded([&] {
    need(dg, "dg");
    need(path, "path");
    oa2net::pajek::write_text_file(path, oa2net::format_merges_csv(dg->dg));
  });
}

void oa2net_dendrogram_free(oa2net_dendrogram* dg) { delete dg; }

oa2net_status oa2net_ordered_matrix_export(const oa2net_matrix* m, const size_t* order, size_t count,
                                           const int64_t* classes, const char* csv_path, const char* meta_path) {
  return guarded([&] {
    need(m, "m");
    need(csv_path, "csv_path");
    need(meta_path, "meta_path");
    if (count > 0) need(order, "order");
    std::vector<std::size_t> perm(order, order + count);
    oa2net::NodePartition partition;
    if (classes != nullptr) partition.classes.assign(classes, classes + count);
    auto exported = oa2net::ordered_matrix_export(m->m, perm, classes ? &partition : nullptr);
    oa2net::pajek::write_text_file(csv_path, exported.csv);
    oa2net::pajek::write_text_file(meta_path, exported.meta);
  });
}

/* partitions and vectors */

oa2net_status oa2net_partition_write(const int64_t* classes, size_t count, const char* path) {
  return guarded([&] {
    need(path, "path");
    if (count > 0) need(classes, "classes");
    oa2net::NodePartition partition;
    partition.classes.assign(classes, classes + count);
    oa2net::pajek::write_partition(partition, path);
  });
}

oa2net_status oa2net_partition_read(const char* path, int64_t** classes, size_t* count) {
  return guarded([&] {
    need(path, "path");
    need(classes, "classes");
    need(count, "count");
    auto partition = oa2net::pajek::read_partition(path);
    *classes = dup_array(partition.classes);
    *count = partition.classes.size();
  });
}

oa2net_status oa2net_vector_write(const double* values, size_t count, const char* path) {
  return guarded([&] {
    need(path, "path");
    if (count > 0) need(values, "values");
    oa2net::NodeVector vector;
    vector.values.assign(values, values + count);
    oa2net::pajek::write_vector(vector, path);
  });
}

oa2net_status oa2net_vector_read(const char* path, double** values, size_t* count) {
  return guarded([&] {
    need(path, "path");
    need(values, "values");
    need(count, "count");
    auto vector = oa2net::pajek::read_vector(path);
    *values = dup_array(vector.values);
    *count = vector.values.size();
  });
}

oa2net_status oa2net_project_write(const oa2net_network* net, const char* name, const char* const* partition_names,
                                   const int64_t* const* partitions, size_t partition_count,
                                   const char* const* vector_names, const double* const* vectors,
                                   size_t vector_count, const char* path) {
  return guarded([&] {
    need(net, "net");
    need(name, "name");
    need(path, "path");
    const std::size_t n = net->net.vertex_count();
    std::vector<oa2net::pajek::Named<oa2net::NodePartition>> parts;
    if (partition_count > 0) {
      need(partition_names, "partition_names");
      need(partitions, "partitions");
    }
    for (std::size_t i = 0; i < partition_count; ++i) {
      need(partition_names[i], "partition_names[i]");
      if (n > 0) need(partitions[i], "partitions[i]");
      oa2net::NodePartition p;
      p.classes.assign(partitions[i], partitions[i] + n);
      parts.push_back({partition_names[i], std::move(p)});
    }
    std::vector<oa2net::pajek::Named<oa2net::NodeVector>> vecs;
    if (vector_count > 0) {
      need(vector_names, "vector_names");
      need(vectors, "vectors");
    }
    for (std::size_t i = 0; i < vector_count; ++i) {
      need(vector_names[i], "vector_names[i]");
      if (n > 0) need(vectors[i], "vectors[i]");
      vecs.push_back({vector_names[i], oa2net::NodeVector{std::vector<double>(vectors[i], vectors[i] + n)}});
    }
    oa2net::pajek::write_text_file(path, oa2net::pajek::format_project({name, net->net}, parts, vecs));
  });
}

/* OpenAlex client */

void oa2net_client_config_init(oa2net_client_config* config) {
  if (config == nullptr) return;
  oa2net::ClientConfig defaults;
  config->base_url = nullptr;
  config->mailto = nullptr;
  config->rate_limit = defaults.rate_limit;
  config->cache_dir = nullptr;
  config->cache_only = 0;
  config->max_attempts = defaults.max_attempts;
}

oa2net_status oa2net_client_create(const oa2net_client_config* config, oa2net_client** out) {
  return guarded([&] {
    need(config, "config");
    need(out, "out");
    oa2net::ClientConfig cfg;
    if (config->base_url) cfg.base_url = config->base_url;
    if (config->mailto && *config->mailto) cfg.mailto = config->mailto;
    cfg.rate_limit = config->rate_limit;
    if (config->cache_dir && *config->cache_dir) cfg.cache_dir = config->cache_dir;
    cfg.cache_only = config->cache_only != 0;
    cfg.max_attempts = config->max_attempts;
    *out = new oa2net_client{oa2net::OpenAlexClient(std::move(cfg))};
  });
}

void oa2net_client_free(oa2net_client* client) { delete client; }

oa2net_status oa2net_build_query_url(const char* const* fields, const char* const* values, size_t count,
                                     const char* group_by, const char* cursor, int per_page, const char* mailto,
                                     const char* base_url, char** out) {
  return guarded([&] {
    need(out, "out");
    auto filter = filter_of(fields, values, count);
    if (group_by) filter.group_by = group_by;
    oa2net::PageRequest page;
    if (cursor) page.cursor = cursor;
    if (per_page > 0) page.per_page = per_page;
    std::optional<std::string> who;
    if (mailto) who = mailto;
    *out = dup_string(oa2net::build_query_url(filter, page, who, base_url ? base_url : oa2net::kDefaultApiBase));
  });
}

oa2net_status oa2net_works_fetch(oa2net_client* client, const char* const* fields, const char* const* values,
                                 size_t count, int64_t limit, oa2net_works** out, size_t* skipped) {
  return guarded([&] {
    need(client, "client");
    need(out, "out");
    auto filter = filter_of(fields, values, count);
    std::optional<std::size_t> cap;
    if (limit >= 0) cap = static_cast<std::size_t>(limit);
    auto works = std::make_unique<oa2net_works>();
    auto summary = client->client.fetch_works(
        filter, cap, [&](oa2net::WorkRecord&& record) { works->records.push_back(std::move(record)); });
    if (skipped) *skipped = summary.skipped;
    *out = works.release();
  });
}

oa2net_status oa2net_works_fetch_list(oa2net_client* client, const oa2net_worklist* ids, oa2net_works** out) {
  return guarded([&] {
    need(client, "client");
    need(ids, "ids");
    need(out, "out");
    *out = new oa2net_works{client->client.fetch_works_by_ids(ids->list.ids())};
  });
}

oa2net_status oa2net_works_read_jsonl(const char* path, oa2net_works** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new oa2net_works{oa2net::read_works_jsonl(path)};
  });
}

oa2net_status oa2net_works_write_jsonl(const oa2net_works* works, const char* path) {
  return guarded([&] {
    need(works, "works");
    need(path, "path");
    oa2net::write_works_jsonl(works->records, path);
  });
}

size_t oa2net_works_count(const oa2net_works* works) { return works ? works->records.size() : 0; }

const char* oa2net_works_id(const oa2net_works* works, size_t index) {
  if (works == nullptr || index >= works->records.size()) return nullptr;
  return works->records[index].id.c_str();
}

void oa2net_works_free(oa2net_works* works) { delete works; }

/* saturation */

oa2net_status oa2net_worklist_read(const char* path, oa2net_worklist** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new oa2net_worklist{oa2net::read_work_list(path)};
  });
}

oa2net_status oa2net_worklist_write(const oa2net_worklist* list, const char* path) {
  return guarded([&] {
    need(list, "list");
    need(path, "path");
    oa2net::write_work_list(list->list, path);
  });
}

oa2net_status oa2net_worklist_join(const oa2net_worklist* old_list, const oa2net_worklist* added,
                                   oa2net_worklist** out) {
  return guarded([&] {
    need(old_list, "old_list");
    need(added, "added");
    need(out, "out");
    *out = new oa2net_worklist{oa2net::join_lists(old_list->list, added->list)};
  });
}

size_t oa2net_worklist_count(const oa2net_worklist* list) { return list ? list->list.size() : 0; }

const char* oa2net_worklist_id(const oa2net_worklist* list, size_t index) {
  if (list == nullptr || index >= list->list.size()) return nullptr;
  return list->list.ids()[index].c_str();
}

void oa2net_worklist_free(oa2net_worklist* list) { delete list; }

oa2net_status oa2net_saturation_step(oa2net_client* client, const oa2net_worklist* seed, size_t threshold,
                                     oa2net_worklist** out, int* converged, char** table_csv) {
  return guarded([&] {
    need(client, "client");
    need(seed, "seed");
    need(out, "out");
    auto step = oa2net::saturation_step(seed->list, threshold, client->client);
    std::string csv;
    if (table_csv) {
      csv = "id,indegree\n";
      for (const auto& row : step.table) csv += row.id + "," + std::to_string(row.indegree) + "\n";
    }
    auto list = std::make_unique<oa2net_worklist>(oa2net_worklist{std::move(step.works)});
    if (table_csv) *table_csv = dup_string(csv);
    if (converged) *converged = step.converged ? 1 : 0;
    *out = list.release();
  });
}

/* collection */

oa2net_status oa2net_collection_write(const oa2net_works* works, int include_cited, const char* dir) {
  return guarded([&] {
    need(works, "works");
    need(dir, "dir");
    auto boundary =
        include_cited ? oa2net::CitationBoundary::IncludeCited : oa2net::CitationBoundary::InternalOnly;
    oa2net::write_collection(oa2net::build_collection(works->records, boundary), dir);
  });
}

/* yearly series */

oa2net_status oa2net_coauth_series(oa2net_client* client, int year_from, int year_to, const char* const* scope,
                                   size_t scope_count, int international_only, oa2net_series** out) {
  return guarded([&] {
    need(client, "client");
    need(out, "out");
    oa2net::SeriesOptions options;
    options.international_only = international_only != 0;
    if (scope_count > 0) need(scope, "scope");
    for (std::size_t i = 0; i < scope_count; ++i) {
      need(scope[i], "scope[i]");
      options.scope.push_back(oa2net::CountryCode::require(scope[i]));
    }
    *out = new oa2net_series{oa2net::yearly_series(year_from, year_to, client->client, options)};
  });
}

size_t oa2net_series_year_count(const oa2net_series* s) { return s ? s->series.years.size() : 0; }

int oa2net_series_year(const oa2net_series* s, size_t index) {
  if (s == nullptr || index >= s->series.years.size()) return 0;
  return std::next(s->series.years.begin(), static_cast<std::ptrdiff_t>(index))->first;
}

oa2net_status oa2net_series_matrix(const oa2net_series* s, int year, oa2net_comatrix** out) {
  return guarded([&] {
    need(s, "s");
    need(out, "out");
    auto it = s->series.years.find(year);
    if (it == s->series.years.end()) {
      oa2net::fail(oa2net::ErrorKind::InvalidArgument, "no matrix for year " + std::to_string(year));
    }
    *out = new oa2net_comatrix{it->second};
  });
}

size_t oa2net_series_failure_count(const oa2net_series* s) { return s ? s->series.failures.size() : 0; }

oa2net_status oa2net_series_failure(const oa2net_series* s, size_t index, int* year, oa2net_status* kind,
                                    const char** message) {
  return guarded([&] {
    need(s, "s");
    check_index(index, s->series.failures.size(), "failure");
    if (year) *year = s->series.failures[index].year;
    if (kind) *kind = status_for(s->series.failures[index].kind);
    if (message) *message = s->series.failures[index].message.c_str();
  });
}

size_t oa2net_series_warning_count(const oa2net_series* s) { return s ? s->series.report.warnings.size() : 0; }

const char* oa2net_series_warning(const oa2net_series* s, size_t index) {
  if (s == nullptr || index >= s->series.report.warnings.size()) return nullptr;
  return s->series.report.warnings[index].c_str();
}

size_t oa2net_series_dropped_codes(const oa2net_series* s) { return s ? s->series.report.dropped_codes : 0; }

size_t oa2net_series_truncated_responses(const oa2net_series* s) {
  return s ? s->series.report.truncated_responses : 0;
}

void oa2net_series_free(oa2net_series* s) { delete s; }

}  // extern "C"

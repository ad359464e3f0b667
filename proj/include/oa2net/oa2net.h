/*
 * oa2net C API.
 *
 * Every fallible call returns an oa2net_status; on failure a message for the
 * calling thread is available from oa2net_last_error(). Handles are opaque and
 * owned by the caller once returned through an `out` parameter; release them
 * with the matching *_free function. Node numbers are 1-based (Pajek
 * convention); matrix rows, link and list indices are 0-based.
 */
#ifndef OA2NET_H
#define OA2NET_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define OA2NET_API __declspec(dllexport)
#else
#define OA2NET_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum oa2net_status {
  OA2NET_OK = 0,
  OA2NET_ERR_INVALID_ARGUMENT = 1,
  OA2NET_ERR_INVALID_NODE = 2,
  OA2NET_ERR_PRECONDITION = 3,
  OA2NET_ERR_IO = 4,
  OA2NET_ERR_PARSE = 5,
  OA2NET_ERR_TRANSPORT = 6,
  OA2NET_ERR_DOMAIN = 7,
  OA2NET_ERR_INTERNAL = 8
} oa2net_status;

typedef enum oa2net_transform { OA2NET_TRANSFORM_SQRT = 0, OA2NET_TRANSFORM_LOG2 = 1 } oa2net_transform;

typedef enum oa2net_index_kind {
  OA2NET_INDEX_STOCHASTIC = 0,
  OA2NET_INDEX_JACCARD = 1,
  OA2NET_INDEX_SALTON = 2,
  OA2NET_INDEX_EXPECTED = 3,
  OA2NET_INDEX_ACTIVITY = 4,
  OA2NET_INDEX_LOG_ACTIVITY = 5
} oa2net_index_kind;

typedef enum oa2net_linkage {
  OA2NET_LINKAGE_WARD = 0,
  OA2NET_LINKAGE_COMPLETE = 1,
  OA2NET_LINKAGE_AVERAGE = 2
} oa2net_linkage;

typedef struct oa2net_network oa2net_network;
typedef struct oa2net_cores oa2net_cores;
typedef struct oa2net_comatrix oa2net_comatrix;
typedef struct oa2net_matrix oa2net_matrix;
typedef struct oa2net_dissimilarity oa2net_dissimilarity;
typedef struct oa2net_dendrogram oa2net_dendrogram;
typedef struct oa2net_client oa2net_client;
typedef struct oa2net_works oa2net_works;
typedef struct oa2net_worklist oa2net_worklist;
typedef struct oa2net_series oa2net_series;

/* ---- library ---------------------------------------------------------- */

OA2NET_API const char* oa2net_version(void);
OA2NET_API const char* oa2net_last_error(void);
OA2NET_API const char* oa2net_status_name(oa2net_status status);
/* Releases strings and arrays allocated by the library. */
OA2NET_API void oa2net_free(void* ptr);
OA2NET_API oa2net_status oa2net_sha256_file(const char* path, char out_hex[65]);

/* ---- one-mode networks ------------------------------------------------- */

OA2NET_API oa2net_status oa2net_network_create(const char* const* labels, size_t count, int directed,
                                               oa2net_network** out);
OA2NET_API oa2net_status oa2net_network_add_link(oa2net_network* net, size_t source, size_t target,
                                                 double weight);
OA2NET_API oa2net_status oa2net_network_read(const char* path, oa2net_network** out);
OA2NET_API oa2net_status oa2net_network_write(const oa2net_network* net, const char* path);
OA2NET_API void oa2net_network_free(oa2net_network* net);

OA2NET_API size_t oa2net_network_vertex_count(const oa2net_network* net);
OA2NET_API size_t oa2net_network_link_count(const oa2net_network* net);
OA2NET_API int oa2net_network_is_directed(const oa2net_network* net);
/* NULL when the node is out of range. */
OA2NET_API const char* oa2net_network_label(const oa2net_network* net, size_t node);
OA2NET_API oa2net_status oa2net_network_link(const oa2net_network* net, size_t index, size_t* source,
                                             size_t* target, double* weight);
OA2NET_API oa2net_status oa2net_weighted_degree(const oa2net_network* net, size_t node, const size_t* within,
                                                size_t within_count, double* out);
OA2NET_API oa2net_status oa2net_network_transform(const oa2net_network* net, oa2net_transform fn,
                                                  oa2net_network** out);

/* ---- cores and skeletons ---------------------------------------------- */

OA2NET_API oa2net_status oa2net_cores_compute(const oa2net_network* net, oa2net_cores** out);
OA2NET_API size_t oa2net_cores_count(const oa2net_cores* cores);
/* Level of a 1-based node; NaN when out of range. */
OA2NET_API double oa2net_cores_level(const oa2net_cores* cores, size_t node);
OA2NET_API oa2net_status oa2net_cores_write(const oa2net_cores* cores, const char* vec_path, const char* csv_path);
OA2NET_API void oa2net_cores_free(oa2net_cores* cores);

OA2NET_API oa2net_status oa2net_skeleton_k_neighbor(const oa2net_network* net, size_t k, oa2net_network** out);
OA2NET_API oa2net_status oa2net_link_cut(const oa2net_network* net, double threshold, oa2net_network** out);
/* Writes a skeleton; with merge_mutual, reciprocal arcs become *Edges. */
OA2NET_API oa2net_status oa2net_skeleton_write(const oa2net_network* skeleton, int merge_mutual, const char* path);
/* CSV `a,b,weight` of reciprocal arc pairs. */
OA2NET_API oa2net_status oa2net_mutual_pairs_write_csv(const oa2net_network* skeleton, const char* path);

/* ---- co-authorship matrices ------------------------------------------- */

OA2NET_API oa2net_status oa2net_comatrix_read_csv(const char* path, oa2net_comatrix** out);
OA2NET_API oa2net_status oa2net_comatrix_write_csv(const oa2net_comatrix* co, const char* path);
OA2NET_API oa2net_status oa2net_comatrix_from_works(const oa2net_works* works, oa2net_comatrix** out);
OA2NET_API oa2net_status oa2net_comatrix_to_network(const oa2net_comatrix* co, int include_loops,
                                                    oa2net_network** out);
OA2NET_API size_t oa2net_comatrix_size(const oa2net_comatrix* co);
/* Writes the two-letter code plus NUL into out[3]. */
OA2NET_API oa2net_status oa2net_comatrix_code(const oa2net_comatrix* co, size_t index, char out[3]);
OA2NET_API oa2net_status oa2net_comatrix_cell(const oa2net_comatrix* co, size_t row, size_t col, uint64_t* value,
                                              int* present);
OA2NET_API void oa2net_comatrix_free(oa2net_comatrix* co);

/* ---- index matrices ----------------------------------------------------- */

OA2NET_API oa2net_status oa2net_index_compute(const oa2net_comatrix* co, oa2net_index_kind kind,
                                              oa2net_matrix** out);
OA2NET_API oa2net_status oa2net_comatrix_transform(const oa2net_comatrix* co, oa2net_transform fn,
                                                   oa2net_matrix** out);
OA2NET_API size_t oa2net_matrix_size(const oa2net_matrix* m);
OA2NET_API const char* oa2net_matrix_label(const oa2net_matrix* m, size_t index);
OA2NET_API oa2net_status oa2net_matrix_cell(const oa2net_matrix* m, size_t row, size_t col, double* value,
                                            int* present);
OA2NET_API int oa2net_matrix_is_imputed(const oa2net_matrix* m, size_t row, size_t col);
OA2NET_API size_t oa2net_matrix_issue_count(const oa2net_matrix* m);
OA2NET_API const char* oa2net_matrix_issue(const oa2net_matrix* m, size_t index);
OA2NET_API oa2net_status oa2net_matrix_write_csv(const oa2net_matrix* m, const char* path);
OA2NET_API oa2net_status oa2net_matrix_write_imputed_csv(const oa2net_matrix* m, const char* path);
/* Copy with absent cells set to `value` (imputed B cells keep their 0). */
OA2NET_API oa2net_status oa2net_matrix_fill_absent(const oa2net_matrix* m, double value, oa2net_matrix** out);
/* Copy where imputed cells become absent again. */
OA2NET_API oa2net_status oa2net_matrix_drop_imputed(const oa2net_matrix* m, oa2net_matrix** out);
OA2NET_API void oa2net_matrix_free(oa2net_matrix* m);

/* ---- clustering ------------------------------------------------------- */

/* log2 of present counts, absent cells 0. */
OA2NET_API oa2net_status oa2net_prepare_for_clustering(const oa2net_comatrix* co, oa2net_matrix** out);
OA2NET_API oa2net_status oa2net_corrected_euclidean(const oa2net_matrix* m, oa2net_dissimilarity** out);
OA2NET_API double oa2net_dissimilarity_at(const oa2net_dissimilarity* d, size_t row, size_t col);
OA2NET_API void oa2net_dissimilarity_free(oa2net_dissimilarity* d);

OA2NET_API oa2net_status oa2net_agglomerate(const oa2net_dissimilarity* d, oa2net_linkage linkage,
                                            oa2net_dendrogram** out);
OA2NET_API size_t oa2net_dendrogram_leaf_count(const oa2net_dendrogram* dg);
OA2NET_API oa2net_status oa2net_dendrogram_merge(const oa2net_dendrogram* dg, size_t step, size_t* left,
                                                 size_t* right, double* height);
/* order must hold leaf_count entries (0-based leaf indices). */
OA2NET_API oa2net_status oa2net_dendrogram_leaf_order(const oa2net_dendrogram* dg, size_t* order, size_t count);
/* classes must hold leaf_count entries. */
OA2NET_API oa2net_status oa2net_dendrogram_cut(const oa2net_dendrogram* dg, size_t k, int64_t* classes,
                                               size_t count);
OA2NET_API oa2net_status oa2net_dendrogram_write_newick(const oa2net_dendrogram* dg, const char* path);
OA2NET_API oa2net_status oa2net_dendrogram_write_merges_csv(const oa2net_dendrogram* dg, const char* path);
OA2NET_API void oa2net_dendrogram_free(oa2net_dendrogram* dg);

/* classes may be NULL. */
OA2NET_API oa2net_status oa2net_ordered_matrix_export(const oa2net_matrix* m, const size_t* order, size_t count,
                                                      const int64_t* classes, const char* csv_path,
                                                      const char* meta_path);

/* ---- Pajek partitions and vectors ------------------------------------- */

OA2NET_API oa2net_status oa2net_partition_write(const int64_t* classes, size_t count, const char* path);
OA2NET_API oa2net_status oa2net_partition_read(const char* path, int64_t** classes, size_t* count);
OA2NET_API oa2net_status oa2net_vector_write(const double* values, size_t count, const char* path);
OA2NET_API oa2net_status oa2net_vector_read(const char* path, double** values, size_t* count);

/* Pajek project: the network plus named partitions and vectors, each array
 * holding vertex_count entries. */
OA2NET_API oa2net_status oa2net_project_write(const oa2net_network* net, const char* name,
                                              const char* const* partition_names, const int64_t* const* partitions,
                                              size_t partition_count, const char* const* vector_names,
                                              const double* const* vectors, size_t vector_count, const char* path);

/* ---- OpenAlex client -------------------------------------------------- */

typedef struct oa2net_client_config {
  const char* base_url;  /* NULL: https://api.openalex.org */
  const char* mailto;    /* may be NULL */
  double rate_limit;     /* requests per second, >= 1 */
  const char* cache_dir; /* may be NULL */
  int cache_only;        /* never touch the network */
  int max_attempts;
} oa2net_client_config;

OA2NET_API void oa2net_client_config_init(oa2net_client_config* config);
OA2NET_API oa2net_status oa2net_client_create(const oa2net_client_config* config, oa2net_client** out);
OA2NET_API void oa2net_client_free(oa2net_client* client);

/* per_page <= 0 omits the parameter; group_by, cursor, mailto, base_url may be NULL. */
OA2NET_API oa2net_status oa2net_build_query_url(const char* const* fields, const char* const* values, size_t count,
                                                const char* group_by, const char* cursor, int per_page,
                                                const char* mailto, const char* base_url, char** out);

/* limit < 0 means no limit. skipped may be NULL. */
OA2NET_API oa2net_status oa2net_works_fetch(oa2net_client* client, const char* const* fields,
                                            const char* const* values, size_t count, int64_t limit,
                                            oa2net_works** out, size_t* skipped);
OA2NET_API oa2net_status oa2net_works_fetch_list(oa2net_client* client, const oa2net_worklist* ids,
                                                 oa2net_works** out);
OA2NET_API oa2net_status oa2net_works_read_jsonl(const char* path, oa2net_works** out);
OA2NET_API oa2net_status oa2net_works_write_jsonl(const oa2net_works* works, const char* path);
OA2NET_API size_t oa2net_works_count(const oa2net_works* works);
OA2NET_API const char* oa2net_works_id(const oa2net_works* works, size_t index);
OA2NET_API void oa2net_works_free(oa2net_works* works);

/* ---- saturation ------------------------------------------------------- */

OA2NET_API oa2net_status oa2net_worklist_read(const char* path, oa2net_worklist** out);
OA2NET_API oa2net_status oa2net_worklist_write(const oa2net_worklist* list, const char* path);
OA2NET_API oa2net_status oa2net_worklist_join(const oa2net_worklist* old_list, const oa2net_worklist* added,
                                              oa2net_worklist** out);
OA2NET_API size_t oa2net_worklist_count(const oa2net_worklist* list);
OA2NET_API const char* oa2net_worklist_id(const oa2net_worklist* list, size_t index);
OA2NET_API void oa2net_worklist_free(oa2net_worklist* list);

/* One saturation step. table_csv (may be NULL) receives the expansion table
 * as `id,indegree` CSV; release with oa2net_free. */
OA2NET_API oa2net_status oa2net_saturation_step(oa2net_client* client, const oa2net_worklist* seed,
                                                size_t threshold, oa2net_worklist** out, int* converged,
                                                char** table_csv);

/* ---- collection ------------------------------------------------------- */

OA2NET_API oa2net_status oa2net_collection_write(const oa2net_works* works, int include_cited, const char* dir);

/* ---- yearly co-authorship series -------------------------------------- */

/* scope may be NULL (all known codes). */
OA2NET_API oa2net_status oa2net_coauth_series(oa2net_client* client, int year_from, int year_to,
                                              const char* const* scope, size_t scope_count, int international_only,
                                              oa2net_series** out);
OA2NET_API size_t oa2net_series_year_count(const oa2net_series* s);
OA2NET_API int oa2net_series_year(const oa2net_series* s, size_t index);
OA2NET_API oa2net_status oa2net_series_matrix(const oa2net_series* s, int year, oa2net_comatrix** out);
OA2NET_API size_t oa2net_series_failure_count(const oa2net_series* s);
/* kind receives the status the failed year would have returned. */
OA2NET_API oa2net_status oa2net_series_failure(const oa2net_series* s, size_t index, int* year,
                                               oa2net_status* kind, const char** message);
OA2NET_API size_t oa2net_series_warning_count(const oa2net_series* s);
OA2NET_API const char* oa2net_series_warning(const oa2net_series* s, size_t index);
OA2NET_API size_t oa2net_series_dropped_codes(const oa2net_series* s);
OA2NET_API size_t oa2net_series_truncated_responses(const oa2net_series* s);
OA2NET_API void oa2net_series_free(oa2net_series* s);

#ifdef __cplusplus
}
#endif

#endif /* OA2NET_H */

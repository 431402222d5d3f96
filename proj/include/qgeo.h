/* qgeo — C interface to the quasi-geodesic classification library.
 *
 * All objects are opaque handles created and destroyed by this API. Functions
 * return QGEO_OK on success; on failure qgeo_last_error() describes what went
 * wrong (thread-local). Strings returned through char** are heap-allocated
 * and must be released with qgeo_string_free().
 */
#ifndef QGEO_H
#define QGEO_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qgeo_status {
    QGEO_OK = 0,
    QGEO_ERROR_INVALID_ARGUMENT = 1,
    QGEO_ERROR_PRECONDITION = 2,
    QGEO_ERROR_BUDGET = 3,
    QGEO_ERROR_PARSE = 4,
    QGEO_ERROR_IO = 5,
    QGEO_ERROR_INTERNAL = 6
} qgeo_status;

typedef struct qgeo_graph qgeo_graph;
typedef struct qgeo_path qgeo_path;

const char* qgeo_version(void);
const char* qgeo_status_name(qgeo_status status);
/* Message for the most recent failure on this thread; empty if none. */
const char* qgeo_last_error(void);

void qgeo_string_free(char* s);
void qgeo_graph_free(qgeo_graph* g);
void qgeo_path_free(qgeo_path* p);

/* --- graphs --------------------------------------------------------------- */

qgeo_status qgeo_graph_from_json(const char* text, qgeo_graph** out);
qgeo_status qgeo_graph_load(const char* file, qgeo_graph** out);
qgeo_status qgeo_graph_to_json(const qgeo_graph* g, char** out_text);
qgeo_status qgeo_graph_save(const qgeo_graph* g, const char* file);

uint64_t qgeo_graph_vertex_count(const qgeo_graph* g);
uint64_t qgeo_graph_edge_count(const qgeo_graph* g);
double qgeo_graph_scale(const qgeo_graph* g);
qgeo_status qgeo_graph_family(const qgeo_graph* g, char** out_text);

/* --- zoo ------------------------------------------------------------------ */

/* JSON array of {name, doc, params:[{name, default, doc}]}. */
qgeo_status qgeo_zoo_list(char** out_json);

/* params_json: object of numeric parameters, e.g. {"halfwidth":120,"h":1}.
 * Any of the three outputs may be NULL when not wanted. expected_json
 * describes the classification the construction is known to exhibit. */
qgeo_status qgeo_zoo_build(const char* family, const char* params_json,
                           qgeo_graph** out_graph, qgeo_path** out_base_path,
                           char** out_expected_json);

/* --- paths ------------------------------------------------------------------ */

qgeo_status qgeo_path_from_json(const qgeo_graph* g, const char* text, qgeo_path** out);
qgeo_status qgeo_path_load(const qgeo_graph* g, const char* file, qgeo_path** out);
qgeo_status qgeo_path_to_json(const qgeo_graph* g, const qgeo_path* p, char** out_text);
double qgeo_path_length(const qgeo_path* p);
uint64_t qgeo_path_vertex_count(const qgeo_path* p);

/* --- metric operations -------------------------------------------------------- */

qgeo_status qgeo_shortest_distance(const qgeo_graph* g, uint32_t u, uint32_t v, double* out);
qgeo_status qgeo_shortest_path(const qgeo_graph* g, uint32_t u, uint32_t v, qgeo_path** out);
/* *out_reachable is 0 when the puncture disconnects u from v (then *out is
 * unset); 1 otherwise. */
qgeo_status qgeo_punctured_distance(const qgeo_graph* g, uint32_t u, uint32_t v,
                                    uint32_t center, double radius,
                                    int* out_reachable, double* out);

/* --- suites ------------------------------------------------------------------- */

/* options_json (all optional): {seed, triangle_samples, interior_samples,
 * convexity_pairs, t_samples, projection_pairs, uniqueness_pairs,
 * run_uniqueness, tol_profile}. Projects onto `base` when given. Returns a
 * {"kind":"check_suite", ...} report. */
qgeo_status qgeo_check_cat0(const qgeo_graph* g, const qgeo_path* base,
                            const char* options_json, char** out_report_json);

/* options_json: {seed, which:["contract","diverge","morse","dissect"],
 * b, ladder, budget, radii, K, L, scales, restarts, dissect_r}. Omitting
 * "which" runs every classifier with defaults derived from the graph family.
 * Returns a {"kind":"classify_bundle", ...} report. */
qgeo_status qgeo_classify(const qgeo_graph* g, const qgeo_path* path,
                          const char* options_json, char** out_report_json);

/* Full scenario: builds the configured zoo entries, runs checks and
 * classifiers, writes the artifact set under the config's out_dir and returns
 * the summary JSON (also written to disk). config_json must carry "seed" and
 * "out_dir". Pass NULL to run the built-in desk-scale defaults into
 * "qgeo_run". */
qgeo_status qgeo_run_scenario(const char* config_json, char** out_summary_json);

/* CSV rendering of any report JSON emitted by this library. */
qgeo_status qgeo_render_csv(const char* report_json, char** out_csv);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* QGEO_H */

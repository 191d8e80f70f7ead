#ifndef CUBEDOM_H
#define CUBEDOM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CubedomStatus {
  CUBEDOM_STATUS_OK = 0,
  CUBEDOM_STATUS_INVALID_PARAMETERS = 1,
  CUBEDOM_STATUS_INVALID_VERTEX = 2,
  CUBEDOM_STATUS_OUT_OF_RANGE = 3,
  CUBEDOM_STATUS_INVALID_PARTS = 4,
  CUBEDOM_STATUS_INVALID_INPUT = 5,
  CUBEDOM_STATUS_OVERFLOW = 6,
  CUBEDOM_STATUS_TOO_LARGE = 7,
  CUBEDOM_STATUS_BUDGET_EXCEEDED = 8,
  CUBEDOM_STATUS_INTERNAL = 9,
  CUBEDOM_STATUS_NULL_POINTER = 10,
  CUBEDOM_STATUS_PANIC = 11,
} CubedomStatus;

typedef enum CubedomVerdict {
  CUBEDOM_VERDICT_VERIFIED = 0,
  CUBEDOM_VERDICT_REFUTED = 1,
  CUBEDOM_VERDICT_INCONCLUSIVE = 2,
} CubedomVerdict;

/**
 * Opaque certificate handle.
 */
typedef struct CubedomCertificate CubedomCertificate;

/**
 * Opaque solve report handle.
 */
typedef struct CubedomReport CubedomReport;

typedef struct CubedomGraphStats {
  uint64_t vertex_count;
  uint64_t edge_count;
  uint64_t upper_degree;
  uint64_t lower_degree;
} CubedomGraphStats;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next call into the library from the same thread.
 */
const char *cubedom_last_error_message(void);

void cubedom_string_free(char *s);

enum CubedomStatus cubedom_binomial(uint32_t n, uint32_t k, uint64_t *out);

enum CubedomStatus cubedom_graph_stats(uint32_t n,
                                       uint32_t k,
                                       uint32_t l,
                                       struct CubedomGraphStats *out);

enum CubedomStatus cubedom_counting_lower_bound(uint32_t n, uint32_t k, uint32_t l, uint64_t *out);

enum CubedomStatus cubedom_conjecture_main_term(uint32_t n, uint32_t k, double *out);

enum CubedomStatus cubedom_theorem1_construct(uint32_t n,
                                              uint32_t k,
                                              struct CubedomCertificate **out);

enum CubedomStatus cubedom_theorem2_construct(uint32_t n, struct CubedomCertificate **out);

/**
 * Parses the certificate JSON format written by `cubedom construct`.
 */
enum CubedomStatus cubedom_certificate_from_json(const char *json, struct CubedomCertificate **out);

enum CubedomStatus cubedom_certificate_to_json(const struct CubedomCertificate *cert, char **out);

/**
 * Number of members; 0 for a null handle.
 */
size_t cubedom_certificate_size(const struct CubedomCertificate *cert);

/**
 * Enumerative check. `witness_json`, when non-null, receives the first
 * undominated vertex as JSON, or null when verified.
 */
enum CubedomStatus cubedom_certificate_verify(const struct CubedomCertificate *cert,
                                              bool *verified,
                                              char **witness_json);

enum CubedomStatus cubedom_certificate_verify_structural(const struct CubedomCertificate *cert,
                                                         enum CubedomVerdict *verdict);

void cubedom_certificate_free(struct CubedomCertificate *cert);

/**
 * Branch and bound. Running out of `node_budget` is not an error: the
 * report is returned with `proven_optimal == false`.
 */
enum CubedomStatus cubedom_exact(uint32_t n,
                                 uint32_t k,
                                 uint32_t l,
                                 uint64_t node_budget,
                                 uint32_t workers,
                                 struct CubedomReport **out);

enum CubedomStatus cubedom_greedy(uint32_t n, uint32_t k, uint32_t l, struct CubedomReport **out);

enum CubedomStatus cubedom_brute_force(uint32_t n,
                                       uint32_t k,
                                       uint32_t l,
                                       uint64_t max_size,
                                       struct CubedomReport **out);

enum CubedomStatus cubedom_report_value(const struct CubedomReport *r, uint64_t *out);

enum CubedomStatus cubedom_report_lower_bound(const struct CubedomReport *r, uint64_t *out);

enum CubedomStatus cubedom_report_proven_optimal(const struct CubedomReport *r, bool *out);

enum CubedomStatus cubedom_report_nodes_explored(const struct CubedomReport *r, uint64_t *out);

/**
 * Copies the witness into a new certificate handle.
 */
enum CubedomStatus cubedom_report_witness(const struct CubedomReport *r,
                                          struct CubedomCertificate **out);

enum CubedomStatus cubedom_report_to_json(const struct CubedomReport *r, char **out);

void cubedom_report_free(struct CubedomReport *r);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* CUBEDOM_H */

/* C interface for the strata library. Generated by cbindgen; do not edit. */

#pragma once

/* Generated with cbindgen:0.29.4 */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum {
  /**
   * Success; out-parameters are filled in.
   */
  STRATA_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  STRATA_STATUS_NULL_POINTER = 1,
  /**
   * Text or JSON input failed to parse.
   */
  STRATA_STATUS_PARSE_ERROR = 2,
  /**
   * Structurally valid input rejected by the operation.
   */
  STRATA_STATUS_DOMAIN_ERROR = 3,
  /**
   * Classification halted: a simple factor has a non-rational center.
   */
  STRATA_STATUS_NOT_SPLIT = 4,
  /**
   * An internal invariant failed; the operation was aborted safely.
   */
  STRATA_STATUS_PANIC = 5,
} StrataStatus;

/**
 * An explicitly enumerated finite rational matrix group.
 */
typedef struct StrataGroup StrataGroup;

/**
 * Enumerated refinement poset of all types of one total dimension.
 */
typedef struct StrataPoset StrataPoset;

/**
 * A tuple of exact rational square matrices.
 */
typedef struct StrataTuple StrataTuple;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static string; do not free.
 */
const char *strata_version(void);

/**
 * Release a string produced by any other call.
 */
void strata_string_free(char *s);

/**
 * Build the refinement poset for total dimension `n`.
 */
StrataStatus strata_poset_new(uint32_t n, StrataPoset **out);

void strata_poset_free(StrataPoset *p);

/**
 * Number of types in the poset.
 */
StrataStatus strata_poset_len(const StrataPoset *p, size_t *out);

/**
 * Canonical text label of the type at a listing index.
 */
StrataStatus strata_poset_element(const StrataPoset *p, size_t index, char **out);

/**
 * Whether `fine` lies below or equal to `coarse` in the refinement order.
 */
StrataStatus strata_poset_leq(const StrataPoset *p,
                              const char *fine,
                              const char *coarse,
                              bool *out);

/**
 * Cover diagram in DOT syntax.
 */
StrataStatus strata_poset_dot(const StrataPoset *p, char **out);

/**
 * Elements, covers, and reachability as a JSON document.
 */
StrataStatus strata_poset_json(const StrataPoset *p, char **out);

/**
 * Certify that fixing every type with a (1,1) pair forces the identity
 * automorphism. True on success, false with a concrete violating
 * automorphism otherwise; DomainError when the search was inconclusive.
 */
StrataStatus strata_poset_rigidity(const StrataPoset *p, bool *out);

/**
 * Dual type: swap dimension and multiplicity in every pair.
 */
StrataStatus strata_type_dual(const char *type_text, char **out);

/**
 * Stratum dimension of a type inside the l-shifted quotient of r-tuples
 * of matrices of the type's total dimension. Requires r >= 2.
 */
StrataStatus strata_type_stratum_dim(const char *type_text, uint32_t l, uint32_t r, uint64_t *out);

/**
 * Parse a tuple document {"n":..,"r":..,"matrices":[..]} with integer or
 * "p/q" string entries.
 */
StrataStatus strata_tuple_from_json(const char *json, StrataTuple **out);

void strata_tuple_free(StrataTuple *t);

StrataStatus strata_tuple_n(const StrataTuple *t, size_t *out);

StrataStatus strata_tuple_r(const StrataTuple *t, size_t *out);

/**
 * Representation type of the tuple's semisimplification, as text.
 */
StrataStatus strata_tuple_classify(const StrataTuple *t, char **out);

/**
 * Full classification report as JSON: type, algebra and radical dimension,
 * filtration layer dimensions, and per-block (dim, mult, field_degree).
 */
StrataStatus strata_tuple_classify_json(const StrataTuple *t, char **out);

/**
 * Whether the tuple generates a semisimple algebra (closed orbit).
 */
StrataStatus strata_tuple_is_semisimple(const StrataTuple *t, bool *out);

/**
 * The five invariant coordinates of a pair of 2x2 matrices, as one
 * space-separated string of exact rationals.
 */
StrataStatus strata_tuple_invariants2x2(const StrataTuple *t, char **out);

/**
 * Enumerate the group generated by {"n":..,"generators":[..]}.
 */
StrataStatus strata_group_from_json(const char *json, StrataGroup **out);

/**
 * Left regular representation of a multiplication table {"table":[..]}.
 */
StrataStatus strata_group_regular_from_json(const char *json, StrataGroup **out);

void strata_group_free(StrataGroup *g);

StrataStatus strata_group_order(const StrataGroup *g, uint64_t *out);

/**
 * Number of elements fixing a hyperplane pointwise.
 */
StrataStatus strata_group_pseudo_reflection_count(const StrataGroup *g, uint64_t *out);

/**
 * Whether fixed-space dimensions never drop by exactly one across a normal
 * inclusion of subgroups.
 */
StrataStatus strata_group_codim2(const StrataGroup *g, bool *out);

/**
 * One-torus stability: `weights` holds `len` integers and `coords` holds
 * `len` comma-separated rationals.
 */
StrataStatus strata_hm_stable(const int64_t *weights, size_t len, const char *coords, bool *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

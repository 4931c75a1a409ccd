/* tropflow C API — see README for usage. */

#pragma once

/* Generated with cbindgen:0.29.4 */

/* Generated by cbindgen from crates/ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of an API call.
 */
typedef enum TropflowStatus {
  TROPFLOW_STATUS_OK = 0,
  TROPFLOW_STATUS_INVALID_ARGUMENT = 1,
  /**
   * The system has no consistent trajectory.
   */
  TROPFLOW_STATUS_INFEASIBLE = 2,
  TROPFLOW_STATUS_PARSE_ERROR = 3,
  TROPFLOW_STATUS_BUDGET_EXCEEDED = 4,
  /**
   * Feasible, but the last event is unreachable from the first; the
   * makespan output is set to negative infinity.
   */
  TROPFLOW_STATUS_DECOUPLED = 5,
  TROPFLOW_STATUS_PANIC = 6,
} TropflowStatus;

/**
 * Solver selection.
 */
typedef enum TropflowMethod {
  TROPFLOW_METHOD_DENSE = 0,
  TROPFLOW_METHOD_BLOCK = 1,
  TROPFLOW_METHOD_FAST = 2,
  TROPFLOW_METHOD_ORACLE = 3,
} TropflowMethod;

/**
 * Opaque raw-instance handle.
 */
typedef struct TropflowInstance TropflowInstance;

/**
 * Opaque shop configuration handle.
 */
typedef struct TropflowShop TropflowShop;

/**
 * Message for the last non-OK status on this thread. Never null; the
 * pointer stays valid until the next tropflow call on the same thread.
 */
const char *tropflow_last_error(void);

/**
 * Parse a shop document (optionally overriding quantities with a demand
 * document) into a new handle.
 *
 * # Safety
 * `shop_json` must be a NUL-terminated string; `demand_json` may be null;
 * `out` must point to writable handle storage.
 */
enum TropflowStatus tropflow_shop_parse(const char *shop_json,
                                        const char *demand_json,
                                        struct TropflowShop **out);

/**
 * # Safety
 * `shop` must come from [`tropflow_shop_parse`] and not be freed twice.
 */
void tropflow_shop_free(struct TropflowShop *shop);

/**
 * Number of product types (including zero-demand types).
 *
 * # Safety
 * `shop` must be a live handle.
 */
uint32_t tropflow_shop_type_count(const struct TropflowShop *shop);

/**
 * Total products across all types.
 *
 * # Safety
 * `shop` must be a live handle.
 */
uint32_t tropflow_shop_total_quantity(const struct TropflowShop *shop);

/**
 * Makespan of one schedule (1-based type ids, one per active type).
 *
 * # Safety
 * `shop` must be a live handle, `schedule` must point to `schedule_len`
 * ids, `out_makespan` must be writable.
 */
enum TropflowStatus tropflow_shop_makespan(const struct TropflowShop *shop,
                                           const uint32_t *schedule,
                                           size_t schedule_len,
                                           enum TropflowMethod method,
                                           double *out_makespan);

/**
 * Exhaustively search the schedules of the active types.
 *
 * `budget_seconds <= 0` means no budget. On success `out_schedule`
 * (capacity `tropflow_shop_type_count` entries) receives the optimal
 * order as 1-based ids, `out_schedule_len` its length, and
 * `out_makespan` the optimal makespan.
 *
 * # Safety
 * `shop` must be a live handle and the out pointers writable with the
 * stated capacity.
 */
enum TropflowStatus tropflow_shop_optimize(const struct TropflowShop *shop,
                                           enum TropflowMethod method,
                                           uint32_t max_types,
                                           double budget_seconds,
                                           uint32_t *out_schedule,
                                           size_t *out_schedule_len,
                                           double *out_makespan);

/**
 * Parse a raw instance document (`{n, modes, sequence}`).
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` writable.
 */
enum TropflowStatus tropflow_instance_parse(const char *json, struct TropflowInstance **out);

/**
 * # Safety
 * `instance` must come from [`tropflow_instance_parse`] and not be
 * freed twice.
 */
void tropflow_instance_free(struct TropflowInstance *instance);

/**
 * Makespan of a raw instance. The fast method needs a shop structure
 * and is rejected here.
 *
 * # Safety
 * `instance` must be a live handle and `out_makespan` writable.
 */
enum TropflowStatus tropflow_instance_makespan(const struct TropflowInstance *instance,
                                               enum TropflowMethod method,
                                               double *out_makespan);

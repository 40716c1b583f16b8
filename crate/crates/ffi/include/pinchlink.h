#ifndef PINCHLINK_H
#define PINCHLINK_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum PlStatus {
  PL_STATUS_OK = 0,
  PL_STATUS_NULL_POINTER = 1,
  PL_STATUS_INVALID_ARGUMENT = 2,
  PL_STATUS_DOMAIN = 3,
  PL_STATUS_PARSE = 4,
  PL_STATUS_IO = 5,
  PL_STATUS_BUFFER_TOO_SMALL = 6,
  PL_STATUS_OUT_OF_RANGE = 7,
  PL_STATUS_PANIC = 99,
} PlStatus;

typedef enum PlSweepVariable {
  /**
   * SNR target, values in dB.
   */
  PL_SWEEP_VARIABLE_SNR_TARGET_DB = 0,
  /**
   * BS–relay distance, values in metres.
   */
  PL_SWEEP_VARIABLE_BS_RELAY_DISTANCE_M = 1,
} PlSweepVariable;

typedef enum PlScheme {
  PL_SCHEME_PROPOSED = 0,
  PL_SCHEME_BENCHMARK1 = 1,
  PL_SCHEME_BENCHMARK2 = 2,
} PlScheme;

/**
 * Scenario parameters for the relay link and the direct-link comparison.
 */
typedef struct PlConfig PlConfig;

/**
 * Result of a sweep.
 */
typedef struct PlSweep PlSweep;

typedef struct PlPowerSolution {
  double x_pin_m;
  double p1_w;
  double beta_sq;
  double p2_w;
  double j_star_w;
  double total_power_w;
  double g1_sq;
  double g2_sq;
  double sigma_r_sq_w;
  double sigma_ue_sq_w;
  bool feasible;
} PlPowerSolution;

typedef struct PlDirectLink {
  double distance_m;
  double channel_gain;
  double transmit_power_w;
  double total_power_w;
} PlDirectLink;

typedef struct PlVerifyReport {
  double x_pin_m;
  double x_grid_m;
  double position_gap_m;
  double j_star_w;
  double j_oracle_w;
  double power_rel_gap;
  bool position_passed;
  bool power_passed;
} PlVerifyReport;

typedef struct PlSchemeMean {
  double variable_value;
  double mean_total_power_w;
  double mean_bs_power_w;
  uint64_t n_samples;
} PlSchemeMean;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *pl_version(void);

/**
 * Static description of a status code.
 */
const char *pl_status_str(enum PlStatus status);

/**
 * Message for the most recent failure on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *pl_last_error_message(void);

/**
 * New configuration with default parameters. Never returns NULL.
 */
struct PlConfig *pl_config_new(void);

/**
 * Independent copy of `cfg`, or NULL if `cfg` is NULL.
 */
struct PlConfig *pl_config_clone(const struct PlConfig *cfg);

void pl_config_free(struct PlConfig *cfg);

/**
 * Set one parameter. Keys are those of the configuration file format plus
 * the direct-link keys `b1_num_elements`, `b1_element_gain_dbi`,
 * `b1_path_loss_exponent`, `b1_shadowing_std_db`,
 * `b1_rf_chain_power_w_per_element`, `b1_reference_distance_m`,
 * `b1_array_gain` (`n` or `n2`) and `b1_distance_m` (`feed` or a length).
 * Values accept unit suffixes. The configuration is unchanged on failure.
 */
enum PlStatus pl_config_set(struct PlConfig *cfg, const char *key, const char *value);

/**
 * Apply a `key = value` configuration file on top of the current values.
 */
enum PlStatus pl_config_load(struct PlConfig *cfg, const char *path);

/**
 * Write the relay-link configuration in file format into `buf` (capacity
 * `len` bytes, NUL included). `*needed` receives the required capacity even
 * when the buffer is too small; `buf` may be NULL when `len` is 0.
 */
enum PlStatus pl_config_dump(const struct PlConfig *cfg, char *buf, size_t len, size_t *needed);

/**
 * Optimal pinching-antenna position and power allocation for a user at
 * (`x_ue_m`, `y_ue_m`).
 */
enum PlStatus pl_solve(const struct PlConfig *cfg,
                       double x_ue_m,
                       double y_ue_m,
                       struct PlPowerSolution *out);

/**
 * Same relay link with the antenna fixed at the feed point.
 */
enum PlStatus pl_benchmark2(const struct PlConfig *cfg,
                            double x_ue_m,
                            double y_ue_m,
                            struct PlPowerSolution *out);

/**
 * Direct BS–user link power for one shadowing realisation (dB of extra loss).
 */
enum PlStatus pl_benchmark1(const struct PlConfig *cfg,
                            double x_ue_m,
                            double y_ue_m,
                            double shadowing_db,
                            struct PlDirectLink *out);

/**
 * Check the closed-form solution for one user against the brute-force
 * oracles with the default tolerances. The verdict is in the report; the
 * status only signals whether the check could run.
 */
enum PlStatus pl_verify(const struct PlConfig *cfg,
                        double x_ue_m,
                        double y_ue_m,
                        struct PlVerifyReport *out);

/**
 * Run a sweep over `n_values` strictly increasing values with all three
 * schemes. `threads` = 0 uses every core; the result does not depend on it.
 * On success `*out` owns a new handle to release with `pl_sweep_free`.
 */
enum PlStatus pl_sweep_run(const struct PlConfig *cfg,
                           enum PlSweepVariable variable,
                           const double *values,
                           size_t n_values,
                           uint64_t ue_samples,
                           uint64_t seed,
                           uint32_t threads,
                           struct PlSweep **out);

void pl_sweep_free(struct PlSweep *sweep);

/**
 * Number of sweep values in the result, 0 for NULL.
 */
size_t pl_sweep_len(const struct PlSweep *sweep);

/**
 * Mean powers of `scheme` at sweep value number `index`.
 */
enum PlStatus pl_sweep_get(const struct PlSweep *sweep,
                           size_t index,
                           enum PlScheme scheme,
                           struct PlSchemeMean *out);

/**
 * Write the sweep as CSV.
 */
enum PlStatus pl_sweep_write_csv(const struct PlSweep *sweep, const char *path);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PINCHLINK_H */

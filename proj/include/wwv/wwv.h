#ifndef WWV_WWV_H
#define WWV_WWV_H

#include <stddef.h>
#include <stdint.h>

#if defined(WWV_BUILDING_LIBRARY)
#define WWV_API __attribute__((visibility("default")))
#else
#define WWV_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wwv_status {
  WWV_OK = 0,
  WWV_ERR_INVALID_ARGUMENT = 1,
  WWV_ERR_NON_FINITE = 2,
  WWV_ERR_CHORD_ARC = 3,
  WWV_ERR_NEAR_BOUNDARY = 4,
  WWV_ERR_SINGULAR_SYSTEM = 5,
  WWV_ERR_COLLISION = 6,
  WWV_ERR_NOT_CONVERGED = 7,
  WWV_ERR_IO = 8,
  WWV_ERR_CONFIG = 9,
  /* the run stopped early; see wwv_run_summary.halt */
  WWV_HALTED = 10,
  WWV_ERR_INTERNAL = 99
} wwv_status;

/* Message of the last failing call on this thread; never NULL. */
WWV_API const char* wwv_last_error(void);
WWV_API const char* wwv_version(void);

typedef struct wwv_scenario wwv_scenario;

WWV_API wwv_status wwv_scenario_preset(const char* name, wwv_scenario** out);
WWV_API wwv_status wwv_scenario_from_file(const char* path, wwv_scenario** out);
WWV_API wwv_status wwv_scenario_from_json(const char* text, wwv_scenario** out);
WWV_API void wwv_scenario_free(wwv_scenario* s);
WWV_API wwv_status wwv_scenario_set_seed(wwv_scenario* s, uint64_t seed);
/* Canonical JSON; the string lives until the next call on the same handle. */
WWV_API const char* wwv_scenario_json(const wwv_scenario* s);
/* Number of presets, and the name at index i (NULL when out of range). */
WWV_API size_t wwv_preset_count(void);
WWV_API const char* wwv_preset_name(size_t i);

typedef struct wwv_run_summary {
  /* halt status name, "ok" on success */
  char halt[40];
  char message[256];
  double t_final;
  int64_t steps;
  double min_energy;
  double max_symmetry_residual;
} wwv_run_summary;

/* out_dir may be NULL to keep results in memory only; until < 0 means t_end. */
WWV_API wwv_status wwv_simulate(const wwv_scenario* s, const char* out_dir, double until, wwv_run_summary* summary);
WWV_API wwv_status wwv_resume(const char* checkpoint, const char* out_dir, double until, wwv_run_summary* summary);
/* Writes the sweep CSV; row count returned in rows (may be NULL). */
WWV_API wwv_status wwv_sweep_taylor(const wwv_scenario* s, const char* csv_path, size_t* rows);

typedef struct wwv_criterion {
  int id;
  const char* key;
  int pass;
  const char* detail;
  double seconds;
} wwv_criterion;

typedef void (*wwv_criterion_cb)(const wwv_criterion* result, void* user);

/* failed receives the number of failing criteria. Unknown selector: WWV_ERR_CONFIG. */
WWV_API wwv_status wwv_verify(const char* selector, uint64_t seed, wwv_criterion_cb cb, void* user, int* failed);

/* Flat-interface closed forms. classification: 0 strong, 1 degenerate, 2 failed. */
WWV_API wwv_status wwv_a1_single_vortex(double lambda, double y, double* value, int* classification);
WWV_API wwv_status wwv_a1_pair(double lambda, double x, double y, double* value);

/* A stepping session over one scenario. */
typedef struct wwv_session wwv_session;

WWV_API wwv_status wwv_session_create(const wwv_scenario* s, wwv_session** out);
WWV_API void wwv_session_free(wwv_session* session);
WWV_API wwv_status wwv_session_step(wwv_session* session, int count);
WWV_API double wwv_session_time(const wwv_session* session);
WWV_API size_t wwv_session_size(const wwv_session* session);
/* Copies size() samples of zeta and u as interleaved (re, im) pairs; either may be NULL. */
WWV_API wwv_status wwv_session_surface(const wwv_session* session, double* zeta, double* u);
WWV_API size_t wwv_session_vortex_count(const wwv_session* session);
WWV_API wwv_status wwv_session_vortices(const wwv_session* session, double* positions, double* strengths);
/* Lagrangian energy, Taylor margin and symmetry residual of the current state. */
WWV_API wwv_status wwv_session_diagnostics(const wwv_session* session, double* energy, double* taylor_margin,
                                           double* symmetry_residual);

#ifdef __cplusplus
}
#endif

#endif

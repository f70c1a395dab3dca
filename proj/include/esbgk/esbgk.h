#ifndef ESBGK_ESBGK_H
#define ESBGK_ESBGK_H

#include <stddef.h>

#if defined(ESBGK_BUILDING_LIBRARY)
#define ESBGK_API __attribute__((visibility("default")))
#else
#define ESBGK_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum esbgk_status {
  ESBGK_OK = 0,
  ESBGK_INVALID_ARGUMENT = 1,
  ESBGK_CONFIG_ERROR = 2,
  ESBGK_NUMERICAL_ERROR = 3,
  ESBGK_IO_ERROR = 4,
  ESBGK_INTERNAL_ERROR = 5
} esbgk_status;

typedef struct esbgk_config esbgk_config;
typedef struct esbgk_simulation esbgk_simulation;

/* Moments of one spatial cell. u has 3 slots; only the first dim_v are used. */
typedef struct esbgk_cell_moments {
  double rho;
  double u[3];
  double T;
  int valid;
} esbgk_cell_moments;

typedef struct esbgk_info {
  int dim_x;
  int dim_v;
  int n_x[2];
  int n_v;
  double v_max;
  double dt;
  double t;
  double t_end;
  size_t steps;
  size_t n_cells;
  double mass;
  double momentum[3];
  double energy;
  double oscillation;
  double eq_distance;
  double rate_inf;
  /* step and flat cell index of the last numerical failure, or (size_t)-1 */
  size_t failed_step;
  size_t failed_cell;
} esbgk_info;

ESBGK_API const char* esbgk_version(void);
/* Message of the last failed call on this thread; never NULL. */
ESBGK_API const char* esbgk_last_error(void);

/* A config starts from the preset named by `scenario`. */
ESBGK_API esbgk_status esbgk_config_create(const char* scenario, esbgk_config** out);
ESBGK_API esbgk_status esbgk_config_set(esbgk_config* cfg, const char* key, const char* value);
ESBGK_API esbgk_status esbgk_config_load_file(esbgk_config* cfg, const char* path);
/* Preset + file (may be NULL) + n key/value overrides; the scenario comes
   from the overrides or the file. The result is validated. */
ESBGK_API esbgk_status esbgk_config_from_sources(const char* path, size_t n,
                                                 const char* const* keys,
                                                 const char* const* values,
                                                 esbgk_config** out);
ESBGK_API esbgk_status esbgk_config_validate(esbgk_config* cfg);
/* Writes the effective configuration as key=value lines. On ESBGK_OK or when
   the buffer is too small, *needed holds the full length including the NUL. */
ESBGK_API esbgk_status esbgk_config_echo(const esbgk_config* cfg, char* buffer, size_t size,
                                         size_t* needed);
ESBGK_API void esbgk_config_destroy(esbgk_config* cfg);

/* Validates the config and sets up the initial state. */
ESBGK_API esbgk_status esbgk_simulation_create(const esbgk_config* cfg, esbgk_simulation** out);
/* Advances n CFL steps. */
ESBGK_API esbgk_status esbgk_simulation_step(esbgk_simulation* sim, size_t n);
/* Runs a fresh simulation of the config to t_end and writes all outputs. */
ESBGK_API esbgk_status esbgk_run(const esbgk_config* cfg, size_t* steps);
ESBGK_API esbgk_status esbgk_simulation_time(const esbgk_simulation* sim, double* t);
ESBGK_API esbgk_status esbgk_simulation_info(const esbgk_simulation* sim, esbgk_info* info);
/* Copies min(n, n_cells) cell moments into out. */
ESBGK_API esbgk_status esbgk_simulation_moments(const esbgk_simulation* sim,
                                                esbgk_cell_moments* out, size_t n);
ESBGK_API void esbgk_simulation_destroy(esbgk_simulation* sim);

#ifdef __cplusplus
}
#endif

#endif

#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "esbgk/esbgk.h"

static int failures = 0;

#define EXPECT(cond)                                              \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "%s:%d: check failed: %s\n", __FILE__,      \
              __LINE__, #cond);                                   \
      ++failures;                                                 \
    }                                                             \
  } while (0)

static void test_config(void) {
  esbgk_config* cfg = NULL;
  EXPECT(esbgk_config_create("riemann", &cfg) == ESBGK_OK);
  EXPECT(esbgk_config_set(cfg, "eps", "1e-3") == ESBGK_OK);
  EXPECT(esbgk_config_set(cfg, "nonsense", "1") == ESBGK_CONFIG_ERROR);
  EXPECT(strstr(esbgk_last_error(), "nonsense") != NULL);
  EXPECT(esbgk_config_set(cfg, "nu", "1.0") == ESBGK_OK);
  EXPECT(esbgk_config_validate(cfg) == ESBGK_CONFIG_ERROR);
  EXPECT(strstr(esbgk_last_error(), "nu") != NULL);
  EXPECT(esbgk_config_set(cfg, "nu", "0.5") == ESBGK_OK);
  EXPECT(esbgk_config_validate(cfg) == ESBGK_OK);

  size_t needed = 0;
  EXPECT(esbgk_config_echo(cfg, NULL, 0, &needed) == ESBGK_INVALID_ARGUMENT);
  EXPECT(needed > 10);
  char* buf = malloc(needed);
  EXPECT(esbgk_config_echo(cfg, buf, needed, &needed) == ESBGK_OK);
  EXPECT(strstr(buf, "eps=0.001") != NULL);
  EXPECT(strstr(buf, "snapshots=0.1,0.2,0.3") != NULL);
  free(buf);
  esbgk_config_destroy(cfg);

  EXPECT(esbgk_config_create("nowhere", &cfg) == ESBGK_CONFIG_ERROR);
  EXPECT(cfg == NULL);
  EXPECT(esbgk_config_create(NULL, &cfg) == ESBGK_INVALID_ARGUMENT);

  const char* keys[] = {"scenario", "eps", "nx", "nv"};
  const char* vals[] = {"custom", "0.1", "10", "8"};
  EXPECT(esbgk_config_from_sources(NULL, 4, keys, vals, &cfg) == ESBGK_CONFIG_ERROR);
  EXPECT(strstr(esbgk_last_error(), "t_end") != NULL);
  EXPECT(esbgk_config_load_file(NULL, "x") == ESBGK_INVALID_ARGUMENT);
}

static void test_simulation(const char* out_dir) {
  const char* keys[] = {"scenario", "nx", "nv", "t_end", "out"};
  const char* vals[] = {"smooth_periodic", "30", "12", "0.1", out_dir};
  esbgk_config* cfg = NULL;
  EXPECT(esbgk_config_from_sources(NULL, 5, keys, vals, &cfg) == ESBGK_OK);

  esbgk_simulation* sim = NULL;
  EXPECT(esbgk_simulation_create(cfg, &sim) == ESBGK_OK);
  esbgk_info info;
  EXPECT(esbgk_simulation_info(sim, &info) == ESBGK_OK);
  EXPECT(info.n_cells == 30);
  EXPECT(info.steps == 0);
  EXPECT(info.dt > 0.0);
  const double mass0 = info.mass;

  EXPECT(esbgk_simulation_step(sim, 5) == ESBGK_OK);
  double t = 0.0;
  EXPECT(esbgk_simulation_time(sim, &t) == ESBGK_OK);
  EXPECT(t > 4.9 * info.dt && t < 5.1 * info.dt);
  EXPECT(esbgk_simulation_info(sim, &info) == ESBGK_OK);
  EXPECT(info.steps == 5);
  EXPECT(info.mass > mass0 * (1 - 1e-12) && info.mass < mass0 * (1 + 1e-12));
  EXPECT(info.failed_step == (size_t)-1);

  esbgk_cell_moments m[30];
  EXPECT(esbgk_simulation_moments(sim, m, 30) == ESBGK_OK);
  for (int i = 0; i < 30; ++i) EXPECT(m[i].valid && m[i].rho > 0.0 && m[i].T > 0.0);
  esbgk_simulation_destroy(sim);

  size_t steps = 0;
  EXPECT(esbgk_run(cfg, &steps) == ESBGK_OK);
  EXPECT(steps > 0);
  char path[4096];
  snprintf(path, sizeof path, "%s/series.csv", out_dir);
  FILE* f = fopen(path, "r");
  EXPECT(f != NULL);
  if (f) fclose(f);
  esbgk_config_destroy(cfg);
  EXPECT(esbgk_simulation_step(NULL, 1) == ESBGK_INVALID_ARGUMENT);
}

int main(int argc, char** argv) {
  const char* out = argc > 1 ? argv[1] : "capi_out";
  EXPECT(strlen(esbgk_version()) > 0);
  test_config();
  test_simulation(out);
  if (failures) {
    fprintf(stderr, "%d check(s) failed\n", failures);
    return 1;
  }
  printf("all C API checks passed\n");
  return 0;
}

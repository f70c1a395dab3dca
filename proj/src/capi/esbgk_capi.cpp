#include "esbgk/esbgk.h"

#include <cstring>
#include <exception>
#include <filesystem>
#include <memory>
#include <new>
#include <string>

#include "esbgk/core/config.hpp"
#include "esbgk/core/error.hpp"
#include "esbgk/core/simulation.hpp"

struct esbgk_config {
  esbgk::ScenarioConfig cfg;
};

struct esbgk_simulation {
  std::unique_ptr<esbgk::Simulation> sim;
  std::size_t failed_step = static_cast<std::size_t>(-1);
  std::size_t failed_cell = static_cast<std::size_t>(-1);
};

namespace {

thread_local std::string g_last_error;

esbgk_status fail(esbgk_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

template <typename F>
esbgk_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return ESBGK_OK;
  } catch (const esbgk::ConfigError& e) {
    return fail(ESBGK_CONFIG_ERROR, e.what());
  } catch (const esbgk::NumericalError& e) {
    return fail(ESBGK_NUMERICAL_ERROR, e.what());
  } catch (const esbgk::DomainError& e) {
    return fail(ESBGK_INVALID_ARGUMENT, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(ESBGK_IO_ERROR, e.what());
  } catch (const esbgk::Error& e) {
    return fail(ESBGK_IO_ERROR, e.what());
  } catch (const std::bad_alloc&) {
    return fail(ESBGK_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return fail(ESBGK_INTERNAL_ERROR, e.what());
  } catch (...) {
    return fail(ESBGK_INTERNAL_ERROR, "unknown error");
  }
}

std::string describe(const esbgk::NumericalError& e) {
  std::string msg = e.what();
  if (e.step() != esbgk::NumericalError::npos) msg += " (step " + std::to_string(e.step());
  if (e.cell() != esbgk::NumericalError::npos) {
    msg += (e.step() != esbgk::NumericalError::npos ? ", cell " : " (cell ") +
           std::to_string(e.cell());
  }
  if (e.step() != esbgk::NumericalError::npos || e.cell() != esbgk::NumericalError::npos) {
    msg += ")";
  }
  return msg;
}

}  // namespace

extern "C" {

const char* esbgk_version(void) { return "1.0.0"; }

const char* esbgk_last_error(void) { return g_last_error.c_str(); }

esbgk_status esbgk_config_create(const char* scenario, esbgk_config** out) {
  if (!scenario || !out) return fail(ESBGK_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto c = std::make_unique<esbgk_config>();
    c->cfg = esbgk::preset(esbgk::scenario_from_string(scenario));
    *out = c.release();
  });
}

esbgk_status esbgk_config_set(esbgk_config* cfg, const char* key, const char* value) {
  if (!cfg || !key || !value) return fail(ESBGK_INVALID_ARGUMENT, "null argument");
  return guarded([&] { esbgk::apply_setting(cfg->cfg, key, value); });
}

esbgk_status esbgk_config_load_file(esbgk_config* cfg, const char* path) {
  if (!cfg || !path) return fail(ESBGK_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    esbgk::ScenarioConfig copy = cfg->cfg;
    for (const auto& [k, v] : esbgk::read_config_file(path)) esbgk::apply_setting(copy, k, v);
    cfg->cfg = std::move(copy);
  });
}

esbgk_status esbgk_config_from_sources(const char* path, size_t n, const char* const* keys,
                                       const char* const* values, esbgk_config** out) {
  if (!out || (n > 0 && (!keys || !values))) return fail(ESBGK_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    esbgk::Settings overrides;
    for (size_t i = 0; i < n; ++i) {
      if (!keys[i] || !values[i]) throw esbgk::DomainError("null key or value");
      overrides.emplace_back(keys[i], values[i]);
    }
    std::optional<std::string> file;
    if (path) file = path;
    auto c = std::make_unique<esbgk_config>();
    c->cfg = esbgk::parse_config(file, overrides);
    *out = c.release();
  });
}

esbgk_status esbgk_config_validate(esbgk_config* cfg) {
  if (!cfg) return fail(ESBGK_INVALID_ARGUMENT, "null argument");
  return guarded([&] { esbgk::finalize(cfg->cfg); });
}

esbgk_status esbgk_config_echo(const esbgk_config* cfg, char* buffer, size_t size,
                               size_t* needed) {
  if (!cfg || (!buffer && size > 0)) return fail(ESBGK_INVALID_ARGUMENT, "null argument");
  std::string text;
  const esbgk_status s = guarded([&] {
    for (const auto& line : cfg->cfg.echo()) text += line + "\n";
  });
  if (s != ESBGK_OK) return s;
  if (needed) *needed = text.size() + 1;
  if (size < text.size() + 1) return fail(ESBGK_INVALID_ARGUMENT, "buffer too small");
  std::memcpy(buffer, text.c_str(), text.size() + 1);
  return ESBGK_OK;
}

void esbgk_config_destroy(esbgk_config* cfg) { delete cfg; }

esbgk_status esbgk_simulation_create(const esbgk_config* cfg, esbgk_simulation** out) {
  if (!cfg || !out) return fail(ESBGK_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    esbgk::ScenarioConfig c = cfg->cfg;
    esbgk::finalize(c);
    auto s = std::make_unique<esbgk_simulation>();
    s->sim = std::make_unique<esbgk::Simulation>(std::move(c));
    *out = s.release();
  });
}

esbgk_status esbgk_simulation_step(esbgk_simulation* sim, size_t n) {
  if (!sim) return fail(ESBGK_INVALID_ARGUMENT, "null argument");
  try {
    for (size_t i = 0; i < n; ++i) sim->sim->step();
  } catch (const esbgk::NumericalError& e) {
    sim->failed_step = e.step();
    sim->failed_cell = e.cell();
    return fail(ESBGK_NUMERICAL_ERROR, describe(e));
  } catch (...) {
    return guarded([] { throw; });
  }
  g_last_error.clear();
  return ESBGK_OK;
}

esbgk_status esbgk_run(const esbgk_config* cfg, size_t* steps) {
  if (!cfg) return fail(ESBGK_INVALID_ARGUMENT, "null argument");
  try {
    esbgk::ScenarioConfig c = cfg->cfg;
    esbgk::finalize(c);
    const auto summary = esbgk::run(c);
    if (steps) *steps = summary.steps;
  } catch (const esbgk::NumericalError& e) {
    return fail(ESBGK_NUMERICAL_ERROR, describe(e));
  } catch (...) {
    return guarded([] { throw; });
  }
  g_last_error.clear();
  return ESBGK_OK;
}

esbgk_status esbgk_simulation_time(const esbgk_simulation* sim, double* t) {
  if (!sim || !t) return fail(ESBGK_INVALID_ARGUMENT, "null argument");
  *t = sim->sim->time();
  return ESBGK_OK;
}

esbgk_status esbgk_simulation_info(const esbgk_simulation* sim, esbgk_info* info) {
  if (!sim || !info) return fail(ESBGK_INVALID_ARGUMENT, "null argument");
  const auto& s = *sim->sim;
  const auto& c = s.config();
  esbgk_info r{};
  r.dim_x = c.dim_x;
  r.dim_v = c.dim_v;
  r.n_x[0] = c.n_x[0];
  r.n_x[1] = c.n_x[1];
  r.n_v = c.n_v;
  r.v_max = s.vgrid().v_max();
  r.dt = s.dt();
  r.t = s.time();
  r.t_end = c.t_end;
  r.steps = s.step_count();
  r.n_cells = s.grid().size();
  const auto& row = s.log().back();
  r.mass = row.totals.mass;
  for (int i = 0; i < 3; ++i) r.momentum[i] = row.totals.momentum[i];
  r.energy = row.totals.energy;
  r.oscillation = row.oscillation;
  r.eq_distance = row.eq_distance;
  r.rate_inf = row.rate_inf;
  r.failed_step = sim->failed_step;
  r.failed_cell = sim->failed_cell;
  *info = r;
  return ESBGK_OK;
}

esbgk_status esbgk_simulation_moments(const esbgk_simulation* sim, esbgk_cell_moments* out,
                                      size_t n) {
  if (!sim || (!out && n > 0)) return fail(ESBGK_INVALID_ARGUMENT, "null argument");
  const auto& m = sim->sim->cell_moments();
  const size_t count = n < m.size() ? n : m.size();
  for (size_t c = 0; c < count; ++c) {
    out[c].rho = m[c].rho;
    for (int i = 0; i < 3; ++i) out[c].u[i] = m[c].u[i];
    out[c].T = m[c].T;
    out[c].valid = m[c].valid && !sim->sim->grid().is_solid(c) ? 1 : 0;
  }
  return ESBGK_OK;
}

void esbgk_simulation_destroy(esbgk_simulation* sim) { delete sim; }

}  // extern "C"

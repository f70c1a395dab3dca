#include <CLI11.hpp>

#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "esbgk/esbgk.h"

namespace {

int exit_code(esbgk_status s) {
  switch (s) {
    case ESBGK_OK:
      return 0;
    case ESBGK_CONFIG_ERROR:
    case ESBGK_INVALID_ARGUMENT:
      return 2;
    case ESBGK_NUMERICAL_ERROR:
      return 3;
    default:
      return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ES-BGK kinetic solver"};
  app.require_subcommand(1);
  CLI::App* run = app.add_subcommand("run", "run a scenario and write series and snapshots");

  std::string config_file;
  std::vector<std::pair<std::string, std::string>> flags = {
      {"scenario", ""}, {"eps", ""}, {"nu", ""},  {"nx", ""},  {"nv", ""},
      {"vmax", ""},     {"cfl", ""}, {"t_end", ""}, {"out", ""}, {"compare", ""}};
  auto value_of = [&](const char* key) -> std::string& {
    for (auto& [k, v] : flags) {
      if (k == key) return v;
    }
    throw std::logic_error(key);
  };
  std::vector<std::string> extra;

  run->add_option("--scenario", value_of("scenario"),
                  "smooth_periodic | riemann | cylinder | custom");
  run->add_option("--eps", value_of("eps"), "Knudsen number");
  run->add_option("--nu", value_of("nu"), "ES-BGK parameter in [-1, 1)");
  run->add_option("--nx", value_of("nx"), "cells per axis, N or N,N");
  run->add_option("--nv", value_of("nv"), "velocity nodes per axis");
  run->add_option("--vmax", value_of("vmax"), "velocity cutoff or 'auto'");
  run->add_option("--cfl", value_of("cfl"), "CFL number");
  run->add_option("--tend", value_of("t_end"), "final time");
  run->add_option("--out", value_of("out"), "output directory");
  run->add_option("--compare", value_of("compare"), "none | euler | ns");
  run->add_option("--config", config_file, "key=value config file");
  run->add_option("--set", extra, "extra key=value setting (repeatable)");
  bool quiet = false;
  run->add_flag("-q,--quiet", quiet, "print nothing on success");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  std::vector<std::string> keys;
  std::vector<std::string> values;
  for (const auto& [k, v] : flags) {
    if (v.empty()) continue;
    keys.push_back(k);
    values.push_back(v);
  }
  for (const auto& kv : extra) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "error: --set expects key=value, got '%s'\n", kv.c_str());
      return 2;
    }
    keys.push_back(kv.substr(0, eq));
    values.push_back(kv.substr(eq + 1));
  }
  std::vector<const char*> kp;
  std::vector<const char*> vp;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    kp.push_back(keys[i].c_str());
    vp.push_back(values[i].c_str());
  }

  esbgk_config* cfg = nullptr;
  esbgk_status s = esbgk_config_from_sources(config_file.empty() ? nullptr : config_file.c_str(),
                                             keys.size(), kp.data(), vp.data(), &cfg);
  if (s != ESBGK_OK) {
    std::fprintf(stderr, "config error: %s\n", esbgk_last_error());
    return exit_code(s);
  }
  std::size_t steps = 0;
  s = esbgk_run(cfg, &steps);
  if (s != ESBGK_OK) {
    std::fprintf(stderr, "%s: %s\n", s == ESBGK_NUMERICAL_ERROR ? "numerical failure" : "error",
                 esbgk_last_error());
    esbgk_config_destroy(cfg);
    return exit_code(s);
  }
  if (!quiet) {
    std::size_t needed = 0;
    esbgk_config_echo(cfg, nullptr, 0, &needed);
    std::string echo(needed, '\0');
    esbgk_config_echo(cfg, echo.data(), echo.size(), &needed);
    std::printf("%s", echo.c_str());
    std::printf("completed %zu steps\n", steps);
  }
  esbgk_config_destroy(cfg);
  return 0;
}

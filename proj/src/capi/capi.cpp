#include "fadiff.h"

#include <cstring>
#include <string>

#include "../core/config.hpp"
#include "../core/grid.hpp"
#include "../core/runner.hpp"

struct fadiff_config {
  fadiff::RunConfig cfg;
};

struct fadiff_grid {
  fadiff::Grid1D grid;
};

namespace {

thread_local std::string g_last_error;
thread_local std::string g_last_summary;

fadiff_status fail(fadiff_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

fadiff_status from_exit_code(int code) {
  switch (code) {
    case fadiff::kExitOk:
      return FADIFF_OK;
    case fadiff::kExitValidation:
      return FADIFF_ERR_VALIDATION;
    default:
      return FADIFF_ERR_NUMERICAL;
  }
}

fadiff_status run_command(int (*command)(const fadiff::RunConfig&,
                                         const std::string&, std::string*),
                          const fadiff_config* config, const char* out_dir) {
  if (!config || !out_dir) return fail(FADIFF_ERR_VALIDATION, "null argument");
  std::string message;
  const int code = command(config->cfg, out_dir, &message);
  if (code == fadiff::kExitOk) {
    g_last_summary = message;
    return FADIFF_OK;
  }
  return fail(from_exit_code(code), message);
}

}  // namespace

extern "C" {

const char* fadiff_version(void) { return "0.1.0"; }

const char* fadiff_last_error(void) { return g_last_error.c_str(); }

const char* fadiff_last_summary(void) { return g_last_summary.c_str(); }

fadiff_status fadiff_config_create(fadiff_config** out) {
  if (!out) return fail(FADIFF_ERR_VALIDATION, "null output pointer");
  *out = new fadiff_config{};
  return FADIFF_OK;
}

fadiff_status fadiff_config_load(const char* path, fadiff_config** out) {
  if (!path || !out) return fail(FADIFF_ERR_VALIDATION, "null argument");
  try {
    auto cfg = fadiff::load_config(path);
    *out = new fadiff_config{std::move(cfg)};
    return FADIFF_OK;
  } catch (const std::invalid_argument& e) {
    return fail(FADIFF_ERR_VALIDATION, e.what());
  } catch (const std::exception& e) {
    return fail(FADIFF_ERR_IO, e.what());
  }
}

fadiff_status fadiff_config_set(fadiff_config* config, const char* key,
                                const char* value) {
  if (!config || !key || !value) {
    return fail(FADIFF_ERR_VALIDATION, "null argument");
  }
  try {
    // Reuse the file grammar: apply one "[section]\nkey = value" fragment on
    // top of the serialized current state.
    const std::string k(key);
    const auto dot = k.find('.');
    if (dot == std::string::npos) {
      return fail(FADIFF_ERR_VALIDATION,
                  "config key must be 'section.key', got '" + k + "'");
    }
    std::string text = config->cfg.serialize();
    text += "[" + k.substr(0, dot) + "]\n" + k.substr(dot + 1) + " = " +
            value + "\n";
    config->cfg = fadiff::parse_config(text);
    return FADIFF_OK;
  } catch (const std::exception& e) {
    return fail(FADIFF_ERR_VALIDATION, e.what());
  }
}

fadiff_status fadiff_config_serialize(const fadiff_config* config, char* buf,
                                      size_t len, size_t* required) {
  if (!config) return fail(FADIFF_ERR_VALIDATION, "null config");
  const std::string text = config->cfg.serialize();
  if (required) *required = text.size() + 1;
  if (buf && len > 0) {
    const size_t copy = std::min(len - 1, text.size());
    std::memcpy(buf, text.data(), copy);
    buf[copy] = '\0';
  }
  return FADIFF_OK;
}

fadiff_status fadiff_config_validate(const fadiff_config* config) {
  if (!config) return fail(FADIFF_ERR_VALIDATION, "null config");
  try {
    config->cfg.validate();
    return FADIFF_OK;
  } catch (const std::exception& e) {
    return fail(FADIFF_ERR_VALIDATION, e.what());
  }
}

void fadiff_config_destroy(fadiff_config* config) { delete config; }

fadiff_status fadiff_grid_create(double length, int n, fadiff_grid** out) {
  if (!out) return fail(FADIFF_ERR_VALIDATION, "null output pointer");
  try {
    *out = new fadiff_grid{fadiff::Grid1D::make(length, n)};
    return FADIFF_OK;
  } catch (const std::exception& e) {
    return fail(FADIFF_ERR_VALIDATION, e.what());
  }
}

int fadiff_grid_size(const fadiff_grid* grid) {
  return grid ? grid->grid.size() : 0;
}

double fadiff_grid_spacing(const fadiff_grid* grid) {
  return grid ? grid->grid.dx() : 0.0;
}

fadiff_status fadiff_grid_nodes(const fadiff_grid* grid, double* nodes) {
  if (!grid || !nodes) return fail(FADIFF_ERR_VALIDATION, "null argument");
  std::memcpy(nodes, grid->grid.nodes().data(),
              sizeof(double) * static_cast<size_t>(grid->grid.size()));
  return FADIFF_OK;
}

void fadiff_grid_destroy(fadiff_grid* grid) { delete grid; }

fadiff_status fadiff_cmd_verify(const fadiff_config* config,
                                const char* out_dir) {
  return run_command(fadiff::cmd_verify, config, out_dir);
}

fadiff_status fadiff_cmd_converge(const fadiff_config* config,
                                  const char* out_dir) {
  return run_command(fadiff::cmd_converge, config, out_dir);
}

fadiff_status fadiff_cmd_run(const fadiff_config* config,
                             const char* out_dir) {
  return run_command(fadiff::cmd_run, config, out_dir);
}

}  // extern "C"

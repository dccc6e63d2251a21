/* fadiff — field-aligned anisotropic diffusion solver, C interface.
 *
 * All objects are opaque handles created and destroyed through this API.
 * Functions return fadiff_status; on failure, fadiff_last_error() gives a
 * human-readable message for the calling thread.
 */
#ifndef FADIFF_H
#define FADIFF_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fadiff_status {
  FADIFF_OK = 0,
  FADIFF_ERR_VALIDATION = 1, /* bad config / arguments */
  FADIFF_ERR_NUMERICAL = 2,  /* failed property check, CG divergence, NaN */
  FADIFF_ERR_IO = 3          /* unreadable or unwritable file */
} fadiff_status;

typedef struct fadiff_config fadiff_config;
typedef struct fadiff_grid fadiff_grid;

/* Library version string, e.g. "0.1.0". */
const char* fadiff_version(void);

/* Message for the most recent failure on this thread. */
const char* fadiff_last_error(void);

/* ---- configuration ----------------------------------------------------- */

/* Config with all defaults. */
fadiff_status fadiff_config_create(fadiff_config** out);

/* Parse an INI-style config file; unknown keys are rejected. */
fadiff_status fadiff_config_load(const char* path, fadiff_config** out);

/* Set one "section.key" to a value string, same grammar as the file form. */
fadiff_status fadiff_config_set(fadiff_config* config, const char* key,
                                const char* value);

/* Canonical serialized form; writes up to len-1 bytes plus a terminator and
 * stores the full required size (including terminator) in *required. */
fadiff_status fadiff_config_serialize(const fadiff_config* config, char* buf,
                                      size_t len, size_t* required);

/* Validate without running anything. */
fadiff_status fadiff_config_validate(const fadiff_config* config);

void fadiff_config_destroy(fadiff_config* config);

/* ---- grids ------------------------------------------------------------- */

fadiff_status fadiff_grid_create(double length, int n, fadiff_grid** out);
int fadiff_grid_size(const fadiff_grid* grid);
double fadiff_grid_spacing(const fadiff_grid* grid);
/* Copies all node coordinates; nodes must hold fadiff_grid_size doubles. */
fadiff_status fadiff_grid_nodes(const fadiff_grid* grid, double* nodes);
void fadiff_grid_destroy(fadiff_grid* grid);

/* ---- commands ---------------------------------------------------------- */

/* Build all operators, run the property suites, write reports to out_dir.
 * FADIFF_OK iff every check passes. */
fadiff_status fadiff_cmd_verify(const fadiff_config* config,
                                const char* out_dir);

/* Manufactured-solution convergence study; writes the rate CSV. */
fadiff_status fadiff_cmd_converge(const fadiff_config* config,
                                  const char* out_dir);

/* Time integration; writes snapshot, energy, and map CSVs. */
fadiff_status fadiff_cmd_run(const fadiff_config* config, const char* out_dir);

/* Human-readable summary of the last successful command on this thread
 * (rates, step counts, warnings). */
const char* fadiff_last_summary(void);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* FADIFF_H */

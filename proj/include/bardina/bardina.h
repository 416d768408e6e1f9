#ifndef BARDINA_BARDINA_H
#define BARDINA_BARDINA_H

/* C interface of the strip solver. Every call returns a status code; on
   failure bardina_last_error() describes the problem for the calling thread. */

#include <stddef.h>
#include <stdint.h>

#if defined(BARDINA_BUILDING_LIBRARY)
#define BARDINA_API __attribute__((visibility("default")))
#else
#define BARDINA_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bardina_status {
    BARDINA_OK = 0,
    BARDINA_ERR_ARGUMENT = 1, /* null pointer, bad buffer size */
    BARDINA_ERR_CONFIG = 2,
    BARDINA_ERR_IO = 3,
    BARDINA_ERR_BLOWUP = 4,
    BARDINA_ERR_GRID = 5,
    BARDINA_ERR_INTERNAL = 6
} bardina_status;

typedef struct bardina_config bardina_config;

typedef struct bardina_run_summary {
    double t_final;
    int64_t steps;
    double energy_initial;
    double energy_final;
    int64_t records;
    int64_t snapshots;
    int cfl_warning; /* nonzero if the advective CFL exceeded 0.5 */
} bardina_run_summary;

typedef struct bardina_snapshot_header {
    uint64_t nx;
    uint64_t ny;
    double time;
    double alpha;
    double nu;
} bardina_snapshot_header;

/* Receives warnings and progress notes; may be NULL. */
typedef void (*bardina_message_fn)(const char* message, void* user);

BARDINA_API const char* bardina_version(void);
/* Thread-local; valid until the next failing call on the same thread. */
BARDINA_API const char* bardina_last_error(void);
BARDINA_API const char* bardina_status_name(bardina_status status);

/* Relative paths inside the file resolve against its directory. Parsing
   checks syntax only; ranges are checked by bardina_config_validate and by
   every command. */
BARDINA_API bardina_status bardina_config_load(const char* path, bardina_config** out);
BARDINA_API bardina_status bardina_config_parse(const char* text, const char* base_dir,
                                                bardina_config** out);
BARDINA_API void bardina_config_free(bardina_config* config);
/* Permits gamma > 2/3 (sharpness experiments). */
BARDINA_API bardina_status bardina_config_set_override_gamma(bardina_config* config, int enabled);
BARDINA_API bardina_status bardina_config_validate(const bardina_config* config);
/* Any numeric key accepted by the file format, e.g. "nu" or "output.every". */
BARDINA_API bardina_status bardina_config_get(const bardina_config* config, const char* key,
                                              double* value);
BARDINA_API bardina_status bardina_config_set(bardina_config* config, const char* key,
                                              const char* value);

/* Runs to t_end, writing timeseries.csv, snapshots and resolved.cfg into
   output.dir. summary may be NULL. */
BARDINA_API bardina_status bardina_run(const bardina_config* config, bardina_run_summary* summary,
                                       bardina_message_fn on_message, void* user);

/* Report text is heap allocated; release it with bardina_string_free. */
BARDINA_API bardina_status bardina_verify(const bardina_config* config, const char* suite,
                                          char** report, int* passed);
BARDINA_API bardina_status bardina_compare_nse(const bardina_config* config, const double* alphas,
                                               size_t count, char** report);
BARDINA_API void bardina_string_free(char* text);

BARDINA_API bardina_status bardina_snapshot_read_header(const char* path,
                                                        bardina_snapshot_header* header);
/* values receives nx * ny doubles, x1 outer; count must equal nx * ny. */
BARDINA_API bardina_status bardina_snapshot_read(const char* path, bardina_snapshot_header* header,
                                                 double* values, size_t count);
BARDINA_API bardina_status bardina_snapshot_write(const char* path,
                                                  const bardina_snapshot_header* header,
                                                  const double* values, size_t count);

#ifdef __cplusplus
}
#endif

#endif

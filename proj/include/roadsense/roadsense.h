/*
 * Copyright 2026 The Roadsense Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * Public C interface to the roadsense collaborative road-profile estimation
 * library. All functionality is reached through an opaque run handle:
 * create one, invoke a run, read back the error message or result strings,
 * free it. Strings returned by accessors are owned by the handle and stay
 * valid until the next run on that handle or rs_run_free.
 *
 * Configuration is one JSON document (see the project README for the
 * schema); `config_json` may be NULL for built-in defaults and
 * `overrides_json` may be NULL for none. Unknown keys are rejected.
 */

#ifndef ROADSENSE_H
#define ROADSENSE_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rs_status {
    RS_OK = 0,
    RS_ERR_CONFIG = 1,        /* bad configuration or unknown keys */
    RS_ERR_IO = 2,            /* filesystem failures */
    RS_ERR_UNSTABLE_LOOP = 3, /* a vehicle loop diverged or failed its stability check */
    RS_ERR_NUMERIC = 4,       /* numerical failure in synthesis or simulation */
    RS_ERR_MISSING_RECORD = 5,
    RS_ERR_CORRUPT_RECORD = 6,
    RS_ERR_INVALID_ARGUMENT = 7,
    RS_ERR_INTERNAL = 8
} rs_status;

typedef struct rs_run rs_run; /* opaque */

const char* rs_version(void);

rs_run* rs_run_new(void);
void rs_run_free(rs_run* run);

/* Full cascade over the configured fleet. Writes into
 * <out_root>/<run_id>/: records/agent_<k>.json, summary.csv, road.csv,
 * metadata.json, and logs/agent_<k>.csv for the configured positions. */
rs_status rs_run_fleet(rs_run* run, const char* config_json, const char* overrides_json,
                       const char* out_root);

/* Single vehicle (config key agent_j) on the configured road, observer-only
 * learning signal. Writes agent_log.csv and metadata.json into
 * <out_root>/<run_id>/. */
rs_status rs_run_single(rs_run* run, const char* config_json, const char* overrides_json,
                        const char* out_root);

/* Reads a completed fleet run directory and emits figure CSV/SVG files into
 * <run_dir>/figures/, plus a convergence-fit summary. */
rs_status rs_run_report(rs_run* run, const char* run_dir);

/* Empty string when the last run succeeded. */
const char* rs_run_error(const rs_run* run);

/* Output directory produced or consumed by the last successful run. */
const char* rs_run_dir(const rs_run* run);

/* Key metrics of the last successful run as a JSON object. */
const char* rs_run_summary_json(const rs_run* run);

#ifdef __cplusplus
}
#endif

#endif /* ROADSENSE_H */

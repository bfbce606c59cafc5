/* arspi — engine for artefact-based software process improvement projects.
 *
 * C interface of the shared library. A project is an opaque handle backed by
 * a directory store; every call returns 0 on success or a stable nonzero
 * error code (see ARSPI_E_*). Structured results come back as UTF-8 JSON
 * strings allocated by the library; release them with arspi_string_free().
 * arspi_last_error() returns a thread-local message for the most recent
 * failing call.
 */

#ifndef ARSPI_H
#define ARSPI_H

#ifdef __cplusplus
extern "C" {
#endif

typedef struct arspi_project arspi_project_t;

/* Error codes (mirror of the engine's error catalog). */
enum {
  ARSPI_OK = 0,
  ARSPI_E_KIND_NOT_PERMITTED = 1,
  ARSPI_E_DUPLICATE_NAME = 2,
  ARSPI_E_BUILTIN_OVERWRITE = 3,
  ARSPI_E_PATH_OCCUPIED = 4,
  ARSPI_E_PROFILE_INVALID = 5,
  ARSPI_E_SCHEMA_MISMATCH = 6,
  ARSPI_E_CORRUPT_FILE = 7,
  ARSPI_E_UNKNOWN_ID = 8,
  ARSPI_E_DANGLING_ENDPOINT = 9,
  ARSPI_E_KIND_MATRIX_VIOLATION = 10,
  ARSPI_E_PLACEMENT_VIOLATION = 11,
  ARSPI_E_INCOMPATIBLE_RETAILORING = 12,
  ARSPI_E_KIND_MISMATCH = 13,
  ARSPI_E_ITERATION_ALREADY_RUNNING = 14,
  ARSPI_E_ITERATION_NOT_RUNNING = 15,
  ARSPI_E_UNKNOWN_ITERATION = 16,
  ARSPI_E_UNKNOWN_CHANGE = 17,
  ARSPI_E_CHANGE_NOT_ACCEPTED = 18,
  ARSPI_E_GATE_NOT_SATISFIED = 19,
  ARSPI_E_RELEASE_MISSING = 20,
  ARSPI_E_PLC_MISSING = 21,
  ARSPI_E_COUNT_MISMATCH = 22,
  ARSPI_E_NOT_READY = 23,
  ARSPI_E_WRONG_PHASE = 24,
  ARSPI_E_ALREADY_RELEASED = 25,
  ARSPI_E_MISSING_LINKED_ASSETS = 26,
  ARSPI_E_INVALID_TRIAGE_STATE = 27,
  ARSPI_E_SNAPSHOT_MISMATCH = 28,
  ARSPI_E_EMPTY_CHANGE_SET = 29,
  ARSPI_E_LOCK_TIMEOUT = 30,
  ARSPI_E_USAGE = 31
};

const char* arspi_errc_name(int code);
const char* arspi_last_error(void);
void arspi_string_free(char* s);

/* --- project lifecycle ---------------------------------------------------- */

/* Create a new project directory. profile_json may be NULL for the default
 * profile, or a JSON object {"merge_designs":bool,"selected_supports":[...],
 * "strict_realisation_coverage":bool,"notes":string}. The handle holds the
 * project's advisory lock until closed. */
int arspi_init(const char* path, const char* name, const char* profile_json,
               arspi_project_t** out);

int arspi_open(const char* path, arspi_project_t** out);

/* Persist the in-memory state back to the project directory. */
int arspi_save(arspi_project_t* project);

void arspi_close(arspi_project_t* project);

/* --- catalog --------------------------------------------------------------- */

/* Section structures of the key artefact kinds, as JSON. No handle needed. */
int arspi_catalog_json(char** out);

/* --- tailoring -------------------------------------------------------------- */

/* answers_json: {"project_scale":"small|medium|large",
 *                "preexisting_process":bool, "training_needed":bool,
 *                "process_line_based":bool, "iteration_count_planned":int,
 *                "merge_override":bool (optional)} */
int arspi_tailor_derive(const char* answers_json, char** out_profile_json);
int arspi_tailor_apply(arspi_project_t* project, const char* profile_json);
int arspi_merge_designs(arspi_project_t* project, const char* cpd_id, const char* tpd_id,
                        char** out_pd_id);

/* --- artefacts -------------------------------------------------------------- */

/* kind: PRQ, CPD, TPD, PD, PLC, PR, or SUPPORT:<registered name>. */
int arspi_artefact_new(arspi_project_t* project, const char* kind, const char* name,
                       char** out_id);
int arspi_artefact_add_item(arspi_project_t* project, const char* artefact_id,
                            const char* section_key, const char* item_kind, const char* text,
                            char** out_item_id);
int arspi_artefact_show(arspi_project_t* project, const char* id, char** out_json);
/* kind may be NULL to list everything. */
int arspi_artefact_list(arspi_project_t* project, const char* kind, char** out_json);
int arspi_support_register(arspi_project_t* project, const char* name,
                           const char* description);
int arspi_support_list(arspi_project_t* project, char** out_json);

/* --- tracing ---------------------------------------------------------------- */

/* kind: addresses, refines, realises, shares, derives_from. */
int arspi_trace_add(arspi_project_t* project, const char* source, const char* target,
                    const char* kind);
int arspi_trace_list(arspi_project_t* project, char** out_json);

/* --- validation -------------------------------------------------------------- */

/* Completeness plus consistency findings as a JSON array. */
int arspi_validate(arspi_project_t* project, char** out_findings_json);

/* --- lifecycle --------------------------------------------------------------- */

/* flags_json: array of booleans, one shortened flag per planned iteration. */
int arspi_iteration_plan(arspi_project_t* project, const char* flags_json);
/* inputs_json: {"vision":string,"changes":[ids],"actual_process":string|null};
 * NULL for empty inputs. */
int arspi_iteration_start(arspi_project_t* project, const char* inputs_json, int shortened,
                          char** out_json);
int arspi_iteration_close(arspi_project_t* project, char** out_json);
int arspi_phase_status(arspi_project_t* project, char** out_json);
int arspi_phase_advance(arspi_project_t* project, char** out_json);

/* --- releases and changes ------------------------------------------------------ */

int arspi_release_package(arspi_project_t* project, const char* version_label,
                          char** out_json);
int arspi_release_promote(arspi_project_t* project, const char* release_id, char** out_json);
int arspi_release_list(arspi_project_t* project, char** out_json);

/* origin: internal or external_update_trigger; linked_assets_json: JSON array
 * of ids, or NULL. */
int arspi_change_submit(arspi_project_t* project, const char* origin, const char* title,
                        const char* description, const char* linked_assets_json,
                        char** out_json);
/* decision: accept or reject. */
int arspi_change_triage(arspi_project_t* project, const char* id, const char* decision,
                        char** out_json);
int arspi_change_list(arspi_project_t* project, char** out_json);

/* --- reference process deltas ---------------------------------------------------- */

/* Snapshots are JSON objects {"label":string,"assets":{id:hash,...}}.
 * Diffs the snapshots and files one change request per connected component
 * of changed assets; returns the created change requests. */
int arspi_update_trigger(arspi_project_t* project, const char* old_snapshot_json,
                         const char* new_snapshot_json, char** out_json);

/* changed_assets_json: JSON array of asset ids. Returns the delta report and
 * appends it to the SPLDeltaReport artefact when that support is selected. */
int arspi_delta(arspi_project_t* project, const char* changed_assets_json,
                char** out_report_json);

/* --- reporting ---------------------------------------------------------------- */

/* Project status summary: phase, per-artefact completeness, open changes,
 * last release. */
int arspi_report(arspi_project_t* project, char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* ARSPI_H */

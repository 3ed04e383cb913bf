/* C interface to the pretrans modal-logic workbench.
 *
 * Every fallible call returns a pt_status; on failure a message is available
 * from pt_last_error() (thread-local, valid until the next failing call on the
 * same thread). Strings returned through char** are owned by the caller and
 * released with pt_string_free. Handles are released with their *_free. */
#ifndef PRETRANS_H
#define PRETRANS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define PT_API __declspec(dllexport)
#else
#define PT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pt_status {
  PT_OK = 0,
  PT_ERR_PARSE = 1,
  PT_ERR_RANGE = 2,
  PT_ERR_BUDGET = 3,
  PT_ERR_UNSUPPORTED = 4,
  PT_ERR_IO = 5,
  PT_ERR_INVALID_ARGUMENT = 6,
  PT_ERR_INTERNAL = 7
} pt_status;

typedef struct pt_formula pt_formula;
typedef struct pt_frames pt_frames;
typedef struct pt_logic pt_logic;

PT_API const char* pt_version(void);
PT_API const char* pt_status_name(pt_status s);
PT_API const char* pt_last_error(void);
PT_API void pt_string_free(char* s);

/* Formulas over `modalities` diamonds <0>..<modalities-1>. */
PT_API pt_status pt_formula_parse(const char* text, int modalities, pt_formula** out);
PT_API pt_status pt_formula_render(const pt_formula* f, int pretty, char** out);
/* {"modal_depth", "variables", "dag_size", "max_modality"} */
PT_API pt_status pt_formula_info(const pt_formula* f, char** json);
PT_API void pt_formula_free(pt_formula* f);

/* A frame file holds one frame object {"n","worlds","relations"} or an array. */
PT_API pt_status pt_frames_from_json(const char* json, pt_frames** out);
PT_API pt_status pt_frames_load(const char* path, pt_frames** out);
PT_API size_t pt_frames_count(const pt_frames* fs);
/* Per frame: worlds, transitivity degree, height, clusters, depths. */
PT_API pt_status pt_frames_info(const pt_frames* fs, char** json);
PT_API pt_status pt_frames_to_dot(const pt_frames* fs, size_t index, char** dot);
PT_API void pt_frames_free(pt_frames* fs);

/* "k", "t", "k4", "s4", "s5" (case-insensitive). */
PT_API pt_status pt_logic_named(const char* name, pt_logic** out);
PT_API pt_status pt_logic_frames(const pt_frames* fs, pt_logic** out);
/* L[h] = L + B_h, h >= 1. */
PT_API pt_status pt_logic_set_height(pt_logic* l, int h);
/* Element cap for free-algebra builds. */
PT_API pt_status pt_logic_set_cap(pt_logic* l, uint64_t cap);
PT_API pt_status pt_logic_modalities(const pt_logic* l, int* n);
PT_API void pt_logic_free(pt_logic* l);

/* *valid receives 1 or 0; json (optional) receives {"valid", "countermodel"?, "world"?}. */
PT_API pt_status pt_decide(const pt_logic* l, const pt_formula* f, int* valid, char** json);

/* k-canonical model of a frame-class logic: JSON description and optional DOT. */
PT_API pt_status pt_canonical(const pt_logic* l, int k, char** json, char** dot);

/* mode "h1": <>*[]*f. mode "main": the depth-formula translation for L[h+1]
 * built from the k-canonical model; k = 0 means the formula's own variable
 * bound. */
PT_API pt_status pt_translate(const pt_logic* l, const char* mode, int k, int h, const pt_formula* f,
                              pt_formula** out);

/* Runs a verification suite ("bh", "algebra", "topheavy", "main", "embedd",
 * "s4s5", "heavy", "fmp", "section5") configured by a JSON object of
 * parameters; *passed receives 1 or 0. */
PT_API pt_status pt_verify(const char* suite, const char* params_json, int* passed, char** report_json);

/* what = "formulas" or "frames"; parameters as JSON; result is a JSON array. */
PT_API pt_status pt_generate(const char* what, const char* params_json, char** json);

#ifdef __cplusplus
}
#endif

#endif /* PRETRANS_H */

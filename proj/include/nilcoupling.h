/* C interface to the nilcoupling core.
 *
 * All structured data crosses the boundary as JSON text ("nilcoupling/1"
 * schemas) or CSV sample logs. Output strings are allocated by the library
 * and must be released with nc_free_string. Every function returns an error
 * code; on failure the output pointer is untouched and nc_last_error holds
 * a message for the calling thread.
 */
#ifndef NILCOUPLING_H
#define NILCOUPLING_H

#ifdef __cplusplus
extern "C" {
#endif

/* Opaque layered nilpotent Lie algebra. */
typedef struct nc_algebra nc_algebra;

enum {
  NC_OK = 0,
  NC_ERR_VALIDATION = 1,        /* domain precondition or math failure */
  NC_ERR_SCHEMA = 2,            /* malformed JSON/CSV input */
  NC_ERR_INSUFFICIENT_DATA = 3  /* too few usable samples */
};

const char* nc_version(void);
const char* nc_last_error(void);
void nc_free_string(char* s);

int nc_algebra_parse(const char* json, nc_algebra** out);
void nc_algebra_free(nc_algebra* a);
int nc_algebra_emit(const nc_algebra* a, char** json);

/* spec: {"kind": "abelian"|"filiform"|"heisenberg"|"sum"|
 *        "central_product"|"gmn", ...kind-specific fields} */
int nc_algebra_make(const char* spec_json, char** json);

/* {"valid", "violations", "nilpotent", "lcs", "class", "growth",
 *  "layers", "graded"} */
int nc_algebra_check(const nc_algebra* a, char** json);

/* {"algebra": <graded algebra>, "equal": <already graded?>} */
int nc_algebra_gr(const nc_algebra* a, char** json);

/* request: {"op": "mul"|"inv"|"comm", "law": "original"|"graded",
 *           "args": [vector...]}; response {"result": vector} */
int nc_group_eval(const nc_algebra* a, const char* request, char** json);

/* request: {"v", "depth", "bits", "lattice", "law"}; response
 * {"ok": true, "word": [level rows]} or {"ok": false, "required_depth"} */
int nc_tile_encode(const nc_algebra* a, const char* request, char** json);
/* request: {"word", "bits", "lattice", "law"}; response {"v": vector} */
int nc_tile_decode(const nc_algebra* a, const char* request, char** json);

/* request: {"kmax" or "ks", "trials", "seed", "bits", "lattice", "law",
 *           "generators"?}; response {"rows": [...]} with a pooled row
 * (gen = -1) per depth */
int nc_folner_stats(const nc_algebra* a, const char* request, char** json);

/* request: {"trials", "depth", "seed", "map": "aligned"|"scrambled",
 *           "scramble_level0"?, "law_src", "law_dst", "bits", "lattice",
 *           "generators"?}; response: CSV log */
int nc_couple_sample(const nc_algebra* g, const nc_algebra* h,
                     const char* request, char** csv);

/* request: {"p_grid"?, "depth"?}; response {"fit": {...}, "moments"?} */
int nc_couple_fit(const char* csv, const char* request, char** json);

/* request: {"relation": "same"|"different"|"unknown", "e"?: "p/q",
 *           "central_difference"?, "family"?: [m, n]};
 * response {"bounds": [{"kind", "value", "provenance"}]} */
int nc_couple_bounds(const nc_algebra* g, const nc_algebra* h,
                     const char* request, char** json);

/* ext_json: algebra file with an "omega" field. */
int nc_ext_check(const char* ext_json, char** json);

/* request: {"op": "psi"|"pairing"|"identity", "g1", "g2", "g3"?};
 * response {"value": "p/q"} */
int nc_ext_psi(const char* ext_json, const char* request, char** json);

/* request: {"kind": "growth", "trials", "box_log2", "seed"} or
 *          {"kind": "continuity", "trials", "r_log2", "eps_log2", "seed"};
 * response {"sup", "sup_doubled", "ratio", "trials"} */
int nc_ext_probe(const char* ext_json, const char* request, char** json);

/* Monte Carlo induction of the extension cocycle through a coupling from
 * src to the extension base. request: {"g1", "g2", "trials", "depth",
 * "seed", "map"?, "law_src", "law_dst", "bits", "lattice"};
 * response {"mean", "ci_lo", "ci_hi", "used", "excluded",
 *           "experimental": true} */
int nc_ext_induce(const nc_algebra* src, const char* ext_json,
                  const char* request, char** json);

#ifdef __cplusplus
}
#endif

#endif /* NILCOUPLING_H */

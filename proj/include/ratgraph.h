/* ratgraph.h -- C interface to the rational-graph toolkit.
 *
 * All objects are opaque handles carrying one formalism (finite automaton,
 * transducer, infinite automaton, tiling system or cellular acceptor) parsed
 * from the JSON text formats. Functions return rg_status; on any RG_ERR_*
 * result a description is available from rg_last_error() until the next call
 * on the same thread. Out-parameters are written only on
 * success; strings handed out are owned by the caller and released with
 * rg_string_free().
 *
 * Words are written as strings of single-character letters; multi-character
 * letter names are escaped in square brackets, e.g. "ab[x:q3]c".
 */
#ifndef RATGRAPH_H
#define RATGRAPH_H

#ifdef __cplusplus
extern "C" {
#endif

typedef struct rg_object rg_object;

typedef enum rg_status {
    RG_OK = 0,
    RG_REJECT = 1,          /* membership queries only */
    RG_ERR_INPUT = 2,       /* word/letter outside the declared alphabets */
    RG_ERR_PARSE = 3,       /* malformed file or object */
    RG_ERR_CLASS = 4,       /* operation outside the object's transducer class */
    RG_ERR_PRECONDITION = 5,/* conversion precondition failed */
    RG_ERR_UNSUPPORTED = 6, /* operation undefined for this kind */
    RG_ERR_INTERNAL = 7
} rg_status;

/* Construction and release. */
rg_status rg_parse(const char* json_text, rg_object** out);
rg_status rg_load(const char* path, rg_object** out);
void rg_free(rg_object* obj);
void rg_string_free(char* s);

/* "nfa", "transducer", "graph", "tiling" or "ca". */
const char* rg_kind(const rg_object* obj);
rg_status rg_to_json(const rg_object* obj, char** out_json);

/* Exact membership; RG_OK accept, RG_REJECT reject. */
rg_status rg_member(const rg_object* obj, const char* word);

/* JSON array of all accepted words of length <= max_len. */
rg_status rg_enumerate(const rg_object* obj, int max_len, char** out_json);

/* Apply a named conversion. param is the conversion's numeric argument where
 * one exists (the height slope of squarets2graph), ignored otherwise.
 * check-globdet returns no object (*out set to NULL) and reports its verdict
 * in the report JSON. */
rg_status rg_convert(const rg_object* obj, const char* conversion, int param, rg_object** out,
                     char** out_report_json);

/* Compare enumerated languages up to max_len; verdict JSON carries
 * equal_up_to, first_divergence and the word counts checked. */
rg_status rg_equiv(const rg_object* a, const rg_object* b, int max_len, char** out_json);

/* Class flags of a transducer, or of every edge relation of a graph. */
rg_status rg_classify(const rg_object* obj, char** out_json);

/* Distance -> max out-degree table around a vertex of a graph. */
rg_status rg_degree(const rg_object* obj, const char* vertex, int radius, char** out_json);

/* kind = "ambiguity" (graphs), "determinism" (graphs and tiling systems) or
 * "functional" (transducers); bounds are used per kind. */
rg_status rg_probe(const rg_object* obj, const char* kind, int max_len, int max_vertex_len,
                   char** out_json);

const char* rg_last_error(void);

#ifdef __cplusplus
}
#endif

#endif /* RATGRAPH_H */

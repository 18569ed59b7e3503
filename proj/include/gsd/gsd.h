#ifndef GSD_H
#define GSD_H

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes double as CLI exit codes: OK = certificate produced or
 * verified, INCONCLUSIVE = budget or search bound exhausted, INVALID =
 * malformed input or failed verification. */
typedef enum {
  GSD_OK = 0,
  GSD_INVALID = 1,
  GSD_INCONCLUSIVE = 2,
  GSD_ERROR = 3
} gsd_status;

/* Opaque handle for a group descriptor such as "free(2)", "Z^2",
 * "lamplighter", "direct(Z,Z)", "freeprod(Z,Z)". */
typedef struct gsd_group gsd_group;

gsd_group* gsd_group_open(const char* descriptor);
void gsd_group_close(gsd_group* g);

/* Every function below writes a malloc'd report or certificate text into
 * *out (also on failure, when a message is available); release it with
 * gsd_free_string. */
void gsd_free_string(char* s);

gsd_status gsd_ball(gsd_group* g, int radius, char** out);
gsd_status gsd_evaluate(gsd_group* g, const char* expr, char** out);

gsd_status gsd_folner(gsd_group* g, const char* epsilon, int r_max,
                      char** out);
gsd_status gsd_expand(gsd_group* g, int R, char** out);
gsd_status gsd_probe(gsd_group* g, int budget, char** out);

/* X_{S,T} certificate from the built-in classical decomposition of the
 * free group on two generators, verified on the interior of ball(R);
 * the report includes the Tarski bounds. */
gsd_status gsd_xst_classical(gsd_group* g, int R, char** out);

gsd_status gsd_build_compressible(gsd_group* g, int rho, int n, int toy,
                                  int R, char** out);

/* Re-verify any emitted certificate/patch/graph text. */
gsd_status gsd_verify(const char* text, char** out);

gsd_status gsd_subshift_check(const char* patch_text, char** out);
gsd_status gsd_subshift_extend(const char* spec_name, int radius, char** out);

/* Clopen-generator separation for a named spec with the symbol-at-identity
 * labeling, at label radius w. */
gsd_status gsd_gen_check(const char* spec_name, int w, char** out);

gsd_status gsd_f2_orbit(const char* x, const char* y, int depth, char** out);

/* direction +1 / -1 steps the odometer; compress != 0 applies the
 * compression map instead (digits must end inside {1,2}). */
gsd_status gsd_odometer(const char* digits, int direction, int compress,
                        char** out);

#ifdef __cplusplus
}
#endif

#endif /* GSD_H */

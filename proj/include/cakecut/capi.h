#ifndef CAKECUT_CAPI_H
#define CAKECUT_CAPI_H

/* C interface to the cake-division solver library. All objects are opaque
 * handles; every string returned through a char** is heap-allocated and
 * must be released with cc_string_free. Numeric parameters are rational
 * strings ("p/q" or "p") so exactness survives the language boundary. */

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cc_status {
  CC_OK = 0,
  CC_CHECK_FAILED = 1, /* a property/theorem check evaluated to false */
  CC_INVALID = 2,      /* bad input: parse error, invariant violation, usage */
  CC_BUDGET = 3,       /* an enumeration budget was exceeded */
  CC_ERROR = 4         /* internal error */
} cc_status;

typedef struct cc_instance cc_instance;
typedef struct cc_allocation cc_allocation;

/* Message for the most recent failure on this thread; never NULL. */
const char* cc_last_error(void);

void cc_string_free(char* s);

cc_status cc_instance_from_json(const char* json, cc_instance** out);
cc_status cc_instance_to_json(const cc_instance* inst, char** out);
int cc_instance_agent_count(const cc_instance* inst);
/* Diagnostics as a JSON array of strings; empty array means valid. */
cc_status cc_instance_validate(const cc_instance* inst, char** violations_json);
void cc_instance_free(cc_instance* inst);

cc_status cc_allocation_from_json(const cc_instance* inst, const char* json,
                                  cc_allocation** out);
cc_status cc_allocation_to_json(const cc_instance* inst, const cc_allocation* alloc,
                                char** out);
void cc_allocation_free(cc_allocation* alloc);

/* Moving-knife solvers. two_ef selects the gap-count-protected variant.
 * trace_jsonl (optional, may be NULL) receives one iteration record per
 * line. cut_and_choose short-circuits two-agent instances. */
cc_status cc_solve_ef(const cc_instance* inst, const char* epsilon, int two_ef,
                      int cut_and_choose, cc_allocation** out, char** trace_jsonl);

cc_status cc_solve_nsw_exhaustive(const cc_instance* inst, const char* alpha,
                                  unsigned long budget, cc_allocation** out);

cc_status cc_solve_rho_mean(const cc_instance* inst, const char* rho, const char* epsilon,
                            unsigned long point_budget, cc_allocation** out);

/* Welfare report (values, envy ratio, SW, NSW, optional rho-mean) as JSON.
 * rho may be NULL. */
cc_status cc_welfare_report_json(const cc_instance* inst, const cc_allocation* alloc,
                                 const char* rho, char** out);

cc_status cc_gen_random_json(int agents, int max_pieces, unsigned long long seed,
                             char** out);

/* Hardness gadget from DIMACS CNF text. rho == NULL builds the Nash variant
 * (auxiliary block, normalized); otherwise the rho-mean variant. pad != 0
 * first extends the formula with tautology clauses for missing polarities.
 * layout_json (optional) receives the cell/role sidecar. */
cc_status cc_gen_hardness_json(const char* dimacs, const char* rho, int pad,
                               char** instance_json, char** layout_json);

/* Theorem checks: theorem in {"ef3","ef2","nsw3","efnsw","price","4ef"} or
 * NULL/"" for plain validity. options_json may be NULL or carry any of
 * {"resolution","rho","epsilon","slack","budget"}. Returns CC_OK on pass,
 * CC_CHECK_FAILED on a false property (verdict_json is written either way). */
cc_status cc_verify(const cc_instance* inst, const cc_allocation* alloc,
                    const char* theorem, const char* options_json, char** verdict_json);

#ifdef __cplusplus
}
#endif

#endif /* CAKECUT_CAPI_H */

/* Licensed under the Apache License, Version 2.0.
 * C interface to the fhg library. Documents and reports are opaque handles owned by the caller.
 * Strings returned through char** are allocated by the library; release them with fhg_string_free.
 * Functions returning a report succeed even when a check fails; inspect fhg_report_ok. */
#ifndef FHG_C_API_H
#define FHG_C_API_H

#include <stddef.h>

#if defined(_WIN32)
#define FHG_API __declspec(dllexport)
#else
#define FHG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct fhg_document fhg_document;
typedef struct fhg_report fhg_report;

typedef enum fhg_status {
  FHG_OK = 0,
  FHG_CHECK_FAILED = 1,   /* a verification returned FAIL */
  FHG_INPUT_ERROR = 2,    /* malformed JSON, schema error or unsuitable document */
  FHG_BAD_ARGUMENT = 3,   /* null handle or out-of-range parameter */
  FHG_INTERNAL_ERROR = 4
} fhg_status;

typedef enum fhg_order { FHG_ORDER_LEAST = 0, FHG_ORDER_GREATEST = 1 } fhg_order;

FHG_API const char* fhg_version(void);
/* Message for the last non-OK status on this thread; empty when none. */
FHG_API const char* fhg_last_error(void);
FHG_API void fhg_string_free(char* s);

FHG_API fhg_status fhg_document_parse(const char* text, size_t length, fhg_document** out);
FHG_API fhg_status fhg_document_emit(const fhg_document* doc, char** out);
/* One of "simplicial", "two_groupoid", "groupoid", "bibundle", "stacky", "map". */
FHG_API const char* fhg_document_kind(const fhg_document* doc);
FHG_API void fhg_document_free(fhg_document* doc);

/* Names: point, pair:k, group:cyclic:m, group:symmetric:k, xmod:Z2Z2, cech, ordinary-groupoid[:name],
 * identity:name (identity map of a groupoid or 2-groupoid fixture).
 * level is the truncation of simplicial output (cech); pass 0 for the default of 2. */
FHG_API fhg_status fhg_fixture(const char* name, int level, fhg_document** out);

/* Structural verification. as may be NULL or one of simplicial, two-groupoid, groupoid, bibundle, stacky;
 * a two_groupoid document checked as simplicial uses its nerve, a simplicial one checked as two-groupoid
 * its truncation, a two_groupoid checked as stacky its stacky data. */
FHG_API fhg_status fhg_check(const fhg_document* doc, const char* as, fhg_report** out);
/* Kan conditions of an n-groupoid for horns of dimension <= up_to; up_to <= 0 picks the document's level,
 * or 4 for groupoids and 2-groupoid data. */
FHG_API fhg_status fhg_check_n_groupoid(const fhg_document* doc, int n, int up_to, fhg_report** out);

FHG_API fhg_status fhg_nerve(const fhg_document* doc, int level, fhg_document** out);
FHG_API fhg_status fhg_truncate(const fhg_document* doc, fhg_document** out);
FHG_API fhg_status fhg_to_stacky(const fhg_document* doc, fhg_order order, fhg_document** out);
FHG_API fhg_status fhg_from_stacky(const fhg_document* doc, fhg_document** out);

/* degree < 0 picks min(2, truncation). one asks for a bijection on objects as well. */
FHG_API fhg_status fhg_equivalence(const fhg_document* map, int degree, int one, fhg_report** out);
/* z, left and right may not be NULL. */
FHG_API fhg_status fhg_fiber_product(const fhg_document* f, const fhg_document* g, fhg_document** z,
                                     fhg_document** left, fhg_document** right);
FHG_API fhg_status fhg_compose_bibundles(const fhg_document* e, const fhg_document* f, fhg_order order,
                                         fhg_document** out);
FHG_API fhg_status fhg_inverse_bibundle(const fhg_document* stacky, fhg_document** out);
/* witness may be NULL; it receives the middle 2-groupoid when one is found, else NULL. */
FHG_API fhg_status fhg_morita_search(const fhg_document* x, const fhg_document* y, int bound, fhg_report** out,
                                     fhg_document** witness);

FHG_API int fhg_report_ok(const fhg_report* report);
FHG_API fhg_status fhg_report_text(const fhg_report* report, char** out);
FHG_API fhg_status fhg_report_json(const fhg_report* report, char** out);
FHG_API void fhg_report_free(fhg_report* report);

#ifdef __cplusplus
}
#endif

#endif

/* C interface to the iwasawa verification library.
 *
 * Objects are opaque handles created and destroyed through this API.  Every fallible call
 * returns an iw_status; on failure the message of the last error on the calling thread is
 * available from iw_last_error().  Strings returned through char** out-parameters are owned
 * by the caller and released with iw_string_free(). */
#ifndef IWASAWA_H
#define IWASAWA_H

#include <stddef.h>
#include <stdint.h>

#if defined(IWASAWA_BUILDING_LIBRARY)
#define IWASAWA_API __attribute__((visibility("default")))
#else
#define IWASAWA_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum iw_status {
    IW_OK = 0,
    IW_ERR_INVALID_ARGUMENT = 1,
    IW_ERR_PARSE = 2,
    IW_ERR_NON_UNIT = 3,
    IW_ERR_INEXACT_DIVISION = 4,
    IW_ERR_INTEGRALITY = 5,
    IW_ERR_NON_INTEGRAL = 6,
    IW_ERR_BOUND_EXCEEDED = 7,
    IW_ERR_INTERNAL = 8
} iw_status;

typedef struct iw_level iw_level;   /* a level group with its subgroup lattice */
typedef struct iw_report iw_report; /* the result of one verification suite */

IWASAWA_API const char* iw_status_message(iw_status status);
IWASAWA_API const char* iw_last_error(void);
IWASAWA_API void iw_string_free(char* s);

/* group_spec: a one-line family spec such as "heisenberg:3", or a full semidirect block */
IWASAWA_API iw_status iw_level_create(const char* group_spec, int level, iw_level** out);
IWASAWA_API void iw_level_destroy(iw_level* level);
IWASAWA_API iw_status iw_level_orders(const iw_level* level, int* quotient_order, int* level_order,
                                      int* subgroup_count);
IWASAWA_API iw_status iw_level_describe_json(const iw_level* level, char** json_out);

IWASAWA_API iw_status iw_verify_additive(const iw_level* level, int precision, iw_report** out);
IWASAWA_API iw_status iw_verify_k1(const iw_level* level, int precision, int samples, uint64_t seed,
                                   iw_report** out);
IWASAWA_API iw_status iw_verify_congruence(const iw_level* level, int precision, int samples, uint64_t seed,
                                           iw_report** out);
/* sigma may be NULL when sigma_len is 0; p and the primes of the conductor are always added */
IWASAWA_API iw_status iw_verify_zeta(uint64_t p, uint64_t conductor, int level, int k, int kprime,
                                     const uint64_t* sigma, size_t sigma_len, int u_power, iw_report** out);
/* Re-runs a certificate from its recorded inputs.  *identical is set to 1 when the fresh
 * certificate is byte-identical to the recorded one. */
IWASAWA_API iw_status iw_replay(const char* certificate_json, int* identical, iw_report** out);

IWASAWA_API int iw_report_passed(const iw_report* report);
IWASAWA_API size_t iw_report_verdict_count(const iw_report* report);
/* *name points into the report and stays valid until the report is destroyed */
IWASAWA_API iw_status iw_report_verdict(const iw_report* report, size_t index, const char** name, int* passed);
IWASAWA_API iw_status iw_report_certificate(const iw_report* report, char** json_out);
IWASAWA_API iw_status iw_report_text(const iw_report* report, char** text_out);
IWASAWA_API void iw_report_destroy(iw_report* report);

/* Delta-table import: parses and validates a table, then checks the k-independence
 * congruence between weights k and kprime.  *passed receives the verdict. */
IWASAWA_API iw_status iw_delta_table_check(const char* table_text, int k, int kprime, int* passed);

#ifdef __cplusplus
}
#endif

#endif

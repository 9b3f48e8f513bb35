/* C interface to the csmcg core. Handles are opaque; every call returns a status code and,
 * on failure, leaves a message retrievable with csmcg_last_error() on the calling thread.
 * Strings returned through char** are heap-allocated and released with csmcg_string_free(). */
#ifndef CSMCG_H
#define CSMCG_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CSMCG_API __declspec(dllexport)
#else
#define CSMCG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum csmcg_status {
    CSMCG_OK = 0,
    CSMCG_INVALID_ARGUMENT = 1,
    CSMCG_DOMAIN = 2,
    CSMCG_RESOURCE = 3,
    CSMCG_TRUNCATION = 4,
    CSMCG_INCONSISTENT = 5,
    CSMCG_IO = 6,
    CSMCG_UNSUPPORTED = 7,
    CSMCG_INTERNAL = 8
} csmcg_status;

typedef struct csmcg_root_system csmcg_root_system;
typedef struct csmcg_sector_rep csmcg_sector_rep;

typedef enum csmcg_det_placement { CSMCG_DET_LEMMA = 0, CSMCG_DET_THEOREM = 1 } csmcg_det_placement;
typedef enum csmcg_t_phase { CSMCG_T_PLUS = 0, CSMCG_T_MINUS = 1 } csmcg_t_phase;
typedef enum csmcg_s_exponent { CSMCG_S_INVERSE = 0, CSMCG_S_DIRECT = 1 } csmcg_s_exponent;

typedef struct csmcg_convention {
    csmcg_det_placement det;
    csmcg_t_phase t_phase;
    csmcg_s_exponent s_exponent;
} csmcg_convention;

CSMCG_API const char* csmcg_version(void);
CSMCG_API const char* csmcg_last_error(void);
CSMCG_API void csmcg_string_free(char* s);
CSMCG_API const char* csmcg_status_name(csmcg_status s);
CSMCG_API csmcg_convention csmcg_default_convention(void);

/* root systems */
CSMCG_API csmcg_status csmcg_root_system_create(char family, int rank, csmcg_root_system** out);
CSMCG_API void csmcg_root_system_destroy(csmcg_root_system* rs);
CSMCG_API int csmcg_root_system_rank(const csmcg_root_system* rs);
CSMCG_API csmcg_status csmcg_root_system_info(const csmcg_root_system* rs, char** json);

/* quotient group and alcove points at level k */
CSMCG_API csmcg_status csmcg_lattice_enumerate(const csmcg_root_system* rs, int64_t k, char** json);

/* finite sector representations */
CSMCG_API csmcg_status csmcg_sector_rep_build(const csmcg_root_system* rs, int64_t k, int sector,
                                              csmcg_convention conv, csmcg_sector_rep** out);
CSMCG_API void csmcg_sector_rep_destroy(csmcg_sector_rep* rep);
CSMCG_API size_t csmcg_sector_rep_dimension(const csmcg_sector_rep* rep);
/* row-major interleaved (re, im); buffers hold 2 * dim * dim doubles */
CSMCG_API csmcg_status csmcg_sector_rep_matrices(const csmcg_sector_rep* rep, double* s_out, double* t_out);
/* matrices, labels and a relation report; *passed is 1 when every residual is below tol */
CSMCG_API csmcg_status csmcg_sector_rep_json(const csmcg_sector_rep* rep, double tol, char** json, int* passed);
/* generator 'S' or 'T' */
CSMCG_API csmcg_status csmcg_sector_rep_csv(const csmcg_sector_rep* rep, char generator, char** csv);
/* re-verify the relations on a stored rep JSON document */
CSMCG_API csmcg_status csmcg_rep_verify_json(const char* rep_json, double tol, char** report, int* passed);

/* Weil-Gel'fand-Zak transform */
CSMCG_API csmcg_status csmcg_wgz_roundtrip(const csmcg_root_system* rs, int64_t k, int resolution, double box,
                                           int samples, uint64_t seed, double tol, int operator_checks,
                                           char** json, int* passed);

/* heat kernel and eta; sigma defaults to i b when has_sigma is 0 */
CSMCG_API csmcg_status csmcg_kernel_params(int64_t k, double s, int branch, char** json);
/* v_l sampled on an orthonormal grid of the given step and box radius; l has n entries */
CSMCG_API csmcg_status csmcg_kernel_hermite(int n, const int64_t* l, double sigma_re, double sigma_im, double step,
                                            double box, int normalized, char** grid_json);
/* method 0: Mehler quadrature on the grid, 1: Hermite projection up to L then the diagonal action */
CSMCG_API csmcg_status csmcg_kernel_heat(int64_t k, double s, int branch, int has_sigma, double sigma_re,
                                         double sigma_im, int method, int L, const char* grid_json,
                                         char** grid_out);
CSMCG_API csmcg_status csmcg_kernel_eta(const csmcg_root_system* rs, int64_t k, double s, int branch, int sector,
                                        char generator, const char* grid_json, char** grid_out);
CSMCG_API csmcg_status csmcg_kernel_verify(int64_t k, double s, double sigma_re, double sigma_im, int L, int core,
                                           double box, double step, double tol_conjugation, double tol_relations,
                                           char** json, int* passed);

/* compact-theory bridge at level k + h, sector 1 */
CSMCG_API csmcg_status csmcg_compare_compact(const csmcg_root_system* rs, int64_t k, csmcg_convention conv,
                                             double tol, char** json, int* passed);

CSMCG_API csmcg_status csmcg_grid_to_csv(const char* grid_json, char** csv);

#ifdef __cplusplus
}
#endif

#endif

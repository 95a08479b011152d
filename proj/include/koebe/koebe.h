/* C interface to the Koebe group library. All handles are opaque; every
 * fallible call returns a koebe_status and records a message retrievable
 * with koebe_last_error_message() on the calling thread. Strings returned
 * through char** must be released with koebe_string_free(). */
#ifndef KOEBE_KOEBE_H
#define KOEBE_KOEBE_H

#include <stddef.h>

#if defined(_WIN32)
#define KOEBE_API __declspec(dllexport)
#else
#define KOEBE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum koebe_status {
    KOEBE_OK = 0,
    KOEBE_ERR_INVALID_ARGUMENT = 1,
    KOEBE_ERR_PARSE = 2,
    KOEBE_ERR_DEGENERATE_TRIPLE = 3,
    KOEBE_ERR_IDENTITY_ELEMENT = 4,
    KOEBE_ERR_WRONG_ELEMENT_TYPE = 5,
    KOEBE_ERR_AMBIGUOUS_ORIENTATION = 6,
    KOEBE_ERR_NOT_ON_GEODESIC = 7,
    KOEBE_ERR_UNSUPPORTED_SIGNATURE = 8,
    KOEBE_ERR_UNSUPPORTED_ROW = 9,
    KOEBE_ERR_ELLIPTIC_DIHEDRAL_FACTOR = 10,
    KOEBE_ERR_SHARED_ELEMENT_MISMATCH = 11,
    KOEBE_ERR_GLUING_ORDER_INVALID = 12,
    KOEBE_ERR_COORDINATE_OUTSIDE_OUTER_DOMAIN = 13,
    KOEBE_ERR_BUDGET_EXCEEDED = 14,
    KOEBE_ERR_INTERNAL = 15,
    KOEBE_ERR_IO = 16,
    KOEBE_ERR_UNKNOWN = 99
} koebe_status;

typedef struct koebe_complex {
    double re, im;
} koebe_complex;

/* Normalized to determinant 1 with the canonical sign. */
typedef struct koebe_matrix {
    koebe_complex a, b, c, d;
} koebe_matrix;

typedef struct koebe_point {
    int is_infinity;
    koebe_complex z;
} koebe_point;

typedef struct koebe_group koebe_group;
typedef struct koebe_orbit koebe_orbit;

/* Ramification values in the plain C calls: integers >= 2, or 0 for infinity. */
#define KOEBE_INFINITY 0

KOEBE_API const char* koebe_version(void);
KOEBE_API const char* koebe_status_string(koebe_status status);
KOEBE_API const char* koebe_last_error_message(void);
KOEBE_API void koebe_string_free(char* s);

/* Tolerance for relation checks. Defaults to KOEBE_TOL from the environment,
 * else 1e-8. Must be positive. */
KOEBE_API koebe_status koebe_set_tolerance(double tol);
KOEBE_API double koebe_get_tolerance(void);

/* Canonical generators A, B of a triangle group. */
KOEBE_API koebe_status koebe_triangle_generators(const int nu[3], const koebe_point params[3],
                                                 koebe_matrix* a, koebe_matrix* b);
KOEBE_API koebe_status koebe_triangle_json(const char* request_json, char** out_json);
KOEBE_API koebe_status koebe_combine_json(const char* request_json, char** out_json);

KOEBE_API koebe_status koebe_group_build(const char* spec_json, koebe_group** out);
KOEBE_API koebe_status koebe_group_load(const char* group_json, koebe_group** out);
KOEBE_API void koebe_group_free(koebe_group* group);

KOEBE_API koebe_status koebe_group_generator_count(const koebe_group* group, size_t* count);
/* name stays valid for the lifetime of the group; may be NULL. */
KOEBE_API koebe_status koebe_group_generator(const koebe_group* group, size_t index,
                                             koebe_matrix* m, const char** name);
KOEBE_API koebe_status koebe_group_certified(const koebe_group* group, int* certified);

/* Coordinates recomputed from the node data. Writes min(capacity, n)
 * values and reports n through count. */
KOEBE_API koebe_status koebe_group_coordinates(const koebe_group* group, koebe_complex* out,
                                               size_t capacity, size_t* count);
KOEBE_API koebe_status koebe_group_plumbing(const koebe_group* group, koebe_complex* out,
                                            size_t capacity, size_t* count);

KOEBE_API koebe_status koebe_group_to_json(const koebe_group* group, char** out_json);
KOEBE_API koebe_status koebe_group_coordinates_json(const koebe_group* group, char** out_json);
KOEBE_API koebe_status koebe_group_plumbing_json(const koebe_group* group, char** out_json);
/* warnings receives the number of unverified-discreteness warnings. */
KOEBE_API koebe_status koebe_group_verify_json(const koebe_group* group, int max_word_length,
                                               size_t budget, char** out_json, int* warnings);

/* Orbit sample of the limit set. Reaching max_points yields a partial orbit
 * with koebe_orbit_budget_exceeded() set, not an error. */
KOEBE_API koebe_status koebe_group_limit_set(const koebe_group* group, int max_word_length,
                                             size_t max_points, koebe_orbit** out);
KOEBE_API size_t koebe_orbit_size(const koebe_orbit* orbit);
KOEBE_API int koebe_orbit_budget_exceeded(const koebe_orbit* orbit);
KOEBE_API koebe_status koebe_orbit_point(const koebe_orbit* orbit, size_t index, koebe_point* p);
KOEBE_API koebe_status koebe_orbit_write_csv(const koebe_orbit* orbit, const char* path);
KOEBE_API koebe_status koebe_orbit_write_svg(const koebe_orbit* orbit, const char* path);
KOEBE_API void koebe_orbit_free(koebe_orbit* orbit);

#ifdef __cplusplus
}
#endif

#endif /* KOEBE_KOEBE_H */

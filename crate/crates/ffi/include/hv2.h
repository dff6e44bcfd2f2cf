/* C interface for the hv2 exact computer-algebra engine. */

#pragma once

/* Generated with cbindgen:0.29.4 */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes for every fallible call.
 */
typedef enum Hv2Status {
  HV2_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  HV2_STATUS_NULL_ARGUMENT = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  HV2_STATUS_UTF8 = 2,
  /**
   * Malformed scalar, polynomial, generator, or record text.
   */
  HV2_STATUS_PARSE = 3,
  /**
   * Division by zero or another impossible exact-arithmetic step.
   */
  HV2_STATUS_ARITHMETIC = 4,
  /**
   * Inputs violate a documented precondition.
   */
  HV2_STATUS_PRECONDITION = 5,
  /**
   * The two records cannot be compared (different variant or parameters).
   */
  HV2_STATUS_INCOMPATIBLE = 6,
  /**
   * An action family did not match any classified shape.
   */
  HV2_STATUS_NOT_CLASSIFIED = 7,
  /**
   * A window too small to generate the required constraints.
   */
  HV2_STATUS_WINDOW = 8,
  /**
   * The operation is not defined on the given domain.
   */
  HV2_STATUS_UNSUPPORTED = 9,
  /**
   * A panic was caught at the boundary.
   */
  HV2_STATUS_PANIC = 10,
} Hv2Status;

/**
 * Opaque handle to an exact polynomial in `d1`, `d2`.
 */
typedef struct Hv2Poly Hv2Poly;

/**
 * Opaque handle to a module record.
 */
typedef struct Hv2Spec Hv2Spec;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a module record from its flag-set form, e.g.
 * `"--p 1,0 --lambda 2,3 --alpha 0 --b0 1"`.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be a valid pointer.
 */
enum Hv2Status hv2_spec_parse(const char *text, struct Hv2Spec **out);

/**
 * Renders the canonical flag-set form of a record.
 *
 * # Safety
 * `spec` must come from `hv2_spec_parse`; `out` must be a valid pointer.
 * Free the string with `hv2_string_free`.
 */
enum Hv2Status hv2_spec_render(const struct Hv2Spec *spec, char **out);

/**
 * Releases a record handle. Null is ignored.
 *
 * # Safety
 * `spec` must be null or come from `hv2_spec_parse`, and must not be used
 * afterwards.
 */
void hv2_spec_free(struct Hv2Spec *spec);

/**
 * Parses a polynomial such as `"d1^2*d2 - 1/2*d2 + 2i"`.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be a valid pointer.
 */
enum Hv2Status hv2_poly_parse(const char *text, struct Hv2Poly **out);

/**
 * Renders a polynomial in canonical graded-lexicographic order.
 *
 * # Safety
 * `poly` must come from a parse or action call; `out` must be a valid
 * pointer. Free the string with `hv2_string_free`.
 */
enum Hv2Status hv2_poly_render(const struct Hv2Poly *poly, char **out);

/**
 * Releases a polynomial handle. Null is ignored.
 *
 * # Safety
 * `poly` must be null or come from this interface, and must not be used
 * afterwards.
 */
void hv2_poly_free(struct Hv2Poly *poly);

/**
 * Releases a string returned by this interface. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string returned by this interface, and must not be
 * used afterwards.
 */
void hv2_string_free(char *s);

/**
 * Applies one generator (literal `"T(m1,m2)"`, `"E(m1,m2)"`, `"D1"`, or
 * `"D2"`) to a polynomial under the record's action.
 *
 * # Safety
 * `spec` and `f` must be live handles; `generator` a NUL-terminated string;
 * `out` a valid pointer. The result is a new handle.
 */
enum Hv2Status hv2_act(const struct Hv2Spec *spec,
                       const char *generator,
                       const struct Hv2Poly *f,
                       struct Hv2Poly **out);

/**
 * Whether `f` lies in the record's distinguished submodule (vanishes at the
 * submodule point).
 *
 * # Safety
 * `spec` and `f` must be live handles; `out` a valid pointer.
 */
enum Hv2Status hv2_in_distinguished_submodule(const struct Hv2Spec *spec,
                                              const struct Hv2Poly *f,
                                              bool *out);

/**
 * Scans `[-bound, bound]^2` lexicographically for an index whose T-action
 * pushes `f` out of the distinguished submodule. On success `*found` says
 * whether a witness exists within the bound and `*m1`, `*m2` hold it.
 *
 * # Safety
 * `spec` and `f` must be live handles; `found`, `m1`, `m2` valid pointers.
 */
enum Hv2Status hv2_simplicity_witness(const struct Hv2Spec *spec,
                                      const struct Hv2Poly *f,
                                      int64_t bound,
                                      bool *found,
                                      int64_t *m1,
                                      int64_t *m2);

/**
 * Copies the current thread's last error message (empty if none).
 *
 * # Safety
 * `out` must be a valid pointer. Free the string with `hv2_string_free`.
 */
enum Hv2Status hv2_last_error_message(char **out);

/**
 * Runs one CLI invocation in-process. `argv` follows the C `main`
 * convention (`argv[0]` is the program name). The rendered standard output
 * and standard error are returned through the out-parameters (free with
 * `hv2_string_free`); the return value is the process exit code (0 pass,
 * 1 failures, 2 usage error, 3 arithmetic/precondition error), or -1 for
 * null/invalid arguments or an internal panic.
 *
 * # Safety
 * `argv` must point to `argc` NUL-terminated strings; `out_stdout` and
 * `out_stderr` must be valid pointers.
 */
int hv2_run(int argc, const char *const *argv, char **out_stdout, char **out_stderr);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#pragma once

#include <cstddef>
#include <cstdint>

// Low-level per-pixel kernels behind the vectorizer and the guidance math.
//
// Every kernel exists in two forms: a scalar reference implementation
// (namespace kernels::scalar) and an AVX2 variant (namespace kernels::avx2,
// built only on x86-64 with PLANVEC_ENABLE_AVX2).  The unqualified entry
// points dispatch at runtime to the widest variant the CPU supports;
// force_backend() pins one explicitly.
//
// Equivalence contract, asserted by the kernel tests:
//   * integer kernels (gray_from_rgb, binarize_u8, sobel_u8,
//     gradient_products, add_sub_rows_i32) are exact — identical bytes.
//   * corner_response_map and the masked elementwise guidance kernels
//     use the same operation order in both variants (explicit mul/add,
//     no FMA; the build sets -ffp-contract=off) — identical bits.
//   * masked_sq_residual is a reduction; SIMD lanes change the summation
//     order, so variants agree only to floating-point tolerance.

namespace planvec::kernels {

enum class Backend { Scalar, Avx2 };

// True when the AVX2 translation unit was compiled in.
bool avx2_compiled();
// True when the running CPU can execute it.
bool avx2_supported();

// Backend the unqualified entry points currently use.
Backend active_backend();
const char* backend_name(Backend b);
// Pin a backend; throws std::runtime_error if it is not available here.
void force_backend(Backend b);
// Return to automatic detection.
void auto_backend();

#define PLANVEC_KERNEL_API(ns)                                                 \
  namespace ns {                                                               \
  /* gray[i] = round((r+g+b)/3), computed as (2*(r+g+b)+3)/6 in integers */    \
  void gray_from_rgb(const std::uint8_t* rgb, std::uint8_t* gray,              \
                     std::size_t n);                                           \
  /* ink[i] = gray[i] < threshold ? 1 : 0 */                                   \
  void binarize_u8(const std::uint8_t* gray, std::uint8_t threshold,           \
                   std::uint8_t* ink, std::size_t n);                          \
  /* 3x3 Sobel with edge replication; gx kernel [-1 0 1; -2 0 2; -1 0 1],     \
     gy its transpose with +y pointing down.  Requires w >= 3, h >= 3. */     \
  void sobel_u8(const std::uint8_t* img, int w, int h, std::int16_t* gx,       \
                std::int16_t* gy);                                             \
  /* ixx = gx*gx, ixy = gx*gy, iyy = gy*gy (widening, exact) */                \
  void gradient_products(const std::int16_t* gx, const std::int16_t* gy,       \
                         std::int32_t* ixx, std::int32_t* ixy,                 \
                         std::int32_t* iyy, std::size_t n);                    \
  /* acc[i] += add[i] - sub[i]; rolling update for vertical box sums */        \
  void add_sub_rows_i32(std::int32_t* acc, const std::int32_t* add,            \
                        const std::int32_t* sub, std::size_t n);               \
  /* resp[i] = smaller eigenvalue of [a b; b c]:                              \
     0.5*(a+c) - sqrt((0.5*(a-c))^2 + b^2) */                                  \
  void corner_response_map(const std::int32_t* a, const std::int32_t* b,       \
                           const std::int32_t* c, double* resp,               \
                           std::size_t n);                                     \
  /* v[i] = value where mask[i] != 0 */                                        \
  void fill_masked(double* v, const std::uint8_t* mask, double value,          \
                   std::size_t n);                                             \
  /* sum over mask of (v[i] - 1)^2 */                                          \
  double masked_sq_residual(const double* v, const std::uint8_t* mask,         \
                            std::size_t n);                                    \
  /* out[i] = mask[i] ? (v[i] - 1) * k : 0 */                                  \
  void masked_residual_scale(const double* v, const std::uint8_t* mask,        \
                             double k, double* out, std::size_t n);            \
  /* x[i] -= g[i] * coef where mask[i] != 0; other lanes untouched bitwise */  \
  void masked_axpy(double* x, const double* g, const std::uint8_t* mask,       \
                   double coef, std::size_t n);                                \
  }

PLANVEC_KERNEL_API(scalar)
PLANVEC_KERNEL_API(avx2)  // throwing stubs when not compiled in

// Dispatched entry points (same signatures, no namespace).
void gray_from_rgb(const std::uint8_t* rgb, std::uint8_t* gray, std::size_t n);
void binarize_u8(const std::uint8_t* gray, std::uint8_t threshold,
                 std::uint8_t* ink, std::size_t n);
void sobel_u8(const std::uint8_t* img, int w, int h, std::int16_t* gx,
              std::int16_t* gy);
void gradient_products(const std::int16_t* gx, const std::int16_t* gy,
                       std::int32_t* ixx, std::int32_t* ixy, std::int32_t* iyy,
                       std::size_t n);
void add_sub_rows_i32(std::int32_t* acc, const std::int32_t* add,
                      const std::int32_t* sub, std::size_t n);
void corner_response_map(const std::int32_t* a, const std::int32_t* b,
                         const std::int32_t* c, double* resp, std::size_t n);
void fill_masked(double* v, const std::uint8_t* mask, double value,
                 std::size_t n);
double masked_sq_residual(const double* v, const std::uint8_t* mask,
                          std::size_t n);
void masked_residual_scale(const double* v, const std::uint8_t* mask, double k,
                           double* out, std::size_t n);
void masked_axpy(double* x, const double* g, const std::uint8_t* mask,
                 double coef, std::size_t n);

#undef PLANVEC_KERNEL_API

}  // namespace planvec::kernels

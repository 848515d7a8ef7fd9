#include "planvec/kernels.hpp"

#include <stdexcept>

namespace planvec::kernels {

namespace {

bool detect_avx2() {
#ifdef PLANVEC_HAVE_AVX2
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

Backend& current() {
  static Backend b = detect_avx2() ? Backend::Avx2 : Backend::Scalar;
  return b;
}

}  // namespace

bool avx2_compiled() {
#ifdef PLANVEC_HAVE_AVX2
  return true;
#else
  return false;
#endif
}

bool avx2_supported() { return avx2_compiled() && detect_avx2(); }

Backend active_backend() { return current(); }

const char* backend_name(Backend b) {
  return b == Backend::Avx2 ? "avx2" : "scalar";
}

void force_backend(Backend b) {
  if (b == Backend::Avx2 && !avx2_supported())
    throw std::runtime_error("avx2 backend not available on this machine");
  current() = b;
}

void auto_backend() { current() = detect_avx2() ? Backend::Avx2 : Backend::Scalar; }

#ifndef PLANVEC_HAVE_AVX2
// Stubs keep the avx2:: symbols linkable in scalar-only builds; the tests
// gate every call on avx2_compiled().
namespace avx2 {
namespace {
[[noreturn]] void unavailable() {
  throw std::runtime_error("avx2 kernels were not compiled into this build");
}
}  // namespace
void gray_from_rgb(const std::uint8_t*, std::uint8_t*, std::size_t) { unavailable(); }
void binarize_u8(const std::uint8_t*, std::uint8_t, std::uint8_t*, std::size_t) { unavailable(); }
void sobel_u8(const std::uint8_t*, int, int, std::int16_t*, std::int16_t*) { unavailable(); }
void gradient_products(const std::int16_t*, const std::int16_t*, std::int32_t*,
                       std::int32_t*, std::int32_t*, std::size_t) { unavailable(); }
void add_sub_rows_i32(std::int32_t*, const std::int32_t*, const std::int32_t*,
                      std::size_t) { unavailable(); }
void corner_response_map(const std::int32_t*, const std::int32_t*,
                         const std::int32_t*, double*, std::size_t) { unavailable(); }
void fill_masked(double*, const std::uint8_t*, double, std::size_t) { unavailable(); }
double masked_sq_residual(const double*, const std::uint8_t*, std::size_t) { unavailable(); }
void masked_residual_scale(const double*, const std::uint8_t*, double, double*,
                           std::size_t) { unavailable(); }
void masked_axpy(double*, const double*, const std::uint8_t*, double,
                 std::size_t) { unavailable(); }
}  // namespace avx2
#endif  // !PLANVEC_HAVE_AVX2

#define PLANVEC_DISPATCH(call)                        \
  do {                                                \
    if (current() == Backend::Avx2) return avx2::call; \
    return scalar::call;                              \
  } while (0)

void gray_from_rgb(const std::uint8_t* rgb, std::uint8_t* gray, std::size_t n) {
  PLANVEC_DISPATCH(gray_from_rgb(rgb, gray, n));
}
void binarize_u8(const std::uint8_t* gray, std::uint8_t threshold,
                 std::uint8_t* ink, std::size_t n) {
  PLANVEC_DISPATCH(binarize_u8(gray, threshold, ink, n));
}
void sobel_u8(const std::uint8_t* img, int w, int h, std::int16_t* gx,
              std::int16_t* gy) {
  PLANVEC_DISPATCH(sobel_u8(img, w, h, gx, gy));
}
void gradient_products(const std::int16_t* gx, const std::int16_t* gy,
                       std::int32_t* ixx, std::int32_t* ixy, std::int32_t* iyy,
                       std::size_t n) {
  PLANVEC_DISPATCH(gradient_products(gx, gy, ixx, ixy, iyy, n));
}
void add_sub_rows_i32(std::int32_t* acc, const std::int32_t* add,
                      const std::int32_t* sub, std::size_t n) {
  PLANVEC_DISPATCH(add_sub_rows_i32(acc, add, sub, n));
}
void corner_response_map(const std::int32_t* a, const std::int32_t* b,
                         const std::int32_t* c, double* resp, std::size_t n) {
  PLANVEC_DISPATCH(corner_response_map(a, b, c, resp, n));
}
void fill_masked(double* v, const std::uint8_t* mask, double value,
                 std::size_t n) {
  PLANVEC_DISPATCH(fill_masked(v, mask, value, n));
}
double masked_sq_residual(const double* v, const std::uint8_t* mask,
                          std::size_t n) {
  PLANVEC_DISPATCH(masked_sq_residual(v, mask, n));
}
void masked_residual_scale(const double* v, const std::uint8_t* mask, double k,
                           double* out, std::size_t n) {
  PLANVEC_DISPATCH(masked_residual_scale(v, mask, k, out, n));
}
void masked_axpy(double* x, const double* g, const std::uint8_t* mask,
                 double coef, std::size_t n) {
  PLANVEC_DISPATCH(masked_axpy(x, g, mask, coef, n));
}

#undef PLANVEC_DISPATCH

}  // namespace planvec::kernels

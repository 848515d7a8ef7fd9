#include "planvec/kernels.hpp"

#include <cmath>

// Reference implementations.  Plain loops, no tricks: these define the
// semantics the SIMD variants are tested against.

namespace planvec::kernels::scalar {

void gray_from_rgb(const std::uint8_t* rgb, std::uint8_t* gray, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t s = static_cast<std::uint32_t>(rgb[3 * i]) + rgb[3 * i + 1] +
                      rgb[3 * i + 2];
    gray[i] = static_cast<std::uint8_t>((2 * s + 3) / 6);  // round(s/3)
  }
}

void binarize_u8(const std::uint8_t* gray, std::uint8_t threshold,
                 std::uint8_t* ink, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) ink[i] = gray[i] < threshold ? 1 : 0;
}

void sobel_u8(const std::uint8_t* img, int w, int h, std::int16_t* gx,
              std::int16_t* gy) {
  for (int y = 0; y < h; ++y) {
    const std::uint8_t* rm = img + static_cast<std::size_t>(y > 0 ? y - 1 : 0) * w;
    const std::uint8_t* rc = img + static_cast<std::size_t>(y) * w;
    const std::uint8_t* rp =
        img + static_cast<std::size_t>(y < h - 1 ? y + 1 : h - 1) * w;
    std::int16_t* ox = gx + static_cast<std::size_t>(y) * w;
    std::int16_t* oy = gy + static_cast<std::size_t>(y) * w;
    for (int x = 0; x < w; ++x) {
      int xl = x > 0 ? x - 1 : 0;
      int xr = x < w - 1 ? x + 1 : w - 1;
      int tl = rm[xl], tc = rm[x], tr = rm[xr];
      int cl = rc[xl], cr = rc[xr];
      int bl = rp[xl], bc = rp[x], br = rp[xr];
      ox[x] = static_cast<std::int16_t>((tr - tl) + 2 * (cr - cl) + (br - bl));
      oy[x] = static_cast<std::int16_t>((bl + 2 * bc + br) - (tl + 2 * tc + tr));
    }
  }
}

void gradient_products(const std::int16_t* gx, const std::int16_t* gy,
                       std::int32_t* ixx, std::int32_t* ixy, std::int32_t* iyy,
                       std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    std::int32_t x = gx[i], y = gy[i];
    ixx[i] = x * x;
    ixy[i] = x * y;
    iyy[i] = y * y;
  }
}

void add_sub_rows_i32(std::int32_t* acc, const std::int32_t* add,
                      const std::int32_t* sub, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) acc[i] += add[i] - sub[i];
}

void corner_response_map(const std::int32_t* a, const std::int32_t* b,
                         const std::int32_t* c, double* resp, std::size_t n) {
  // Kept as explicit mul/add so the AVX2 variant can match bit for bit.
  for (std::size_t i = 0; i < n; ++i) {
    double A = a[i], B = b[i], C = c[i];
    double half_diff = (A - C) * 0.5;
    double disc = half_diff * half_diff + B * B;
    resp[i] = (A + C) * 0.5 - std::sqrt(disc);
  }
}

void fill_masked(double* v, const std::uint8_t* mask, double value,
                 std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (mask[i]) v[i] = value;
  }
}

double masked_sq_residual(const double* v, const std::uint8_t* mask,
                          std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (mask[i]) {
      double r = v[i] - 1.0;
      acc += r * r;
    }
  }
  return acc;
}

void masked_residual_scale(const double* v, const std::uint8_t* mask, double k,
                           double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = mask[i] ? (v[i] - 1.0) * k : 0.0;
  }
}

void masked_axpy(double* x, const double* g, const std::uint8_t* mask,
                 double coef, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (mask[i]) x[i] = x[i] - g[i] * coef;
  }
}

}  // namespace planvec::kernels::scalar

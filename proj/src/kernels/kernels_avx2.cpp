#include "planvec/kernels.hpp"

#ifdef PLANVEC_HAVE_AVX2

#include <immintrin.h>

#include <cstring>

// AVX2 variants.  Floating-point kernels mirror the scalar operation order
// exactly (mul/add, never FMA), so everything except the masked_sq_residual
// reduction is bit-identical to the reference.

namespace planvec::kernels::avx2 {

namespace {

// 4 mask bytes -> 4 qword lanes, all-ones where the byte is zero.
inline __m256i mask_is_zero4(const std::uint8_t* mask) {
  int packed;
  std::memcpy(&packed, mask, 4);
  __m256i m64 = _mm256_cvtepu8_epi64(_mm_cvtsi32_si128(packed));
  return _mm256_cmpeq_epi64(m64, _mm256_setzero_si256());
}

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

void gray_from_rgb(const std::uint8_t* rgb, std::uint8_t* gray, std::size_t n) {
  // Deinterleave 16 rgb triples (48 bytes) into R/G/B with byte shuffles.
  const __m128i mr0 = _mm_setr_epi8(0, 3, 6, 9, 12, 15, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1);
  const __m128i mr1 = _mm_setr_epi8(-1, -1, -1, -1, -1, -1, 2, 5, 8, 11, 14, -1, -1, -1, -1, -1);
  const __m128i mr2 = _mm_setr_epi8(-1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, 1, 4, 7, 10, 13);
  const __m128i mg0 = _mm_setr_epi8(1, 4, 7, 10, 13, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1);
  const __m128i mg1 = _mm_setr_epi8(-1, -1, -1, -1, -1, 0, 3, 6, 9, 12, 15, -1, -1, -1, -1, -1);
  const __m128i mg2 = _mm_setr_epi8(-1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, 2, 5, 8, 11, 14);
  const __m128i mb0 = _mm_setr_epi8(2, 5, 8, 11, 14, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1);
  const __m128i mb1 = _mm_setr_epi8(-1, -1, -1, -1, -1, 1, 4, 7, 10, 13, -1, -1, -1, -1, -1, -1);
  const __m128i mb2 = _mm_setr_epi8(-1, -1, -1, -1, -1, -1, -1, -1, -1, -1, 0, 3, 6, 9, 12, 15);
  const __m256i three = _mm256_set1_epi16(3);
  // floor(t * 10923 / 65536) == floor(t / 6) for all t <= 1533 (here t <= 1533).
  const __m256i recip6 = _mm256_set1_epi16(10923);

  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    const std::uint8_t* p = rgb + 3 * i;
    __m128i v0 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(p));
    __m128i v1 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(p + 16));
    __m128i v2 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(p + 32));
    __m128i r = _mm_or_si128(_mm_or_si128(_mm_shuffle_epi8(v0, mr0), _mm_shuffle_epi8(v1, mr1)),
                             _mm_shuffle_epi8(v2, mr2));
    __m128i g = _mm_or_si128(_mm_or_si128(_mm_shuffle_epi8(v0, mg0), _mm_shuffle_epi8(v1, mg1)),
                             _mm_shuffle_epi8(v2, mg2));
    __m128i b = _mm_or_si128(_mm_or_si128(_mm_shuffle_epi8(v0, mb0), _mm_shuffle_epi8(v1, mb1)),
                             _mm_shuffle_epi8(v2, mb2));
    __m256i s = _mm256_add_epi16(_mm256_add_epi16(_mm256_cvtepu8_epi16(r), _mm256_cvtepu8_epi16(g)),
                                 _mm256_cvtepu8_epi16(b));
    __m256i t = _mm256_add_epi16(_mm256_add_epi16(s, s), three);
    __m256i q = _mm256_mulhi_epu16(t, recip6);
    __m128i packed = _mm_packus_epi16(_mm256_castsi256_si128(q), _mm256_extracti128_si256(q, 1));
    _mm_storeu_si128(reinterpret_cast<__m128i*>(gray + i), packed);
  }
  if (i < n) scalar::gray_from_rgb(rgb + 3 * i, gray + i, n - i);
}

void binarize_u8(const std::uint8_t* gray, std::uint8_t threshold,
                 std::uint8_t* ink, std::size_t n) {
  const __m256i flip = _mm256_set1_epi8(char(0x80));
  const __m256i thr = _mm256_set1_epi8(char(threshold ^ 0x80));
  const __m256i one = _mm256_set1_epi8(1);
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(gray + i));
    __m256i lt = _mm256_cmpgt_epi8(thr, _mm256_xor_si256(x, flip));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(ink + i), _mm256_and_si256(lt, one));
  }
  if (i < n) scalar::binarize_u8(gray + i, threshold, ink + i, n - i);
}

void sobel_u8(const std::uint8_t* img, int w, int h, std::int16_t* gx,
              std::int16_t* gy) {
  auto widen = [](const std::uint8_t* p) {
    return _mm256_cvtepu8_epi16(_mm_loadu_si128(reinterpret_cast<const __m128i*>(p)));
  };
  for (int y = 0; y < h; ++y) {
    const std::uint8_t* rm = img + static_cast<std::size_t>(y > 0 ? y - 1 : 0) * w;
    const std::uint8_t* rc = img + static_cast<std::size_t>(y) * w;
    const std::uint8_t* rp =
        img + static_cast<std::size_t>(y < h - 1 ? y + 1 : h - 1) * w;
    std::int16_t* ox = gx + static_cast<std::size_t>(y) * w;
    std::int16_t* oy = gy + static_cast<std::size_t>(y) * w;

    auto scalar_px = [&](int x) {
      int xl = x > 0 ? x - 1 : 0;
      int xr = x < w - 1 ? x + 1 : w - 1;
      int tl = rm[xl], tc = rm[x], tr = rm[xr];
      int cl = rc[xl], cr = rc[xr];
      int bl = rp[xl], bc = rp[x], br = rp[xr];
      ox[x] = static_cast<std::int16_t>((tr - tl) + 2 * (cr - cl) + (br - bl));
      oy[x] = static_cast<std::int16_t>((bl + 2 * bc + br) - (tl + 2 * tc + tr));
    };

    scalar_px(0);
    int x = 1;
    for (; x + 16 <= w - 1; x += 16) {
      __m256i tl = widen(rm + x - 1), tc = widen(rm + x), tr = widen(rm + x + 1);
      __m256i cl = widen(rc + x - 1), cr = widen(rc + x + 1);
      __m256i bl = widen(rp + x - 1), bc = widen(rp + x), br = widen(rp + x + 1);
      __m256i dx = _mm256_add_epi16(
          _mm256_add_epi16(_mm256_sub_epi16(tr, tl), _mm256_sub_epi16(br, bl)),
          _mm256_add_epi16(_mm256_sub_epi16(cr, cl), _mm256_sub_epi16(cr, cl)));
      __m256i bottom = _mm256_add_epi16(_mm256_add_epi16(bl, br), _mm256_add_epi16(bc, bc));
      __m256i top = _mm256_add_epi16(_mm256_add_epi16(tl, tr), _mm256_add_epi16(tc, tc));
      __m256i dy = _mm256_sub_epi16(bottom, top);
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(ox + x), dx);
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(oy + x), dy);
    }
    for (; x < w; ++x) scalar_px(x);
  }
}

void gradient_products(const std::int16_t* gx, const std::int16_t* gy,
                       std::int32_t* ixx, std::int32_t* ixy, std::int32_t* iyy,
                       std::size_t n) {
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256i x = _mm256_cvtepi16_epi32(_mm_loadu_si128(reinterpret_cast<const __m128i*>(gx + i)));
    __m256i y = _mm256_cvtepi16_epi32(_mm_loadu_si128(reinterpret_cast<const __m128i*>(gy + i)));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(ixx + i), _mm256_mullo_epi32(x, x));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(ixy + i), _mm256_mullo_epi32(x, y));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(iyy + i), _mm256_mullo_epi32(y, y));
  }
  if (i < n) scalar::gradient_products(gx + i, gy + i, ixx + i, ixy + i, iyy + i, n - i);
}

void add_sub_rows_i32(std::int32_t* acc, const std::int32_t* add,
                      const std::int32_t* sub, std::size_t n) {
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(acc + i));
    __m256i p = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(add + i));
    __m256i m = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(sub + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(acc + i),
                        _mm256_add_epi32(a, _mm256_sub_epi32(p, m)));
  }
  if (i < n) scalar::add_sub_rows_i32(acc + i, add + i, sub + i, n - i);
}

void corner_response_map(const std::int32_t* a, const std::int32_t* b,
                         const std::int32_t* c, double* resp, std::size_t n) {
  const __m256d half = _mm256_set1_pd(0.5);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d A = _mm256_cvtepi32_pd(_mm_loadu_si128(reinterpret_cast<const __m128i*>(a + i)));
    __m256d B = _mm256_cvtepi32_pd(_mm_loadu_si128(reinterpret_cast<const __m128i*>(b + i)));
    __m256d C = _mm256_cvtepi32_pd(_mm_loadu_si128(reinterpret_cast<const __m128i*>(c + i)));
    __m256d hd = _mm256_mul_pd(_mm256_sub_pd(A, C), half);
    __m256d disc = _mm256_add_pd(_mm256_mul_pd(hd, hd), _mm256_mul_pd(B, B));
    __m256d r = _mm256_sub_pd(_mm256_mul_pd(_mm256_add_pd(A, C), half), _mm256_sqrt_pd(disc));
    _mm256_storeu_pd(resp + i, r);
  }
  if (i < n) scalar::corner_response_map(a + i, b + i, c + i, resp + i, n - i);
}

void fill_masked(double* v, const std::uint8_t* mask, double value,
                 std::size_t n) {
  const __m256d val = _mm256_set1_pd(value);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d cur = _mm256_loadu_pd(v + i);
    __m256d zero_lanes = _mm256_castsi256_pd(mask_is_zero4(mask + i));
    _mm256_storeu_pd(v + i, _mm256_blendv_pd(val, cur, zero_lanes));
  }
  if (i < n) scalar::fill_masked(v + i, mask + i, value, n - i);
}

double masked_sq_residual(const double* v, const std::uint8_t* mask,
                          std::size_t n) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d zero = _mm256_setzero_pd();
  __m256d acc = zero;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d r = _mm256_sub_pd(_mm256_loadu_pd(v + i), one);
    __m256d sq = _mm256_mul_pd(r, r);
    __m256d zero_lanes = _mm256_castsi256_pd(mask_is_zero4(mask + i));
    acc = _mm256_add_pd(acc, _mm256_blendv_pd(sq, zero, zero_lanes));
  }
  double total = hsum(acc);
  if (i < n) total += scalar::masked_sq_residual(v + i, mask + i, n - i);
  return total;
}

void masked_residual_scale(const double* v, const std::uint8_t* mask, double k,
                           double* out, std::size_t n) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d kv = _mm256_set1_pd(k);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d t = _mm256_mul_pd(_mm256_sub_pd(_mm256_loadu_pd(v + i), one), kv);
    __m256d zero_lanes = _mm256_castsi256_pd(mask_is_zero4(mask + i));
    _mm256_storeu_pd(out + i, _mm256_blendv_pd(t, zero, zero_lanes));
  }
  if (i < n) scalar::masked_residual_scale(v + i, mask + i, k, out + i, n - i);
}

void masked_axpy(double* x, const double* g, const std::uint8_t* mask,
                 double coef, std::size_t n) {
  const __m256d cv = _mm256_set1_pd(coef);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d xv = _mm256_loadu_pd(x + i);
    __m256d stepped = _mm256_sub_pd(xv, _mm256_mul_pd(_mm256_loadu_pd(g + i), cv));
    __m256d zero_lanes = _mm256_castsi256_pd(mask_is_zero4(mask + i));
    _mm256_storeu_pd(x + i, _mm256_blendv_pd(stepped, xv, zero_lanes));
  }
  if (i < n) scalar::masked_axpy(x + i, g + i, mask + i, coef, n - i);
}

}  // namespace planvec::kernels::avx2

#endif  // PLANVEC_HAVE_AVX2

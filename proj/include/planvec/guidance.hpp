#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace planvec {

// Dense double tensor, row-major.  Latents and decoded images here are 2-D
// (height, width); the ops validate shapes against their masks.
struct Tensor {
  std::vector<std::size_t> shape;
  std::vector<double> data;

  static Tensor zeros(std::vector<std::size_t> shape);
  static Tensor full(std::vector<std::size_t> shape, double value);
  std::size_t numel() const;
  bool same_shape(const Tensor& other) const { return shape == other.shape; }
  bool all_finite() const;
};

// 1 = pixel that should render white (background), 0 = leave alone.
struct PixelMask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;

  static PixelMask make(int width, int height, std::uint8_t fill = 0);
};

// Same mask, downscaled to the latent's spatial resolution.
struct LatentMask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;
};

// Decoder contract: forward maps a latent to image space; backward is the
// vector-Jacobian product (latent, upstream image grad) -> latent grad.
// backward may be empty, in which case gradients fall back to central
// finite differences.
struct Decoder {
  std::function<Tensor(const Tensor&)> forward;
  std::function<Tensor(const Tensor&, const Tensor&)> backward;
};

// Denoised-sample predictor contract: forward maps (x_t, t) to the model's
// clean-sample estimate; backward is its VJP (x_t, t, upstream) -> grad.
struct Predictor {
  std::function<Tensor(const Tensor&, int)> forward;
  std::function<Tensor(const Tensor&, int, const Tensor&)> backward;
};

Decoder identity_decoder();
Predictor identity_predictor();

struct GuidanceState {
  Tensor x_t;
  int t = 0;
  std::vector<double> alpha_bar;  // cumulative noise schedule, indexed by t
  double scale = 0.0;             // loss scale s
};

// Sets masked pixels of a decoded image to pure white (1.0).
Tensor apply_white_mask(const Tensor& decoded, const PixelMask& mask);

// Background whiteness penalty: s * sum over mask of (decoded - 1)^2,
// i.e. the squared distance between the decoded image and its white-masked
// copy.  With mean=true the sum is divided by the masked pixel count.
double white_loss(const Tensor& decoded, const PixelMask& mask, double s,
                  bool mean = false);

// d white_loss / d x_t through predictor and decoder.  Uses the analytic
// chain when both backward hooks are present, otherwise central finite
// differences with step 1e-4.  Throws NumericError on non-finite values.
Tensor white_loss_grad(const Tensor& x_t, int t, const Decoder& decoder,
                       const Predictor& predictor, const PixelMask& mask,
                       double s);

// One guided update: x_t -= grad * (1 - alpha_bar[t]) / alpha_bar[t] on
// latent coordinates selected by the mask; everything else is untouched
// bit for bit.  Throws NumericError when alpha_bar[t] == 0.
GuidanceState latent_update(GuidanceState state, const Tensor& grad,
                            const LatentMask& mask);

// Downscales a pixel mask to the latent resolution: a latent cell is set
// when at least half of its covered pixel block is set.  Pixel dimensions
// must be integer multiples of the latent's.
LatentMask downscale_mask(const PixelMask& mask, int latent_width,
                          int latent_height);

// Runs `steps` guided updates of an identity decoder/predictor stack on a
// square latent and records the mean of the masked coordinates after each
// update.  This is the closed-form testbed: with constant alpha_bar = a
// and scale s the masked mean approaches 1 geometrically with ratio
// (1 - 2 * s * (1 - a) / a).
std::vector<double> guided_descent_demo(Tensor initial, const PixelMask& mask,
                                        double s, double alpha_bar, int steps);

}  // namespace planvec

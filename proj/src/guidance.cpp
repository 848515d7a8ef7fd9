#include "planvec/guidance.hpp"

#include <cmath>
#include <stdexcept>

#include "planvec/error.hpp"
#include "planvec/kernels.hpp"

namespace planvec {

Tensor Tensor::zeros(std::vector<std::size_t> shape) {
  return full(std::move(shape), 0.0);
}

Tensor Tensor::full(std::vector<std::size_t> shape, double value) {
  Tensor t;
  t.shape = std::move(shape);
  std::size_t n = 1;
  for (std::size_t d : t.shape) {
    if (d == 0) throw std::invalid_argument("Tensor: zero-sized dimension");
    n *= d;
  }
  if (t.shape.empty()) throw std::invalid_argument("Tensor: empty shape");
  t.data.assign(n, value);
  return t;
}

std::size_t Tensor::numel() const { return data.size(); }

bool Tensor::all_finite() const {
  for (double v : data)
    if (!std::isfinite(v)) return false;
  return true;
}

PixelMask PixelMask::make(int width, int height, std::uint8_t fill) {
  if (width <= 0 || height <= 0 || fill > 1)
    throw std::invalid_argument("PixelMask: bad dimensions or fill");
  PixelMask m;
  m.width = width;
  m.height = height;
  m.data.assign(static_cast<std::size_t>(width) * height, fill);
  return m;
}

namespace {

void require_image_shape(const Tensor& t, int width, int height,
                         const char* who) {
  if (t.shape.size() != 2 || t.shape[0] != static_cast<std::size_t>(height) ||
      t.shape[1] != static_cast<std::size_t>(width))
    throw std::invalid_argument(std::string(who) +
                                ": tensor shape does not match the mask");
}

}  // namespace

Decoder identity_decoder() {
  Decoder d;
  d.forward = [](const Tensor& z) { return z; };
  d.backward = [](const Tensor&, const Tensor& g) { return g; };
  return d;
}

Predictor identity_predictor() {
  Predictor p;
  p.forward = [](const Tensor& x, int) { return x; };
  p.backward = [](const Tensor&, int, const Tensor& g) { return g; };
  return p;
}

Tensor apply_white_mask(const Tensor& decoded, const PixelMask& mask) {
  require_image_shape(decoded, mask.width, mask.height, "apply_white_mask");
  Tensor out = decoded;
  kernels::fill_masked(out.data.data(), mask.data.data(), 1.0, out.numel());
  return out;
}

double white_loss(const Tensor& decoded, const PixelMask& mask, double s,
                  bool mean) {
  require_image_shape(decoded, mask.width, mask.height, "white_loss");
  if (!(s >= 0.0)) throw std::invalid_argument("white_loss: scale must be >= 0");
  double sum = kernels::masked_sq_residual(decoded.data.data(), mask.data.data(),
                                           decoded.numel());
  if (mean) {
    std::size_t count = 0;
    for (std::uint8_t m : mask.data) count += m;
    if (count == 0) return 0.0;
    sum /= static_cast<double>(count);
  }
  return s * sum;
}

Tensor white_loss_grad(const Tensor& x_t, int t, const Decoder& decoder,
                       const Predictor& predictor, const PixelMask& mask,
                       double s) {
  if (!decoder.forward || !predictor.forward)
    throw std::invalid_argument("white_loss_grad: missing forward hooks");
  if (!(s >= 0.0)) throw std::invalid_argument("white_loss_grad: scale must be >= 0");
  if (!x_t.all_finite()) throw NumericError("white_loss_grad: non-finite latent");

  if (decoder.backward && predictor.backward) {
    Tensor x0 = predictor.forward(x_t, t);
    Tensor decoded = decoder.forward(x0);
    require_image_shape(decoded, mask.width, mask.height, "white_loss_grad");
    if (!decoded.all_finite())
      throw NumericError("white_loss_grad: non-finite decoded image");
    // d/d decoded of s * sum(mask * (decoded - 1)^2) = mask * 2 s (decoded - 1)
    Tensor up = Tensor::zeros(decoded.shape);
    kernels::masked_residual_scale(decoded.data.data(), mask.data.data(), 2.0 * s,
                                   up.data.data(), decoded.numel());
    Tensor dx0 = decoder.backward(x0, up);
    if (!dx0.same_shape(x0))
      throw std::invalid_argument("white_loss_grad: decoder backward shape mismatch");
    Tensor grad = predictor.backward(x_t, t, dx0);
    if (!grad.same_shape(x_t))
      throw std::invalid_argument("white_loss_grad: predictor backward shape mismatch");
    if (!grad.all_finite()) throw NumericError("white_loss_grad: non-finite gradient");
    return grad;
  }

  // Central finite differences, step 1e-4.
  const double step = 1e-4;
  auto loss_at = [&](const Tensor& x) {
    Tensor decoded = decoder.forward(predictor.forward(x, t));
    require_image_shape(decoded, mask.width, mask.height, "white_loss_grad");
    return white_loss(decoded, mask, s);
  };
  Tensor grad = Tensor::zeros(x_t.shape);
  Tensor probe = x_t;
  for (std::size_t i = 0; i < probe.numel(); ++i) {
    const double saved = probe.data[i];
    probe.data[i] = saved + step;
    const double up = loss_at(probe);
    probe.data[i] = saved - step;
    const double down = loss_at(probe);
    probe.data[i] = saved;
    grad.data[i] = (up - down) / (2.0 * step);
  }
  if (!grad.all_finite()) throw NumericError("white_loss_grad: non-finite gradient");
  return grad;
}

GuidanceState latent_update(GuidanceState state, const Tensor& grad,
                            const LatentMask& mask) {
  if (!grad.same_shape(state.x_t))
    throw std::invalid_argument("latent_update: gradient shape mismatch");
  if (state.x_t.shape.size() != 2 ||
      state.x_t.shape[0] != static_cast<std::size_t>(mask.height) ||
      state.x_t.shape[1] != static_cast<std::size_t>(mask.width))
    throw std::invalid_argument("latent_update: mask does not match the latent");
  if (state.t < 0 || static_cast<std::size_t>(state.t) >= state.alpha_bar.size())
    throw std::invalid_argument("latent_update: t outside the schedule");
  const double a = state.alpha_bar[static_cast<std::size_t>(state.t)];
  if (a == 0.0) throw NumericError("latent_update: alpha_bar[t] is zero");
  if (!(a > 0.0 && a <= 1.0))
    throw std::invalid_argument("latent_update: alpha_bar[t] must be in (0, 1]");
  if (!grad.all_finite()) throw NumericError("latent_update: non-finite gradient");
  const double coef = (1.0 - a) / a;
  kernels::masked_axpy(state.x_t.data.data(), grad.data.data(), mask.data.data(),
                       coef, state.x_t.numel());
  return state;
}

LatentMask downscale_mask(const PixelMask& mask, int latent_width,
                          int latent_height) {
  if (latent_width <= 0 || latent_height <= 0)
    throw std::invalid_argument("downscale_mask: bad latent dimensions");
  if (mask.width % latent_width != 0 || mask.height % latent_height != 0)
    throw std::invalid_argument(
        "downscale_mask: pixel dimensions must be multiples of the latent's");
  const int rx = mask.width / latent_width;
  const int ry = mask.height / latent_height;
  LatentMask out;
  out.width = latent_width;
  out.height = latent_height;
  out.data.assign(static_cast<std::size_t>(latent_width) * latent_height, 0);
  for (int j = 0; j < latent_height; ++j)
    for (int i = 0; i < latent_width; ++i) {
      // Majority vote over the rx x ry pixel block this latent cell covers.
      int votes = 0;
      for (int dy = 0; dy < ry; ++dy)
        for (int dx = 0; dx < rx; ++dx)
          votes += mask.data[static_cast<std::size_t>(j * ry + dy) * mask.width +
                             (i * rx + dx)] != 0;
      out.data[static_cast<std::size_t>(j) * latent_width + i] =
          (2 * votes >= rx * ry) ? 1 : 0;
    }
  return out;
}

std::vector<double> guided_descent_demo(Tensor initial, const PixelMask& mask,
                                        double s, double alpha_bar, int steps) {
  require_image_shape(initial, mask.width, mask.height, "guided_descent_demo");
  if (steps < 1) throw std::invalid_argument("guided_descent_demo: steps must be >= 1");
  if (!initial.all_finite())
    throw NumericError("guided_descent_demo: non-finite initial latent");

  const Decoder dec = identity_decoder();
  const Predictor pred = identity_predictor();
  const LatentMask latent_mask = downscale_mask(mask, mask.width, mask.height);

  std::size_t masked = 0;
  for (std::uint8_t m : mask.data) masked += m;

  GuidanceState state;
  state.x_t = std::move(initial);
  state.t = 0;
  state.alpha_bar = {alpha_bar};
  state.scale = s;

  std::vector<double> trajectory;
  trajectory.reserve(static_cast<std::size_t>(steps));
  for (int k = 0; k < steps; ++k) {
    Tensor grad = white_loss_grad(state.x_t, state.t, dec, pred, mask, s);
    state = latent_update(std::move(state), grad, latent_mask);
    if (!state.x_t.all_finite())
      throw NumericError("guided_descent_demo: latent diverged");
    double mean = 0.0;
    if (masked > 0) {
      double sum = 0.0;
      for (std::size_t i = 0; i < state.x_t.numel(); ++i)
        if (mask.data[i]) sum += state.x_t.data[i];
      mean = sum / static_cast<double>(masked);
    }
    trajectory.push_back(mean);
  }
  return trajectory;
}

}  // namespace planvec

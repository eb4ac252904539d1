#include "curvemg/experiments.hpp"

namespace curvemg {

DenoiseCase make_denoise_case(PhantomKind kind, int size, double sigma, std::uint64_t seed, bool clip) {
  DenoiseCase c;
  c.clean = phantom(kind, size);
  c.noisy = add_gaussian_noise(c.clean, {sigma, seed});
  if (clip) c.noisy = curvemg::clip(c.noisy, 0.0, c.clean.peak());
  return c;
}

namespace {

void add_noise(std::vector<double>& b, double sigma, std::uint64_t seed) {
  if (sigma == 0.0) return;
  std::vector<double> n(b.size());
  fill_standard_normal(n, seed);
  for (std::size_t i = 0; i < b.size(); ++i) b[i] += sigma * n[i];
}

}  // namespace

InverseCase make_ct_case(int size, int projections, double sigma, std::uint64_t seed) {
  InverseCase c;
  c.truth = phantom(PhantomKind::shepp_logan, size);
  c.op = std::make_unique<RadonOperator>(size, size, RadonGeometry::for_image(size, size, projections));
  c.b = c.op->forward(c.truth);
  add_noise(c.b, sigma, seed);
  return c;
}

InverseCase make_mri_case(int size, MaskKind kind, double rate, double sigma, std::uint64_t seed) {
  InverseCase c;
  c.truth = phantom(PhantomKind::shepp_logan, size);
  c.mask = kind == MaskKind::radial ? radial_mask(size, size, rate) : cartesian_mask(size, size, rate, seed);
  c.op = std::make_unique<MaskedFourierOperator>(c.mask);
  c.b = c.op->forward(c.truth);
  // Different stream from the mask's.
  add_noise(c.b, sigma, seed + 0x9e3779b97f4a7c15ULL);
  return c;
}

}  // namespace curvemg

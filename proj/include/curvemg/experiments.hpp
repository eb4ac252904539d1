#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "curvemg/image.hpp"
#include "curvemg/masks.hpp"
#include "curvemg/operators.hpp"
#include "curvemg/phantom.hpp"

namespace curvemg {

/// A clean image and its noisy observation.
struct DenoiseCase {
  Image clean;
  Image noisy;
};

/// Phantom plus seeded Gaussian noise, optionally clipped to [0, peak].
DenoiseCase make_denoise_case(PhantomKind kind, int size, double sigma, std::uint64_t seed, bool clip);

/// Ground truth, the operator and its (possibly noisy) measurements.
struct InverseCase {
  Image truth;
  std::unique_ptr<LinearOperator> op;
  std::vector<double> b;
  SamplingMask mask;  // empty for CT
};

/// Shepp-Logan, parallel-beam Radon transform with `projections` angles.
/// `sigma` is the standard deviation of additive Gaussian noise on the
/// sinogram (0 for noiseless data).
InverseCase make_ct_case(int size, int projections, double sigma, std::uint64_t seed);

/// Shepp-Logan, undersampled unitary Fourier transform. `sigma` is the
/// per-component standard deviation of complex Gaussian noise, on the
/// [0, 1] intensity scale.
InverseCase make_mri_case(int size, MaskKind kind, double rate, double sigma, std::uint64_t seed);

}  // namespace curvemg

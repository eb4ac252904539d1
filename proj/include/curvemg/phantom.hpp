#pragma once

#include <string_view>

#include "curvemg/image.hpp"

namespace curvemg {

enum class PhantomKind { shepp_logan, triangle, shapes };

PhantomKind parse_phantom_kind(std::string_view name);
std::string_view to_string(PhantomKind kind);

/// Analytic test images sampled at pixel centres.
///
/// shepp_logan: modified (Toft) Shepp-Logan head, intensities in [0, 1], peak 1.
/// triangle:    two nested triangles on a flat background, peak 255.
/// shapes:      triangle, rectangle and disk on a flat background, peak 255;
///              stands in for the multi-ellipse "Forbild" style phantoms.
Image phantom(PhantomKind kind, int size);

}  // namespace curvemg

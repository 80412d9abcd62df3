#pragma once

// Standard normal distribution helpers shared by sampling and inference.

namespace swinf {

double normal_pdf(double x);

/// Phi(x), computed through erfc so that both tails keep full relative accuracy.
double normal_cdf(double x);

/// 1 - Phi(x) without cancellation.
double normal_sf(double x);

/// Inverse of Phi on (0, 1). Acklam's rational approximation followed by one
/// Halley step against erfc; relative error is near machine precision down to
/// p ~ 1e-300. Throws InvalidArgument outside (0, 1).
double normal_quantile(double p);

}  // namespace swinf

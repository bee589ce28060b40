#pragma once

#include <functional>
#include <span>

namespace pronysmt {

/// Adaptive 15-point Gauss-Kronrod integration of f over [a, b] to relative
/// tolerance `tol`. Throws NonConvergentQuadrature when the error estimate
/// stays above the target after maximal refinement.
double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-10);

/// Surface integral over the unit sphere S^{dim-1} of h(|c + radius * theta|)
/// where |c| = center_distance. dim = 2 uses a 4096-point periodic trapezoid;
/// dim = 3 uses the exact one-dimensional reduction
///   (2 pi / (d t)) * int_{|d - t|}^{d + t} h(u) u du.
double sphere_integral_radial(const std::function<double(double)>& h, double center_distance,
                              double radius, int dim);

/// Area of the unit sphere S^{dim-1}.
double sphere_area(int dim);

/// Integral of tabulated samples. Uniform grids with at least 8 nodes use the
/// fourth-order end-corrected trapezoid; other grids use the plain trapezoid.
double integrate_samples(std::span<const double> x, std::span<const double> y);

/// Plain trapezoid over tabulated samples.
double trapezoid(std::span<const double> x, std::span<const double> y);

}  // namespace pronysmt

#pragma once

#include <functional>
#include <vector>

#include <pronysmt/forward.hpp>
#include <pronysmt/kernel.hpp>

namespace pronysmt {

/// j_nu(x) = x^{-nu} J_nu(x). Power series (long double) for x <= 12 + 2 nu,
/// std::cyl_bessel_j beyond.
double normalized_bessel(double nu, double x);

/// Order of the Hankel transform in dimension n: n/2 - 1.
inline double hankel_order(int dim) { return 0.5 * dim - 1.0; }

/// int_0^upper f(r) j_nu(lambda r) r^{n-1} dr by adaptive Gauss-Kronrod.
/// The transform is its own inverse, so the same call maps G back to g.
double hankel_integral(const std::function<double(double)>& f, int dim, double lambda,
                       double upper, double tol = 1e-10);

struct HankelProfile {
    double nu = 0.0;
    int dim = 0;
    std::vector<double> lambdas;
    std::vector<double> values;
    double g_min = 0.0;  ///< |G| threshold below which the grid is unusable
};

/// G(lambda) = int_0^inf g(r) j_nu(lambda r) r^{n-1} dr on the grid. Uses the
/// closed form when the kernel has one unless `force_quadrature` is set.
/// g_min defaults to 1e-6 * max |G|.
HankelProfile hankel_transform(const RadialKernel& kernel, int dim, std::vector<double> lambdas,
                               bool force_quadrature = false);

struct ExtractionOptions {
    int samples = 64;           ///< lambda nodes (Chebyshev-Lobatto in lambda^2)
    int terms = 16;             ///< terms of the overcomplete even polynomial fit
    double g_min_rel = 1e-6;    ///< usable grid: |G| > g_min_rel * max |G|
    double reach = 6.0;         ///< cap lambda_max * (largest source distance)
    double tol_fit = 1e-4;      ///< fit residual allowed, relative to max |Phi|
};

/// Lambda grid for one trace: Chebyshev-Lobatto nodes in lambda^2 on
/// [0, lambda_max^2], with lambda_max limited both by |G| >= g_min and by the
/// extent of the trace.
std::vector<double> extraction_grid(const SphericalMeanTrace& trace, const RadialKernel& kernel,
                                    int dim, const ExtractionOptions& opt = {});

struct EvenMoments {
    Vector sensor;
    std::vector<double> values;  ///< mu_0, mu_2, ..., mu_{2(2m-1)}
    double fit_residual = 0.0;
    double lambda_max = 0.0;

    /// The moments as a Prony input whose nodes are squared distances.
    MomentVector as_moment_vector() const;
};

/// Even moments mu_{2k} = sum_j a_j |y - x_j|^{2k}, k = 0 .. 2m-1, from a
/// spherical mean trace. Phi(lambda) = (2 pi)^{-n/2} int R(t) j_nu(lambda t) dt / G(lambda)
/// is fitted by an even polynomial sum beta_k lambda^{2k} and rescaled by
/// (-1)^k k! Gamma(k + n/2) 2^{2k + n/2 - 1}.
EvenMoments extract_even_moments(const SphericalMeanTrace& trace, const HankelProfile& profile,
                                 int dim, int m, const ExtractionOptions& opt = {});

}  // namespace pronysmt

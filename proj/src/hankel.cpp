#include <pronysmt/hankel.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <sstream>

#include <Eigen/Dense>

#include <pronysmt/errors.hpp>
#include <pronysmt/quadrature.hpp>

namespace pronysmt {

namespace {

// Trapezoid sums on every 2^j-th sample followed by Richardson extrapolation.
// Meant for uniform grids starting at 0 whose integrand is t times an even
// function and negligible at the far end: the trapezoid error is then a pure
// series in h^2. Tail samples are dropped to reach a multiple of 2^levels
// intervals only when they are negligible; otherwise falls back to the
// end-corrected rule.
double romberg_from_origin(std::span<const double> x, std::span<const double> y)
{
    constexpr int levels = 3;
    constexpr std::size_t block = std::size_t{1} << levels;
    const std::size_t n = x.size();
    if (n < 4 * block + 1 || x[0] != 0.0)
        return integrate_samples(x, y);
    const double h = x[n - 1] / static_cast<double>(n - 1);
    double peak = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0 && std::abs((x[i] - x[i - 1]) - h) > 1e-9 * h)
            return integrate_samples(x, y);
        peak = std::max(peak, std::abs(y[i]));
    }
    const std::size_t last = (n - 1) / block * block;
    for (std::size_t i = last + 1; i < n; ++i)
        if (std::abs(y[i]) > 1e-13 * peak)
            return integrate_samples(x, y);

    std::array<double, levels + 1> t{};
    for (int j = 0; j <= levels; ++j) {
        const std::size_t stride = std::size_t{1} << j;
        double sum = 0.5 * (y[0] + y[last]);
        for (std::size_t i = stride; i < last; i += stride)
            sum += y[i];
        t[static_cast<std::size_t>(j)] = sum * h * static_cast<double>(stride);
    }
    for (int k = 1; k <= levels; ++k) {
        const double f = std::pow(4.0, k);
        for (int j = 0; j + k <= levels; ++j)
            t[static_cast<std::size_t>(j)] =
                (f * t[static_cast<std::size_t>(j)] - t[static_cast<std::size_t>(j + 1)]) / (f - 1.0);
    }
    return t[0];
}

void require_supported(int dim)
{
    if (dim != 2 && dim != 3)
        throw Error(ErrorKind::Unsupported, "radial machinery supports n = 2 and n = 3 only");
}

// Moment scale of the k-th Taylor coefficient: mu_{2k} = beta_k * scale.
double taylor_to_moment(int k, int dim)
{
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    return sign * std::tgamma(k + 1.0) * std::tgamma(k + 0.5 * dim) *
           std::pow(2.0, 2.0 * k + 0.5 * dim - 1.0);
}

// lambda where |G| first drops below rel * |G(0)|, scanning outward.
double usable_lambda_limit(const RadialKernel& kernel, int dim, double rel)
{
    if (kernel.has_closed_form_transform())
        return std::sqrt(2.0 * std::log(1.0 / rel)) / kernel.width();
    const double step = 0.5 / kernel.support_radius();
    const auto g = [&](double r) { return kernel(r); };
    const double g0 = std::abs(hankel_integral(g, dim, 0.0, kernel.support_radius()));
    for (int k = 1; k <= 400; ++k) {
        const double lambda = k * step;
        if (std::abs(hankel_integral(g, dim, lambda, kernel.support_radius())) < rel * g0)
            return (k - 1) * step;
    }
    return 400 * step;
}

}  // namespace

double normalized_bessel(double nu, double x)
{
    if (nu < 0.0 || x < 0.0 || !std::isfinite(x))
        throw Error(ErrorKind::InvalidArgument, "normalized_bessel needs nu >= 0 and finite x >= 0");
    if (x > 12.0 + 2.0 * nu)
        return std::cyl_bessel_j(nu, x) / std::pow(x, nu);

    const long double q = 0.25L * static_cast<long double>(x) * x;
    long double term = 1.0L / (std::tgammal(static_cast<long double>(nu) + 1.0L) *
                               std::pow(2.0L, static_cast<long double>(nu)));
    long double sum = term;
    for (int k = 0; k < 200; ++k) {
        term *= -q / ((k + 1.0L) * (k + 1.0L + nu));
        sum += term;
        if (std::fabs(term) < 1e-17L * std::fabs(sum))
            break;
    }
    return static_cast<double>(sum);
}

double hankel_integral(const std::function<double(double)>& f, int dim, double lambda,
                       double upper, double tol)
{
    const double nu = hankel_order(dim);
    return integrate(
        [&](double r) { return f(r) * normalized_bessel(nu, lambda * r) * std::pow(r, dim - 1); },
        0.0, upper, tol);
}

HankelProfile hankel_transform(const RadialKernel& kernel, int dim, std::vector<double> lambdas,
                               bool force_quadrature)
{
    require_supported(dim);
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        if (lambdas[i] < 0.0 || (i > 0 && lambdas[i] <= lambdas[i - 1]))
            throw Error(ErrorKind::InvalidArgument, "lambda grid must be nonnegative and increasing");
    }

    HankelProfile p;
    p.nu = hankel_order(dim);
    p.dim = dim;
    p.values.reserve(lambdas.size());
    const auto g = [&](double r) { return kernel(r); };
    for (double lambda : lambdas) {
        if (kernel.has_closed_form_transform() && !force_quadrature)
            p.values.push_back(kernel.closed_form_transform(lambda, dim));
        else
            p.values.push_back(hankel_integral(g, dim, lambda, kernel.support_radius()));
    }
    p.lambdas = std::move(lambdas);
    double peak = 0.0;
    for (double v : p.values)
        peak = std::max(peak, std::abs(v));
    p.g_min = 1e-6 * peak;
    return p;
}

std::vector<double> extraction_grid(const SphericalMeanTrace& trace, const RadialKernel& kernel,
                                    int dim, const ExtractionOptions& opt)
{
    require_supported(dim);
    if (opt.samples < 2)
        throw Error(ErrorKind::InvalidArgument, "extraction grid needs at least two samples");

    double peak = 0.0;
    for (double v : trace.values)
        peak = std::max(peak, std::abs(v));
    double extent = 0.0;
    for (std::size_t q = 0; q < trace.values.size(); ++q)
        if (std::abs(trace.values[q]) > 1e-10 * peak)
            extent = trace.radii[q];
    const double reach_distance = extent - kernel.support_radius();

    double lambda_max = usable_lambda_limit(kernel, dim, opt.g_min_rel);
    if (reach_distance > 1e-3)
        lambda_max = std::min(lambda_max, opt.reach / reach_distance);
    if (!(lambda_max > 0.0))
        throw Error(ErrorKind::ProfileVanishes, "kernel transform has no usable lambda range");

    const double umax = lambda_max * lambda_max;
    std::vector<double> grid(static_cast<std::size_t>(opt.samples));
    const double last = opt.samples - 1.0;
    for (int i = 0; i < opt.samples; ++i)
        grid[static_cast<std::size_t>(i)] =
            std::sqrt(0.5 * umax * (1.0 - std::cos(std::numbers::pi * i / last)));
    grid.front() = 0.0;
    grid.back() = lambda_max;
    return grid;
}

MomentVector EvenMoments::as_moment_vector() const
{
    MomentVector mv;
    mv.sensor = sensor;
    mv.probe = ProbeFamily::Monomial;
    mv.normalized = false;
    mv.first_index = 0;
    mv.values = values;
    return mv;
}

EvenMoments extract_even_moments(const SphericalMeanTrace& trace, const HankelProfile& profile,
                                 int dim, int m, const ExtractionOptions& opt)
{
    require_supported(dim);
    if (m < 1)
        throw Error(ErrorKind::InvalidArgument, "need m >= 1");
    if (profile.dim != dim)
        throw Error(ErrorKind::DimensionMismatch, "profile computed for another dimension");
    if (trace.radii.size() != trace.values.size() || trace.radii.size() < 8)
        throw Error(ErrorKind::InvalidArgument, "trace needs at least 8 matching samples");

    std::vector<double> lambdas;
    std::vector<double> gvals;
    for (std::size_t i = 0; i < profile.lambdas.size(); ++i) {
        if (std::abs(profile.values[i]) > profile.g_min) {
            lambdas.push_back(profile.lambdas[i]);
            gvals.push_back(profile.values[i]);
        }
    }
    const int wanted = 2 * m;
    if (static_cast<int>(lambdas.size()) < wanted || lambdas.front() != 0.0)
        throw Error(ErrorKind::ProfileVanishes, "too few lambda nodes where the kernel transform is usable");

    // Even integrand (odd n) makes the plain trapezoid spectrally accurate; for
    // even n the integrand is t times an even function.
    const bool even_integrand = dim % 2 == 1;
    const double norm = std::pow(2.0 * std::numbers::pi, -0.5 * dim);
    const std::size_t rows = lambdas.size();
    Eigen::VectorXd phi(static_cast<Eigen::Index>(rows));
    std::vector<double> integrand(trace.radii.size());
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t q = 0; q < trace.radii.size(); ++q)
            integrand[q] = trace.values[q] * normalized_bessel(profile.nu, lambdas[i] * trace.radii[q]);
        const double integral = even_integrand ? trapezoid(trace.radii, integrand)
                                               : romberg_from_origin(trace.radii, integrand);
        phi[static_cast<Eigen::Index>(i)] = norm * integral / gvals[i];
    }

    // Chebyshev basis in v = 2 u / U - 1, u = lambda^2.
    const double umax = lambdas.back() * lambdas.back();
    const int terms = std::clamp(opt.terms, wanted, static_cast<int>(rows));
    Eigen::MatrixXd basis(static_cast<Eigen::Index>(rows), terms);
    for (std::size_t i = 0; i < rows; ++i) {
        const double v = 2.0 * lambdas[i] * lambdas[i] / umax - 1.0;
        const auto r = static_cast<Eigen::Index>(i);
        basis(r, 0) = 1.0;
        if (terms > 1)
            basis(r, 1) = v;
        for (int j = 2; j < terms; ++j)
            basis(r, j) = 2.0 * v * basis(r, j - 1) - basis(r, j - 2);
    }
    const Eigen::VectorXd cheb = basis.colPivHouseholderQr().solve(phi);
    const double scale = phi.cwiseAbs().maxCoeff();
    const double residual = scale > 0.0 ? (basis * cheb - phi).cwiseAbs().maxCoeff() / scale : 0.0;
    if (residual > opt.tol_fit) {
        std::ostringstream os;
        os << "even-polynomial fit residual " << residual << " exceeds " << opt.tol_fit;
        throw Error(ErrorKind::GridTooCoarse, os.str());
    }

    // Taylor coefficients at u = 0 (v = -1) from
    // T_j^{(k)}(-1) = (-1)^{j+k} prod_{i<k} (j^2 - i^2) / (2i + 1).
    EvenMoments out;
    out.sensor = trace.sensor;
    out.fit_residual = residual;
    out.lambda_max = lambdas.back();
    out.values.resize(static_cast<std::size_t>(wanted));
    for (int k = 0; k < wanted; ++k) {
        long double deriv = 0.0L;
        for (int j = 0; j < terms; ++j) {
            long double d = ((j + k) % 2 == 0) ? 1.0L : -1.0L;
            for (int i = 0; i < k; ++i)
                d *= static_cast<long double>(j * j - i * i) / (2.0L * i + 1.0L);
            deriv += d * cheb[j];
        }
        const long double beta = deriv * std::pow(2.0L / umax, k) / std::tgammal(k + 1.0L);
        out.values[static_cast<std::size_t>(k)] = static_cast<double>(beta) * taylor_to_moment(k, dim);
    }
    return out;
}

}  // namespace pronysmt

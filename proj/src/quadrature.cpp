#include <pronysmt/quadrature.hpp>

#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <pronysmt/errors.hpp>

namespace pronysmt {

namespace {
constexpr int circle_points = 4096;
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol)
{
    if (a == b)
        return 0.0;
    double error = 0.0;
    double l1 = 0.0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        f, a, b, 20, tol, &error, &l1);
    // Measured against the L1 norm so that cancelling integrands do not trip it.
    if (!std::isfinite(value) || error > 1e3 * tol * l1 + 1e-300)
        throw Error(ErrorKind::NonConvergentQuadrature,
                    "gauss-kronrod error estimate " + std::to_string(error) + " on [" +
                        std::to_string(a) + ", " + std::to_string(b) + "]");
    return value;
}

double sphere_area(int dim)
{
    return 2.0 * std::pow(std::numbers::pi, 0.5 * dim) / std::tgamma(0.5 * dim);
}

double sphere_integral_radial(const std::function<double(double)>& h, double center_distance,
                              double radius, int dim)
{
    const double d = center_distance;
    const double t = radius;
    if (d == 0.0 || t == 0.0)
        return sphere_area(dim) * h(d + t);

    if (dim == 2) {
        const double step = 2.0 * std::numbers::pi / circle_points;
        double sum = 0.0;
        for (int k = 0; k < circle_points; ++k) {
            const double c = std::cos(k * step);
            const double u2 = d * d + t * t + 2.0 * d * t * c;
            sum += h(std::sqrt(std::max(u2, 0.0)));
        }
        return sum * step;
    }
    if (dim == 3) {
        const double inner = integrate([&](double u) { return h(u) * u; }, std::abs(d - t), d + t);
        return 2.0 * std::numbers::pi / (d * t) * inner;
    }
    throw Error(ErrorKind::Unsupported, "sphere quadrature supports dimensions 2 and 3 only");
}

double trapezoid(std::span<const double> x, std::span<const double> y)
{
    double sum = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i)
        sum += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
    return sum;
}

double integrate_samples(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size())
        throw Error(ErrorKind::InvalidArgument, "sample abscissae and values differ in length");
    const std::size_t n = x.size();
    if (n < 2)
        return 0.0;
    const double h = (x[n - 1] - x[0]) / static_cast<double>(n - 1);
    bool uniform = n >= 8;
    for (std::size_t i = 1; uniform && i < n; ++i)
        uniform = std::abs((x[i] - x[i - 1]) - h) <= 1e-9 * h;
    if (!uniform)
        return trapezoid(x, y);

    // Weights 3/8, 7/6, 23/24, 1, ..., 1, 23/24, 7/6, 3/8.
    double sum = 0.0;
    for (std::size_t i = 3; i + 3 < n; ++i)
        sum += y[i];
    sum += 3.0 / 8.0 * (y[0] + y[n - 1]) + 7.0 / 6.0 * (y[1] + y[n - 2]) +
           23.0 / 24.0 * (y[2] + y[n - 3]);
    return h * sum;
}

}  // namespace pronysmt

#include <pronysmt/forward.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

#include <pronysmt/errors.hpp>
#include <pronysmt/quadrature.hpp>

namespace pronysmt {

namespace {

void check_sensor(int dim, const Vector& sensor)
{
    if (sensor.size() != dim)
        throw Error(ErrorKind::DimensionMismatch, "sensor dimension does not match the model");
}

double gaussian_normalization(int l, int dim)
{
    return std::pow(std::numbers::pi / l, 0.5 * (dim - 1));
}

}  // namespace

MomentVector point_moments(const PointSources& model, const Vector& sensor, int count)
{
    check_sensor(model.dim(), sensor);
    if (count < 1)
        throw Error(ErrorKind::InvalidArgument, "moment count must be positive");

    MomentVector out;
    out.sensor = sensor;
    out.probe = ProbeFamily::Monomial;
    out.first_index = 0;
    out.values.assign(static_cast<std::size_t>(count), 0.0);
    for (std::size_t k = 0; k < model.size(); ++k) {
        const double d = (sensor - model.nodes()[k]).norm();
        double power = 1.0;
        for (auto& v : out.values) {
            v += model.amplitudes()[k] * power;
            power *= d;
        }
    }
    return out;
}

MomentVector hyperplane_moments(const HyperplaneSources& model, const Vector& sensor, int count,
                                bool normalized)
{
    check_sensor(model.dim(), sensor);
    if (count < 1)
        throw Error(ErrorKind::InvalidArgument, "moment count must be positive");

    MomentVector out;
    out.sensor = sensor;
    out.probe = ProbeFamily::Gaussian;
    out.normalized = true;
    out.first_index = 1;
    out.values.assign(static_cast<std::size_t>(count), 0.0);
    for (std::size_t k = 0; k < model.size(); ++k) {
        const auto& h = model.planes()[k];
        const double gap = h.offset - sensor.dot(h.normal);
        for (int l = 1; l <= count; ++l)
            out.values[static_cast<std::size_t>(l - 1)] +=
                model.amplitudes()[k] * std::exp(-l * gap * gap);
    }
    return normalized ? out : to_raw(out);
}

MomentVector to_raw(const MomentVector& moments)
{
    if (moments.probe != ProbeFamily::Gaussian)
        throw Error(ErrorKind::InvalidArgument, "only Gaussian-probe moments carry a normalization");
    if (!moments.normalized)
        return moments;
    MomentVector out = moments;
    const int dim = static_cast<int>(moments.sensor.size());
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] *= gaussian_normalization(moments.first_index + static_cast<int>(i), dim);
    out.normalized = false;
    return out;
}

MomentVector to_normalized(const MomentVector& moments)
{
    if (moments.probe != ProbeFamily::Gaussian)
        throw Error(ErrorKind::InvalidArgument, "only Gaussian-probe moments carry a normalization");
    if (moments.normalized)
        return moments;
    MomentVector out = moments;
    const int dim = static_cast<int>(moments.sensor.size());
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] /= gaussian_normalization(moments.first_index + static_cast<int>(i), dim);
    out.normalized = true;
    return out;
}

std::vector<double> default_radial_grid(const RadialSources& model, const Vector& sensor,
                                        int samples)
{
    check_sensor(model.dim(), sensor);
    if (samples < 2)
        throw Error(ErrorKind::InvalidArgument, "radial grid needs at least two samples");
    double far = 0.0;
    for (const auto& x : model.nodes())
        far = std::max(far, (sensor - x).norm());
    const double top = far + model.kernel().support_radius() + 1.0;
    std::vector<double> radii(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i)
        radii[static_cast<std::size_t>(i)] = top * i / (samples - 1);
    return radii;
}

SphericalMeanTrace radial_trace(const RadialSources& model, const Vector& sensor,
                                const std::vector<double>& radii)
{
    check_sensor(model.dim(), sensor);
    const int dim = model.dim();
    if (dim != 2 && dim != 3)
        throw Error(ErrorKind::Unsupported, "radial traces support dimensions 2 and 3 only");
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (radii[i] < 0.0 || (i > 0 && !(radii[i] > radii[i - 1])))
            throw Error(ErrorKind::InvalidArgument, "radii must be nonnegative and strictly increasing");
    }

    SphericalMeanTrace out;
    out.sensor = sensor;
    out.radii = radii;
    out.values.assign(radii.size(), 0.0);

    const auto& kernel = model.kernel();
    const std::function<double(double)> profile = [&kernel](double r) { return kernel(r); };
    double far = 0.0;
    for (std::size_t k = 0; k < model.size(); ++k) {
        const double d = (sensor - model.nodes()[k]).norm();
        far = std::max(far, d);
        for (std::size_t q = 0; q < radii.size(); ++q) {
            const double t = radii[q];
            if (t == 0.0)
                continue;
            out.values[q] += model.amplitudes()[k] * std::pow(t, dim - 1) *
                             sphere_integral_radial(profile, d, t, dim);
        }
    }
    if (radii.empty() || radii.back() < far + kernel.support_radius())
        out.diagnostics.emplace_back("radial grid does not cover the support of f around the sensor");
    return out;
}

PointCounterexample counterexample_points()
{
    auto pt = [](double a, double b) { return Vector{{a, b}}; };
    return {PointSources(2, {pt(0, 1), pt(2, -1)}, {1.0, 1.0}),
            PointSources(2, {pt(0, -1), pt(2, 1)}, {1.0, 1.0}),
            SensorSet(2, {pt(0, 0), pt(2, 0), pt(1, 1)})};
}

HyperplaneCounterexample counterexample_hyperplanes()
{
    const double s = 1.0 / std::sqrt(5.0);
    auto line = [s](double a, double b) { return Hyperplane{Vector{{a * s, b * s}}, 0.0}; };
    auto pt = [](double a, double b) { return Vector{{a, b}}; };
    // l1: x - 2y = 0, l2: 2x + y = 0, k1: x + 2y = 0, k2: 2x - y = 0
    return {HyperplaneSources(2, {line(1, -2), line(2, 1)}, {1.0, 1.0}),
            HyperplaneSources(2, {line(1, 2), line(2, -1)}, {1.0, 1.0}),
            SensorSet(2, {pt(-1, 0), pt(1, 0), pt(0, -1), pt(0, 1), pt(1, 1)})};
}

}  // namespace pronysmt

#include <pronysmt/scenario.hpp>

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <sstream>

#include <pronysmt/errors.hpp>

namespace pronysmt {

Theorem Scenario::kind() const
{
    switch (model.index()) {
    case 0: return Theorem::Points;
    case 1: return Theorem::Hyperplanes;
    default: return Theorem::Radial;
    }
}

int Scenario::sources() const
{
    return std::visit([](const auto& m) { return static_cast<int>(m.size()); }, model);
}

namespace {

using Rng = std::mt19937_64;

constexpr int draws_per_item = 2000;

Vector uniform_point(Rng& rng, int dim, double half)
{
    std::uniform_real_distribution<double> u(-half, half);
    Vector v(dim);
    for (int i = 0; i < dim; ++i)
        v[i] = u(rng);
    return v;
}

Vector unit_vector(Rng& rng, int dim)
{
    std::normal_distribution<double> g(0.0, 1.0);
    Vector v(dim);
    do {
        for (int i = 0; i < dim; ++i)
            v[i] = g(rng);
    } while (v.norm() < 1e-3);
    return v / v.norm();
}

std::optional<std::vector<double>> draw_amplitudes(Rng& rng, int m, const GeneratorOptions& opt)
{
    std::uniform_real_distribution<double> mag(opt.amplitude_min, opt.amplitude_max);
    std::bernoulli_distribution sign(0.5);
    std::vector<double> out;
    for (int tries = 0; static_cast<int>(out.size()) < m; ++tries) {
        if (tries > draws_per_item * m)
            return std::nullopt;
        const double a = (sign(rng) ? -1.0 : 1.0) * mag(rng);
        const bool apart = std::all_of(out.begin(), out.end(),
                                       [&](double b) { return std::abs(a - b) >= opt.amplitude_gap; });
        if (apart)
            out.push_back(a);
    }
    return out;
}

std::optional<std::vector<Vector>> draw_nodes(Rng& rng, int dim, int m, const GeneratorOptions& opt)
{
    std::vector<Vector> out;
    for (int tries = 0; static_cast<int>(out.size()) < m; ++tries) {
        if (tries > draws_per_item * m)
            return std::nullopt;
        Vector x = uniform_point(rng, dim, opt.node_box);
        const bool apart = std::all_of(out.begin(), out.end(),
                                       [&](const Vector& y) { return (x - y).norm() >= opt.node_gap; });
        if (apart)
            out.push_back(std::move(x));
    }
    return out;
}

std::optional<std::vector<Hyperplane>> draw_planes(Rng& rng, int dim, int m, const GeneratorOptions& opt)
{
    std::uniform_real_distribution<double> offset(opt.offset_min, opt.offset_max);
    std::vector<Hyperplane> out;
    for (int tries = 0; static_cast<int>(out.size()) < m; ++tries) {
        if (tries > draws_per_item * m)
            return std::nullopt;
        Hyperplane h{unit_vector(rng, dim), offset(rng)};
        const bool apart = std::all_of(out.begin(), out.end(), [&](const Hyperplane& g) {
            return hyperplane_distance(g, h) >= opt.node_gap;
        });
        if (apart)
            out.push_back(std::move(h));
    }
    return out;
}

// Every n-subset of `placed` completed by `candidate` keeps the affine margin.
bool keeps_general_position(const std::vector<Vector>& placed, const Vector& candidate, int dim,
                            double margin)
{
    const auto n = static_cast<std::size_t>(dim);
    if (placed.size() < n)
        return true;
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i)
        idx[i] = i;
    std::vector<Vector> subset(n + 1);
    while (true) {
        for (std::size_t i = 0; i < n; ++i)
            subset[i] = placed[idx[i]];
        subset[n] = candidate;
        if (affine_conditioning(subset) < margin)
            return false;
        // next combination
        std::size_t k = n;
        while (k > 0 && idx[k - 1] == placed.size() - n + k - 1)
            --k;
        if (k == 0)
            return true;
        ++idx[k - 1];
        for (std::size_t j = k; j < n; ++j)
            idx[j] = idx[j - 1] + 1;
    }
}

bool well_separated(std::vector<double> values, double gap)
{
    std::sort(values.begin(), values.end());
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] - values[i - 1] < gap)
            return false;
    return true;
}

template <class Accept>
std::optional<std::vector<Vector>> draw_sensors(Rng& rng, int dim, int count, const GeneratorOptions& opt,
                                                Accept accept)
{
    std::vector<Vector> out;
    for (int tries = 0; static_cast<int>(out.size()) < count; ++tries) {
        if (tries > draws_per_item * count)
            return std::nullopt;
        Vector y = uniform_point(rng, dim, opt.sensor_box);
        if (!accept(y))
            continue;
        if (!keeps_general_position(out, y, dim, opt.affine_margin))
            continue;
        out.push_back(std::move(y));
    }
    return out;
}

std::optional<Scenario> attempt(Theorem kind, int dim, int m, Rng& rng, const GeneratorOptions& opt)
{
    const int count = opt.sensors > 0 ? opt.sensors : min_sensor_count(kind, dim, m);
    auto amps = draw_amplitudes(rng, m, opt);
    if (!amps)
        return std::nullopt;

    if (kind == Theorem::Hyperplanes) {
        auto planes = draw_planes(rng, dim, m, opt);
        if (!planes)
            return std::nullopt;
        auto sensors = draw_sensors(rng, dim, count, opt, [&](const Vector& y) {
            std::vector<double> d;
            std::vector<double> lambda;
            for (const auto& h : *planes) {
                d.push_back(std::abs(h.offset - y.dot(h.normal)));
                lambda.push_back(std::exp(-d.back() * d.back()));
            }
            if (*std::max_element(d.begin(), d.end()) > opt.plane_reach)
                return false;
            return well_separated(d, opt.distance_gap) && well_separated(lambda, 0.1 * opt.distance_gap);
        });
        if (!sensors)
            return std::nullopt;
        HyperplaneSources model(dim, std::move(*planes), std::move(*amps));
        if (!model.validity().ok())
            return std::nullopt;
        return Scenario{std::move(model), SensorSet(dim, std::move(*sensors))};
    }

    auto nodes = draw_nodes(rng, dim, m, opt);
    if (!nodes)
        return std::nullopt;
    auto sensors = draw_sensors(rng, dim, count, opt, [&](const Vector& y) {
        std::vector<double> d;
        for (const auto& x : *nodes)
            d.push_back((y - x).norm());
        return well_separated(d, opt.distance_gap);
    });
    if (!sensors)
        return std::nullopt;
    SensorSet sensor_set(dim, std::move(*sensors));
    if (kind == Theorem::Points) {
        PointSources model(dim, std::move(*nodes), std::move(*amps));
        if (!model.validity().ok())
            return std::nullopt;
        return Scenario{std::move(model), std::move(sensor_set)};
    }
    RadialSources model(dim, std::move(*nodes), std::move(*amps), RadialKernel::gaussian(opt.kernel_width));
    if (!model.validity().ok())
        return std::nullopt;
    return Scenario{std::move(model), std::move(sensor_set)};
}

}  // namespace

Scenario generate_scenario(Theorem kind, int dim, int m, std::uint64_t seed, const GeneratorOptions& opt)
{
    if (dim < 2)
        throw Error(ErrorKind::Unsupported, "dimension must be at least 2");
    if (kind == Theorem::Radial && dim > 3)
        throw Error(ErrorKind::Unsupported, "radial scenarios support n = 2 and n = 3 only");
    if (m < 1)
        throw Error(ErrorKind::InvalidArgument, "need at least one source");

    Rng rng(seed);
    for (int a = 0; a < opt.attempts; ++a) {
        if (auto s = attempt(kind, dim, m, rng, opt); s && validate_general_position(s->sensors))
            return std::move(*s);
    }
    std::ostringstream os;
    os << "no valid scenario after " << opt.attempts << " attempts (n=" << dim << ", m=" << m << ")";
    throw Error(ErrorKind::InvalidArgument, os.str());
}

Scenario example42_scenario()
{
    auto pt = [](double a, double b) {
        Vector v(2);
        v << a, b;
        return v;
    };
    PointSources model(2, {pt(-1, 0), pt(1, 0)}, {3.0, 2.0});
    SensorSet sensors(2, {pt(0, 0), pt(0, 2), pt(-1, 1), pt(1, 1), pt(1, 2)});
    return Scenario{std::move(model), std::move(sensors)};
}

}  // namespace pronysmt

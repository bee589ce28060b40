// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/LU>

#include <pronysmt/correspondence.hpp>
#include <pronysmt/demo.hpp>
#include <pronysmt/errors.hpp>
#include <pronysmt/hankel.hpp>
#include <pronysmt/pipeline.hpp>
#include <pronysmt/quadrature.hpp>
#include <pronysmt/scenario.hpp>

using namespace pronysmt;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& body)
{
    const auto start = Clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("unexpected exception: ") + e.what()};
    }
    if (!o.pass)
        ++failures;
    std::printf("criterion %d: %s  %s (%.2f s)%s%s\n", id, o.pass ? "PASS" : "FAIL", title.c_str(),
                seconds_since(start), o.detail.empty() ? "" : "\n    ", o.detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

Outcome golden_example()
{
    const auto start = Clock::now();
    const DemoResult r = demo_example42();
    const double elapsed = seconds_since(start);
    Outcome o;
    int bad = 0;
    for (const auto& c : r.checks) {
        if (c.ok)
            continue;
        ++bad;
        o.detail += c.label + fmt(": computed %.6f, reference %.3f", c.computed, c.reference);
        o.detail += c.note.empty() ? "\n    " : " (" + c.note + ")\n    ";
    }
    o.detail += std::to_string(r.checks.size() - static_cast<std::size_t>(bad)) + " of " +
                std::to_string(r.checks.size()) + " values within 5e-3; runtime " + fmt("%.3f s", elapsed);
    o.pass = bad == 0 && elapsed < 1.0;
    return o;
}

Outcome degeneracy()
{
    const Scenario s = example42_scenario();
    const auto& model = std::get<PointSources>(s.model);
    std::vector<bool> flags;
    double det_y1 = 0.0;
    for (std::size_t i = 0; i < s.sensors.size(); ++i) {
        const HankelSystem h = build_hankel(point_moments(model, s.sensors[i], 4), 2);
        flags.push_back(is_degenerate(h));
        if (i == 0)
            det_y1 = h.matrix.determinant();
    }
    const bool expected = flags == std::vector<bool>{true, true, false, false, false};
    std::string pattern;
    for (bool f : flags)
        pattern += f ? "D" : "g";
    return {expected && std::abs(det_y1) <= 1e-12, "flags " + pattern + fmt(", det U(y1) = %.3e", det_y1)};
}

double max_moment_gap(const MomentVector& a, const MomentVector& b)
{
    double gap = 0.0;
    for (std::size_t l = 0; l < a.values.size(); ++l)
        gap = std::max(gap, std::abs(a.values[l] - b.values[l]));
    return gap;
}

Outcome negative_controls()
{
    const PointCounterexample pc = counterexample_points();
    double point_gap = 0.0;
    std::vector<MomentVector> data;
    for (const auto& y : pc.sensors.points()) {
        data.push_back(point_moments(pc.first, y, 8));
        point_gap = std::max(point_gap, max_moment_gap(data.back(), point_moments(pc.second, y, 8)));
    }
    const HyperplaneCounterexample hc = counterexample_hyperplanes();
    double line_gap = 0.0;
    for (const auto& y : hc.sensors.points())
        line_gap = std::max(line_gap, max_moment_gap(hyperplane_moments(hc.first, y, 8),
                                                     hyperplane_moments(hc.second, y, 8)));

    std::string outcome;
    bool ambiguous = false;
    for (auto& d : data)
        d.values.resize(4);
    try {
        recover_points(data, 2, 2);
        outcome = "recover_points returned a model";
    } catch (const Error& e) {
        ambiguous = e.kind() == ErrorKind::AmbiguousAssignment;
        outcome = "recover_points raised " + std::string(e.name());
    }
    return {point_gap <= 1e-12 && line_gap <= 1e-12 && ambiguous,
            fmt("point moment gap %.1e, line moment gap %.1e; ", point_gap, line_gap) + outcome};
}

Outcome point_round_trips()
{
    const auto start = Clock::now();
    double worst = 0.0;
    int failed = 0;
    std::string first_failure;
    for (int i = 0; i < 200; ++i) {
        const int dim = 2 + i % 2;
        const int m = 2 + (i / 2) % 3;
        const auto seed = static_cast<std::uint64_t>(1000 + i);
        try {
            const Scenario s = generate_scenario(Theorem::Points, dim, m, seed);
            const auto& model = std::get<PointSources>(s.model);
            std::vector<MomentVector> data;
            for (const auto& y : s.sensors.points())
                data.push_back(point_moments(model, y, 2 * m));
            const ErrorTable e = compare_points(recover_points(data, dim, m), model.nodes(), model.amplitudes());
            worst = std::max(worst, e.max_error);
            if (e.max_error > 1e-6)
                ++failed;
        } catch (const Error& e) {
            ++failed;
            if (first_failure.empty())
                first_failure = "; seed " + std::to_string(seed) + ": " + e.what();
        }
    }
    const double elapsed = seconds_since(start);
    return {failed == 0 && worst <= 1e-6 && elapsed < 30.0,
            fmt("200 scenarios, %.0f failed, worst error %.2e, %.2f s", failed, worst, elapsed) + first_failure};
}

Outcome hyperplane_round_trips()
{
    double worst_angle = 0.0;
    double worst_offset = 0.0;
    double worst_amp = 0.0;
    int failed = 0;
    std::string first_failure;
    for (int i = 0; i < 100; ++i) {
        const int dim = 2 + i % 2;
        const int m = 1 + (i / 2) % 2;
        const auto seed = static_cast<std::uint64_t>(5000 + i);
        try {
            const Scenario s = generate_scenario(Theorem::Hyperplanes, dim, m, seed);
            const auto& model = std::get<HyperplaneSources>(s.model);
            std::vector<MomentVector> data;
            for (const auto& y : s.sensors.points())
                data.push_back(hyperplane_moments(model, y, 2 * m));
            const ErrorTable e = compare_hyperplanes(recover_hyperplanes(data, dim, m), model);
            for (std::size_t k = 0; k < e.normal_errors.size(); ++k) {
                worst_angle = std::max(worst_angle, e.normal_errors[k]);
                worst_offset = std::max(worst_offset, e.offset_errors[k]);
                worst_amp = std::max(worst_amp, e.amplitude_errors[k]);
            }
            if (e.max_error > 1e-6)
                ++failed;
        } catch (const Error& e) {
            ++failed;
            if (first_failure.empty())
                first_failure = "; seed " + std::to_string(seed) + ": " + e.what();
        }
    }
    const bool ok = failed == 0 && std::max({worst_angle, worst_offset, worst_amp}) <= 1e-6;
    return {ok, "100 scenarios, " + std::to_string(failed) + " failed" +
                    fmt(", worst angle %.2e, offset %.2e, amplitude %.2e", worst_angle, worst_offset, worst_amp) +
                    first_failure};
}

Outcome lemma_suite()
{
    std::mt19937_64 rng(20240);
    std::uniform_real_distribution<double> lam(-4.0, 4.0);
    int failed = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 2 + trial % 5;
        std::vector<double> lambdas;
        while (static_cast<int>(lambdas.size()) < n) {
            const double x = lam(rng);
            if (std::all_of(lambdas.begin(), lambdas.end(), [&](double z) { return std::abs(z - x) >= 1e-3; }))
                lambdas.push_back(x);
        }
        std::vector<int> sigma(static_cast<std::size_t>(n));
        std::iota(sigma.begin(), sigma.end(), 0);
        do
            std::shuffle(sigma.begin(), sigma.end(), rng);
        while (std::is_sorted(sigma.begin(), sigma.end()));
        if (!kernel_equal_pair_holds(lemma52_matrix(lambdas, sigma), 10, static_cast<std::uint64_t>(trial)))
            ++failed;
    }
    return {failed == 0, "1000 cases with n = 2..6, " + std::to_string(failed) + " failed"};
}

Outcome hankel_machinery()
{
    const RadialKernel g = RadialKernel::gaussian(1.0);
    std::vector<double> grid;
    for (int i = 0; i <= 100; ++i)
        grid.push_back(0.05 * i);
    double self_err = 0.0;
    double inv_err = 0.0;
    double prod_err = 0.0;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.1, 2.0);
    for (int dim : {2, 3}) {
        const HankelProfile p = hankel_transform(g, dim, grid, true);
        for (std::size_t i = 0; i < grid.size(); ++i)
            self_err = std::max(self_err, std::abs(p.values[i] - std::exp(-0.5 * grid[i] * grid[i])));

        // transform the quadrature profile back
        auto big_g = [&](double lambda) {
            return hankel_integral([&](double r) { return g(r); }, dim, lambda, g.support_radius());
        };
        for (double r = 0.0; r <= 3.0 + 1e-12; r += 0.25)
            inv_err = std::max(inv_err, std::abs(hankel_integral(big_g, dim, r, 12.0, 1e-8) - g(r)));

        const double nu = hankel_order(dim);
        for (int trial = 0; trial < 20; ++trial) {
            const double xn = u(rng);
            const double r = u(rng);
            const double lambda = u(rng);
            auto f = [&](double phi) {
                const double d = std::sqrt(xn * xn + r * r + 2.0 * xn * r * std::cos(phi));
                const double measure = dim == 3 ? 2.0 * std::numbers::pi * std::sin(phi) : 2.0;
                return normalized_bessel(nu, lambda * d) * measure;
            };
            const double lhs = integrate(f, 0.0, std::numbers::pi, 1e-12);
            const double rhs = std::pow(2.0 * std::numbers::pi, 0.5 * dim) * normalized_bessel(nu, lambda * r) *
                               normalized_bessel(nu, lambda * xn);
            prod_err = std::max(prod_err, std::abs(lhs - rhs));
        }
    }
    return {self_err <= 1e-8 && inv_err <= 1e-6 && prod_err <= 1e-6,
            fmt("self-transform %.1e, inversion %.1e, product identity %.1e", self_err, inv_err, prod_err)};
}

Outcome radial_end_to_end()
{
    const auto start = Clock::now();
    double worst_node = 0.0;
    double worst_amp = 0.0;
    int failed = 0;
    std::string first_failure;
    for (int i = 0; i < 20; ++i) {
        const int m = 1 + i % 2;
        const auto seed = static_cast<std::uint64_t>(9000 + i);
        try {
            const Scenario s = generate_scenario(Theorem::Radial, 3, m, seed);
            const auto& model = std::get<RadialSources>(s.model);
            std::vector<SphericalMeanTrace> traces;
            for (const auto& y : s.sensors.points())
                traces.push_back(radial_trace(model, y, default_radial_grid(model, y)));
            const ErrorTable e =
                compare_points(recover_radial(traces, model.kernel(), 3, m), model.nodes(), model.amplitudes());
            for (std::size_t k = 0; k < e.node_errors.size(); ++k) {
                worst_node = std::max(worst_node, e.node_errors[k]);
                worst_amp = std::max(worst_amp, e.amplitude_errors[k]);
            }
            if (e.max_error > 1e-3)
                ++failed;
        } catch (const Error& e) {
            ++failed;
            if (first_failure.empty())
                first_failure = "; seed " + std::to_string(seed) + ": " + e.what();
        }
    }
    const double elapsed = seconds_since(start);
    return {failed == 0 && worst_node <= 1e-3 && worst_amp <= 1e-3 && elapsed < 60.0,
            "20 scenarios, " + std::to_string(failed) + " failed" +
                fmt(", worst node %.2e, amplitude %.2e, %.2f s", worst_node, worst_amp, elapsed) + first_failure};
}

Outcome counting()
{
    bool ok = min_sensor_count(Theorem::Points, 2, 2) == 5;
    int formula_cases = 0;
    for (int n = 1; n <= 5; ++n)
        for (int m = 1; m <= 6; ++m) {
            ok = ok && min_sensor_count(Theorem::Points, n, m) ==
                           required_good_sensors(Theorem::Points, n) + n * m * (m - 1) / 2;
            ++formula_cases;
        }

    // Adversarial placement: fill every bisector with n sensors, then add the
    // rest at random. At least n + 1 sensors must still see pairwise distinct
    // distances, i.e. lie off every bisector.
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    auto rand_point = [&](int dim) {
        Vector v(dim);
        for (int i = 0; i < dim; ++i)
            v[i] = u(rng);
        return v;
    };
    int placements = 0;
    for (int n = 1; n <= 5; ++n)
        for (int m = 2; m <= 6; ++m)
            for (int trial = 0; trial < 5; ++trial) {
                std::vector<Vector> nodes;
                for (int k = 0; k < m; ++k)
                    nodes.push_back(rand_point(n));
                std::vector<Vector> sensors;
                for (int i = 0; i < m; ++i)
                    for (int j = i + 1; j < m; ++j) {
                        const Vector a = nodes[static_cast<std::size_t>(i)];
                        const Vector b = nodes[static_cast<std::size_t>(j)];
                        const Vector mid = 0.5 * (a + b);
                        const Vector normal = (b - a).normalized();
                        for (int k = 0; k < n; ++k) {
                            Vector p = rand_point(n);
                            sensors.push_back(mid + p - normal * normal.dot(p));
                        }
                    }
                while (static_cast<int>(sensors.size()) < min_sensor_count(Theorem::Points, n, m))
                    sensors.push_back(rand_point(n));
                int good = 0;
                for (const auto& y : sensors) {
                    std::vector<double> d;
                    for (const auto& x : nodes)
                        d.push_back((y - x).norm());
                    std::sort(d.begin(), d.end());
                    bool distinct = true;
                    for (std::size_t k = 1; k < d.size(); ++k)
                        distinct = distinct && d[k] - d[k - 1] > 1e-9 * (1.0 + d[k]);
                    good += distinct ? 1 : 0;
                }
                ok = ok && good >= required_good_sensors(Theorem::Points, n);
                ++placements;
            }
    return {ok, std::to_string(formula_cases) + " formula cases, " + std::to_string(placements) +
                    " adversarial placements"};
}

}  // namespace

int main()
{
    report(1, "worked example reproduced within 5e-3 in under 1 s", golden_example);
    report(2, "worked example degeneracy flags", degeneracy);
    report(3, "colliding-amplitude negative controls", negative_controls);
    report(4, "point-source round trips", point_round_trips);
    report(5, "hyperplane round trips", hyperplane_round_trips);
    report(6, "permutation-difference kernel property", lemma_suite);
    report(7, "Hankel transform machinery", hankel_machinery);
    report(8, "radial-kernel end to end", radial_end_to_end);
    report(9, "sensor counting", counting);
    std::printf("%d of 9 criteria passed\n", 9 - failures);
    return failures == 0 ? 0 : 1;
}

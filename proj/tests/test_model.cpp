#include <doctest.h>

#include <algorithm>
#include <random>

#include <pronysmt/errors.hpp>
#include <pronysmt/model.hpp>
#include <pronysmt/scenario.hpp>

#include "oracles.hpp"

using namespace pronysmt;

namespace {

Vector v2(double a, double b) { return Vector{{a, b}}; }

std::vector<Vector> example_sensors()
{
    return {v2(0, 0), v2(0, 2), v2(-1, 1), v2(1, 1), v2(1, 2)};
}

}  // namespace

TEST_CASE("general position of the five worked-example sensors")
{
    CHECK(validate_general_position(SensorSet(2, example_sensors())));
}

TEST_CASE("collinear triple fails general position")
{
    CHECK_FALSE(validate_general_position(SensorSet(2, {v2(0, 0), v2(1, 0), v2(2, 0)})));
}

TEST_CASE("fewer than n+1 sensors pass vacuously")
{
    CHECK(validate_general_position(SensorSet(3, {Vector{{0, 0, 0}}, Vector{{1, 1, 1}}})));
}

TEST_CASE("random cube points agree with determinant brute force")
{
    std::mt19937_64 rng(20);
    std::vector<Vector> pts;
    for (int i = 0; i < 20; ++i)
        pts.push_back(oracle::point(rng, 3, 1.0));

    // every quadruple through exact 4x4 determinants
    bool brute = true;
    for (int a = 0; a < 20; ++a)
        for (int b = a + 1; b < 20; ++b)
            for (int c = b + 1; c < 20; ++c)
                for (int d = c + 1; d < 20; ++d)
                    brute = brute && std::abs(oracle::affine_det({pts[a], pts[b], pts[c], pts[d]})) > 1e-12;
    CHECK(brute);
    CHECK(validate_general_position(SensorSet(3, pts)));
}

TEST_CASE("general position is invariant under permutation and rigid motion")
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const int dim = 2 + trial % 2;
        std::vector<Vector> pts;
        for (int i = 0; i < 7; ++i)
            pts.push_back(oracle::point(rng, dim, 2.0));
        if (trial % 5 == 0)  // force a degenerate subset now and then
            pts.push_back(0.5 * (pts[0] + pts[1]));
        const bool base = validate_general_position(SensorSet(dim, pts));

        auto shuffled = pts;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        CHECK(validate_general_position(SensorSet(dim, shuffled)) == base);

        const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(Eigen::MatrixXd::Random(dim, dim)).householderQ();
        const Vector shift = oracle::point(rng, dim, 5.0);
        std::vector<Vector> moved;
        for (const auto& p : pts)
            moved.push_back(q * p + shift);
        CHECK(validate_general_position(SensorSet(dim, moved)) == base);

        if (!base) {
            moved.push_back(oracle::point(rng, dim, 3.0));
            CHECK_FALSE(validate_general_position(SensorSet(dim, moved)));
        }
    }
}

TEST_CASE("sensor counts")
{
    CHECK(min_sensor_count(Theorem::Points, 2, 2) == 5);
    CHECK(min_sensor_count(Theorem::Points, 2, 1) == 3);
    CHECK(min_sensor_count(Theorem::Hyperplanes, 2, 2) == 9);
    CHECK(min_sensor_count(Theorem::Radial, 3, 2) == min_sensor_count(Theorem::Points, 3, 2));
    CHECK(required_good_sensors(Theorem::Points, 2) == 3);
    CHECK(required_good_sensors(Theorem::Hyperplanes, 2) == 5);
    CHECK(required_good_sensors(Theorem::Points, 3) == 4);

    for (int n = 2; n <= 5; ++n)
        for (int m = 1; m <= 6; ++m)
            CHECK(min_sensor_count(Theorem::Points, n, m) ==
                  required_good_sensors(Theorem::Points, n) + n * m * (m - 1) / 2);
}

TEST_CASE("point model validity flags")
{
    const PointSources ok(2, {v2(-1, 0), v2(1, 0)}, {3.0, 2.0});
    CHECK(ok.validity().ok());

    const PointSources same_amp(2, {v2(0, 1), v2(2, -1)}, {1.0, 1.0});
    CHECK_FALSE(same_amp.validity().amplitudes_distinct);
    CHECK_FALSE(same_amp.validity().ok());

    const PointSources zero_amp(2, {v2(0, 1), v2(2, -1)}, {0.0, 1.0});
    CHECK_FALSE(zero_amp.validity().amplitudes_nonzero);

    const PointSources same_node(2, {v2(0, 1), v2(0, 1)}, {1.0, 2.0});
    CHECK_FALSE(same_node.validity().nodes_distinct);
}

TEST_CASE("structural model errors")
{
    CHECK_THROWS_AS(PointSources(1, {Vector{{0.0}}}, {1.0}), Error);
    CHECK_THROWS_AS(PointSources(2, {}, {}), Error);
    CHECK_THROWS_AS(PointSources(2, {v2(0, 0)}, {1.0, 2.0}), Error);
    try {
        PointSources(2, {Vector{{0, 0, 0}}}, {1.0});
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DimensionMismatch);
    }
    CHECK_THROWS_AS(SensorSet(2, {v2(0, 0), v2(0, 0)}), Error);
}

TEST_CASE("hyperplane model validity flags")
{
    const double s = 1.0 / std::sqrt(5.0);
    const HyperplaneSources through_origin(2, {{v2(s, -2 * s), 0.0}, {v2(2 * s, s), 0.0}}, {1.0, 2.0});
    CHECK_FALSE(through_origin.validity().offsets_positive);

    const HyperplaneSources not_unit(2, {{v2(1, 1), 1.0}}, {1.0});
    CHECK_FALSE(not_unit.validity().normals_unit);

    const HyperplaneSources twice(2, {{v2(1, 0), 1.0}, {v2(-1, 0), -1.0}}, {1.0, 2.0});
    CHECK_FALSE(twice.validity().hyperplanes_distinct);

    const HyperplaneSources good(2, {{v2(1, 0), 1.0}, {v2(0, 1), 2.0}}, {1.0, 2.0});
    CHECK(good.validity().ok());
}

TEST_CASE("radial model checks kernel decay")
{
    const RadialSources good(3, {Vector{{0, 0, 0}}}, {1.0}, RadialKernel::gaussian(1.0));
    CHECK(good.validity().kernel_decays);
    const RadialSources slow(2, {v2(0, 0)}, {1.0},
                             RadialKernel::custom("cauchy", [](double r) { return 1.0 / (1.0 + r * r); }, 3.0));
    CHECK_FALSE(slow.validity().kernel_decays);
}

TEST_CASE("canonical hyperplanes")
{
    const Hyperplane h = canonical({v2(-1, 0), -2.0});
    CHECK(h.offset == doctest::Approx(2.0));
    CHECK(h.normal[0] == doctest::Approx(1.0));

    const Hyperplane z = canonical({v2(0, -1), 1e-14});
    CHECK(z.offset == 0.0);
    CHECK(z.normal[1] == doctest::Approx(1.0));

    CHECK(hyperplane_distance({v2(1, 0), 1.0}, {v2(-1, 0), -1.0}) == doctest::Approx(0.0));
    CHECK(hyperplane_distance({v2(1, 0), 1.0}, {v2(1, 0), 2.0}) == doctest::Approx(1.0));
}

TEST_CASE("generated scenarios honor the model invariants")
{
    const GeneratorOptions opt;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const auto kind = static_cast<Theorem>(seed % 3);
        const int dim = kind == Theorem::Radial ? 3 : 2 + static_cast<int>((seed / 3) % 2);
        const int m = 1 + static_cast<int>((seed / 6) % (kind == Theorem::Points ? 4 : 2));
        const Scenario s = generate_scenario(kind, dim, m, seed);
        CAPTURE(seed);
        REQUIRE(s.kind() == kind);
        CHECK(s.sources() == m);
        CHECK(static_cast<int>(s.sensors.size()) == min_sensor_count(kind, dim, m));
        CHECK(validate_general_position(s.sensors, opt.affine_margin));

        std::vector<double> amps;
        std::visit([&](const auto& model) {
            CHECK(model.validity().ok());
            amps = model.amplitudes();
        }, s.model);
        for (std::size_t i = 0; i < amps.size(); ++i) {
            CHECK(std::abs(amps[i]) >= opt.amplitude_min);
            CHECK(std::abs(amps[i]) <= opt.amplitude_max);
            for (std::size_t j = i + 1; j < amps.size(); ++j)
                CHECK(std::abs(amps[i] - amps[j]) >= opt.amplitude_gap);
        }

        if (kind == Theorem::Hyperplanes) {
            for (const auto& h : std::get<HyperplaneSources>(s.model).planes()) {
                CHECK(h.offset > opt.offset_min);
                CHECK(h.offset < opt.offset_max);
            }
            continue;
        }
        const auto& nodes = kind == Theorem::Points ? std::get<PointSources>(s.model).nodes()
                                                    : std::get<RadialSources>(s.model).nodes();
        for (std::size_t i = 0; i < nodes.size(); ++i)
            for (std::size_t j = i + 1; j < nodes.size(); ++j)
                CHECK((nodes[i] - nodes[j]).norm() >= opt.node_gap);
        for (const auto& y : s.sensors.points()) {
            std::vector<double> d;
            for (const auto& x : nodes)
                d.push_back((y - x).norm());
            std::sort(d.begin(), d.end());
            for (std::size_t k = 1; k < d.size(); ++k)
                CHECK(d[k] - d[k - 1] >= opt.distance_gap);
        }
    }
}

TEST_CASE("generator is deterministic")
{
    const Scenario a = generate_scenario(Theorem::Points, 3, 3, 17);
    const Scenario b = generate_scenario(Theorem::Points, 3, 3, 17);
    const auto& pa = std::get<PointSources>(a.model);
    const auto& pb = std::get<PointSources>(b.model);
    CHECK(pa.amplitudes() == pb.amplitudes());
    for (std::size_t i = 0; i < pa.size(); ++i)
        CHECK(pa.nodes()[i] == pb.nodes()[i]);
    for (std::size_t i = 0; i < a.sensors.size(); ++i)
        CHECK(a.sensors[i] == b.sensors[i]);
}

#include <doctest.h>

#include <cmath>
#include <random>

#include <pronysmt/errors.hpp>
#include <pronysmt/forward.hpp>
#include <pronysmt/geometry.hpp>
#include <pronysmt/prony.hpp>

#include "oracles.hpp"

using namespace pronysmt;
using doctest::Approx;

namespace {

Vector v2(double a, double b) { return Vector{{a, b}}; }

ErrorKind kind_of(auto&& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("trilateration of the first example node from rounded distances")
{
    const std::vector<Vector> anchors{v2(-1, 1), v2(1, 1), v2(1, 2)};
    const std::vector<double> d{1.0, 2.235, 2.828};
    // three-decimal distances do not meet the default residual check
    const Vector x = trilaterate(anchors, d, GeometryTolerances{.distance = 1e-3});
    CHECK(x[0] == Approx(-0.998).epsilon(5e-3));
    CHECK(std::abs(x[1] - 0.001) <= 5e-3);
    CHECK(kind_of([&] { trilaterate(anchors, d); }) == ErrorKind::InconsistentDistances);
}

TEST_CASE("trilateration with a zero distance")
{
    const Vector x = trilaterate(std::vector<Vector>{v2(0, 0), v2(1, 0), v2(0, 1)}, std::vector<double>{0, 1, 1});
    CHECK(x.norm() <= 1e-14);
}

TEST_CASE("trilateration round trip")
{
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 200; ++trial) {
        const int dim = 2 + trial % 2;
        const Vector x = oracle::point(rng, dim, 5.0);
        std::vector<Vector> anchors;
        do {
            anchors.clear();
            for (int i = 0; i <= dim; ++i)
                anchors.push_back(oracle::point(rng, dim, 5.0));
        } while (std::abs(oracle::affine_det(anchors)) < 1e-2);
        std::vector<double> d;
        for (const auto& a : anchors)
            d.push_back((x - a).norm());
        CHECK((trilaterate(anchors, d) - x).norm() <= 1e-10 * (1.0 + x.norm()));
    }
}

TEST_CASE("trilateration errors")
{
    CHECK(kind_of([] {
              trilaterate(std::vector<Vector>{v2(0, 0), v2(1, 0), v2(2, 0)}, std::vector<double>{1, 1, 1});
          }) == ErrorKind::AffinelyDependentAnchors);
    CHECK(kind_of([] {
              trilaterate(std::vector<Vector>{v2(0, 0), v2(1, 0), v2(0, 1)}, std::vector<double>{1, 1, 5});
          }) == ErrorKind::InconsistentDistances);
}

TEST_CASE("bisectors")
{
    const Hyperplane h = bisector_hyperplane(v2(-1, 0), v2(1, 0));
    CHECK(h.normal[0] == Approx(1.0));
    CHECK(h.offset == Approx(0.0));
    CHECK(unsigned_distance(v2(0, 0), h) <= 1e-15);
    CHECK(unsigned_distance(v2(0, 2), h) <= 1e-15);

    const Hyperplane g = bisector_hyperplane(v2(0, 0), v2(0, 2));
    CHECK(std::abs(g.normal[1]) == Approx(1.0));
    CHECK(g.offset == Approx(1.0));

    CHECK(kind_of([] { bisector_hyperplane(v2(1, 1), v2(1, 1)); }) == ErrorKind::CoincidentPoints);

    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 100; ++trial) {
        const Vector a = oracle::point(rng, 3, 3.0);
        const Vector b = oracle::point(rng, 3, 3.0);
        const Hyperplane p = bisector_hyperplane(a, b);
        // points on the plane: foot plus tangent directions
        Eigen::MatrixXd basis = Eigen::FullPivLU<Eigen::MatrixXd>(p.normal.transpose()).kernel();
        for (int k = 0; k < 10; ++k) {
            const Vector y = p.normal * p.offset + basis * oracle::point(rng, 2, 4.0);
            CHECK(std::abs((y - a).norm() - (y - b).norm()) <= 1e-12 * (1.0 + y.norm()));
        }
    }
}

TEST_CASE("equidistance loci")
{
    const auto parallel = equidistance_hyperplanes({v2(1, 0), 1.0}, {v2(1, 0), 3.0});
    REQUIRE(parallel.size() == 1);
    CHECK(parallel[0].normal[0] == Approx(1.0));
    CHECK(parallel[0].offset == Approx(2.0));

    const double s = 1.0 / std::sqrt(5.0);
    const auto crossing = equidistance_hyperplanes({v2(s, -2 * s), 0.0}, {v2(2 * s, s), 0.0});
    REQUIRE(crossing.size() == 2);
    for (const auto& h : crossing)
        CHECK(h.offset == Approx(0.0));

    CHECK(kind_of([] { equidistance_hyperplanes({v2(1, 0), 1.0}, {v2(-1, 0), -1.0}); }) ==
          ErrorKind::IdenticalHyperplanes);

    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> off(0.1, 3.0);
    for (int trial = 0; trial < 50; ++trial) {
        Vector n1 = oracle::point(rng, 2, 1.0);
        Vector n2 = oracle::point(rng, 2, 1.0);
        const Hyperplane a{n1 / n1.norm(), off(rng)};
        const Hyperplane b{n2 / n2.norm(), off(rng)};
        for (const auto& h : equidistance_hyperplanes(a, b)) {
            const Vector dir = v2(-h.normal[1], h.normal[0]);
            for (int k = 0; k < 200; ++k) {
                const Vector y = h.normal * h.offset + std::uniform_real_distribution<double>(-5, 5)(rng) * dir;
                CHECK(std::abs(unsigned_distance(y, a) - unsigned_distance(y, b)) <= 1e-12 * (1.0 + y.norm()));
            }
        }
    }
}

TEST_CASE("hyperplane from unsigned distances")
{
    const std::vector<Vector> anchors{v2(0, 0), v2(3, 0), v2(0, 1), v2(2, 2), v2(-1, 2)};
    const Hyperplane h = hyperplane_from_unsigned_distances(anchors, std::vector<double>{1, 2, 1, 1, 2});
    CHECK(h.normal[0] == Approx(1.0));
    CHECK(h.offset == Approx(1.0));

    CHECK(kind_of([&] { hyperplane_from_unsigned_distances(anchors, std::vector<double>{1, 2, 1, 3, 2}); }) ==
          ErrorKind::NoConsistentHyperplane);
}

TEST_CASE("hyperplane round trip")
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> off(0.1, 5.0);
    for (int trial = 0; trial < 200; ++trial) {
        const int dim = 2 + trial % 2;
        Vector n = oracle::point(rng, dim, 1.0);
        const Hyperplane truth = canonical({n / n.norm(), off(rng)});
        std::vector<Vector> anchors;
        for (int i = 0; i < 2 * dim + 1; ++i)
            anchors.push_back(oracle::point(rng, dim, 4.0));
        if (!validate_general_position(SensorSet(dim, anchors), 1e-3))
            continue;
        std::vector<double> d;
        for (const auto& y : anchors)
            d.push_back(unsigned_distance(y, truth));
        const Hyperplane h = hyperplane_from_unsigned_distances(anchors, d);
        CHECK(hyperplane_distance(h, truth) <= 1e-9);
    }
}

TEST_CASE("colliding line data surfaces both candidates")
{
    // l1 and k1 share their distances to y1, y2, y3
    const HyperplaneCounterexample ce = counterexample_hyperplanes();
    const std::vector<Vector> anchors{ce.sensors[0], ce.sensors[1], ce.sensors[2]};
    std::vector<double> d;
    for (const auto& y : anchors)
        d.push_back(unsigned_distance(y, ce.first.planes()[0]));
    try {
        hyperplane_from_unsigned_distances(anchors, d);
        FAIL("expected MultipleCandidates");
    } catch (const MultipleCandidatesError& e) {
        CHECK(e.kind() == ErrorKind::MultipleCandidates);
        bool has_l1 = false;
        bool has_k1 = false;
        for (const auto& h : e.candidates()) {
            has_l1 = has_l1 || hyperplane_distance(h, ce.first.planes()[0]) <= 1e-9;
            has_k1 = has_k1 || hyperplane_distance(h, ce.second.planes()[0]) <= 1e-9;
        }
        CHECK(has_l1);
        CHECK(has_k1);
    }

    // With y5 among three anchors the fit is unique: a line equidistant from
    // (-1,0) and (1,0) is horizontal or passes through the origin, and of
    // those only l1 has distance 1/sqrt(5) to (1,1).
    for (std::size_t other = 0; other < 4; ++other) {
        for (std::size_t third = other + 1; third < 4; ++third) {
            const std::vector<Vector> with_y5{ce.sensors[other], ce.sensors[third], ce.sensors[4]};
            std::vector<double> d5;
            for (const auto& y : with_y5)
                d5.push_back(unsigned_distance(y, ce.first.planes()[0]));
            CHECK(hyperplane_distance(hyperplane_from_unsigned_distances(with_y5, d5), ce.first.planes()[0]) <= 1e-9);
        }
    }

    CHECK(unsigned_distance(ce.sensors[4], ce.first.planes()[0]) ==
          Approx(unsigned_distance(ce.sensors[4], ce.second.planes()[1])));
}

TEST_CASE("unsigned distance")
{
    const double s = 1.0 / std::sqrt(5.0);
    const Hyperplane l1{v2(s, -2 * s), 0.0};
    CHECK(unsigned_distance(v2(1, 1), l1) == Approx(s));
    CHECK(unsigned_distance(v2(2, 1), l1) <= 1e-15);
    CHECK(kind_of([] { unsigned_distance(v2(0, 0), {v2(1, 1), 1.0}); }) == ErrorKind::NonUnitNormal);

    // brute minimization over sampled line points
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 20; ++trial) {
        const Vector y = oracle::point(rng, 2, 3.0);
        const Vector dir = v2(2 * s, s);
        double best = 1e300;
        for (int k = -400000; k <= 400000; ++k)
            best = std::min(best, (y - (k * 1e-5) * dir).norm());
        CHECK(unsigned_distance(y, l1) == Approx(best).epsilon(1e-6));
    }
}

TEST_CASE("degenerate sensors lie on a bisector")
{
    std::mt19937_64 rng(6);
    int degenerate = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const Vector x1 = oracle::point(rng, 2, 2.0);
        const Vector x2 = oracle::point(rng, 2, 2.0);
        const PointSources model(2, {x1, x2}, {1.0, 2.0});
        const Hyperplane h = bisector_hyperplane(x1, x2);
        // half the sensors on the bisector, half random
        const Vector y = trial % 2 == 0
                             ? Vector(h.normal * h.offset + 3.0 * oracle::point(rng, 1, 1.0)[0] * v2(-h.normal[1], h.normal[0]))
                             : oracle::point(rng, 2, 3.0);
        if (is_degenerate(build_hankel(point_moments(model, y, 4), 2))) {
            ++degenerate;
            CHECK(unsigned_distance(y, h) <= 1e-7);
        }
    }
    CHECK(degenerate >= 50);
}

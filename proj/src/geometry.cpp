#include <pronysmt/geometry.hpp>

#include <cmath>
#include <sstream>

#include <Eigen/Dense>

namespace pronysmt {

namespace {

void check_anchor_set(std::span<const Vector> anchors, std::span<const double> distances,
                      std::size_t minimum)
{
    if (anchors.size() != distances.size())
        throw Error(ErrorKind::InvalidArgument, "anchor and distance counts differ");
    if (anchors.empty())
        throw Error(ErrorKind::InvalidArgument, "no anchors");
    const auto n = anchors.front().size();
    if (anchors.size() < minimum)
        throw Error(ErrorKind::InvalidArgument, "too few anchors");
    for (const auto& a : anchors)
        if (a.size() != n)
            throw Error(ErrorKind::DimensionMismatch, "anchors of different dimensions");
    for (double d : distances)
        if (!(d >= 0.0))
            throw Error(ErrorKind::InvalidArgument, "distances must be nonnegative");
}

double norm_of(std::span<const double> v)
{
    double s = 0.0;
    for (double x : v)
        s += x * x;
    return std::sqrt(s);
}

}  // namespace

Vector trilaterate(std::span<const Vector> anchors, std::span<const double> distances,
                   const GeometryTolerances& tol)
{
    if (anchors.empty())
        throw Error(ErrorKind::InvalidArgument, "no anchors");
    const auto n = anchors.front().size();
    check_anchor_set(anchors, distances, static_cast<std::size_t>(n + 1));
    if (anchors.size() != static_cast<std::size_t>(n + 1))
        throw Error(ErrorKind::InvalidArgument, "trilateration takes exactly n+1 anchors");
    if (!affinely_independent(anchors.first(static_cast<std::size_t>(n + 1))))
        throw Error(ErrorKind::AffinelyDependentAnchors, "anchors lie on a common hyperplane");

    const Vector& y1 = anchors[0];
    const double d1 = distances[0];
    Eigen::MatrixXd a(n, n);
    Eigen::VectorXd b(n);
    for (Eigen::Index l = 1; l <= n; ++l) {
        const Vector& yl = anchors[static_cast<std::size_t>(l)];
        const double dl = distances[static_cast<std::size_t>(l)];
        a.row(l - 1) = 2.0 * (y1 - yl).transpose();
        b[l - 1] = (y1.squaredNorm() - yl.squaredNorm()) - (d1 * d1 - dl * dl);
    }
    const Vector x = a.partialPivLu().solve(b);

    const double allowed = tol.distance * (1.0 + norm_of(distances));
    for (std::size_t l = 0; l < anchors.size(); ++l) {
        const double miss = std::abs((x - anchors[l]).norm() - distances[l]);
        if (miss > allowed) {
            std::ostringstream os;
            os << "distance to anchor " << l << " misses by " << miss << " (allowed " << allowed << ")";
            throw Error(ErrorKind::InconsistentDistances, os.str());
        }
    }
    return x;
}

Hyperplane bisector_hyperplane(const Vector& a, const Vector& b)
{
    if (a.size() != b.size())
        throw Error(ErrorKind::DimensionMismatch, "points of different dimensions");
    const Vector diff = a - b;
    const double len = diff.norm();
    if (len == 0.0)
        throw Error(ErrorKind::CoincidentPoints, "bisector of a point with itself");
    const Vector normal = diff / len;
    return canonical({normal, normal.dot(0.5 * (a + b))});
}

double unsigned_distance(const Vector& y, const Hyperplane& h)
{
    if (std::abs(h.normal.norm() - 1.0) > 1e-9)
        throw Error(ErrorKind::NonUnitNormal, "hyperplane normal is not a unit vector");
    if (y.size() != h.normal.size())
        throw Error(ErrorKind::DimensionMismatch, "point and hyperplane dimensions differ");
    return std::abs(h.offset - y.dot(h.normal));
}

std::vector<Hyperplane> equidistance_hyperplanes(const Hyperplane& a, const Hyperplane& b)
{
    if (a.normal.size() != b.normal.size())
        throw Error(ErrorKind::DimensionMismatch, "hyperplanes of different dimensions");
    if (hyperplane_distance(a, b) <= 1e-12)
        throw Error(ErrorKind::IdenticalHyperplanes, "equidistance locus of a hyperplane with itself");

    std::vector<Hyperplane> out;
    // rho_a - <y, theta_a> = +-(rho_b - <y, theta_b>)
    const Hyperplane raw[2] = {{a.normal - b.normal, a.offset - b.offset},
                               {a.normal + b.normal, a.offset + b.offset}};
    for (const auto& h : raw) {
        const double len = h.normal.norm();
        if (len <= 1e-12)
            continue;
        out.push_back(canonical({h.normal / len, h.offset / len}));
    }
    return out;
}

MultipleCandidatesError::MultipleCandidatesError(const std::string& message,
                                                 std::vector<Hyperplane> candidates)
    : Error(ErrorKind::MultipleCandidates, message), candidates_(std::move(candidates))
{
}

Hyperplane hyperplane_from_unsigned_distances(std::span<const Vector> anchors,
                                              std::span<const double> distances,
                                              const GeometryTolerances& tol)
{
    if (anchors.empty())
        throw Error(ErrorKind::InvalidArgument, "no anchors");
    const auto n = anchors.front().size();
    check_anchor_set(anchors, distances, static_cast<std::size_t>(n + 1));
    const auto base = static_cast<std::size_t>(n + 1);
    if (!affinely_independent(anchors.first(base)))
        throw Error(ErrorKind::AffinelyDependentAnchors, "first n+1 anchors lie on a common hyperplane");

    // Unknowns (theta, rho): <y_l, theta> - rho = -eps_l d_l.
    Eigen::MatrixXd sys(n + 1, n + 1);
    for (Eigen::Index l = 0; l <= n; ++l) {
        sys.row(l).head(n) = anchors[static_cast<std::size_t>(l)].transpose();
        sys(l, n) = -1.0;
    }
    const auto lu = sys.partialPivLu();
    const double allowed = tol.distance * (1.0 + norm_of(distances));

    std::vector<Hyperplane> survivors;
    const unsigned patterns = 1u << base;
    for (unsigned mask = 0; mask < patterns; ++mask) {
        Eigen::VectorXd rhs(n + 1);
        for (std::size_t l = 0; l < base; ++l)
            rhs[static_cast<Eigen::Index>(l)] = ((mask >> l) & 1u ? 1.0 : -1.0) * distances[l];
        const Eigen::VectorXd sol = lu.solve(rhs);
        const double len = sol.head(n).norm();
        if (std::abs(len - 1.0) > tol.unit)
            continue;
        const Hyperplane cand = canonical({sol.head(n) / len, sol[n] / len});

        bool consistent = true;
        for (std::size_t l = 0; l < anchors.size() && consistent; ++l)
            consistent = std::abs(std::abs(cand.offset - anchors[l].dot(cand.normal)) - distances[l]) <= allowed;
        if (!consistent)
            continue;

        bool duplicate = false;
        for (const auto& s : survivors)
            duplicate = duplicate || hyperplane_distance(s, cand) <= 1e-8 * (1.0 + std::abs(cand.offset));
        if (!duplicate)
            survivors.push_back(cand);
    }

    if (survivors.empty())
        throw Error(ErrorKind::NoConsistentHyperplane, "no hyperplane matches the unsigned distances");
    if (survivors.size() > 1) {
        std::ostringstream os;
        os << survivors.size() << " hyperplanes match the unsigned distances";
        throw MultipleCandidatesError(os.str(), std::move(survivors));
    }
    return survivors.front();
}

}  // namespace pronysmt

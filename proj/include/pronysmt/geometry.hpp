#pragma once

#include <span>
#include <vector>

#include <pronysmt/errors.hpp>
#include <pronysmt/model.hpp>

namespace pronysmt {

struct GeometryTolerances {
    double unit = 1e-6;      ///< | |theta| - 1 | allowed for a sign-enumeration candidate
    double distance = 1e-6;  ///< distance residual allowed, times (1 + |d|)
};

/// Point from its distances to n+1 affinely independent anchors, via the
/// linearized system 2 (y_1 - y_l) . x = |y_1|^2 - |y_l|^2 - (d_1^2 - d_l^2).
Vector trilaterate(std::span<const Vector> anchors, std::span<const double> distances,
                   const GeometryTolerances& tol = {});

/// Locus of points equidistant from a and b, canonicalized.
Hyperplane bisector_hyperplane(const Vector& a, const Vector& b);

/// Loci where |rho_a - <y, theta_a>| = |rho_b - <y, theta_b>|: two hyperplanes,
/// or one when the normals are parallel.
std::vector<Hyperplane> equidistance_hyperplanes(const Hyperplane& a, const Hyperplane& b);

double unsigned_distance(const Vector& y, const Hyperplane& h);

/// Raised when more than one hyperplane fits the unsigned distances; carries
/// every surviving canonical candidate.
class MultipleCandidatesError : public Error {
public:
    MultipleCandidatesError(const std::string& message, std::vector<Hyperplane> candidates);
    const std::vector<Hyperplane>& candidates() const { return candidates_; }

private:
    std::vector<Hyperplane> candidates_;
};

/// Hyperplane from unsigned distances to anchors. Enumerates the 2^{n+1} sign
/// patterns on the first n+1 anchors, keeps unit-normal solutions, validates
/// them against the remaining anchors and returns the unique canonical survivor.
Hyperplane hyperplane_from_unsigned_distances(std::span<const Vector> anchors,
                                              std::span<const double> distances,
                                              const GeometryTolerances& tol = {});

}  // namespace pronysmt

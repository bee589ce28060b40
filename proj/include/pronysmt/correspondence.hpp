#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include <pronysmt/forward.hpp>

namespace pronysmt {

struct MatchTolerances {
    double match = 1e-6;          ///< winning residual allowed, relative to |tau|
    double amplitude_gap = 1e-9;  ///< amplitudes closer than this collide
    double separation = 2.0;      ///< runner-up must exceed the winner by this factor
};

/// Node-to-root assignment at one sensor: permutation[i] is the index of the
/// root (in the supplied order) that belongs to node i.
struct Assignment {
    std::size_t sensor = 0;
    std::vector<int> permutation;
    double residual = 0.0;
    double runner_up = 0.0;  ///< +inf when only one permutation exists
};

/// Matrix with entries lambda_j^p - lambda_{sigma(j)}^p for consecutive powers p.
struct PermDiffMatrix {
    Eigen::MatrixXd values;
    std::vector<int> sigma;
    int first_power = 1;
};

constexpr int max_matched_sources = 8;

/// Tries every permutation of the roots against the known amplitudes and keeps
/// the one whose moments sum_i a_i xi_{sigma(i)}^p reproduce all 2m available
/// rows. Raises AmbiguousAssignment when amplitudes collide or the runner-up is
/// not separated from the winner, NoMatch when even the winner misfits.
Assignment match_roots(std::span<const double> amplitudes, std::span<const double> roots,
                       const MomentVector& moments, const MatchTolerances& tol = {},
                       std::size_t sensor = 0);

PermDiffMatrix perm_diff_matrix(std::span<const double> lambdas, std::span<const int> sigma,
                                int rows, int first_power);

/// Square n x n matrix with powers 1..n. Requires distinct lambdas and a
/// non-identity permutation.
PermDiffMatrix lemma52_matrix(std::span<const double> lambdas, std::span<const int> sigma);

/// Orthonormal kernel basis (columns) of M after row equilibration, with
/// numerical rank cut at 1e-10 of the largest singular value.
Eigen::MatrixXd kernel_basis(const Eigen::MatrixXd& m);

/// Checks that every kernel vector of M has two equal components: every basis
/// vector and `trials` seeded random combinations are tested.
bool kernel_equal_pair_holds(const PermDiffMatrix& m, int trials, std::uint64_t seed = 0x5eed);

}  // namespace pronysmt

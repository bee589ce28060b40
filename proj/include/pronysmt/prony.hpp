#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include <pronysmt/forward.hpp>

namespace pronysmt {

/// Numerical thresholds of the Prony engine. All are relative.
struct PronyTolerances {
    double degenerate = 1e-8;  ///< sigma_min / sigma_max below this flags U as singular
    double imaginary = 1e-7;   ///< |Im| allowed before a root counts as complex, times (1 + |Re|)
    double separation = 1e-6;  ///< minimal root gap, times (1 + max |root|)
    double residual = 1e-6;    ///< amplitude-solve residual against the unused moments
    double range = 1e-7;       ///< slack on the admissible root interval
};

/// m x m Hankel system U c = rhs with U[i][j] = tau_{s+i+j} and
/// rhs[i] = -tau_{s+m+i}; s = 0 for monomial probes and s = 1 for Gaussian ones.
struct HankelSystem {
    Eigen::MatrixXd matrix;
    Eigen::VectorXd rhs;
    int offset = 0;
    double sigma_min = 0.0;
    double sigma_max = 0.0;

    int order() const { return static_cast<int>(matrix.rows()); }
    double conditioning_ratio() const { return sigma_max > 0.0 ? sigma_min / sigma_max : 0.0; }
};

/// Admissible location of the roots: distances (>= 0), Gaussian node values
/// exp(-d^2) in (0, 1], or anywhere on the real line.
enum class RootDomain { Real, NonNegative, UnitInterval };

RootDomain root_domain(ProbeFamily probe);

struct CoefficientSolution {
    std::vector<double> coefficients;  ///< c_0 .. c_{m-1} of the monic polynomial
    double residual = 0.0;             ///< |U c + rhs| / |rhs|
};

struct AmplitudeSolution {
    std::vector<double> amplitudes;
    double residual = 0.0;  ///< relative misfit of the moments not used by the solve
    bool consistent = true;
};

struct PronyDiagnostics {
    double conditioning_ratio = 0.0;
    double coefficient_residual = 0.0;
    double amplitude_residual = 0.0;
    double max_discarded_imaginary = 0.0;
    double max_polynomial_residual = 0.0;
};

struct PronySolution {
    std::vector<double> coefficients;
    std::vector<double> roots;  ///< ascending
    std::vector<double> amplitudes;
    PronyDiagnostics diagnostics;
};

HankelSystem build_hankel(const MomentVector& moments, int order);

bool is_degenerate(const HankelSystem& system, double eps = 1e-8);

/// Partial-pivot solve of the Hankel system. Throws DegenerateSystem when
/// is_degenerate(system, eps) holds.
CoefficientSolution solve_coefficients(const HankelSystem& system, double eps = 1e-8);

/// Real roots of t^m + c_{m-1} t^{m-1} + ... + c_0, ascending, from the
/// companion-matrix eigenvalues followed by a Newton polish. Roots whose
/// imaginary part is within tolerance are projected to the real axis; roots
/// just outside the domain (within `range` slack) are clamped into it.
std::vector<double> find_roots(std::span<const double> coefficients, RootDomain domain,
                               const PronyTolerances& tol = {});

/// Largest |Im| among the companion eigenvalues (diagnostic).
double max_imaginary_part(std::span<const double> coefficients);

/// Evaluates the monic polynomial with the given lower coefficients.
double evaluate_monic(std::span<const double> coefficients, double t);

/// Vandermonde solve for the weights given the nodes: rows xi^s .. xi^{s+m-1}
/// against tau_s .. tau_{s+m-1}, residual measured on the next m moments.
AmplitudeSolution solve_amplitudes(std::span<const double> roots, const MomentVector& moments,
                                   const PronyTolerances& tol = {});

/// Full Prony solve at one sensor: Hankel system, coefficients, roots, amplitudes.
PronySolution solve_prony(const MomentVector& moments, int order, const PronyTolerances& tol = {});

}  // namespace pronysmt

#include <pronysmt/prony.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <pronysmt/errors.hpp>

namespace pronysmt {

namespace {

int expected_first_index(ProbeFamily probe)
{
    return probe == ProbeFamily::Monomial ? 0 : 1;
}

Eigen::MatrixXd companion(std::span<const double> c)
{
    const auto m = static_cast<Eigen::Index>(c.size());
    Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index i = 1; i < m; ++i)
        mat(i, i - 1) = 1.0;
    for (Eigen::Index i = 0; i < m; ++i)
        mat(i, m - 1) = -c[static_cast<std::size_t>(i)];
    return mat;
}

double derivative_monic(std::span<const double> c, double t)
{
    const std::size_t m = c.size();
    double d = static_cast<double>(m);
    for (std::size_t k = m - 1; k >= 1; --k)
        d = d * t + static_cast<double>(k) * c[k];
    return d;
}

double polish(std::span<const double> c, double x, double guard)
{
    double best = x;
    double best_val = std::abs(evaluate_monic(c, x));
    for (int it = 0; it < 4 && best_val > 0.0; ++it) {
        const double slope = derivative_monic(c, best);
        if (slope == 0.0)
            break;
        const double step = evaluate_monic(c, best) / slope;
        if (!(std::abs(step) < guard))
            break;
        const double next = best - step;
        const double val = std::abs(evaluate_monic(c, next));
        if (!(val < best_val))
            break;
        best = next;
        best_val = val;
    }
    return best;
}

}  // namespace

RootDomain root_domain(ProbeFamily probe)
{
    return probe == ProbeFamily::Monomial ? RootDomain::NonNegative : RootDomain::UnitInterval;
}

HankelSystem build_hankel(const MomentVector& moments, int order)
{
    if (order < 1)
        throw Error(ErrorKind::InvalidArgument, "Prony order must be positive");
    const int s = expected_first_index(moments.probe);
    if (moments.first_index != s)
        throw Error(ErrorKind::InvalidArgument, "moment index range does not match the probe family");
    if (moments.probe == ProbeFamily::Gaussian && !moments.normalized)
        throw Error(ErrorKind::InvalidArgument, "Gaussian-probe moments must be normalized");
    if (moments.values.size() < static_cast<std::size_t>(2 * order)) {
        std::ostringstream os;
        os << "need " << 2 * order << " moments, have " << moments.values.size();
        throw Error(ErrorKind::InsufficientMoments, os.str());
    }

    HankelSystem sys;
    sys.offset = s;
    sys.matrix.resize(order, order);
    sys.rhs.resize(order);
    for (int i = 0; i < order; ++i) {
        for (int j = 0; j < order; ++j)
            sys.matrix(i, j) = moments.values[static_cast<std::size_t>(i + j)];
        sys.rhs[i] = -moments.values[static_cast<std::size_t>(order + i)];
    }
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(sys.matrix);
    sys.sigma_max = svd.singularValues()[0];
    sys.sigma_min = svd.singularValues()[order - 1];
    return sys;
}

bool is_degenerate(const HankelSystem& system, double eps)
{
    if (!(system.sigma_max > 0.0))
        return true;
    return system.sigma_min < eps * system.sigma_max;
}

CoefficientSolution solve_coefficients(const HankelSystem& system, double eps)
{
    if (is_degenerate(system, eps)) {
        std::ostringstream os;
        os << "Hankel matrix singular (sigma ratio " << system.conditioning_ratio() << ")";
        throw Error(ErrorKind::DegenerateSystem, os.str());
    }
    const Eigen::VectorXd c = system.matrix.partialPivLu().solve(system.rhs);
    CoefficientSolution out;
    out.coefficients.assign(c.data(), c.data() + c.size());
    const double scale = system.rhs.norm();
    out.residual = (system.matrix * c - system.rhs).norm() / (scale > 0.0 ? scale : 1.0);
    return out;
}

double evaluate_monic(std::span<const double> c, double t)
{
    double v = 1.0;
    for (std::size_t k = c.size(); k-- > 0;)
        v = v * t + c[k];
    return v;
}

double max_imaginary_part(std::span<const double> coefficients)
{
    if (coefficients.empty())
        return 0.0;
    const Eigen::EigenSolver<Eigen::MatrixXd> es(companion(coefficients), false);
    double worst = 0.0;
    for (const auto& z : es.eigenvalues())
        worst = std::max(worst, std::abs(z.imag()));
    return worst;
}

std::vector<double> find_roots(std::span<const double> coefficients, RootDomain domain,
                               const PronyTolerances& tol)
{
    if (coefficients.empty())
        throw Error(ErrorKind::InvalidArgument, "polynomial degree must be positive");

    const Eigen::EigenSolver<Eigen::MatrixXd> es(companion(coefficients), false);
    const auto& eig = es.eigenvalues();

    std::vector<double> roots;
    roots.reserve(static_cast<std::size_t>(eig.size()));
    for (const auto& z : eig) {
        if (std::abs(z.imag()) > tol.imaginary * (1.0 + std::abs(z.real()))) {
            std::ostringstream os;
            os << "root " << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag())
               << "i is not real";
            throw Error(ErrorKind::ComplexRoots, os.str());
        }
        roots.push_back(z.real());
    }
    std::sort(roots.begin(), roots.end());

    for (std::size_t i = 0; i < roots.size(); ++i) {
        double guard = std::numeric_limits<double>::infinity();
        if (i > 0)
            guard = std::min(guard, 0.5 * (roots[i] - roots[i - 1]));
        if (i + 1 < roots.size())
            guard = std::min(guard, 0.5 * (roots[i + 1] - roots[i]));
        roots[i] = polish(coefficients, roots[i], guard);
    }

    double scale = 1.0;
    for (double r : roots)
        scale = std::max(scale, std::abs(r));
    for (double& r : roots) {
        switch (domain) {
        case RootDomain::Real:
            break;
        case RootDomain::NonNegative:
            if (r < 0.0) {
                if (r < -tol.range * scale)
                    throw Error(ErrorKind::OutOfRangeRoots,
                                "negative root " + std::to_string(r) + " for a distance");
                r = 0.0;
            }
            break;
        case RootDomain::UnitInterval:
            if (!(r > 0.0))
                throw Error(ErrorKind::OutOfRangeRoots,
                            "nonpositive root " + std::to_string(r) + " for exp(-d^2)");
            if (r > 1.0) {
                if (r > 1.0 + tol.range)
                    throw Error(ErrorKind::OutOfRangeRoots,
                                "root " + std::to_string(r) + " above 1 for exp(-d^2)");
                r = 1.0;
            }
            break;
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

AmplitudeSolution solve_amplitudes(std::span<const double> roots, const MomentVector& moments,
                                   const PronyTolerances& tol)
{
    const auto m = static_cast<Eigen::Index>(roots.size());
    if (m < 1)
        throw Error(ErrorKind::InvalidArgument, "no roots given");
    if (moments.values.size() < roots.size())
        throw Error(ErrorKind::InsufficientMoments, "fewer moments than roots");

    std::vector<double> sorted(roots.begin(), roots.end());
    std::sort(sorted.begin(), sorted.end());
    double scale = 1.0;
    for (double r : sorted)
        scale = std::max(scale, std::abs(r));
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (sorted[i] - sorted[i - 1] <= tol.separation * scale) {
            std::ostringstream os;
            os << "roots " << sorted[i - 1] << " and " << sorted[i] << " are not separated";
            throw Error(ErrorKind::RepeatedRoots, os.str());
        }
    }

    const int s = moments.first_index;
    const auto total = static_cast<Eigen::Index>(std::min<std::size_t>(moments.values.size(), 2 * roots.size()));
    Eigen::MatrixXd vand(total, m);
    Eigen::VectorXd tau(total);
    for (Eigen::Index p = 0; p < total; ++p) {
        for (Eigen::Index i = 0; i < m; ++i)
            vand(p, i) = std::pow(roots[static_cast<std::size_t>(i)], static_cast<double>(s + p));
        tau[p] = moments.values[static_cast<std::size_t>(p)];
    }

    const Eigen::VectorXd a = vand.topRows(m).colPivHouseholderQr().solve(tau.head(m));
    AmplitudeSolution out;
    out.amplitudes.assign(a.data(), a.data() + m);
    if (total > m) {
        const double norm = tau.norm();
        out.residual = (vand.bottomRows(total - m) * a - tau.tail(total - m)).norm() /
                       (norm > 0.0 ? norm : 1.0);
    }
    out.consistent = out.residual <= tol.residual;
    return out;
}

PronySolution solve_prony(const MomentVector& moments, int order, const PronyTolerances& tol)
{
    const HankelSystem sys = build_hankel(moments, order);
    const CoefficientSolution coeffs = solve_coefficients(sys, tol.degenerate);

    PronySolution out;
    out.coefficients = coeffs.coefficients;
    out.diagnostics.conditioning_ratio = sys.conditioning_ratio();
    out.diagnostics.coefficient_residual = coeffs.residual;
    out.diagnostics.max_discarded_imaginary = max_imaginary_part(coeffs.coefficients);
    out.roots = find_roots(coeffs.coefficients, root_domain(moments.probe), tol);
    for (double r : out.roots) {
        const double scaled = std::abs(evaluate_monic(out.coefficients, r)) /
                              (1.0 + std::pow(std::abs(r), static_cast<double>(order)));
        out.diagnostics.max_polynomial_residual = std::max(out.diagnostics.max_polynomial_residual, scaled);
    }
    const AmplitudeSolution amps = solve_amplitudes(out.roots, moments, tol);
    out.amplitudes = amps.amplitudes;
    out.diagnostics.amplitude_residual = amps.residual;
    if (!amps.consistent) {
        std::ostringstream os;
        os << "amplitude residual " << amps.residual << " exceeds " << tol.residual;
        throw Error(ErrorKind::InconsistentMoments, os.str());
    }
    return out;
}

}  // namespace pronysmt

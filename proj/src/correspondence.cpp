#include <pronysmt/correspondence.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include <Eigen/SVD>

#include <pronysmt/errors.hpp>

namespace pronysmt {

namespace {

double permuted_residual(std::span<const double> a, std::span<const double> roots,
                         const std::vector<int>& perm, const MomentVector& moments, int rows)
{
    double sum = 0.0;
    for (int p = 0; p < rows; ++p) {
        const double power = static_cast<double>(moments.first_index + p);
        double model = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
            model += a[i] * std::pow(roots[static_cast<std::size_t>(perm[i])], power);
        const double diff = model - moments.values[static_cast<std::size_t>(p)];
        sum += diff * diff;
    }
    return std::sqrt(sum);
}

}  // namespace

Assignment match_roots(std::span<const double> amplitudes, std::span<const double> roots,
                       const MomentVector& moments, const MatchTolerances& tol, std::size_t sensor)
{
    const std::size_t m = amplitudes.size();
    if (m == 0 || roots.size() != m)
        throw Error(ErrorKind::InvalidArgument, "amplitude and root counts differ");
    if (m > static_cast<std::size_t>(max_matched_sources))
        throw Error(ErrorKind::Unsupported, "permutation search is capped at 8 sources");
    const int rows = static_cast<int>(std::min(moments.values.size(), 2 * m));
    if (rows < static_cast<int>(m))
        throw Error(ErrorKind::InsufficientMoments, "fewer moments than sources");

    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            if (std::abs(amplitudes[i] - amplitudes[j]) <= tol.amplitude_gap) {
                std::ostringstream os;
                os << "amplitudes " << i << " and " << j << " collide (" << amplitudes[i]
                   << "); root order cannot be resolved at sensor " << sensor;
                throw Error(ErrorKind::AmbiguousAssignment, os.str());
            }
        }
    }

    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    Assignment best;
    best.sensor = sensor;
    best.residual = std::numeric_limits<double>::infinity();
    best.runner_up = std::numeric_limits<double>::infinity();
    do {
        const double r = permuted_residual(amplitudes, roots, perm, moments, rows);
        if (r < best.residual) {
            best.runner_up = best.residual;
            best.residual = r;
            best.permutation = perm;
        } else if (r < best.runner_up) {
            best.runner_up = r;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    double norm = 0.0;
    for (int p = 0; p < rows; ++p)
        norm += moments.values[static_cast<std::size_t>(p)] * moments.values[static_cast<std::size_t>(p)];
    norm = std::sqrt(norm);

    if (best.runner_up < tol.separation * best.residual ||
        best.runner_up <= tol.match * norm) {
        std::ostringstream os;
        os << "two root orders fit at sensor " << sensor << " (residuals " << best.residual
           << ", " << best.runner_up << ")";
        throw Error(ErrorKind::AmbiguousAssignment, os.str());
    }
    if (best.residual > tol.match * norm) {
        std::ostringstream os;
        os << "best root order misfits at sensor " << sensor << " (residual " << best.residual
           << ", allowed " << tol.match * norm << ")";
        throw Error(ErrorKind::NoMatch, os.str());
    }
    return best;
}

PermDiffMatrix perm_diff_matrix(std::span<const double> lambdas, std::span<const int> sigma,
                                int rows, int first_power)
{
    const std::size_t n = lambdas.size();
    if (sigma.size() != n)
        throw Error(ErrorKind::InvalidArgument, "permutation length differs from node count");
    std::vector<bool> seen(n, false);
    for (int s : sigma) {
        if (s < 0 || static_cast<std::size_t>(s) >= n || seen[static_cast<std::size_t>(s)])
            throw Error(ErrorKind::InvalidArgument, "sigma is not a permutation");
        seen[static_cast<std::size_t>(s)] = true;
    }

    PermDiffMatrix out;
    out.sigma.assign(sigma.begin(), sigma.end());
    out.first_power = first_power;
    out.values.resize(rows, static_cast<Eigen::Index>(n));
    for (int p = 0; p < rows; ++p) {
        const double power = static_cast<double>(first_power + p);
        for (std::size_t j = 0; j < n; ++j)
            out.values(p, static_cast<Eigen::Index>(j)) =
                std::pow(lambdas[j], power) - std::pow(lambdas[static_cast<std::size_t>(sigma[j])], power);
    }
    return out;
}

PermDiffMatrix lemma52_matrix(std::span<const double> lambdas, std::span<const int> sigma)
{
    const std::size_t n = lambdas.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (lambdas[i] == lambdas[j])
                throw Error(ErrorKind::RepeatedRoots, "lambdas must be pairwise distinct");
    bool identity = true;
    for (std::size_t j = 0; j < sigma.size(); ++j)
        identity = identity && sigma[j] == static_cast<int>(j);
    if (identity)
        throw Error(ErrorKind::InvalidArgument, "sigma must differ from the identity");
    return perm_diff_matrix(lambdas, sigma, static_cast<int>(n), 1);
}

Eigen::MatrixXd kernel_basis(const Eigen::MatrixXd& m)
{
    Eigen::MatrixXd scaled = m;
    for (Eigen::Index r = 0; r < scaled.rows(); ++r) {
        const double peak = scaled.row(r).cwiseAbs().maxCoeff();
        if (peak > 0.0)
            scaled.row(r) /= peak;
    }
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(scaled, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const double cutoff = 1e-10 * (s.size() > 0 ? s[0] : 0.0);
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s[i] > cutoff)
            ++rank;
    const Eigen::Index cols = m.cols();
    return svd.matrixV().rightCols(cols - rank);
}

bool kernel_equal_pair_holds(const PermDiffMatrix& m, int trials, std::uint64_t seed)
{
    const Eigen::MatrixXd basis = kernel_basis(m.values);
    if (basis.cols() == 0)
        return true;

    auto has_equal_pair = [](const Eigen::VectorXd& v) {
        const double tol = 1e-9 * v.cwiseAbs().maxCoeff();
        for (Eigen::Index i = 0; i < v.size(); ++i)
            for (Eigen::Index j = i + 1; j < v.size(); ++j)
                if (std::abs(v[i] - v[j]) <= tol)
                    return true;
        return false;
    };

    for (Eigen::Index c = 0; c < basis.cols(); ++c)
        if (!has_equal_pair(basis.col(c)))
            return false;

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> coef(0.0, 1.0);
    for (int t = 0; t < trials; ++t) {
        Eigen::VectorXd w(basis.cols());
        for (Eigen::Index c = 0; c < w.size(); ++c)
            w[c] = coef(rng);
        if (!has_equal_pair(basis * w))
            return false;
    }
    return true;
}

}  // namespace pronysmt

#include <pronysmt/model.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/SVD>

#include <pronysmt/errors.hpp>

namespace pronysmt {

namespace {

constexpr double amplitude_tolerance = 1e-9;
constexpr double zero_offset = 1e-12;

void check_dim(int dim)
{
    if (dim < 2)
        throw Error(ErrorKind::Unsupported, "ambient dimension must be at least 2");
}

void check_points(int dim, const std::vector<Vector>& points, const char* what)
{
    for (const auto& p : points) {
        if (p.size() != dim) {
            std::ostringstream os;
            os << what << " of dimension " << p.size() << " in a model of dimension " << dim;
            throw Error(ErrorKind::DimensionMismatch, os.str());
        }
    }
}

bool pairwise_distinct_points(const std::vector<Vector>& points)
{
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (points[i] == points[j])
                return false;
    return true;
}

void check_amplitudes(const std::vector<double>& a, ModelValidity& v)
{
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0.0)
            v.amplitudes_nonzero = false;
        for (std::size_t j = i + 1; j < a.size(); ++j)
            if (std::abs(a[i] - a[j]) <= amplitude_tolerance)
                v.amplitudes_distinct = false;
    }
}

}  // namespace

Hyperplane canonical(const Hyperplane& h)
{
    Hyperplane c = h;
    if (std::abs(c.offset) <= zero_offset) {
        c.offset = 0.0;
        for (Eigen::Index i = 0; i < c.normal.size(); ++i) {
            if (std::abs(c.normal[i]) > zero_offset) {
                if (c.normal[i] < 0.0)
                    c.normal = -c.normal;
                break;
            }
        }
    } else if (c.offset < 0.0) {
        c.normal = -c.normal;
        c.offset = -c.offset;
    }
    return c;
}

double hyperplane_distance(const Hyperplane& a, const Hyperplane& b)
{
    const double same = (a.normal - b.normal).norm() + std::abs(a.offset - b.offset);
    const double flipped = (a.normal + b.normal).norm() + std::abs(a.offset + b.offset);
    return std::min(same, flipped);
}

bool ModelValidity::ok() const
{
    return nodes_distinct && amplitudes_nonzero && amplitudes_distinct && normals_unit &&
           offsets_positive && hyperplanes_distinct && kernel_decays;
}

std::string ModelValidity::describe() const
{
    std::vector<std::string> issues;
    if (!nodes_distinct) issues.emplace_back("nodes not pairwise distinct");
    if (!amplitudes_nonzero) issues.emplace_back("zero amplitude");
    if (!amplitudes_distinct) issues.emplace_back("amplitudes collide");
    if (!normals_unit) issues.emplace_back("normal not unit length");
    if (!offsets_positive) issues.emplace_back("offset not positive");
    if (!hyperplanes_distinct) issues.emplace_back("hyperplanes not distinct");
    if (!kernel_decays) issues.emplace_back("kernel tail does not decay");
    if (issues.empty())
        return "valid";
    std::string out = issues.front();
    for (std::size_t i = 1; i < issues.size(); ++i)
        out += "; " + issues[i];
    return out;
}

PointSources::PointSources(int dim, std::vector<Vector> nodes, std::vector<double> amplitudes)
    : dim_(dim), nodes_(std::move(nodes)), amplitudes_(std::move(amplitudes))
{
    check_dim(dim_);
    if (nodes_.empty())
        throw Error(ErrorKind::InvalidArgument, "a model needs at least one source");
    if (nodes_.size() != amplitudes_.size())
        throw Error(ErrorKind::InvalidArgument, "node and amplitude counts differ");
    check_points(dim_, nodes_, "node");
    validity_.nodes_distinct = pairwise_distinct_points(nodes_);
    check_amplitudes(amplitudes_, validity_);
}

HyperplaneSources::HyperplaneSources(int dim, std::vector<Hyperplane> planes,
                                     std::vector<double> amplitudes)
    : dim_(dim), planes_(std::move(planes)), amplitudes_(std::move(amplitudes))
{
    check_dim(dim_);
    if (planes_.empty())
        throw Error(ErrorKind::InvalidArgument, "a model needs at least one source");
    if (planes_.size() != amplitudes_.size())
        throw Error(ErrorKind::InvalidArgument, "hyperplane and amplitude counts differ");
    for (const auto& h : planes_) {
        if (h.normal.size() != dim_)
            throw Error(ErrorKind::DimensionMismatch, "hyperplane normal has wrong dimension");
        if (std::abs(h.normal.norm() - 1.0) > 1e-12)
            validity_.normals_unit = false;
        if (!(h.offset > 0.0))
            validity_.offsets_positive = false;
    }
    for (std::size_t i = 0; i < planes_.size(); ++i)
        for (std::size_t j = i + 1; j < planes_.size(); ++j)
            if (hyperplane_distance(planes_[i], planes_[j]) <= 1e-12)
                validity_.hyperplanes_distinct = false;
    check_amplitudes(amplitudes_, validity_);
}

RadialSources::RadialSources(int dim, std::vector<Vector> nodes, std::vector<double> amplitudes,
                             RadialKernel kernel)
    : points_(dim, std::move(nodes), std::move(amplitudes)), kernel_(std::move(kernel)),
      validity_(points_.validity())
{
    validity_.kernel_decays = kernel_.tail_decays();
}

SensorSet::SensorSet(int dim, std::vector<Vector> points) : dim_(dim), points_(std::move(points))
{
    check_dim(dim_);
    if (points_.empty())
        throw Error(ErrorKind::InvalidArgument, "sensor set is empty");
    check_points(dim_, points_, "sensor");
    if (!pairwise_distinct_points(points_))
        throw Error(ErrorKind::InvalidArgument, "sensor points must be pairwise distinct");
}

double affine_conditioning(std::span<const Vector> points)
{
    if (points.empty())
        return 0.0;
    const auto n = points.front().size();
    if (static_cast<Eigen::Index>(points.size()) != n + 1)
        throw Error(ErrorKind::InvalidArgument, "affine conditioning needs exactly n+1 points");
    Eigen::MatrixXd diff(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (points[i + 1].size() != n)
            throw Error(ErrorKind::DimensionMismatch, "points of different dimensions");
        diff.row(i) = (points[i + 1] - points[0]).transpose();
    }
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(diff);
    const auto& s = svd.singularValues();
    if (s[0] == 0.0)
        return 0.0;
    return s[n - 1] / s[0];
}

bool affinely_independent(std::span<const Vector> points, double eps)
{
    return affine_conditioning(points) >= eps;
}

bool validate_general_position(const SensorSet& sensors, double eps)
{
    const auto n = static_cast<std::size_t>(sensors.dim());
    const std::size_t total = sensors.size();
    const std::size_t k = n + 1;
    if (total < k)
        return true;

    // Lexicographic walk over all (n+1)-subsets.
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<Vector> subset(k);
    while (true) {
        for (std::size_t i = 0; i < k; ++i)
            subset[i] = sensors[idx[i]];
        if (!affinely_independent(subset, eps))
            return false;
        std::size_t pos = k;
        while (pos > 0 && idx[pos - 1] == total - k + pos - 1)
            --pos;
        if (pos == 0)
            break;
        ++idx[pos - 1];
        for (std::size_t i = pos; i < k; ++i)
            idx[i] = idx[i - 1] + 1;
    }
    return true;
}

int min_sensor_count(Theorem theorem, int dim, int sources)
{
    const int pairs_twice = sources * (sources - 1);
    switch (theorem) {
    case Theorem::Points:
    case Theorem::Radial:
        return (dim * pairs_twice + 2 * dim + 2) / 2;
    case Theorem::Hyperplanes:
        return dim * pairs_twice + 2 * dim + 1;
    }
    return 0;
}

int required_good_sensors(Theorem theorem, int dim)
{
    return theorem == Theorem::Hyperplanes ? 2 * dim + 1 : dim + 1;
}

}  // namespace pronysmt

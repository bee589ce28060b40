#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include <pronysmt/kernel.hpp>

namespace pronysmt {

using Vector = Eigen::VectorXd;

/// Hyperplane {x : <x, normal> = offset}.
struct Hyperplane {
    Vector normal;
    double offset = 0.0;
};

/// Canonical representative: offset >= 0, and when the offset is zero the first
/// nonzero component of the normal is positive. Offsets below 1e-12 in
/// magnitude count as zero.
Hyperplane canonical(const Hyperplane& h);

/// Distance between two hyperplanes as sets, insensitive to (normal, offset)
/// versus (-normal, -offset).
double hyperplane_distance(const Hyperplane& a, const Hyperplane& b);

enum class Theorem { Points, Hyperplanes, Radial };

/// Semantic invariants of a source model. Violations are representable so that
/// counterexamples can be built; recovery pipelines refuse invalid models.
struct ModelValidity {
    bool nodes_distinct = true;
    bool amplitudes_nonzero = true;
    bool amplitudes_distinct = true;
    bool normals_unit = true;
    bool offsets_positive = true;
    bool hyperplanes_distinct = true;
    bool kernel_decays = true;

    bool ok() const;
    std::string describe() const;
};

class PointSources {
public:
    PointSources(int dim, std::vector<Vector> nodes, std::vector<double> amplitudes);

    int dim() const { return dim_; }
    std::size_t size() const { return nodes_.size(); }
    const std::vector<Vector>& nodes() const { return nodes_; }
    const std::vector<double>& amplitudes() const { return amplitudes_; }
    const ModelValidity& validity() const { return validity_; }

private:
    int dim_;
    std::vector<Vector> nodes_;
    std::vector<double> amplitudes_;
    ModelValidity validity_;
};

class HyperplaneSources {
public:
    HyperplaneSources(int dim, std::vector<Hyperplane> planes, std::vector<double> amplitudes);

    int dim() const { return dim_; }
    std::size_t size() const { return planes_.size(); }
    const std::vector<Hyperplane>& planes() const { return planes_; }
    const std::vector<double>& amplitudes() const { return amplitudes_; }
    const ModelValidity& validity() const { return validity_; }

private:
    int dim_;
    std::vector<Hyperplane> planes_;
    std::vector<double> amplitudes_;
    ModelValidity validity_;
};

class RadialSources {
public:
    RadialSources(int dim, std::vector<Vector> nodes, std::vector<double> amplitudes,
                  RadialKernel kernel);

    int dim() const { return points_.dim(); }
    std::size_t size() const { return points_.size(); }
    const std::vector<Vector>& nodes() const { return points_.nodes(); }
    const std::vector<double>& amplitudes() const { return points_.amplitudes(); }
    const RadialKernel& kernel() const { return kernel_; }
    const ModelValidity& validity() const { return validity_; }
    /// The same nodes and amplitudes viewed as point masses.
    const PointSources& as_points() const { return points_; }

private:
    PointSources points_;
    RadialKernel kernel_;
    ModelValidity validity_;
};

/// Finite set of sensor centers. Points must share the dimension and be
/// pairwise distinct.
class SensorSet {
public:
    SensorSet(int dim, std::vector<Vector> points);

    int dim() const { return dim_; }
    std::size_t size() const { return points_.size(); }
    const std::vector<Vector>& points() const { return points_; }
    const Vector& operator[](std::size_t i) const { return points_[i]; }

private:
    int dim_;
    std::vector<Vector> points_;
};

/// Ratio sigma_min / sigma_max of the difference matrix of n+1 points in R^n
/// (0 when the points coincide).
double affine_conditioning(std::span<const Vector> points);

/// Whether n+1 points are affinely independent at relative threshold `eps`.
bool affinely_independent(std::span<const Vector> points, double eps = 1e-9);

/// True iff every n+1 of the sensors are affinely independent, i.e. no
/// hyperplane contains more than n of them.
bool validate_general_position(const SensorSet& sensors, double eps = 1e-9);

int min_sensor_count(Theorem theorem, int dim, int sources);
int required_good_sensors(Theorem theorem, int dim);

}  // namespace pronysmt

#pragma once

#include <string>
#include <vector>

#include <pronysmt/model.hpp>

namespace pronysmt {

/// Probe functions h_l applied to the spherical mean transform at a sensor:
/// Monomial h_l(t) = t^l (l = 0, 1, ...), Gaussian h_l(t) = exp(-l t^2) (l = 1, 2, ...).
enum class ProbeFamily { Monomial, Gaussian };

/// Probe evaluations tau_l = (R_y f)(h_l) at one sensor for l = first_index,
/// first_index + 1, ...  Gaussian values are usually stored normalized, i.e.
/// multiplied by (pi / l)^{-(n-1)/2}.
struct MomentVector {
    Vector sensor;
    ProbeFamily probe = ProbeFamily::Monomial;
    bool normalized = false;
    int first_index = 0;
    std::vector<double> values;

    double at(int l) const { return values.at(static_cast<std::size_t>(l - first_index)); }
    int last_index() const { return first_index + static_cast<int>(values.size()) - 1; }
};

/// Samples of (R_y f)(t) = t^{n-1} * int_{S^{n-1}} f(y + t theta) d theta.
struct SphericalMeanTrace {
    Vector sensor;
    std::vector<double> radii;
    std::vector<double> values;
    std::vector<std::string> diagnostics;
};

/// values[l] = sum_k a_k |y - x_k|^l for l = 0 .. count-1.
MomentVector point_moments(const PointSources& model, const Vector& sensor, int count);

/// Gaussian-probe moments for l = 1 .. count: normalized values are
/// sum_k a_k exp(-l (rho_k - <y, theta_k>)^2); raw values carry the extra
/// factor (pi / l)^{(n-1)/2}.
MomentVector hyperplane_moments(const HyperplaneSources& model, const Vector& sensor, int count,
                                bool normalized = true);

/// Converts between normalized and raw Gaussian-probe moments.
MomentVector to_raw(const MomentVector& moments);
MomentVector to_normalized(const MomentVector& moments);

/// Uniform grid of `samples` radii on [0, T], T = max_k |y - x_k| + support + 1.
std::vector<double> default_radial_grid(const RadialSources& model, const Vector& sensor,
                                        int samples = 512);

/// Spherical mean trace of a translated-kernel model. Supports dim 2 and 3.
SphericalMeanTrace radial_trace(const RadialSources& model, const Vector& sensor,
                                const std::vector<double>& radii);

struct PointCounterexample {
    PointSources first;
    PointSources second;
    SensorSet sensors;
};

struct HyperplaneCounterexample {
    HyperplaneSources first;
    HyperplaneSources second;
    SensorSet sensors;
};

/// Two unit-amplitude point pairs that no sensor of {(0,0), (2,0), (1,1)} can tell apart.
PointCounterexample counterexample_points();

/// Two unit-amplitude line pairs through the origin that agree at the five
/// sensors {(-1,0), (1,0), (0,-1), (0,1), (1,1)}. Their offsets are zero, so the
/// models are flagged invalid.
HyperplaneCounterexample counterexample_hyperplanes();

}  // namespace pronysmt

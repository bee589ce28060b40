#pragma once

#include <cstdint>
#include <variant>

#include <pronysmt/model.hpp>

namespace pronysmt {

using SourceModel = std::variant<PointSources, HyperplaneSources, RadialSources>;

/// A source model together with the sensors it is observed from.
struct Scenario {
    SourceModel model;
    SensorSet sensors;

    int dim() const { return sensors.dim(); }
    Theorem kind() const;
    int sources() const;
};

struct GeneratorOptions {
    int sensors = 0;               ///< 0 picks min_sensor_count
    double node_box = 2.0;         ///< nodes in [-node_box, node_box]^n
    double sensor_box = 3.0;       ///< sensors in [-sensor_box, sensor_box]^n
    double node_gap = 0.3;
    double amplitude_gap = 0.3;
    double amplitude_min = 0.5;
    double amplitude_max = 3.0;
    double distance_gap = 0.1;     ///< per sensor, between distances to different sources
    double affine_margin = 1e-3;   ///< affine_conditioning of every n+1 sensors
    double offset_min = 0.2;       ///< hyperplane offsets in (offset_min, offset_max)
    double offset_max = 3.0;
    double plane_reach = 2.5;      ///< sensors stay this close to every hyperplane
    double kernel_width = 1.0;     ///< Gaussian kernel of radial scenarios
    int attempts = 100;
};

/// Seeded random scenario honoring every model invariant, with sensors in
/// general position. Throws InvalidArgument when `attempts` draws all fail.
Scenario generate_scenario(Theorem kind, int dim, int m, std::uint64_t seed,
                           const GeneratorOptions& opt = {});

/// The n = m = 2 worked example: 3 delta at (-1,0), 2 delta at (1,0), five sensors.
Scenario example42_scenario();

}  // namespace pronysmt

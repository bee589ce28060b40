#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <pronysmt/correspondence.hpp>
#include <pronysmt/forward.hpp>
#include <pronysmt/geometry.hpp>
#include <pronysmt/hankel.hpp>
#include <pronysmt/prony.hpp>

namespace pronysmt {

enum class SensorStatus { Good, Degenerate, Unused };

std::string_view sensor_status_name(SensorStatus status);

struct SensorReport {
    std::size_t index = 0;
    Vector position;
    SensorStatus status = SensorStatus::Unused;
    double conditioning = 0.0;
    std::vector<double> roots;      ///< only for sensors that took part in the recovery
    std::vector<double> distances;  ///< per recovered node, same sensors
};

struct PipelineOptions {
    PronyTolerances prony;
    MatchTolerances match;
    GeometryTolerances geometry;
    ExtractionOptions extraction;
    double tol_verify = 1e-5;  ///< relative misfit of re-synthesized data, any sensor
};

/// Tolerances for the radial path, where moments come out of a quadrature and
/// a polynomial fit rather than a closed form.
PipelineOptions radial_defaults();

struct RecoveryReport {
    Theorem kind = Theorem::Points;
    int dim = 0;
    int sources = 0;
    std::vector<Vector> nodes;        ///< points and radial kinds
    std::vector<Hyperplane> planes;   ///< hyperplane kind, canonical
    std::vector<double> amplitudes;
    std::vector<SensorReport> sensors;
    std::vector<Assignment> assignments;
    std::vector<std::string> diagnostics;
    double verification_residual = 0.0;
    double elapsed_seconds = 0.0;
};

/// Theorem 3.1 recovery from monomial moments tau_0 .. tau_{2m-1} at each sensor.
/// Node labels follow the ascending distance order at the first good sensor.
RecoveryReport recover_points(const std::vector<MomentVector>& moments, int dim, int m,
                              const PipelineOptions& opt = {});

/// Theorem 3.2 recovery from normalized Gaussian-probe moments tau_1 .. tau_{2m}.
RecoveryReport recover_hyperplanes(const std::vector<MomentVector>& moments, int dim, int m,
                                   const PipelineOptions& opt = {});

/// Theorem 3.3 recovery from spherical mean traces of a translated-kernel model.
RecoveryReport recover_radial(const std::vector<SphericalMeanTrace>& traces,
                              const RadialKernel& kernel, int dim, int m,
                              const PipelineOptions& opt = radial_defaults());

/// Per-parameter absolute errors after matching recovered sources to the truth
/// by the permutation minimizing the summed parameter error.
struct ErrorTable {
    std::vector<int> matching;  ///< truth index for each recovered source
    std::vector<double> node_errors;
    std::vector<double> normal_errors;  ///< angle between normals, hyperplanes only
    std::vector<double> offset_errors;  ///< hyperplanes only
    std::vector<double> amplitude_errors;
    double max_error = 0.0;
    double mean_error = 0.0;
};

ErrorTable compare_points(const RecoveryReport& report, const std::vector<Vector>& nodes,
                          const std::vector<double>& amplitudes);
ErrorTable compare_hyperplanes(const RecoveryReport& report, const HyperplaneSources& truth);

}  // namespace pronysmt

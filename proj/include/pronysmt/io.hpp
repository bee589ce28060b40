#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include <pronysmt/errors.hpp>
#include <pronysmt/forward.hpp>
#include <pronysmt/pipeline.hpp>
#include <pronysmt/scenario.hpp>

namespace pronysmt {

using Json = nlohmann::json;

/// Document does not follow the expected layout.
class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// File could not be opened, read or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string_view theorem_name(Theorem kind);
Theorem theorem_from_name(std::string_view name);

// Kernel registry: {"name": "gaussian", "s": 1.0} and
// {"name": "tabulated", "radii": [..], "values": [..]}.
Json kernel_to_json(const RadialKernel& kernel);
RadialKernel kernel_from_json(const Json& j);

Json scenario_to_json(const Scenario& scenario);
Scenario scenario_from_json(const Json& j);

Json moments_to_json(const MomentVector& moments);
MomentVector moments_from_json(const Json& j);

Json trace_to_json(const SphericalMeanTrace& trace);
SphericalMeanTrace trace_from_json(const Json& j);

/// Output of the simulate command: one moment vector or trace per sensor.
struct SimulatedData {
    Theorem kind = Theorem::Points;
    int dim = 0;
    std::optional<RadialKernel> kernel;  ///< radial data only
    std::vector<MomentVector> moments;
    std::vector<SphericalMeanTrace> traces;
};

Json data_to_json(const SimulatedData& data);
SimulatedData data_from_json(const Json& j);

/// Successful recovery. The timing block is left out when `include_timing`
/// is false so that reports compare byte for byte.
Json report_to_json(const RecoveryReport& report, bool include_timing = true);
RecoveryReport report_from_json(const Json& j);

/// Report for a recovery that stopped with a typed error.
Json failure_report_json(Theorem kind, int dim, int m, const Error& error);

Json error_table_to_json(const ErrorTable& table);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace pronysmt

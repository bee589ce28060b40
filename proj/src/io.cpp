#include <pronysmt/io.hpp>

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace pronysmt {

namespace {

Json vec(const Vector& v)
{
    Json a = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        a.push_back(v[i]);
    return a;
}

Vector parse_vector(const Json& j)
{
    const auto values = j.get<std::vector<double>>();
    Vector v(static_cast<Eigen::Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i)
        v[static_cast<Eigen::Index>(i)] = values[i];
    return v;
}

Json points(const std::vector<Vector>& pts)
{
    Json a = Json::array();
    for (const auto& p : pts)
        a.push_back(vec(p));
    return a;
}

std::vector<Vector> parse_points(const Json& j)
{
    if (!j.is_array())
        throw SchemaError("expected an array of points");
    std::vector<Vector> out;
    for (const auto& p : j)
        out.push_back(parse_vector(p));
    return out;
}

// JSON has no infinity; null stands in for it.
Json finite_or_null(double x)
{
    return std::isfinite(x) ? Json(x) : Json(nullptr);
}

double parse_or_inf(const Json& j)
{
    return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

// Runs a parser, turning library and model errors into schema errors.
template <class F>
auto schema_guard(std::string_view what, F&& parse)
{
    try {
        return parse();
    } catch (const SchemaError&) {
        throw;
    } catch (const Json::exception& e) {
        throw SchemaError(std::string(what) + ": " + e.what());
    } catch (const Error& e) {
        throw SchemaError(std::string(what) + ": " + e.what());
    }
}

Json model_to_json(const SourceModel& model)
{
    return std::visit(
        [](const auto& m) -> Json {
            using T = std::decay_t<decltype(m)>;
            Json j;
            if constexpr (std::is_same_v<T, HyperplaneSources>) {
                j["kind"] = "hyperplanes";
                Json normals = Json::array();
                Json offsets = Json::array();
                for (const auto& h : m.planes()) {
                    normals.push_back(vec(h.normal));
                    offsets.push_back(h.offset);
                }
                j["normals"] = normals;
                j["offsets"] = offsets;
            } else {
                j["kind"] = std::is_same_v<T, PointSources> ? "points" : "radial";
                j["nodes"] = points(m.nodes());
            }
            j["amplitudes"] = m.amplitudes();
            if constexpr (std::is_same_v<T, RadialSources>)
                j["kernel"] = kernel_to_json(m.kernel());
            return j;
        },
        model);
}

SourceModel model_from_json(const Json& j, int dim)
{
    const Theorem kind = theorem_from_name(j.at("kind").get<std::string>());
    auto amps = j.at("amplitudes").get<std::vector<double>>();
    switch (kind) {
    case Theorem::Points:
        return PointSources(dim, parse_points(j.at("nodes")), std::move(amps));
    case Theorem::Hyperplanes: {
        const auto normals = parse_points(j.at("normals"));
        const auto offsets = j.at("offsets").get<std::vector<double>>();
        if (normals.size() != offsets.size())
            throw SchemaError("normals and offsets differ in length");
        std::vector<Hyperplane> planes;
        for (std::size_t i = 0; i < normals.size(); ++i)
            planes.push_back({normals[i], offsets[i]});
        return HyperplaneSources(dim, std::move(planes), std::move(amps));
    }
    case Theorem::Radial:
        return RadialSources(dim, parse_points(j.at("nodes")), std::move(amps),
                             kernel_from_json(j.at("kernel")));
    }
    throw SchemaError("unknown model kind");
}

}  // namespace

std::string_view theorem_name(Theorem kind)
{
    switch (kind) {
    case Theorem::Points: return "points";
    case Theorem::Hyperplanes: return "hyperplanes";
    case Theorem::Radial: return "radial";
    }
    return "points";
}

Theorem theorem_from_name(std::string_view name)
{
    if (name == "points")
        return Theorem::Points;
    if (name == "hyperplanes")
        return Theorem::Hyperplanes;
    if (name == "radial")
        return Theorem::Radial;
    throw SchemaError("unknown model kind '" + std::string(name) + "'");
}

Json kernel_to_json(const RadialKernel& kernel)
{
    switch (kernel.kind()) {
    case RadialKernel::Kind::Gaussian:
        return Json{{"name", "gaussian"}, {"s", kernel.width()}};
    case RadialKernel::Kind::Tabulated:
        return Json{{"name", "tabulated"}, {"radii", kernel.table_radii()}, {"values", kernel.table_values()}};
    case RadialKernel::Kind::Custom:
        break;
    }
    throw Error(ErrorKind::Unsupported, "kernel '" + kernel.name() + "' has no serialized form");
}

RadialKernel kernel_from_json(const Json& j)
{
    return schema_guard("kernel", [&] {
        const auto name = j.at("name").get<std::string>();
        if (name == "gaussian")
            return RadialKernel::gaussian(j.at("s").get<double>());
        if (name == "tabulated")
            return RadialKernel::tabulated(j.at("radii").get<std::vector<double>>(),
                                           j.at("values").get<std::vector<double>>());
        throw SchemaError("unknown kernel '" + name + "'");
    });
}

Json scenario_to_json(const Scenario& scenario)
{
    Json j;
    j["dim"] = scenario.dim();
    j["model"] = model_to_json(scenario.model);
    j["sensors"] = points(scenario.sensors.points());
    return j;
}

Scenario scenario_from_json(const Json& j)
{
    return schema_guard("scenario", [&] {
        const int dim = j.at("dim").get<int>();
        SourceModel model = model_from_json(j.at("model"), dim);
        return Scenario{std::move(model), SensorSet(dim, parse_points(j.at("sensors")))};
    });
}

Json moments_to_json(const MomentVector& moments)
{
    Json j;
    j["sensor"] = vec(moments.sensor);
    j["probe"] = moments.probe == ProbeFamily::Monomial ? "monomial" : "gaussian";
    j["normalized"] = moments.normalized;
    j["first_index"] = moments.first_index;
    j["values"] = moments.values;
    return j;
}

MomentVector moments_from_json(const Json& j)
{
    return schema_guard("moment vector", [&] {
        MomentVector mv;
        mv.sensor = parse_vector(j.at("sensor"));
        const auto probe = j.at("probe").get<std::string>();
        if (probe == "monomial")
            mv.probe = ProbeFamily::Monomial;
        else if (probe == "gaussian")
            mv.probe = ProbeFamily::Gaussian;
        else
            throw SchemaError("unknown probe '" + probe + "'");
        mv.normalized = j.at("normalized").get<bool>();
        mv.first_index = j.at("first_index").get<int>();
        if (mv.first_index != (mv.probe == ProbeFamily::Monomial ? 0 : 1))
            throw SchemaError("first_index does not match the probe family");
        mv.values = j.at("values").get<std::vector<double>>();
        return mv;
    });
}

Json trace_to_json(const SphericalMeanTrace& trace)
{
    Json j;
    j["sensor"] = vec(trace.sensor);
    j["radii"] = trace.radii;
    j["values"] = trace.values;
    return j;
}

SphericalMeanTrace trace_from_json(const Json& j)
{
    return schema_guard("trace", [&] {
        SphericalMeanTrace tr;
        tr.sensor = parse_vector(j.at("sensor"));
        tr.radii = j.at("radii").get<std::vector<double>>();
        tr.values = j.at("values").get<std::vector<double>>();
        if (tr.radii.size() != tr.values.size())
            throw SchemaError("trace radii and values differ in length");
        for (std::size_t q = 1; q < tr.radii.size(); ++q)
            if (!(tr.radii[q] > tr.radii[q - 1]))
                throw SchemaError("trace radii must increase strictly");
        return tr;
    });
}

Json data_to_json(const SimulatedData& data)
{
    Json j;
    j["kind"] = theorem_name(data.kind);
    j["dim"] = data.dim;
    if (data.kind == Theorem::Radial) {
        if (data.kernel)
            j["kernel"] = kernel_to_json(*data.kernel);
        Json traces = Json::array();
        for (const auto& t : data.traces)
            traces.push_back(trace_to_json(t));
        j["traces"] = traces;
    } else {
        Json moments = Json::array();
        for (const auto& m : data.moments)
            moments.push_back(moments_to_json(m));
        j["moments"] = moments;
    }
    return j;
}

SimulatedData data_from_json(const Json& j)
{
    return schema_guard("data file", [&] {
        SimulatedData d;
        d.kind = theorem_from_name(j.at("kind").get<std::string>());
        d.dim = j.at("dim").get<int>();
        if (d.kind == Theorem::Radial) {
            if (j.contains("kernel"))
                d.kernel = kernel_from_json(j.at("kernel"));
            for (const auto& t : j.at("traces"))
                d.traces.push_back(trace_from_json(t));
        } else {
            for (const auto& m : j.at("moments"))
                d.moments.push_back(moments_from_json(m));
        }
        return d;
    });
}

Json report_to_json(const RecoveryReport& report, bool include_timing)
{
    Json j;
    j["status"] = "ok";
    j["kind"] = theorem_name(report.kind);
    j["dim"] = report.dim;
    j["sources"] = report.sources;

    Json model;
    model["kind"] = theorem_name(report.kind);
    if (report.kind == Theorem::Hyperplanes) {
        Json normals = Json::array();
        Json offsets = Json::array();
        for (const auto& h : report.planes) {
            normals.push_back(vec(h.normal));
            offsets.push_back(h.offset);
        }
        model["normals"] = normals;
        model["offsets"] = offsets;
    } else {
        model["nodes"] = points(report.nodes);
    }
    model["amplitudes"] = report.amplitudes;
    j["model"] = model;

    Json sensors = Json::array();
    for (const auto& s : report.sensors) {
        sensors.push_back({{"index", s.index},
                           {"position", vec(s.position)},
                           {"status", sensor_status_name(s.status)},
                           {"conditioning", s.conditioning},
                           {"roots", s.roots},
                           {"distances", s.distances}});
    }
    j["sensors"] = sensors;

    Json assignments = Json::array();
    for (const auto& a : report.assignments) {
        assignments.push_back({{"sensor", a.sensor},
                               {"permutation", a.permutation},
                               {"residual", a.residual},
                               {"runner_up", finite_or_null(a.runner_up)}});
    }
    j["assignments"] = assignments;
    j["diagnostics"] = report.diagnostics;
    j["verification_residual"] = report.verification_residual;
    if (include_timing)
        j["timing"] = {{"elapsed_seconds", report.elapsed_seconds}};
    return j;
}

RecoveryReport report_from_json(const Json& j)
{
    return schema_guard("report", [&] {
        if (j.at("status").get<std::string>() != "ok")
            throw SchemaError("report records a failed recovery");
        RecoveryReport r;
        r.kind = theorem_from_name(j.at("kind").get<std::string>());
        r.dim = j.at("dim").get<int>();
        r.sources = j.at("sources").get<int>();
        const Json& model = j.at("model");
        r.amplitudes = model.at("amplitudes").get<std::vector<double>>();
        if (r.kind == Theorem::Hyperplanes) {
            const auto normals = parse_points(model.at("normals"));
            const auto offsets = model.at("offsets").get<std::vector<double>>();
            if (normals.size() != offsets.size())
                throw SchemaError("normals and offsets differ in length");
            for (std::size_t i = 0; i < normals.size(); ++i)
                r.planes.push_back({normals[i], offsets[i]});
        } else {
            r.nodes = parse_points(model.at("nodes"));
        }

        for (const auto& s : j.at("sensors")) {
            SensorReport sr;
            sr.index = s.at("index").get<std::size_t>();
            sr.position = parse_vector(s.at("position"));
            const auto status = s.at("status").get<std::string>();
            if (status == "good")
                sr.status = SensorStatus::Good;
            else if (status == "degenerate")
                sr.status = SensorStatus::Degenerate;
            else if (status == "unused")
                sr.status = SensorStatus::Unused;
            else
                throw SchemaError("unknown sensor status '" + status + "'");
            sr.conditioning = s.at("conditioning").get<double>();
            sr.roots = s.at("roots").get<std::vector<double>>();
            sr.distances = s.at("distances").get<std::vector<double>>();
            r.sensors.push_back(std::move(sr));
        }
        for (const auto& a : j.at("assignments")) {
            Assignment as;
            as.sensor = a.at("sensor").get<std::size_t>();
            as.permutation = a.at("permutation").get<std::vector<int>>();
            as.residual = a.at("residual").get<double>();
            as.runner_up = parse_or_inf(a.at("runner_up"));
            r.assignments.push_back(std::move(as));
        }
        r.diagnostics = j.at("diagnostics").get<std::vector<std::string>>();
        r.verification_residual = j.at("verification_residual").get<double>();
        if (j.contains("timing"))
            r.elapsed_seconds = j.at("timing").at("elapsed_seconds").get<double>();
        return r;
    });
}

Json failure_report_json(Theorem kind, int dim, int m, const Error& error)
{
    Json j;
    j["status"] = "error";
    j["kind"] = theorem_name(kind);
    j["dim"] = dim;
    j["sources"] = m;
    j["error"] = {{"kind", error.name()}, {"message", error.what()}};
    return j;
}

Json error_table_to_json(const ErrorTable& table)
{
    Json j;
    j["matching"] = table.matching;
    j["node_errors"] = table.node_errors;
    j["normal_errors"] = table.normal_errors;
    j["offset_errors"] = table.offset_errors;
    j["amplitude_errors"] = table.amplitude_errors;
    j["max_error"] = table.max_error;
    j["mean_error"] = table.mean_error;
    return j;
}

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open '" + path + "' for reading");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw SchemaError("'" + path + "' is not valid JSON: " + e.what());
    }
}

void write_json_file(const std::string& path, const Json& j)
{
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open '" + path + "' for writing");
    out << j.dump(2) << '\n';
    if (!out)
        throw IoError("failed writing '" + path + "'");
}

}  // namespace pronysmt

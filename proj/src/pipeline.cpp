#include <pronysmt/pipeline.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

#include <pronysmt/errors.hpp>

namespace pronysmt {

std::string_view sensor_status_name(SensorStatus status)
{
    switch (status) {
    case SensorStatus::Good: return "good";
    case SensorStatus::Degenerate: return "degenerate";
    case SensorStatus::Unused: return "unused";
    }
    return "unused";
}

PipelineOptions radial_defaults()
{
    PipelineOptions opt;
    opt.prony.degenerate = 1e-7;
    opt.prony.imaginary = 1e-5;
    opt.prony.separation = 1e-5;
    opt.prony.residual = 1e-5;
    opt.prony.range = 1e-6;
    opt.match.match = 1e-5;
    opt.geometry.distance = 1e-5;
    opt.tol_verify = 1e-4;
    return opt;
}

namespace {

using Clock = std::chrono::steady_clock;

struct DistanceStage {
    std::vector<double> amplitudes;
    std::vector<std::size_t> anchors;
    std::vector<std::vector<double>> distances;  // [node][anchor]
};

void check_inputs(const std::vector<MomentVector>& moments, int dim, int m, ProbeFamily probe)
{
    if (dim < 2)
        throw Error(ErrorKind::Unsupported, "dimension must be at least 2");
    if (m < 1)
        throw Error(ErrorKind::InvalidArgument, "need at least one source");
    if (m > max_matched_sources)
        throw Error(ErrorKind::Unsupported, "at most 8 sources are supported");
    if (moments.empty())
        throw Error(ErrorKind::InvalidArgument, "no sensors");
    for (const auto& mv : moments) {
        if (mv.sensor.size() != dim)
            throw Error(ErrorKind::DimensionMismatch, "sensor dimension differs from n");
        if (mv.probe != probe)
            throw Error(ErrorKind::InvalidArgument, "moment vectors use the wrong probe family");
    }
}

void note_sensor_layout(const std::vector<Vector>& points, Theorem kind, int dim, int m,
                        RecoveryReport& report)
{
    const SensorSet sensors(dim, points);
    const int wanted = min_sensor_count(kind, dim, m);
    if (static_cast<int>(points.size()) < wanted) {
        std::ostringstream os;
        os << points.size() << " sensors given; the uniqueness guarantee needs " << wanted;
        report.diagnostics.push_back(os.str());
    }
    if (!validate_general_position(sensors))
        report.diagnostics.push_back("sensors are not in general position");
}

// Classifies sensors, solves the first good one and matches the next
// `needed - 1` good ones against its amplitudes.
DistanceStage solve_distances(const std::vector<MomentVector>& moments, int m, int needed,
                              const std::function<double(double)>& to_distance,
                              const PipelineOptions& opt, RecoveryReport& report)
{
    std::vector<std::size_t> good;
    for (std::size_t i = 0; i < moments.size(); ++i) {
        const HankelSystem sys = build_hankel(moments[i], m);
        SensorReport s;
        s.index = i;
        s.position = moments[i].sensor;
        s.conditioning = sys.conditioning_ratio();
        s.status = is_degenerate(sys, opt.prony.degenerate) ? SensorStatus::Degenerate
                                                            : SensorStatus::Unused;
        if (s.status != SensorStatus::Degenerate)
            good.push_back(i);
        report.sensors.push_back(std::move(s));
    }
    if (static_cast<int>(good.size()) < needed) {
        std::ostringstream os;
        os << good.size() << " non-degenerate sensors, " << needed << " required";
        throw Error(ErrorKind::NotEnoughGoodSensors, os.str());
    }

    DistanceStage stage;
    stage.distances.assign(static_cast<std::size_t>(m), {});
    auto record = [&](std::size_t sensor, const std::vector<double>& roots, const std::vector<int>& perm) {
        SensorReport& s = report.sensors[sensor];
        s.status = SensorStatus::Good;
        s.roots = roots;
        for (std::size_t i = 0; i < perm.size(); ++i) {
            const double d = to_distance(roots[static_cast<std::size_t>(perm[i])]);
            s.distances.push_back(d);
            stage.distances[i].push_back(d);
        }
        stage.anchors.push_back(sensor);
    };

    const std::size_t first = good.front();
    const PronySolution sol = solve_prony(moments[first], m, opt.prony);
    stage.amplitudes = sol.amplitudes;
    std::vector<int> identity(static_cast<std::size_t>(m));
    std::iota(identity.begin(), identity.end(), 0);
    record(first, sol.roots, identity);

    const RootDomain domain = root_domain(moments[first].probe);
    for (int k = 1; k < needed; ++k) {
        const std::size_t s = good[static_cast<std::size_t>(k)];
        const CoefficientSolution coef = solve_coefficients(build_hankel(moments[s], m), opt.prony.degenerate);
        const std::vector<double> roots = find_roots(coef.coefficients, domain, opt.prony);
        Assignment a = match_roots(stage.amplitudes, roots, moments[s], opt.match, s);
        record(s, roots, a.permutation);
        report.assignments.push_back(std::move(a));
    }
    return stage;
}

double relative_misfit(const std::vector<double>& synth, const std::vector<double>& data)
{
    double diff = 0.0;
    double norm = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        diff += (synth[i] - data[i]) * (synth[i] - data[i]);
        norm += data[i] * data[i];
    }
    return norm > 0.0 ? std::sqrt(diff / norm) : std::sqrt(diff);
}

void finish_verification(double worst, std::size_t worst_sensor, double tol, RecoveryReport& report)
{
    report.verification_residual = worst;
    if (worst > tol) {
        std::ostringstream os;
        os << "re-synthesized data misfit " << worst << " at sensor " << worst_sensor
           << " exceeds " << tol;
        throw Error(ErrorKind::VerificationFailed, os.str());
    }
}

std::vector<Vector> trilaterate_all(const DistanceStage& stage, const std::vector<Vector>& sensors,
                                    const GeometryTolerances& tol)
{
    std::vector<Vector> anchors;
    for (std::size_t s : stage.anchors)
        anchors.push_back(sensors[s]);
    std::vector<Vector> nodes;
    for (const auto& d : stage.distances)
        nodes.push_back(trilaterate(anchors, d, tol));
    return nodes;
}

void note_validity(const ModelValidity& v, RecoveryReport& report)
{
    if (!v.ok())
        report.diagnostics.push_back("recovered model flags: " + v.describe());
}

double elapsed_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

RecoveryReport recover_points(const std::vector<MomentVector>& moments, int dim, int m,
                              const PipelineOptions& opt)
{
    const auto start = Clock::now();
    check_inputs(moments, dim, m, ProbeFamily::Monomial);
    RecoveryReport report;
    report.kind = Theorem::Points;
    report.dim = dim;
    report.sources = m;

    std::vector<Vector> sensors;
    for (const auto& mv : moments)
        sensors.push_back(mv.sensor);
    note_sensor_layout(sensors, Theorem::Points, dim, m, report);

    const DistanceStage stage = solve_distances(moments, m, required_good_sensors(Theorem::Points, dim),
                                                [](double r) { return r; }, opt, report);
    report.nodes = trilaterate_all(stage, sensors, opt.geometry);
    report.amplitudes = stage.amplitudes;

    const PointSources model(dim, report.nodes, report.amplitudes);
    note_validity(model.validity(), report);
    double worst = 0.0;
    std::size_t worst_sensor = 0;
    for (std::size_t i = 0; i < moments.size(); ++i) {
        const MomentVector synth =
            point_moments(model, moments[i].sensor, static_cast<int>(moments[i].values.size()));
        const double r = relative_misfit(synth.values, moments[i].values);
        if (r > worst) {
            worst = r;
            worst_sensor = i;
        }
    }
    finish_verification(worst, worst_sensor, opt.tol_verify, report);
    report.elapsed_seconds = elapsed_since(start);
    return report;
}

RecoveryReport recover_hyperplanes(const std::vector<MomentVector>& moments, int dim, int m,
                                   const PipelineOptions& opt)
{
    const auto start = Clock::now();
    check_inputs(moments, dim, m, ProbeFamily::Gaussian);
    RecoveryReport report;
    report.kind = Theorem::Hyperplanes;
    report.dim = dim;
    report.sources = m;

    std::vector<Vector> sensors;
    for (const auto& mv : moments)
        sensors.push_back(mv.sensor);
    note_sensor_layout(sensors, Theorem::Hyperplanes, dim, m, report);

    const auto to_distance = [](double lambda) {
        return lambda >= 1.0 ? 0.0 : std::sqrt(std::max(0.0, -std::log(lambda)));
    };
    const DistanceStage stage = solve_distances(
        moments, m, required_good_sensors(Theorem::Hyperplanes, dim), to_distance, opt, report);

    std::vector<Vector> anchors;
    for (std::size_t s : stage.anchors)
        anchors.push_back(sensors[s]);
    for (const auto& d : stage.distances)
        report.planes.push_back(hyperplane_from_unsigned_distances(anchors, d, opt.geometry));
    report.amplitudes = stage.amplitudes;

    const HyperplaneSources model(dim, report.planes, report.amplitudes);
    note_validity(model.validity(), report);
    double worst = 0.0;
    std::size_t worst_sensor = 0;
    for (std::size_t i = 0; i < moments.size(); ++i) {
        const MomentVector synth =
            hyperplane_moments(model, moments[i].sensor, static_cast<int>(moments[i].values.size()), true);
        const double r = relative_misfit(synth.values, moments[i].values);
        if (r > worst) {
            worst = r;
            worst_sensor = i;
        }
    }
    finish_verification(worst, worst_sensor, opt.tol_verify, report);
    report.elapsed_seconds = elapsed_since(start);
    return report;
}

RecoveryReport recover_radial(const std::vector<SphericalMeanTrace>& traces,
                              const RadialKernel& kernel, int dim, int m,
                              const PipelineOptions& opt)
{
    const auto start = Clock::now();
    if (dim != 2 && dim != 3)
        throw Error(ErrorKind::Unsupported, "radial recovery supports n = 2 and n = 3 only");
    if (traces.empty())
        throw Error(ErrorKind::InvalidArgument, "no sensors");

    std::vector<MomentVector> moments;
    std::vector<double> fit_residuals;
    for (const auto& tr : traces) {
        if (tr.sensor.size() != dim)
            throw Error(ErrorKind::DimensionMismatch, "sensor dimension differs from n");
        const HankelProfile profile =
            hankel_transform(kernel, dim, extraction_grid(tr, kernel, dim, opt.extraction));
        const EvenMoments em = extract_even_moments(tr, profile, dim, m, opt.extraction);
        fit_residuals.push_back(em.fit_residual);
        moments.push_back(em.as_moment_vector());
    }
    check_inputs(moments, dim, m, ProbeFamily::Monomial);

    RecoveryReport report;
    report.kind = Theorem::Radial;
    report.dim = dim;
    report.sources = m;
    std::vector<Vector> sensors;
    for (const auto& tr : traces)
        sensors.push_back(tr.sensor);
    note_sensor_layout(sensors, Theorem::Radial, dim, m, report);
    {
        std::ostringstream os;
        os << "largest even-polynomial fit residual "
           << *std::max_element(fit_residuals.begin(), fit_residuals.end());
        report.diagnostics.push_back(os.str());
    }

    // Prony nodes are squared distances here.
    const auto to_distance = [](double node) { return std::sqrt(std::max(0.0, node)); };
    const DistanceStage stage = solve_distances(moments, m, required_good_sensors(Theorem::Radial, dim),
                                                to_distance, opt, report);
    report.nodes = trilaterate_all(stage, sensors, opt.geometry);
    report.amplitudes = stage.amplitudes;

    const RadialSources model(dim, report.nodes, report.amplitudes, kernel);
    note_validity(model.validity(), report);
    double worst = 0.0;
    std::size_t worst_sensor = 0;
    for (std::size_t i = 0; i < traces.size(); ++i) {
        const SphericalMeanTrace synth = radial_trace(model, traces[i].sensor, traces[i].radii);
        const double r = relative_misfit(synth.values, traces[i].values);
        if (r > worst) {
            worst = r;
            worst_sensor = i;
        }
    }
    finish_verification(worst, worst_sensor, opt.tol_verify, report);
    report.elapsed_seconds = elapsed_since(start);
    return report;
}

namespace {

template <class Cost>
std::vector<int> best_matching(std::size_t m, Cost cost)
{
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> best = perm;
    double best_cost = std::numeric_limits<double>::infinity();
    do {
        double c = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            c += cost(i, static_cast<std::size_t>(perm[i]));
        if (c < best_cost) {
            best_cost = c;
            best = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

void summarize(ErrorTable& t)
{
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto* list : {&t.node_errors, &t.normal_errors, &t.offset_errors, &t.amplitude_errors}) {
        for (double e : *list) {
            t.max_error = std::max(t.max_error, e);
            sum += e;
            ++count;
        }
    }
    t.mean_error = count > 0 ? sum / static_cast<double>(count) : 0.0;
}

}  // namespace

ErrorTable compare_points(const RecoveryReport& report, const std::vector<Vector>& nodes,
                          const std::vector<double>& amplitudes)
{
    const std::size_t m = nodes.size();
    if (report.nodes.size() != m || report.amplitudes.size() != m || amplitudes.size() != m)
        throw Error(ErrorKind::DimensionMismatch, "report and truth have different source counts");
    if (m > static_cast<std::size_t>(max_matched_sources))
        throw Error(ErrorKind::Unsupported, "matching is capped at 8 sources");
    ErrorTable t;
    t.matching = best_matching(m, [&](std::size_t i, std::size_t j) {
        return (report.nodes[i] - nodes[j]).norm() + std::abs(report.amplitudes[i] - amplitudes[j]);
    });
    for (std::size_t i = 0; i < m; ++i) {
        const auto j = static_cast<std::size_t>(t.matching[i]);
        t.node_errors.push_back((report.nodes[i] - nodes[j]).norm());
        t.amplitude_errors.push_back(std::abs(report.amplitudes[i] - amplitudes[j]));
    }
    summarize(t);
    return t;
}

ErrorTable compare_hyperplanes(const RecoveryReport& report, const HyperplaneSources& truth)
{
    const std::size_t m = truth.size();
    if (report.planes.size() != m || report.amplitudes.size() != m)
        throw Error(ErrorKind::DimensionMismatch, "report and truth have different source counts");
    if (m > static_cast<std::size_t>(max_matched_sources))
        throw Error(ErrorKind::Unsupported, "matching is capped at 8 sources");
    ErrorTable t;
    t.matching = best_matching(m, [&](std::size_t i, std::size_t j) {
        return hyperplane_distance(report.planes[i], truth.planes()[j]) +
               std::abs(report.amplitudes[i] - truth.amplitudes()[j]);
    });
    for (std::size_t i = 0; i < m; ++i) {
        const auto j = static_cast<std::size_t>(t.matching[i]);
        const Hyperplane& a = report.planes[i];
        const Hyperplane& b = truth.planes()[j];
        // Pick the representative of b closest to a.
        const bool flip = (a.normal + b.normal).norm() + std::abs(a.offset + b.offset) <
                          (a.normal - b.normal).norm() + std::abs(a.offset - b.offset);
        const Vector nb = flip ? Vector(-b.normal) : b.normal;
        const double ob = flip ? -b.offset : b.offset;
        t.normal_errors.push_back(2.0 * std::asin(std::min(1.0, 0.5 * (a.normal - nb).norm())));
        t.offset_errors.push_back(std::abs(a.offset - ob));
        t.amplitude_errors.push_back(std::abs(report.amplitudes[i] - truth.amplitudes()[j]));
    }
    summarize(t);
    return t;
}

}  // namespace pronysmt

// Command-line front end: generate, simulate, recover, verify, demo-paper.

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include <CLI11.hpp>

#include <pronysmt/demo.hpp>
#include <pronysmt/errors.hpp>
#include <pronysmt/io.hpp>
#include <pronysmt/pipeline.hpp>
#include <pronysmt/scenario.hpp>

namespace {

using namespace pronysmt;

enum Exit : int { ok = 0, usage = 2, schema = 3, recovery = 4, mismatch = 5 };

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag)
{
    if (flag)
        return *flag;
    if (const char* env = std::getenv("PRONY_SMT_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw SchemaError(std::string("PRONY_SMT_SEED is not an unsigned integer: ") + env);
        }
    }
    return 0;
}

void emit(const std::string& out, const Json& j)
{
    if (out.empty() || out == "-")
        std::cout << j.dump(2) << '\n';
    else
        write_json_file(out, j);
}

int cmd_generate(const std::string& kind, int dim, int m, const std::optional<std::uint64_t>& seed,
                 const std::string& out)
{
    const Scenario sc = generate_scenario(theorem_from_name(kind), dim, m, resolve_seed(seed));
    emit(out, scenario_to_json(sc));
    return ok;
}

int cmd_simulate(const std::string& scenario_path, const std::string& out, int probe_count,
                 int radial_grid, double noise_sigma, const std::optional<std::uint64_t>& seed)
{
    const Scenario sc = scenario_from_json(read_json_file(scenario_path));
    if (noise_sigma < 0.0)
        throw SchemaError("noise sigma must be nonnegative");
    const int count = probe_count > 0 ? probe_count : 2 * sc.sources();

    SimulatedData data;
    data.kind = sc.kind();
    data.dim = sc.dim();
    for (const Vector& y : sc.sensors.points()) {
        if (const auto* p = std::get_if<PointSources>(&sc.model)) {
            data.moments.push_back(point_moments(*p, y, count));
        } else if (const auto* h = std::get_if<HyperplaneSources>(&sc.model)) {
            data.moments.push_back(hyperplane_moments(*h, y, count));
        } else {
            const auto& r = std::get<RadialSources>(sc.model);
            data.kernel = r.kernel();
            data.traces.push_back(radial_trace(r, y, default_radial_grid(r, y, radial_grid)));
        }
    }

    if (noise_sigma > 0.0) {
        std::mt19937_64 rng(resolve_seed(seed));
        std::normal_distribution<double> noise(0.0, noise_sigma);
        for (auto& mv : data.moments)
            for (double& v : mv.values)
                v += noise(rng);
        for (auto& tr : data.traces)
            for (double& v : tr.values)
                v += noise(rng);
    }
    emit(out, data_to_json(data));
    return ok;
}

int cmd_recover(const std::string& data_path, const std::string& kind_flag, int dim_flag, int m,
                const std::string& out, bool timing)
{
    const SimulatedData data = data_from_json(read_json_file(data_path));
    const Theorem kind = kind_flag.empty() ? data.kind : theorem_from_name(kind_flag);
    if (kind != data.kind)
        throw SchemaError("data file holds " + std::string(theorem_name(data.kind)) + " data");
    const int dim = dim_flag > 0 ? dim_flag : data.dim;
    if (dim != data.dim)
        throw SchemaError("data file is for n = " + std::to_string(data.dim));

    try {
        RecoveryReport report;
        switch (kind) {
        case Theorem::Points:
            report = recover_points(data.moments, dim, m);
            break;
        case Theorem::Hyperplanes:
            report = recover_hyperplanes(data.moments, dim, m);
            break;
        case Theorem::Radial:
            if (!data.kernel)
                throw SchemaError("radial data file lacks a kernel");
            report = recover_radial(data.traces, *data.kernel, dim, m);
            break;
        }
        emit(out, report_to_json(report, timing));
        return ok;
    } catch (const Error& e) {
        emit(out, failure_report_json(kind, dim, m, e));
        std::cerr << "recovery failed: " << e.what() << '\n';
        return recovery;
    }
}

int cmd_verify(const std::string& scenario_path, const std::string& report_path, const std::string& out)
{
    const Scenario sc = scenario_from_json(read_json_file(scenario_path));
    const RecoveryReport report = report_from_json(read_json_file(report_path));
    if (report.kind != sc.kind())
        throw SchemaError("report and scenario describe different model kinds");

    ErrorTable table;
    if (const auto* h = std::get_if<HyperplaneSources>(&sc.model)) {
        table = compare_hyperplanes(report, *h);
    } else if (const auto* p = std::get_if<PointSources>(&sc.model)) {
        table = compare_points(report, p->nodes(), p->amplitudes());
    } else {
        const auto& r = std::get<RadialSources>(sc.model);
        table = compare_points(report, r.nodes(), r.amplitudes());
    }
    emit(out, error_table_to_json(table));
    return ok;
}

int cmd_demo(const std::string& which)
{
    DemoResult r;
    if (which == "example42")
        r = demo_example42();
    else if (which == "counterexample-points")
        r = demo_counterexample_points();
    else
        r = demo_counterexample_lines();
    std::cout << r.transcript;
    return r.matches() ? ok : mismatch;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Source recovery from spherical mean data"};
    app.require_subcommand(1);

    std::string kind;
    std::string out;
    int dim = 0;
    int m = 0;
    std::optional<std::uint64_t> seed;

    auto* gen = app.add_subcommand("generate", "Write a seeded random scenario");
    gen->add_option("--kind", kind, "points | hyperplanes | radial")
        ->required()
        ->check(CLI::IsMember({"points", "hyperplanes", "radial"}));
    gen->add_option("--dim", dim, "Ambient dimension n")->required()->check(CLI::Range(2, 16));
    gen->add_option("--sources", m, "Number of sources m")->required()->check(CLI::Range(1, 8));
    gen->add_option("--seed", seed, "RNG seed (falls back to PRONY_SMT_SEED, then 0)");
    gen->add_option("--out", out, "Output file, stdout when omitted");

    std::string scenario_path;
    int probe_count = 0;
    int radial_grid = 512;
    double noise_sigma = 0.0;
    auto* sim = app.add_subcommand("simulate", "Synthesize moments or traces for a scenario");
    sim->add_option("--scenario", scenario_path, "Scenario JSON")->required();
    sim->add_option("--out", out, "Output file, stdout when omitted");
    sim->add_option("--probe-count", probe_count, "Moments per sensor (default 2m)")->check(CLI::NonNegativeNumber);
    sim->add_option("--radial-grid", radial_grid, "Trace samples per sensor")->check(CLI::Range(8, 1 << 20));
    sim->add_option("--noise-sigma", noise_sigma, "Std. deviation of added Gaussian noise");
    sim->add_option("--seed", seed, "Noise seed (falls back to PRONY_SMT_SEED, then 0)");

    std::string data_path;
    bool no_timing = false;
    auto* rec = app.add_subcommand("recover", "Recover sources from simulated data");
    rec->add_option("--data", data_path, "Moment or trace file")->required();
    rec->add_option("--sources", m, "Number of sources m")->required()->check(CLI::Range(1, 8));
    rec->add_option("--dim", dim, "Ambient dimension (default from the data file)");
    rec->add_option("--kind", kind, "points | hyperplanes | radial (default from the data file)")
        ->check(CLI::IsMember({"points", "hyperplanes", "radial"}));
    rec->add_option("--out", out, "Report file, stdout when omitted");
    rec->add_flag("--no-timing", no_timing, "Leave the timing block out of the report");

    std::string report_path;
    auto* ver = app.add_subcommand("verify", "Compare a report with the scenario it came from");
    ver->add_option("--scenario", scenario_path, "Scenario JSON")->required();
    ver->add_option("--report", report_path, "Recovery report JSON")->required();
    ver->add_option("--out", out, "Error table file, stdout when omitted");

    std::string which;
    auto* demo = app.add_subcommand("demo-paper", "Print a worked example transcript");
    demo->add_option("--which", which, "example42 | counterexample-points | counterexample-lines")
        ->required()
        ->check(CLI::IsMember({"example42", "counterexample-points", "counterexample-lines"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : usage;
    }

    try {
        if (*gen)
            return cmd_generate(kind, dim, m, seed, out);
        if (*sim)
            return cmd_simulate(scenario_path, out, probe_count, radial_grid, noise_sigma, seed);
        if (*rec)
            return cmd_recover(data_path, kind, dim, m, out, !no_timing);
        if (*ver)
            return cmd_verify(scenario_path, report_path, out);
        return cmd_demo(which);
    } catch (const SchemaError& e) {
        std::cerr << "schema error: " << e.what() << '\n';
        return schema;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return schema;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return recovery;
    }
}

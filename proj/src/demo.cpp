#include <pronysmt/demo.hpp>

#include <Eigen/LU>

#include <array>
#include <cmath>
#include <iomanip>
#include <sstream>

#include <pronysmt/correspondence.hpp>
#include <pronysmt/errors.hpp>
#include <pronysmt/geometry.hpp>
#include <pronysmt/pipeline.hpp>
#include <pronysmt/prony.hpp>
#include <pronysmt/scenario.hpp>

namespace pronysmt {

bool DemoResult::matches() const
{
    for (const auto& c : checks)
        if (!c.ok)
            return false;
    return true;
}

const DemoCheck* DemoResult::find(const std::string& label) const
{
    for (const auto& c : checks)
        if (c.label == label)
            return &c;
    return nullptr;
}

namespace {

// Reference tau tables of the worked example, three decimals as published.
constexpr std::array<std::array<double, 4>, 5> reference_tau{{
    {5, 5, 5, 5},
    {5, 11.18, 25, 55.901},
    {5, 7.472, 13, 25.36},
    {5, 8.708, 17, 35.541},
    {5, 12.485, 32, 75.882},
}};

// Reference polynomials c0 + c1 x + x^2 and their roots at sensors 3, 4, 5.
constexpr std::array<std::array<double, 2>, 3> reference_coefficients{{
    {2.234, -3.235},
    {2.234, -3.235},
    {5.656, -4.828},
}};
constexpr std::array<std::array<double, 2>, 3> reference_roots{{
    {1, 2.235},
    {1, 2.235},
    {2, 2.828},
}};
constexpr std::array<double, 2> reference_amplitudes{2.998, 2.001};
constexpr std::array<double, 2> reference_first_node{-0.998, 0.001};

class Transcript {
public:
    Transcript() { out_ << std::fixed << std::setprecision(3); }

    std::ostringstream& out() { return out_; }

    void check(DemoResult& r, const std::string& label, double computed, double reference,
               double tol = demo_tolerance, std::string note = {})
    {
        DemoCheck c{label, computed, reference, tol, std::abs(computed - reference) <= tol, std::move(note)};
        out_ << "  " << std::left << std::setw(22) << label << std::right << std::setw(10) << computed
             << "   ref " << std::setw(10) << reference << (c.ok ? "   ok" : "   MISMATCH") << '\n';
        if (!c.note.empty())
            out_ << "    note: " << c.note << '\n';
        r.checks.push_back(std::move(c));
    }

    void flag(DemoResult& r, const std::string& label, bool ok, const std::string& text)
    {
        out_ << text << (ok ? "" : "   MISMATCH") << '\n';
        r.checks.push_back({label, ok ? 1.0 : 0.0, 1.0, 0.0, ok, {}});
    }

    std::string str() const { return out_.str(); }

private:
    std::ostringstream out_;
};

std::string sci(double x)
{
    std::ostringstream os;
    os << std::scientific << std::setprecision(1) << x;
    return os.str();
}

std::string point_str(const Vector& v)
{
    std::ostringstream os;
    os << std::fixed << std::setprecision(3) << '(';
    for (Eigen::Index i = 0; i < v.size(); ++i)
        os << (i ? ", " : "") << v[i];
    os << ')';
    return os.str();
}

}  // namespace

DemoResult demo_example42()
{
    DemoResult result;
    Transcript t;
    const Scenario sc = example42_scenario();
    const auto& model = std::get<PointSources>(sc.model);
    const int m = 2;

    t.out() << "f = 3 delta(-1,0) + 2 delta(1,0), sensors y1..y5\n\nmoments (tau0, tau1, tau2, tau3)\n";
    std::vector<MomentVector> moments;
    for (std::size_t s = 0; s < sc.sensors.size(); ++s) {
        moments.push_back(point_moments(model, sc.sensors[s], 2 * m));
        t.out() << "y" << s + 1 << " " << point_str(sc.sensors[s]) << '\n';
        for (int l = 0; l < 2 * m; ++l) {
            std::string note;
            if (s == 4 && l == 3)
                note = "reference lists 75.882; 3*sqrt(8)^3 + 2*2^3 = 83.882, and the reference "
                       "polynomial 5.656 - 4.828x + x^2 below is only consistent with 83.882";
            t.check(result, "y" + std::to_string(s + 1) + " tau" + std::to_string(l),
                    moments.back().values[static_cast<std::size_t>(l)],
                    reference_tau[s][static_cast<std::size_t>(l)], demo_tolerance, note);
        }
    }

    t.out() << "\nHankel systems\n";
    for (std::size_t s = 0; s < moments.size(); ++s) {
        const HankelSystem sys = build_hankel(moments[s], m);
        const bool degenerate = is_degenerate(sys);
        t.out() << "  y" << s + 1 << "  det " << std::setprecision(6) << sys.matrix.determinant()
                << std::setprecision(3) << "  sigma ratio " << std::scientific << sys.conditioning_ratio()
                << std::fixed << (degenerate ? "  degenerate\n" : "  solvable\n");
        t.flag(result, "y" + std::to_string(s + 1) + " degenerate", degenerate == (s < 2),
               std::string("  y") + std::to_string(s + 1) + (s < 2 ? " expected degenerate" : " expected solvable"));
    }

    t.out() << "\npolynomials c0 + c1 x + x^2 and roots\n";
    std::array<std::vector<double>, 3> roots;
    for (std::size_t k = 0; k < 3; ++k) {
        const std::size_t s = k + 2;
        const std::string y = "y" + std::to_string(s + 1);
        const CoefficientSolution coef = solve_coefficients(build_hankel(moments[s], m));
        t.check(result, "P_" + y + " c0", coef.coefficients[0], reference_coefficients[k][0]);
        t.check(result, "P_" + y + " c1", coef.coefficients[1], reference_coefficients[k][1]);
        roots[k] = find_roots(coef.coefficients, RootDomain::NonNegative);
        t.check(result, "xi_1," + std::to_string(s + 1), roots[k][0], reference_roots[k][0]);
        t.check(result, "xi_2," + std::to_string(s + 1), roots[k][1], reference_roots[k][1]);
    }

    t.out() << "\namplitudes from y3 (node i <-> root i)\n";
    const AmplitudeSolution amps = solve_amplitudes(roots[0], moments[2]);
    t.check(result, "a1", amps.amplitudes[0], reference_amplitudes[0]);
    t.check(result, "a2", amps.amplitudes[1], reference_amplitudes[1]);

    t.out() << "\nassignment checks\n";
    std::array<std::vector<int>, 2> perms;
    for (std::size_t k = 1; k < 3; ++k) {
        const Assignment a = match_roots(amps.amplitudes, roots[k], moments[k + 2], {}, k + 2);
        perms[k - 1] = a.permutation;
        t.out() << "  y" << k + 3 << "  best residual " << std::scientific << a.residual << ", other "
                << a.runner_up << std::fixed << '\n';
        t.flag(result, "y" + std::to_string(k + 3) + " swapped", a.permutation == std::vector<int>{1, 0},
               "  y" + std::to_string(k + 3) + ": x1 <-> xi_2, x2 <-> xi_1 (swapped order)");
    }

    t.out() << "\ntrilateration from y3, y4, y5\n";
    const std::vector<Vector> anchors{sc.sensors[2], sc.sensors[3], sc.sensors[4]};
    std::array<Vector, 2> nodes;
    for (std::size_t i = 0; i < 2; ++i) {
        const std::vector<double> d{roots[0][i], roots[1][static_cast<std::size_t>(perms[0][i])],
                                    roots[2][static_cast<std::size_t>(perms[1][i])]};
        nodes[i] = trilaterate(anchors, d);
        t.out() << "  x" << i + 1 << " = " << point_str(nodes[i]) << '\n';
    }
    t.check(result, "x1 first coordinate", nodes[0][0], reference_first_node[0]);
    t.check(result, "x1 second coordinate", nodes[0][1], reference_first_node[1]);

    t.out() << "\nfull pipeline\n";
    const RecoveryReport report = recover_points(moments, 2, m);
    for (std::size_t i = 0; i < report.nodes.size(); ++i)
        t.out() << "  a" << i + 1 << " = " << report.amplitudes[i] << " at " << point_str(report.nodes[i]) << '\n';
    const ErrorTable errs = compare_points(report, model.nodes(), model.amplitudes());
    t.flag(result, "pipeline", errs.max_error <= demo_tolerance, "  recovered model matches the sources");

    std::size_t bad = 0;
    for (const auto& c : result.checks)
        bad += c.ok ? 0 : 1;
    t.out() << '\n' << result.checks.size() - bad << " of " << result.checks.size()
            << " values within " << demo_tolerance << " of the reference\n";
    result.transcript = t.str();
    return result;
}

DemoResult demo_counterexample_points()
{
    DemoResult result;
    Transcript t;
    const PointCounterexample ce = counterexample_points();
    t.out() << "f1 = delta(0,1) + delta(2,-1), f2 = delta(0,-1) + delta(2,1)\n\n";

    std::vector<MomentVector> first;
    for (std::size_t s = 0; s < ce.sensors.size(); ++s) {
        const Vector& y = ce.sensors[s];
        const MomentVector a = point_moments(ce.first, y, 4);
        const MomentVector b = point_moments(ce.second, y, 4);
        first.push_back(a);
        double diff = 0.0;
        for (std::size_t l = 0; l < a.values.size(); ++l)
            diff = std::max(diff, std::abs(a.values[l] - b.values[l]));
        t.out() << "y" << s + 1 << " " << point_str(y) << "  distances f1 "
                << (y - ce.first.nodes()[0]).norm() << ", " << (y - ce.first.nodes()[1]).norm()
                << "  f2 " << (y - ce.second.nodes()[0]).norm() << ", " << (y - ce.second.nodes()[1]).norm()
                << '\n';
        t.out() << "  tau f1 (";
        for (std::size_t l = 0; l < a.values.size(); ++l)
            t.out() << (l ? ", " : "") << a.values[l];
        t.out() << ")\n";
        t.flag(result, "y" + std::to_string(s + 1) + " identical", diff <= 1e-12,
               "  moment vectors identical (max difference " + sci(diff) + ")");
    }

    t.out() << "\nrecovery from f1's moments\n";
    bool ambiguous = false;
    try {
        const RecoveryReport r = recover_points(first, 2, 2);
        t.out() << "  returned a model, which cannot be trusted here\n";
    } catch (const Error& e) {
        ambiguous = e.kind() == ErrorKind::AmbiguousAssignment;
        t.out() << "  " << e.what() << '\n';
    }
    t.flag(result, "ambiguous", ambiguous, "  recovery stops with AmbiguousAssignment");
    result.transcript = t.str();
    return result;
}

DemoResult demo_counterexample_lines()
{
    DemoResult result;
    Transcript t;
    const HyperplaneCounterexample ce = counterexample_hyperplanes();
    const std::array<const Hyperplane*, 4> lines{&ce.first.planes()[0], &ce.first.planes()[1],
                                                 &ce.second.planes()[0], &ce.second.planes()[1]};
    const std::array<const char*, 4> names{"l1", "l2", "k1", "k2"};

    t.out() << "l1: x - 2y = 0, l2: 2x + y = 0, k1: x + 2y = 0, k2: 2x - y = 0\n";
    t.out() << "offsets are zero, so both models sit outside the positive-offset hypothesis\n\n";
    t.out() << "sensor             ";
    for (const char* n : names)
        t.out() << std::setw(8) << n;
    t.out() << '\n';

    std::array<std::array<double, 4>, 5> d{};
    for (std::size_t s = 0; s < ce.sensors.size(); ++s) {
        t.out() << "y" << s + 1 << " " << std::left << std::setw(16) << point_str(ce.sensors[s]) << std::right;
        for (std::size_t k = 0; k < 4; ++k) {
            d[s][k] = unsigned_distance(ce.sensors[s], *lines[k]);
            t.out() << std::setw(8) << d[s][k];
        }
        t.out() << '\n';
    }

    t.out() << "\ndistance identities\n";
    for (std::size_t s = 0; s < 4; ++s) {
        const std::string y = "y" + std::to_string(s + 1);
        t.flag(result, "d(" + y + ",l1)=d(" + y + ",k1)", std::abs(d[s][0] - d[s][2]) <= 1e-12,
               "  d(" + y + ", l1) = d(" + y + ", k1)");
        t.flag(result, "d(" + y + ",l2)=d(" + y + ",k2)", std::abs(d[s][1] - d[s][3]) <= 1e-12,
               "  d(" + y + ", l2) = d(" + y + ", k2)");
    }
    t.flag(result, "d(y5,l1)=d(y5,k2)", std::abs(d[4][0] - d[4][3]) <= 1e-12, "  d(y5, l1) = d(y5, k2)");
    t.flag(result, "d(y5,l2)=d(y5,k1)", std::abs(d[4][1] - d[4][2]) <= 1e-12, "  d(y5, l2) = d(y5, k1)");
    t.check(result, "d(y5,l1)", d[4][0], 1.0 / std::sqrt(5.0), 1e-12);
    for (std::size_t s = 0; s < 5; ++s)
        t.flag(result, "y" + std::to_string(s + 1) + " separates", std::abs(d[s][0] - d[s][1]) > 1e-9,
               "  y" + std::to_string(s + 1) + " has different distances to l1 and l2");

    t.out() << "\nGaussian-probe moments, l = 1..4\n";
    for (std::size_t s = 0; s < ce.sensors.size(); ++s) {
        const MomentVector a = hyperplane_moments(ce.first, ce.sensors[s], 4);
        const MomentVector b = hyperplane_moments(ce.second, ce.sensors[s], 4);
        double diff = 0.0;
        for (std::size_t l = 0; l < a.values.size(); ++l)
            diff = std::max(diff, std::abs(a.values[l] - b.values[l]));
        t.flag(result, "y" + std::to_string(s + 1) + " identical", diff <= 1e-12,
               "  y" + std::to_string(s + 1) + ": moment vectors identical");
    }
    result.transcript = t.str();
    return result;
}

}  // namespace pronysmt

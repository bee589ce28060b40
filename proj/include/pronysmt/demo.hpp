#pragma once

#include <string>
#include <vector>

namespace pronysmt {

/// Largest deviation from a reference value the transcripts accept.
constexpr double demo_tolerance = 5e-3;

struct DemoCheck {
    std::string label;
    double computed = 0.0;
    double reference = 0.0;
    double tolerance = demo_tolerance;
    bool ok = false;
    std::string note;
};

struct DemoResult {
    std::string transcript;
    std::vector<DemoCheck> checks;

    bool matches() const;
    const DemoCheck* find(const std::string& label) const;
};

/// Two point masses 3 at (-1,0) and 2 at (1,0) seen from five sensors, worked
/// through step by step against the three-decimal reference values.
DemoResult demo_example42();

/// Equal-amplitude point pairs with identical moments at three sensors.
DemoResult demo_counterexample_points();

/// Equal-amplitude line pairs with identical Gaussian-probe moments at five sensors.
DemoResult demo_counterexample_lines();

}  // namespace pronysmt

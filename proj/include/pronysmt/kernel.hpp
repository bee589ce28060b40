#pragma once

#include <functional>
#include <string>
#include <vector>

namespace pronysmt {

/// Radial profile g(r) of a translated-kernel source. Built-ins are the
/// Gaussian exp(-r^2 / (2 s^2)) and a tabulated profile interpolated by
/// piecewise cubic Hermite segments; `custom` wraps an arbitrary callable.
///
/// The support radius is the radius beyond which |g| < 1e-12.
class RadialKernel {
public:
    enum class Kind { Gaussian, Tabulated, Custom };

    static RadialKernel gaussian(double width);
    static RadialKernel tabulated(std::vector<double> radii, std::vector<double> values);
    static RadialKernel custom(std::string name, std::function<double(double)> profile,
                               double support_radius);

    double operator()(double r) const;

    Kind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    double width() const { return width_; }
    double support_radius() const { return support_radius_; }
    const std::vector<double>& table_radii() const { return radii_; }
    const std::vector<double>& table_values() const { return values_; }

    /// Closed-form order-(n/2 - 1) Hankel transform, available for the Gaussian.
    bool has_closed_form_transform() const { return kind_ == Kind::Gaussian; }
    double closed_form_transform(double lambda, int dim) const;

    /// Samples the profile on [support, 4 * support] and reports whether it
    /// stays below 1e-12 there.
    bool tail_decays() const;

private:
    RadialKernel() = default;
    double eval_table(double r) const;

    Kind kind_ = Kind::Gaussian;
    std::string name_;
    double width_ = 1.0;
    double support_radius_ = 0.0;
    std::vector<double> radii_;
    std::vector<double> values_;
    std::vector<double> slopes_;
    std::function<double(double)> profile_;
};

}  // namespace pronysmt

#include <pronysmt/kernel.hpp>

#include <algorithm>
#include <cmath>

#include <pronysmt/errors.hpp>

namespace pronysmt {

namespace {
constexpr double tail_level = 1e-12;
}

RadialKernel RadialKernel::gaussian(double width)
{
    if (!(width > 0.0))
        throw Error(ErrorKind::InvalidArgument, "gaussian kernel width must be positive");
    RadialKernel k;
    k.kind_ = Kind::Gaussian;
    k.name_ = "gaussian";
    k.width_ = width;
    // exp(-r^2 / (2 s^2)) = tail_level
    k.support_radius_ = width * std::sqrt(-2.0 * std::log(tail_level)) * (1.0 + 1e-9);
    return k;
}

RadialKernel RadialKernel::tabulated(std::vector<double> radii, std::vector<double> values)
{
    if (radii.size() != values.size() || radii.size() < 2)
        throw Error(ErrorKind::InvalidArgument, "tabulated kernel needs matching radii/values (>= 2)");
    if (radii.front() != 0.0)
        throw Error(ErrorKind::InvalidArgument, "tabulated kernel must start at r = 0");
    for (std::size_t i = 1; i < radii.size(); ++i)
        if (!(radii[i] > radii[i - 1]))
            throw Error(ErrorKind::InvalidArgument, "tabulated radii must be strictly increasing");

    RadialKernel k;
    k.kind_ = Kind::Tabulated;
    k.name_ = "tabulated";
    k.radii_ = std::move(radii);
    k.values_ = std::move(values);

    const std::size_t n = k.radii_.size();
    k.slopes_.assign(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h0 = k.radii_[i] - k.radii_[i - 1];
        const double h1 = k.radii_[i + 1] - k.radii_[i];
        const double d0 = (k.values_[i] - k.values_[i - 1]) / h0;
        const double d1 = (k.values_[i + 1] - k.values_[i]) / h1;
        k.slopes_[i] = (h1 * d0 + h0 * d1) / (h0 + h1);
    }
    // r = 0 is a critical point of any smooth radial profile.
    k.slopes_[0] = 0.0;
    k.slopes_[n - 1] = (k.values_[n - 1] - k.values_[n - 2]) / (k.radii_[n - 1] - k.radii_[n - 2]);

    k.support_radius_ = k.radii_.back();
    for (std::size_t i = n; i-- > 0;) {
        if (std::abs(k.values_[i]) >= tail_level) {
            k.support_radius_ = k.radii_[std::min(i + 1, n - 1)];
            break;
        }
    }
    return k;
}

RadialKernel RadialKernel::custom(std::string name, std::function<double(double)> profile,
                                  double support_radius)
{
    if (!profile)
        throw Error(ErrorKind::InvalidArgument, "custom kernel needs a callable profile");
    RadialKernel k;
    k.kind_ = Kind::Custom;
    k.name_ = std::move(name);
    k.profile_ = std::move(profile);
    k.support_radius_ = support_radius;
    return k;
}

double RadialKernel::operator()(double r) const
{
    switch (kind_) {
    case Kind::Gaussian:
        return std::exp(-r * r / (2.0 * width_ * width_));
    case Kind::Tabulated:
        return eval_table(r);
    case Kind::Custom:
        return profile_(r);
    }
    return 0.0;
}

double RadialKernel::eval_table(double r) const
{
    if (r >= radii_.back())
        return 0.0;
    const auto it = std::upper_bound(radii_.begin(), radii_.end(), r);
    const std::size_t i = static_cast<std::size_t>(it - radii_.begin()) - 1;
    const double h = radii_[i + 1] - radii_[i];
    const double t = (r - radii_[i]) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * values_[i] + (t3 - 2 * t2 + t) * h * slopes_[i] +
           (-2 * t3 + 3 * t2) * values_[i + 1] + (t3 - t2) * h * slopes_[i + 1];
}

double RadialKernel::closed_form_transform(double lambda, int dim) const
{
    if (kind_ != Kind::Gaussian)
        throw Error(ErrorKind::Unsupported, "kernel has no closed-form Hankel transform");
    return std::pow(width_, dim) * std::exp(-0.5 * width_ * width_ * lambda * lambda);
}

bool RadialKernel::tail_decays() const
{
    const double r0 = support_radius_;
    constexpr int samples = 200;
    for (int i = 0; i <= samples; ++i) {
        const double r = r0 * (1.0 + 3.0 * i / samples);
        if (!(std::abs((*this)(r)) <= tail_level * (1.0 + 1e-6)))
            return false;
    }
    return true;
}

}  // namespace pronysmt

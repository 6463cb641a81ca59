#include "heatcontent/alpha.hpp"

#include <cmath>
#include <string>

#include "heatcontent/errors.hpp"

namespace heat {

std::string_view to_string(Regime regime) noexcept {
    switch (regime) {
        case Regime::SubCritical: return "sub-critical";
        case Regime::Cauchy: return "cauchy";
        case Regime::SuperCritical: return "super-critical";
        case Regime::Gaussian: return "gaussian";
    }
    return "unknown";
}

namespace {

Regime classify(double alpha) {
    if (alpha < 1.0) return Regime::SubCritical;
    if (alpha == 1.0) return Regime::Cauchy;
    if (alpha < 2.0) return Regime::SuperCritical;
    return Regime::Gaussian;
}

}  // namespace

AlphaParam::AlphaParam(double alpha) : alpha_(alpha), regime_(Regime::Gaussian) {
    if (!(alpha > 0.0 && alpha <= 2.0)) {
        fail(ErrorKind::DomainError, "alpha must lie in (0, 2], got " + std::to_string(alpha));
    }
    regime_ = classify(alpha);
}

int AlphaParam::reciprocal_integer() const noexcept {
    if (alpha_ > 1.0) return 0;
    const double inv = 1.0 / alpha_;
    const double n = std::round(inv);
    return std::abs(inv - n) < 1e-12 * inv ? static_cast<int>(n) : 0;
}

}  // namespace heat

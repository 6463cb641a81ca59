#pragma once

#include <string_view>

namespace heat {

enum class Regime { SubCritical, Cauchy, SuperCritical, Gaussian };

std::string_view to_string(Regime regime) noexcept;

/// Stability index alpha in (0, 2]. The regime is a pure function of the value.
class AlphaParam {
public:
    explicit AlphaParam(double alpha);

    double value() const noexcept { return alpha_; }
    Regime regime() const noexcept { return regime_; }

    /// Index alpha/2 of the one-sided stable subordinator.
    double subordinator_index() const noexcept { return 0.5 * alpha_; }

    bool is_gaussian() const noexcept { return regime_ == Regime::Gaussian; }
    bool is_cauchy() const noexcept { return regime_ == Regime::Cauchy; }

    /// N if alpha == 1/N for an integer N >= 1 (within 1e-12), otherwise 0.
    int reciprocal_integer() const noexcept;

    friend bool operator==(const AlphaParam&, const AlphaParam&) = default;

private:
    double alpha_;
    Regime regime_;
};

}  // namespace heat

#pragma once

#include <cstdint>
#include <string_view>

namespace heat {

enum class EstimateMethod {
    ClosedForm,
    SubordinationQuadrature,
    DirectMC,
    CauchySlabClosedForm,
    KilledPathMC,
};

std::string_view to_string(EstimateMethod method) noexcept;

// Value of H(t) or Q(t) with its error bar. For quadrature `error` is the
// integration error estimate; for Monte Carlo it is one standard error.
struct HeatContentEstimate {
    double value = 0.0;
    double error = 0.0;
    double t = 0.0;
    EstimateMethod method = EstimateMethod::SubordinationQuadrature;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

}  // namespace heat

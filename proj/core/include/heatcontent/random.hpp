#pragma once

#include <cstdint>
#include <random>

namespace heat {

/// SplitMix64 step; used to derive independent per-batch seeds.
std::uint64_t splitmix64(std::uint64_t& state) noexcept;

/// Seed for batch `batch` of a run seeded with `seed`. Pure function of both.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t batch) noexcept;

/// A per-caller random stream. Not shared between threads.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed);

    static RandomStream for_batch(std::uint64_t seed, std::uint64_t batch) {
        return RandomStream(derive_seed(seed, batch));
    }

    /// Uniform on the open interval (0, 1).
    double uniform();
    double exponential();
    double normal();

    std::mt19937_64& engine() noexcept { return engine_; }

private:
    std::mt19937_64 engine_;
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
    std::exponential_distribution<double> exponential_{1.0};
    std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace heat

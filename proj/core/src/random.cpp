#include "heatcontent/random.hpp"

namespace heat {

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t batch) noexcept {
    std::uint64_t state = seed;
    const std::uint64_t base = splitmix64(state);
    state = base ^ (batch * 0xD1B54A32D192ED03ULL);
    splitmix64(state);
    return splitmix64(state);
}

RandomStream::RandomStream(std::uint64_t seed) : engine_(seed) {}

double RandomStream::uniform() {
    double u = 0.0;
    do {
        u = uniform_(engine_);
    } while (u == 0.0);
    return u;
}

double RandomStream::exponential() { return exponential_(engine_); }

double RandomStream::normal() { return normal_(engine_); }

}  // namespace heat

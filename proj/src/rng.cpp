#include "graphdim/rng.hpp"

#include <cmath>
#include <numbers>

namespace graphdim {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {
inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}
} // namespace

RngStream::RngStream(std::uint64_t root_seed, std::uint64_t stream_index)
    : root_seed_(root_seed), stream_index_(stream_index) {
    // Mix the stream index into the seed sequence so that consecutive
    // indices land far apart in SplitMix64's orbit.
    std::uint64_t s = root_seed ^ (stream_index * 0xd1342543de82ef95ULL + 0x632be59bd9b4e019ULL);
    for (auto& w : state_) w = splitmix64(s);
    // xoshiro must not start from the all-zero state
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
}

std::uint64_t RngStream::next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double RngStream::next_uniform() {
    // 53-bit mantissa; force the low bit so the value stays in (0,1].
    return static_cast<double>((next_u64() >> 11) | 1ULL) * 0x1.0p-53;
}

double RngStream::next_gaussian() {
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

} // namespace graphdim

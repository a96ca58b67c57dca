#pragma once

#include <cstdint>
#include <string_view>

namespace graphdim {

// Splittable stream RNG: every (root_seed, stream_index) pair names an
// independent stream, and the same pair always reproduces the same bits.
// Stream states are derived with SplitMix64 and driven by xoshiro256++,
// so ensembles can hand stream i to path i regardless of execution order.
class RngStream {
public:
    RngStream(std::uint64_t root_seed, std::uint64_t stream_index = 0);

    std::uint64_t root_seed() const { return root_seed_; }
    std::uint64_t stream_index() const { return stream_index_; }
    static constexpr std::string_view algorithm() { return "xoshiro256++/splitmix64"; }

    std::uint64_t next_u64();

    // Uniform on (0,1]; never exactly 0 so it is safe under log().
    double next_uniform();

    // Standard normal via Box-Muller. Consumes exactly two uniforms per
    // call so that different consumers of the same stream stay aligned.
    double next_gaussian();

private:
    std::uint64_t state_[4];
    std::uint64_t root_seed_ = 0;
    std::uint64_t stream_index_ = 0;
};

// SplitMix64 step, exposed for seed-derivation tests.
std::uint64_t splitmix64(std::uint64_t& state);

} // namespace graphdim

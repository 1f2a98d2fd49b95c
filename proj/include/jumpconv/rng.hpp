#pragma once

#include <array>
#include <cstdint>

namespace jumpconv {

// SplitMix64 finalizer. Used for seed derivation only, never as a stream.
std::uint64_t mix64(std::uint64_t z) noexcept;

// Seed of trial `index` in an experiment with `base_seed`.
std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t index) noexcept;

// Philox4x32-10 block function (Salmon et al., Random123).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) noexcept;

// Counter-based stream. Block i depends only on (seed, stream, i), so a draw can be
// addressed directly by position; sequential helpers walk the blocks in order.
class CounterStream {
public:
    explicit CounterStream(std::uint64_t seed, std::uint64_t stream = 0) noexcept;

    std::array<std::uint64_t, 2> block(std::uint64_t index) const noexcept;

    // Uniform in [0,1) taken from the first word of block `index`.
    double uniform_at(std::uint64_t index) const noexcept;

    std::uint64_t next_u64() noexcept;
    double uniform() noexcept;       // [0,1)
    double uniform_open() noexcept;  // (0,1)
    double exponential() noexcept;   // standard exponential
    double normal() noexcept;        // standard normal, Box-Muller

    void seek(std::uint64_t block_index) noexcept;

private:
    std::array<std::uint32_t, 2> key_;
    std::uint64_t stream_;
    std::uint64_t next_block_ = 0;
    std::array<std::uint64_t, 2> buf_{};
    int buffered_ = 0;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

double to_unit_closed_open(std::uint64_t u) noexcept;
double to_unit_open(std::uint64_t u) noexcept;

}  // namespace jumpconv

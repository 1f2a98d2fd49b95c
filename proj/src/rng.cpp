#include "jumpconv/rng.hpp"

#include <cmath>
#include <numbers>

namespace jumpconv {

namespace {

constexpr std::uint32_t kM0 = 0xD2511F53u;
constexpr std::uint32_t kM1 = 0xCD9E8D57u;
constexpr std::uint32_t kW0 = 0x9E3779B9u;
constexpr std::uint32_t kW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

}  // namespace

std::uint64_t mix64(std::uint64_t z) noexcept {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t index) noexcept {
    return mix64(base_seed ^ mix64(index + 0x9E3779B97F4A7C15ull));
}

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) noexcept {
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += kW0;
            key[1] += kW1;
        }
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kM0, ctr[0], hi0, lo0);
        mulhilo(kM1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

double to_unit_closed_open(std::uint64_t u) noexcept {
    return static_cast<double>(u >> 11) * 0x1.0p-53;
}

double to_unit_open(std::uint64_t u) noexcept {
    return (static_cast<double>(u >> 12) + 0.5) * 0x1.0p-52;
}

CounterStream::CounterStream(std::uint64_t seed, std::uint64_t stream) noexcept
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      stream_(stream) {}

std::array<std::uint64_t, 2> CounterStream::block(std::uint64_t index) const noexcept {
    const auto out = philox4x32({static_cast<std::uint32_t>(index),
                                 static_cast<std::uint32_t>(index >> 32),
                                 static_cast<std::uint32_t>(stream_),
                                 static_cast<std::uint32_t>(stream_ >> 32)},
                                key_);
    return {(static_cast<std::uint64_t>(out[1]) << 32) | out[0],
            (static_cast<std::uint64_t>(out[3]) << 32) | out[2]};
}

double CounterStream::uniform_at(std::uint64_t index) const noexcept {
    return to_unit_closed_open(block(index)[0]);
}

std::uint64_t CounterStream::next_u64() noexcept {
    if (buffered_ == 0) {
        buf_ = block(next_block_++);
        buffered_ = 2;
    }
    return buf_[2 - buffered_--];
}

double CounterStream::uniform() noexcept { return to_unit_closed_open(next_u64()); }

double CounterStream::uniform_open() noexcept { return to_unit_open(next_u64()); }

double CounterStream::exponential() noexcept { return -std::log(uniform_open()); }

double CounterStream::normal() noexcept {
    if (has_spare_) {
        has_spare_ = false;
        return spare_normal_;
    }
    const double u1 = uniform_open();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_normal_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

void CounterStream::seek(std::uint64_t block_index) noexcept {
    next_block_ = block_index;
    buffered_ = 0;
    has_spare_ = false;
}

}  // namespace jumpconv

#pragma once

#include <array>
#include <cstdint>

namespace sburgers {

using Philox4x32Counter = std::array<std::uint32_t, 4>;
using Philox4x32Key = std::array<std::uint32_t, 2>;

/// Philox4x32 with 10 rounds.
Philox4x32Counter philox4x32(Philox4x32Counter counter, Philox4x32Key key);

/// Uniform variate in the open interval (0, 1) built from 53 random bits.
double uniform_open(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

/// Inverse of the standard normal distribution function (Wichura's AS241, PPND16).
double normal_quantile(double p);

/// Standard normal variate keyed by (seed, stream, index); the same key always
/// yields the same value, independent of evaluation order.
double standard_normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

}  // namespace sburgers

#pragma once

#include "mms/instance.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace mms {

enum class Distribution { Uniform, Correlated, Identical };

/// Random instance recipe. Values are integers:
///   Uniform     every entry drawn from [lo, hi]
///   Correlated  a base row from [lo, hi], each entry shifted by [-noise, noise], clamped at 0
///   Identical   one row from [lo, hi] shared by every agent
struct GenSpec {
    std::size_t n = 1;
    std::size_t m = 0;
    Distribution distribution = Distribution::Uniform;
    std::int64_t lo = 0;
    std::int64_t hi = 100;
    std::int64_t noise = 0;
    std::uint64_t seed = 0;
};

/// Parses "uniform:LO:HI", "correlated:LO:HI:NOISE" or "identical:LO:HI" into
/// `spec`. Error: BadSpec.
void parse_distribution(std::string_view text, GenSpec& spec);
std::string distribution_string(const GenSpec& spec);

/// Deterministic for a given spec. The stream is std::mt19937_64 seeded with
/// spec.seed; integers in [lo, hi] come from rejection sampling on the raw
/// 64-bit outputs, so the sequence does not depend on the standard library's
/// distribution classes. Error: BadSpec.
Instance gen_instance(const GenSpec& spec);

/// SplitMix64 step; derives independent per-trial seeds from one base seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

}  // namespace mms

#pragma once

#include "mms/instance.hpp"
#include "mms/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mms {

inline constexpr std::size_t kDefaultOracleCap = 24;

/// mu^k(S) for one valuation row together with a partition that attains it.
/// Item ids in `partition` index into the input sequence.
struct MmsResult {
    Rational value;
    std::vector<Bundle> partition;
};

/// (sum of values) / k. Error: ZeroBundles.
Rational average_bound(std::span<const Rational> values, std::size_t k);

/// Exact maximin share: max over k-partitions of the lightest bundle.
/// Errors: ZeroBundles, TooLarge (more than `cap` items).
MmsResult exact_mms(std::span<const Rational> values, std::size_t k,
                    std::size_t cap = kDefaultOracleCap);

/// Minimum bundle value of `partition`. Error: BadPartition unless the bundles
/// are disjoint and cover every index of `values`.
Rational partition_min(std::span<const Rational> values, const std::vector<Bundle>& partition);

/// Number of exact_mms calls made on the calling thread since start-up.
std::uint64_t oracle_call_count();

}  // namespace mms

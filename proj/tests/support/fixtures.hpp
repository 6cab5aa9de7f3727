#pragma once

#include "mms/generate.hpp"
#include "mms/instance.hpp"
#include "mms/rational.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace mms::testing {

inline std::vector<std::vector<Rational>> rows_of(std::initializer_list<std::initializer_list<long long>> rows) {
    std::vector<std::vector<Rational>> out;
    for (const auto& r : rows) {
        std::vector<Rational> row;
        for (long long v : r) row.emplace_back(v);
        out.push_back(std::move(row));
    }
    return out;
}

inline std::vector<Rational> row_of(std::initializer_list<long long> values) {
    std::vector<Rational> row;
    for (long long v : values) row.emplace_back(v);
    return row;
}

/// Uniform integer instance drawn through the library generator.
inline Instance random_instance(std::size_t n, std::size_t m, std::uint64_t seed, std::int64_t hi = 100) {
    GenSpec spec;
    spec.n = n;
    spec.m = m;
    spec.lo = 0;
    spec.hi = hi;
    spec.seed = seed;
    return gen_instance(spec);
}

/// Three identical agents whose initial bags are high, high, low with very
/// little value outside the bags. Nothing is assignable at 3/4, so the first
/// pass ends with all three agents in N21 and the bound update must run.
inline Instance n21_instance() {
    std::vector<Rational> row;
    for (long long v : {5040, 5040, 2555, 2555, 2555, 2555}) row.emplace_back(v);
    for (int i = 0; i < 7; ++i) row.emplace_back(100);
    return Instance::make({row, row, row});
}

/// Randomized instances shaped like n21_instance: large items near 0.7 of the
/// average value, medium ones near half that, plus some crumbs. A small
/// share of them reach the bound-update loop.
inline Instance structured_instance(std::mt19937_64& rng) {
    const std::size_t n = 2 + rng() % 4;
    std::size_t big = n - 1 - rng() % 2 + (n == 2 ? 1 : 0);
    if (big > n) big = n;
    const std::size_t mid = 2 * n - big + rng() % 3;
    const std::size_t small = 2 + rng() % 6;
    const bool identical = rng() % 2 == 0;
    std::vector<std::vector<Rational>> rows(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (identical && i > 0) {
            rows[i] = rows[0];
            continue;
        }
        for (std::size_t j = 0; j < big; ++j) rows[i].emplace_back(650 + static_cast<long long>(rng() % 100));
        for (std::size_t j = 0; j < mid; ++j) rows[i].emplace_back(330 + static_cast<long long>(rng() % 50));
        for (std::size_t j = 0; j < small; ++j) rows[i].emplace_back(1 + static_cast<long long>(rng() % 40));
    }
    return Instance::make(rows);
}

}  // namespace mms::testing

#pragma once

#include "mms/generate.hpp"
#include "mms/oracle.hpp"
#include "mms/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mms {

enum class Algorithm { Poly34, Exist34, Exist34Plus };

std::string_view algorithm_name(Algorithm a);
/// "poly34", "exist34" or "exist34plus". Error: BadSpec.
Algorithm parse_algorithm(std::string_view name);

/// Ratio an algorithm promises on an instance with n agents.
Rational target_alpha(Algorithm a, std::size_t n);

struct BenchConfig {
    GenSpec spec;  // spec.seed is ignored; trial t uses derive_seed(seed, t)
    std::size_t trials = 10;
    std::uint64_t seed = 0;
    std::vector<Algorithm> algorithms{Algorithm::Poly34};
    bool verify = true;
    std::size_t threads = 1;
    std::size_t oracle_cap = kDefaultOracleCap;
};

struct BenchRow {
    std::size_t trial = 0;
    Algorithm algorithm = Algorithm::Poly34;
    std::size_t n = 0;
    std::size_t m = 0;
    std::uint64_t seed = 0;
    std::string status = "ok";             // "ok" or the error name
    std::optional<Rational> min_ratio;     // empty without --verify or when every mu is 0
    std::size_t update_iterations = 0;
    std::size_t iteration_cap = 0;
    std::size_t fixed = 0;
    std::size_t tentative = 0;
    std::size_t bag_rounds = 0;
    double wall_ms = 0;
    std::optional<bool> pass;              // empty without --verify
};

/// Runs every (trial, algorithm) pair; rows come back ordered by trial, then
/// by the order of `algorithms`, whatever the thread count.
std::vector<BenchRow> run_bench(const BenchConfig& config);

std::string bench_csv_header();
std::string bench_csv_row(const BenchRow& row);

}  // namespace mms

#include "mms/bench.hpp"

#include "mms/error.hpp"
#include "mms/solver.hpp"
#include "mms/verify.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <thread>

namespace mms {

std::string_view algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::Poly34: return "poly34";
        case Algorithm::Exist34: return "exist34";
        case Algorithm::Exist34Plus: return "exist34plus";
    }
    return "?";
}

Algorithm parse_algorithm(std::string_view name) {
    for (Algorithm a : {Algorithm::Poly34, Algorithm::Exist34, Algorithm::Exist34Plus}) {
        if (algorithm_name(a) == name) return a;
    }
    throw Error(ErrorCode::BadSpec, "unknown algorithm '" + std::string(name) + "'");
}

Rational target_alpha(Algorithm a, std::size_t n) {
    if (a == Algorithm::Exist34Plus) return existence_alpha(ExistenceMode::ThreeQuarterPlus, n);
    return frac(3, 4);
}

namespace {

Allocation run_algorithm(Algorithm a, const Instance& inst, std::size_t cap) {
    switch (a) {
        case Algorithm::Poly34: return solve_poly34(inst);
        case Algorithm::Exist34: return solve_existence(inst, ExistenceMode::ThreeQuarter, cap);
        case Algorithm::Exist34Plus: return solve_existence(inst, ExistenceMode::ThreeQuarterPlus, cap);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown algorithm");
}

BenchRow run_one(const BenchConfig& config, std::size_t trial, Algorithm algorithm) {
    GenSpec spec = config.spec;
    spec.seed = derive_seed(config.seed, trial);
    BenchRow row;
    row.trial = trial;
    row.algorithm = algorithm;
    row.n = spec.n;
    row.m = spec.m;
    row.seed = spec.seed;
    const Instance inst = gen_instance(spec);

    const auto start = std::chrono::steady_clock::now();
    Allocation alloc;
    try {
        alloc = run_algorithm(algorithm, inst, config.oracle_cap);
    } catch (const Error& e) {
        row.status = std::string(error_name(e.code()));
        row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        if (config.verify) row.pass = false;
        return row;
    }
    row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    row.update_iterations = alloc.stats.update_loop_iterations;
    row.iteration_cap = alloc.stats.iteration_cap;
    row.fixed = alloc.stats.fixed_assignments;
    row.tentative = alloc.stats.tentative_assignments;
    row.bag_rounds = alloc.stats.bag_rounds;

    if (config.verify) {
        const VerifyReport report =
            check_alpha_mms(inst, alloc, target_alpha(algorithm, spec.n), config.oracle_cap);
        for (const auto& v : report.per_agent) {
            if (v.ratio && (!row.min_ratio || *v.ratio < *row.min_ratio)) row.min_ratio = v.ratio;
        }
        row.pass = report.overall;
    }
    return row;
}

}  // namespace

std::vector<BenchRow> run_bench(const BenchConfig& config) {
    const std::size_t per_trial = config.algorithms.size();
    const std::size_t jobs = config.trials * per_trial;
    std::vector<BenchRow> rows(jobs);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};

    auto worker = [&] {
        for (std::size_t job = next++; job < jobs && !failed; job = next++) {
            try {
                rows[job] = run_one(config, job / per_trial, config.algorithms[job % per_trial]);
            } catch (...) {
                if (!failed.exchange(true)) failure = std::current_exception();
            }
        }
    };

    const std::size_t threads = std::max<std::size_t>(1, std::min(config.threads, jobs));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    return rows;
}

std::string bench_csv_header() {
    return "trial,algorithm,n,m,seed,status,min_ratio,min_ratio_approx,update_iterations,"
           "iteration_cap,fixed,tentative,bag_rounds,wall_ms,pass";
}

std::string bench_csv_row(const BenchRow& row) {
    char approx[32] = "";
    if (row.min_ratio) std::snprintf(approx, sizeof approx, "%.6f", row.min_ratio->to_double());
    char wall[32];
    std::snprintf(wall, sizeof wall, "%.3f", row.wall_ms);

    std::string out;
    out += std::to_string(row.trial) + ',';
    out += std::string(algorithm_name(row.algorithm)) + ',';
    out += std::to_string(row.n) + ',' + std::to_string(row.m) + ',' + std::to_string(row.seed) + ',';
    out += row.status + ',';
    out += (row.min_ratio ? row.min_ratio->to_string() : std::string()) + ',';
    out += std::string(approx) + ',';
    out += std::to_string(row.update_iterations) + ',' + std::to_string(row.iteration_cap) + ',';
    out += std::to_string(row.fixed) + ',' + std::to_string(row.tentative) + ',';
    out += std::to_string(row.bag_rounds) + ',';
    out += std::string(wall) + ',';
    out += row.pass ? (*row.pass ? "1" : "0") : "";
    return out;
}

}  // namespace mms

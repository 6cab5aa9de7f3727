#include "mms/cli.hpp"

#include "mms/bench.hpp"
#include "mms/error.hpp"
#include "mms/generate.hpp"
#include "mms/io.hpp"
#include "mms/oracle.hpp"
#include "mms/solver.hpp"
#include "mms/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <ostream>
#include <sstream>

namespace mms {

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kInputError = 2;
constexpr int kInternalError = 3;

void emit(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
    } else {
        write_text_file(path, text);
    }
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ',');) {
        if (!part.empty()) parts.push_back(part);
    }
    return parts;
}

std::string min_ratio_text(const VerifyReport& report) {
    std::optional<Rational> lowest;
    for (const auto& v : report.per_agent) {
        if (v.ratio && (!lowest || *v.ratio < *lowest)) lowest = v.ratio;
    }
    return lowest ? lowest->to_string() : "none";
}

struct SolveArgs {
    std::string algorithm = "poly34";
    std::string input;
    std::string output;
    bool verify = false;
    std::size_t oracle_cap = kDefaultOracleCap;
};

int do_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
    const Algorithm algorithm = parse_algorithm(a.algorithm);
    const Instance inst = instance_from_json(read_json_file(a.input));
    Allocation alloc;
    switch (algorithm) {
        case Algorithm::Poly34: alloc = solve_poly34(inst); break;
        case Algorithm::Exist34:
            alloc = solve_existence(inst, ExistenceMode::ThreeQuarter, a.oracle_cap);
            break;
        case Algorithm::Exist34Plus:
            alloc = solve_existence(inst, ExistenceMode::ThreeQuarterPlus, a.oracle_cap);
            break;
    }
    emit(a.output, allocation_to_json(alloc).dump(2) + "\n", out);
    if (!a.verify) return kOk;

    const VerifyReport report =
        check_alpha_mms(inst, alloc, target_alpha(algorithm, inst.agents()), a.oracle_cap);
    err << "verify: " << (report.overall ? "pass" : "FAIL") << " alpha=" << report.alpha.to_string()
        << " min_ratio=" << min_ratio_text(report) << "\n";
    return report.overall ? kOk : kVerifyFailed;
}

struct MmsArgs {
    std::string values;
    std::size_t k = 1;
    std::size_t oracle_cap = kDefaultOracleCap;
    bool json = false;
};

int do_mms(const MmsArgs& a, std::ostream& out) {
    std::vector<Rational> values;
    for (const auto& token : split_list(a.values)) values.push_back(Rational::parse(token));
    for (const auto& v : values) {
        if (v.sign() < 0) throw Error(ErrorCode::NegativeValue, "values must be non-negative");
    }
    const MmsResult r = exact_mms(values, a.k, a.oracle_cap);
    if (a.json) {
        out << json{{"mms", rational_to_json(r.value)}, {"partition", r.partition}}.dump() << "\n";
        return kOk;
    }
    out << r.value.to_string() << "\n";
    std::string line;
    for (const auto& bundle : r.partition) {
        std::vector<ItemId> sorted = bundle;
        std::stable_sort(sorted.begin(), sorted.end(),
                         [&](ItemId x, ItemId y) { return values[y] < values[x]; });
        if (!line.empty()) line += ",";
        line += "{";
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            if (i) line += ",";
            line += values[sorted[i]].to_string();
        }
        line += "}";
    }
    out << line << "\n";
    return kOk;
}

struct VerifyArgs {
    std::string input;
    std::string allocation;
    std::string alpha = "3/4";
    std::string output;
    std::size_t oracle_cap = kDefaultOracleCap;
};

int do_verify(const VerifyArgs& a, std::ostream& out) {
    const Instance inst = instance_from_json(read_json_file(a.input));
    const Allocation alloc = allocation_from_json(read_json_file(a.allocation));
    const VerifyReport report = check_alpha_mms(inst, alloc, Rational::parse(a.alpha), a.oracle_cap);
    emit(a.output, report_to_json(report).dump(2) + "\n", out);
    return report.overall ? kOk : kVerifyFailed;
}

struct GenArgs {
    std::size_t n = 0;
    std::size_t m = 0;
    std::string dist = "uniform:0:100";
    std::uint64_t seed = 0;
    std::string output;
};

int do_gen(const GenArgs& a, std::ostream& out) {
    GenSpec spec{.n = a.n, .m = a.m, .seed = a.seed};
    parse_distribution(a.dist, spec);
    emit(a.output, instance_to_json(gen_instance(spec)).dump() + "\n", out);
    return kOk;
}

struct BenchArgs {
    std::size_t n = 3;
    std::size_t m = 10;
    std::string dist = "uniform:0:100";
    std::size_t trials = 10;
    std::uint64_t seed = 0;
    std::string algorithms = "poly34";
    bool verify = true;
    std::size_t threads = 1;
    std::size_t oracle_cap = kDefaultOracleCap;
    std::string output;
};

int do_bench(const BenchArgs& a, std::ostream& out) {
    BenchConfig config;
    config.spec.n = a.n;
    config.spec.m = a.m;
    parse_distribution(a.dist, config.spec);
    config.trials = a.trials;
    config.seed = a.seed;
    config.algorithms.clear();
    for (const auto& name : split_list(a.algorithms)) config.algorithms.push_back(parse_algorithm(name));
    if (config.algorithms.empty()) throw Error(ErrorCode::BadSpec, "no algorithms given");
    config.verify = a.verify;
    config.threads = a.threads;
    config.oracle_cap = a.oracle_cap;

    const auto rows = run_bench(config);
    std::string csv = bench_csv_header() + "\n";
    int code = kOk;
    for (const auto& row : rows) {
        csv += bench_csv_row(row) + "\n";
        if (row.status != "ok") {
            code = kInternalError;
        } else if (row.pass == false && code == kOk) {
            code = kVerifyFailed;
        }
    }
    emit(a.output, csv, out);
    return code;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Approximate maximin share allocation of indivisible goods"};
    app.require_subcommand(1);

    SolveArgs solve;
    auto* solve_cmd = app.add_subcommand("solve", "Compute an allocation");
    solve_cmd->add_option("--algorithm", solve.algorithm, "poly34 | exist34 | exist34plus")
        ->check(CLI::IsMember({"poly34", "exist34", "exist34plus"}));
    solve_cmd->add_option("--input", solve.input, "Instance JSON file")->required();
    solve_cmd->add_option("--output", solve.output, "Allocation JSON file (default stdout)");
    solve_cmd->add_flag("--verify", solve.verify, "Certify the guarantee with the exact oracle");
    solve_cmd->add_option("--oracle-cap", solve.oracle_cap, "Largest item count the oracle accepts");

    MmsArgs mms_args;
    auto* mms_cmd = app.add_subcommand("mms", "Exact maximin share of one valuation row");
    mms_cmd->add_option("--values", mms_args.values, "Comma-separated values")->required();
    mms_cmd->add_option("--k", mms_args.k, "Number of bundles")->required();
    mms_cmd->add_option("--oracle-cap", mms_args.oracle_cap, "Largest item count the oracle accepts");
    mms_cmd->add_flag("--json", mms_args.json, "Print JSON with item indices");

    VerifyArgs verify;
    auto* verify_cmd = app.add_subcommand("verify", "Check an allocation against alpha times MMS");
    verify_cmd->add_option("--input", verify.input, "Instance JSON file")->required();
    verify_cmd->add_option("--allocation", verify.allocation, "Allocation JSON file")->required();
    verify_cmd->add_option("--alpha", verify.alpha, "Target ratio P/Q (default 3/4)");
    verify_cmd->add_option("--output", verify.output, "Report JSON file (default stdout)");
    verify_cmd->add_option("--oracle-cap", verify.oracle_cap, "Largest item count the oracle accepts");

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a seeded random instance");
    gen_cmd->add_option("--n", gen.n, "Agents")->required();
    gen_cmd->add_option("--m", gen.m, "Items")->required();
    gen_cmd->add_option("--dist", gen.dist, "uniform:LO:HI | correlated:LO:HI:NOISE | identical:LO:HI");
    gen_cmd->add_option("--seed", gen.seed, "64-bit seed");
    gen_cmd->add_option("--output", gen.output, "Instance JSON file (default stdout)");

    BenchArgs bench;
    auto* bench_cmd = app.add_subcommand("bench", "Seeded sweep, CSV on output");
    bench_cmd->add_option("--n", bench.n, "Agents");
    bench_cmd->add_option("--m", bench.m, "Items");
    bench_cmd->add_option("--dist", bench.dist, "Distribution, as for gen");
    bench_cmd->add_option("--trials", bench.trials, "Number of instances");
    bench_cmd->add_option("--seed", bench.seed, "Base seed");
    bench_cmd->add_option("--algorithms", bench.algorithms, "Comma-separated algorithm list");
    bench_cmd->add_flag("--verify,!--no-verify", bench.verify, "Compute ratios with the oracle (default on)");
    bench_cmd->add_option("--threads", bench.threads, "Worker threads");
    bench_cmd->add_option("--oracle-cap", bench.oracle_cap, "Largest item count the oracle accepts");
    bench_cmd->add_option("--output", bench.output, "CSV file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream help_out;
        std::ostringstream help_err;
        const int code = app.exit(e, help_out, help_err);
        out << help_out.str();
        err << help_err.str();
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (*solve_cmd) return do_solve(solve, out, err);
        if (*mms_cmd) return do_mms(mms_args, out);
        if (*verify_cmd) return do_verify(verify, out);
        if (*gen_cmd) return do_gen(gen, out);
        if (*bench_cmd) return do_bench(bench, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return is_internal(e.code()) ? kInternalError : kInputError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kInternalError;
    }
    return kInputError;
}

}  // namespace mms

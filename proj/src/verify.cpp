#include "mms/verify.hpp"

#include "mms/bag_phase.hpp"
#include "mms/error.hpp"

#include <algorithm>

namespace mms {

VerifyReport check_alpha_mms(const Instance& inst, const Allocation& alloc, const Rational& alpha,
                             std::size_t oracle_cap) {
    const std::size_t n = inst.agents();
    if (alloc.bundles.size() != n || !is_partition(alloc.bundles, inst.items())) {
        throw Error(ErrorCode::NotAPartition, "allocation does not partition the items");
    }
    VerifyReport report;
    report.alpha = alpha;
    report.overall = true;
    for (AgentId a = 0; a < n; ++a) {
        AgentVerdict v;
        v.agent = a;
        v.bundle_value = inst.bundle_value(a, alloc.bundles[a]);
        v.mms = exact_mms(inst.row(a), n, oracle_cap).value;
        if (v.mms.is_zero()) {
            v.pass = true;
        } else {
            v.ratio = v.bundle_value / v.mms;
            v.pass = v.bundle_value >= alpha * v.mms;
        }
        report.overall = report.overall && v.pass;
        report.per_agent.push_back(std::move(v));
    }
    return report;
}

bool check_valid_reduction(const Instance& inst, AgentId agent, const Bundle& bundle,
                           const Rational& alpha, std::size_t oracle_cap) {
    const std::size_t n = inst.agents();
    if (n < 2) throw Error(ErrorCode::InvalidArgument, "valid reduction needs at least two agents");
    if (agent >= n) throw Error(ErrorCode::InvalidArgument, "agent out of range");

    std::vector<char> removed(inst.items(), 0);
    for (ItemId j : bundle) {
        if (j >= inst.items() || removed[j]) {
            throw Error(ErrorCode::InvalidArgument, "bundle has an unknown or repeated item");
        }
        removed[j] = 1;
    }

    const Rational mu_agent = exact_mms(inst.row(agent), n, oracle_cap).value;
    if (inst.bundle_value(agent, bundle) < alpha * mu_agent) return false;

    for (AgentId i = 0; i < n; ++i) {
        if (i == agent) continue;
        std::vector<Rational> rest;
        for (ItemId j = 0; j < inst.items(); ++j) {
            if (!removed[j]) rest.push_back(inst.value(i, j));
        }
        const Rational before = exact_mms(inst.row(i), n, oracle_cap).value;
        const Rational after = exact_mms(rest, n - 1, oracle_cap).value;
        if (after < before) return false;
    }
    return true;
}

bool check_corollary_bounds(const ReductionState& state, const Rational& gamma) {
    const std::size_t n = state.agent_count();
    const std::size_t m = state.item_count();
    const Rational top = frac(3, 4) + gamma;
    const Rational second = frac(3, 8) + gamma / Rational(2);
    const Rational rest = frac(1, 4) + gamma / Rational(3);
    for (AgentId a : state.agents()) {
        for (std::size_t pos = 0; pos < m; ++pos) {
            const Rational& v = state.value_at(a, pos);
            const Rational& bound = pos < n ? top : (pos < 2 * n ? second : rest);
            if (v >= bound) return false;
        }
        if (n < m) {
            // v_n + v_{n+1}, 1-based
            if (state.value_at(a, n - 1) + state.value_at(a, n) >= top) return false;
        }
    }
    return true;
}

N2StructureReport check_n2_structure(const ReductionState& state, AgentId agent,
                                     const Rational& gamma, bool with_oracle,
                                     std::size_t oracle_cap) {
    N2StructureReport r;
    const AgentClass cls = classify_agent(state, agent, gamma);
    if (cls.type != AgentType::N2) return r;
    r.in_n2 = true;
    r.low_and_high_bags = cls.l > 0 && cls.k > 0;

    const std::size_t n = state.agent_count();
    const std::size_t m = state.item_count();
    r.top_item_large = m > 0 && state.value_at(agent, 0) > frac(5, 8) + gamma;

    const Rational bag_cap = frac(9, 8) + frac(3, 2) * gamma;
    const auto bags = bag_items(state);
    r.bags_bounded = std::all_of(bags.begin(), bags.end(), [&](const Bundle& b) {
        return state.bundle_value(agent, b) < bag_cap;
    });
    r.fillers_small = true;
    for (std::size_t pos = 2 * n; pos < m; ++pos) {
        if (state.value_at(agent, pos) >= frac(1, 8)) r.fillers_small = false;
    }

    if (with_oracle) {
        std::vector<Rational> row;
        row.reserve(m);
        for (std::size_t pos = 0; pos < m; ++pos) row.push_back(state.value_at(agent, pos));
        const MmsResult best = exact_mms(row, n, oracle_cap);
        bool giver = false;
        bool single_large = true;
        for (const auto& bundle : best.partition) {
            Rational outside;
            std::size_t large = 0;
            for (ItemId pos : bundle) {
                if (pos >= 2 * n) outside += row[pos];
                if (row[pos] > frac(5, 8) + gamma) ++large;
            }
            if (outside > frac(1, 4) - gamma) giver = true;
            if (large > 1) single_large = false;
        }
        r.giver_bundle = giver;
        r.one_large_per_bundle = single_large;
    }
    return r;
}

Instance restrict_to_state(const Instance& values, const ReductionState& state) {
    std::vector<std::vector<Rational>> rows;
    rows.reserve(state.agent_count());
    for (AgentId a : state.agents()) {
        std::vector<Rational> row;
        row.reserve(state.item_count());
        for (ItemId j : state.items()) row.push_back(values.value(a, j));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw Error(ErrorCode::EmptyAgents, "state has no remaining agents");
    return Instance::make(rows);
}

}  // namespace mms

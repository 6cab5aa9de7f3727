#pragma once

#include "mms/instance.hpp"
#include "mms/oracle.hpp"
#include "mms/rational.hpp"
#include "mms/reduction.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace mms {

struct AgentVerdict {
    AgentId agent = 0;
    Rational bundle_value;
    Rational mms;
    std::optional<Rational> ratio;  // nullopt when mms == 0
    bool pass = false;
};

struct VerifyReport {
    std::vector<AgentVerdict> per_agent;
    bool overall = false;
    Rational alpha;
};

/// Certifies v_i(A_i) >= alpha * mu_i for every agent, with mu_i recomputed
/// from `inst` by the exact oracle. Errors: NotAPartition, TooLarge.
VerifyReport check_alpha_mms(const Instance& inst, const Allocation& alloc, const Rational& alpha,
                             std::size_t oracle_cap = kDefaultOracleCap);

/// Both valid-reduction conditions for handing `bundle` to `agent`:
///   v_agent(bundle) >= alpha * mu^n_agent(M)
///   mu^{n-1}_i(M \ bundle) >= mu^n_i(M) for every other agent i.
/// Errors: InvalidArgument (n < 2), TooLarge.
bool check_valid_reduction(const Instance& inst, AgentId agent, const Bundle& bundle,
                           const Rational& alpha, std::size_t oracle_cap = kDefaultOracleCap);

/// For every remaining agent:
///   top-n items below 3/4 + g, items n+1..2n below 3/8 + g/2,
///   v_n + v_{n+1} below 3/4 + g, every other item below 1/4 + g/3.
bool check_corollary_bounds(const ReductionState& state, const Rational& gamma);

struct N2StructureReport {
    bool in_n2 = false;
    bool low_and_high_bags = false;   // l > 0 and k > 0
    bool top_item_large = false;      // v_1 > 5/8 + g
    bool bags_bounded = false;        // every bag below 9/8 + 3g/2
    bool fillers_small = false;       // every item outside the bags below 1/8
    /// Oracle-backed diagnostics over the oracle's witness partition only.
    std::optional<bool> giver_bundle;       // some bundle has > 1/4 outside the bag items
    std::optional<bool> one_large_per_bundle;  // no bundle holds two items above 5/8
};

/// Structural checks for an N2 agent of `state`. When `with_oracle` is set the
/// agent's current row is partitioned by the oracle (Error: TooLarge).
N2StructureReport check_n2_structure(const ReductionState& state, AgentId agent,
                                     const Rational& gamma = Rational(0), bool with_oracle = false,
                                     std::size_t oracle_cap = kDefaultOracleCap);

/// Instance induced by the remaining agents and items of `state`, valued by
/// the rows of `values` (an instance over the same ordered item ids). Agents
/// and items are re-indexed in ascending order.
Instance restrict_to_state(const Instance& values, const ReductionState& state);

}  // namespace mms

#pragma once

#include "mms/rational.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mms {

using AgentId = std::size_t;
using ItemId = std::size_t;
using Bundle = std::vector<ItemId>;

/// Agents x items matrix of non-negative exact valuations. Immutable once built.
class Instance {
public:
    /// Validates and builds. Errors: EmptyAgents, RaggedMatrix, NegativeValue.
    static Instance make(const std::vector<std::vector<Rational>>& values);

    std::size_t agents() const { return n_; }
    std::size_t items() const { return m_; }

    std::span<const Rational> row(AgentId i) const {
        return {values_.data() + i * m_, m_};
    }
    const Rational& value(AgentId i, ItemId j) const { return values_[i * m_ + j]; }

    Rational total(AgentId i) const;
    Rational bundle_value(AgentId i, std::span<const ItemId> bundle) const;

    std::vector<std::vector<Rational>> to_rows() const;

    friend bool operator==(const Instance&, const Instance&) = default;

private:
    Instance(std::size_t n, std::size_t m, std::vector<Rational> values)
        : n_(n), m_(m), values_(std::move(values)) {}

    std::size_t n_ = 0;
    std::size_t m_ = 0;
    std::vector<Rational> values_;
};

inline Instance make_instance(const std::vector<std::vector<Rational>>& values) {
    return Instance::make(values);
}

/// An ordered copy of an instance plus, per agent, which original item sits at
/// each rank. ranking[i][r] is agent i's r-th most valued item (ties by item id).
struct OrderedView {
    Instance ordered;
    std::vector<std::vector<ItemId>> ranking;
};

OrderedView order_instance(const Instance& inst);

struct SolveStats {
    std::size_t update_loop_iterations = 0;
    std::size_t iteration_cap = 0;
    std::size_t fixed_assignments = 0;
    std::size_t tentative_assignments = 0;
    std::size_t bag_rounds = 0;
    std::size_t zero_value_agents = 0;
    /// v_i(A_i) / mu_i per agent; filled only when the oracle was consulted.
    /// nullopt marks an agent with mu_i = 0.
    std::vector<std::optional<Rational>> per_agent_ratio;
    std::vector<std::string> diagnostics;

    friend bool operator==(const SolveStats&, const SolveStats&) = default;
};

struct Allocation {
    std::vector<Bundle> bundles;
    /// Items that no round needed, folded into `leftover_folded_into`'s bundle.
    Bundle leftovers;
    std::optional<AgentId> leftover_folded_into;
    SolveStats stats;

    friend bool operator==(const Allocation&, const Allocation&) = default;
};

/// True iff the bundles are pairwise disjoint and cover 0..items-1.
bool is_partition(const std::vector<Bundle>& bundles, std::size_t items);

/// Maps an allocation of the ordered instance back to original item ids.
/// Every agent's lifted bundle is worth at least its ordered bundle.
/// Error: IncompleteAllocation.
Allocation lift_allocation(const Instance& inst, const OrderedView& view,
                           const Allocation& ordered_alloc);

/// Row i multiplied by c. Error: NonPositiveScale.
Instance scale_agent(const Instance& inst, AgentId i, const Rational& c);

/// Rows rescaled so each non-zero row sums to the agent count; all-zero rows
/// are left untouched (see zero_value_agents).
Instance normalize_average(const Instance& inst);

std::vector<AgentId> zero_value_agents(const Instance& inst);

/// Row i divided by mms[i]. Error: ZeroMMS.
Instance normalize_mms(const Instance& inst, std::span<const Rational> mms);

}  // namespace mms

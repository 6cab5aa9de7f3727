#pragma once

#include "mms/instance.hpp"
#include "mms/rational.hpp"
#include "mms/reduction.hpp"

#include <array>
#include <cstddef>
#include <vector>

namespace mms {

/// Bag k (0-based) holds positions k and 2n-1-k (0-based): one item from the
/// top n and one from the next n, pairing the best with the worst.
struct BagLayout {
    std::vector<std::array<std::size_t, 2>> bags;
};

BagLayout init_bags(std::size_t n);

enum class AgentType { N1, N2 };

/// Per-agent view of the initial bags.
///   low  = 3/4 + gamma, high = 1 + 3 gamma / 2
///   l    = #bags valued below low, k = #bags valued above high
///   x    = sum over low bags of (low - value)
///   low_total = value of everything outside the 2n bag items
struct AgentClass {
    AgentType type = AgentType::N1;
    std::size_t l = 0;
    std::size_t k = 0;
    Rational x;
    Rational low_total;
    bool n21 = false;
};

/// Bag items as ordered item ids for the current state (missing positions dropped).
std::vector<Bundle> bag_items(const ReductionState& state);

AgentClass classify_agent(const ReductionState& state, AgentId agent, const Rational& gamma);

/// Agents in N21 (gamma = 0), ascending.
std::vector<AgentId> detect_n21(const ReductionState& state);

struct BagRound {
    Bundle bundle;       // ordered item ids
    AgentId receiver = 0;
    std::size_t fillers = 0;
};

struct BagFillResult {
    /// Full allocation of the ordered instance: log assignments plus bag rounds,
    /// leftovers folded into the last assigned bundle.
    Allocation allocation;
    std::vector<BagRound> rounds;
};

/// Runs one round per remaining agent. Each round starts from the next bag and
/// adds the highest-valued unused filler item until some remaining agent values
/// it at least alpha; the lowest-index such agent takes it.
/// Error: Exhausted if filler items run out first.
BagFillResult bag_fill(const ReductionState& state, const Rational& alpha);

}  // namespace mms

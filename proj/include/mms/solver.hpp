#pragma once

#include "mms/bag_phase.hpp"
#include "mms/instance.hpp"
#include "mms/oracle.hpp"
#include "mms/rational.hpp"
#include "mms/reduction.hpp"

#include <array>
#include <cstddef>
#include <functional>
#include <optional>

namespace mms {

enum class ExistenceMode { ThreeQuarter, ThreeQuarterPlus };

/// 1 / (12 n0), fixed for a whole run.
Rational gamma_constant(std::size_t n0);

/// Tripwire on the bound-update loop: 4 n^3 + 16.
std::size_t iteration_cap(std::size_t n);

/// The five candidate bounds for one N21 agent; `alpha` is their maximum.
struct UpperBoundUpdate {
    Rational alpha;
    std::array<std::optional<Rational>, 5> terms;
    std::size_t argmax = 0;  // 0-based index into terms
    bool alpha5_skipped = false;
};

/// New MMS upper bound for `agent`, read from the post-undo state `undone`.
/// `tentative` is the state just before the undo: it decides N21 membership
/// and which items were tentatively assigned. Error: NotInN21.
UpperBoundUpdate update_upper_bound(const ReductionState& undone, const ReductionState& tentative,
                                    AgentId agent);

/// Hooks for audits; all optional.
struct SolveObserver {
    std::function<void(const ReductionState&)> after_fixed;
    std::function<void(const ReductionState&)> after_tentative;
    std::function<void(AgentId, const UpperBoundUpdate&)> on_update;
};

struct SolveTrace {
    Allocation allocation;          // in original item ids
    OrderedView view;
    ReductionState initial;         // normalized start state
    ReductionState reduced;         // state handed to bag filling
    std::vector<BagRound> rounds;   // ordered item ids
};

/// Strongly polynomial 3/4-MMS allocation. Never consults the MMS oracle.
/// Errors: IterationCapExceeded, Exhausted.
Allocation solve_poly34(const Instance& inst);
SolveTrace solve_poly34_traced(const Instance& inst, const SolveObserver& observer = {});

/// Oracle-normalized greedy reduction plus bag filling at alpha = 3/4 or
/// 3/4 + 1/(12n). Error: TooLarge when the oracle cannot run.
Allocation solve_existence(const Instance& inst, ExistenceMode mode,
                           std::size_t oracle_cap = kDefaultOracleCap);
SolveTrace solve_existence_traced(const Instance& inst, ExistenceMode mode,
                                  std::size_t oracle_cap = kDefaultOracleCap,
                                  const SolveObserver& observer = {});

/// Guarantee factor the existence solver targets for an instance with n agents.
Rational existence_alpha(ExistenceMode mode, std::size_t n);

}  // namespace mms

#pragma once

#include "mms/instance.hpp"
#include "mms/rational.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace mms {

enum class RecordKind { Fixed, Tentative, Rescale };

/// S1..S4 are the positional candidate bundles; Empty marks an agent removed
/// with nothing because its remaining items are worth zero to it; None is used
/// by Rescale records.
enum class BundleShape { S1, S2, S3, S4, Empty, None };

std::string_view to_string(RecordKind kind);
std::string_view to_string(BundleShape shape);

/// One log entry. Item ids refer to the ordered instance. For Rescale records
/// the bundle is empty and `factor` is the multiplier applied to the agent's row.
struct AssignmentRecord {
    AgentId agent = 0;
    Bundle bundle;
    RecordKind kind = RecordKind::Fixed;
    BundleShape shape = BundleShape::None;
    Rational factor{1};

    friend bool operator==(const AssignmentRecord&, const AssignmentRecord&) = default;
};

enum class Renormalization {
    /// After every removal each remaining row is rescaled to sum to |N|.
    Average,
    /// Values are left as they are (oracle-normalized existence path).
    None,
};

/// Live solver state over an ordered instance: remaining agents (ascending
/// original id), remaining items (ascending ordered id, i.e. descending value
/// for every agent), current valuations and the assignment log.
class ReductionState {
public:
    /// Agents whose row is all zero are removed immediately with an Empty
    /// record. Under Renormalization::Average the others are then scaled so
    /// that every row sums to |N|.
    static ReductionState start(const Instance& ordered, Renormalization mode);

    std::size_t agent_count() const { return agents_.size(); }
    std::size_t item_count() const { return items_.size(); }
    std::size_t total_agents() const { return values_.size(); }
    std::size_t total_items() const { return total_items_; }
    Renormalization mode() const { return mode_; }

    const std::vector<AgentId>& agents() const { return agents_; }
    const std::vector<ItemId>& items() const { return items_; }
    const std::vector<AssignmentRecord>& log() const { return log_; }

    bool has_agent(AgentId a) const;
    bool has_item(ItemId j) const;

    /// Current value of ordered item j for agent a.
    const Rational& value(AgentId a, ItemId j) const { return values_[a][j]; }
    /// Current value of the item at 0-based position pos among remaining items.
    const Rational& value_at(AgentId a, std::size_t pos) const { return values_[a][items_[pos]]; }
    Rational bundle_value(AgentId a, std::span<const ItemId> bundle) const;
    Rational total(AgentId a) const;

    /// Full valuation row of agent a (indexed by ordered item id; entries of
    /// removed items are stale).
    std::span<const Rational> row(AgentId a) const { return values_[a]; }

    /// True while a tentative phase snapshot is held.
    bool tentative_open() const { return snapshot_.has_value(); }
    /// Log length at the start of the open tentative phase.
    std::size_t tentative_start() const;

    // Low-level mutators; the free functions below are the intended interface.
    void remove(AgentId agent, const Bundle& bundle, RecordKind kind, BundleShape shape);
    void rescale(AgentId agent, const Rational& factor);
    void open_tentative();
    void restore_tentative();
    void commit_tentative();

    friend bool operator==(const ReductionState& a, const ReductionState& b) {
        return a.agents_ == b.agents_ && a.items_ == b.items_ && a.log_ == b.log_ &&
               a.mode_ == b.mode_ && a.same_values(b);
    }

private:
    struct Snapshot {
        std::vector<AgentId> agents;
        std::vector<ItemId> items;
        std::vector<std::vector<Rational>> values;
        std::size_t log_size = 0;
    };

    void renormalize();
    void sweep_zero_agents(RecordKind kind);
    bool same_values(const ReductionState& other) const;

    Renormalization mode_ = Renormalization::Average;
    std::size_t total_items_ = 0;
    std::vector<AgentId> agents_;
    std::vector<ItemId> items_;
    std::vector<std::vector<Rational>> values_;
    std::vector<AssignmentRecord> log_;
    std::optional<Snapshot> snapshot_;
};

/// S1 = {1}, S2 = {n, n+1}, S3 = {2n-1, 2n, 2n+1}, S4 = {1, 2n+1} over the
/// current positions (1-based here, n = |N|), as ordered item ids. Positions
/// past the last remaining item are dropped.
std::array<Bundle, 4> candidate_bundles(const ReductionState& state);

/// Remaining agents valuing `bundle` at least `alpha`, ascending.
std::vector<AgentId> gamma(const ReductionState& state, std::span<const ItemId> bundle,
                           const Rational& alpha);

/// Removes `agent` and `bundle`, renormalizes per the state's mode and logs
/// the assignment. Error: BelowThreshold if the agent values the bundle below alpha.
ReductionState apply_reduction(ReductionState state, AgentId agent, const Bundle& bundle,
                               RecordKind kind, BundleShape shape, const Rational& alpha);

/// Greedy loop over S1..S4 at threshold alpha (existence path).
ReductionState initial_assignment(ReductionState state, const Rational& alpha);

/// Greedy loop over S1..S3 at 3/4; every assignment is final.
ReductionState fixed_assignment(ReductionState state);

/// Snapshots the state, then loops over S1..S4 at 3/4 with Tentative records.
ReductionState tentative_assignment(ReductionState state);

/// Restores the snapshot taken by tentative_assignment. No-op without one.
ReductionState undo_tentative(ReductionState state);

/// Re-applies the records of `log` that come after `initial`'s own log.
/// Empty records are skipped (apply_reduction regenerates them).
ReductionState replay(const ReductionState& initial, std::span<const AssignmentRecord> log);

}  // namespace mms

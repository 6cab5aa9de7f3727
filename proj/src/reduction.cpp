#include "mms/reduction.hpp"

#include "mms/error.hpp"

#include <algorithm>

namespace mms {

namespace {

const Rational kThreeQuarters = frac(3, 4);

// Greedy loop shared by every assignment phase: lowest-index shape with a
// non-empty Gamma, handed to the lowest-index agent in it.
ReductionState greedy_loop(ReductionState state, std::size_t shapes, const Rational& alpha,
                           RecordKind kind) {
    static constexpr std::array<BundleShape, 4> kShapes = {BundleShape::S1, BundleShape::S2,
                                                           BundleShape::S3, BundleShape::S4};
    for (;;) {
        if (state.agent_count() == 0) break;
        const auto bundles = candidate_bundles(state);
        bool assigned = false;
        for (std::size_t s = 0; s < shapes && !assigned; ++s) {
            if (bundles[s].empty()) continue;
            const auto qualifying = gamma(state, bundles[s], alpha);
            if (qualifying.empty()) continue;
            state = apply_reduction(std::move(state), qualifying.front(), bundles[s], kind,
                                    kShapes[s], alpha);
            assigned = true;
        }
        if (!assigned) break;
    }
    return state;
}

}  // namespace

std::string_view to_string(RecordKind kind) {
    switch (kind) {
        case RecordKind::Fixed: return "fixed";
        case RecordKind::Tentative: return "tentative";
        case RecordKind::Rescale: return "rescale";
    }
    return "?";
}

std::string_view to_string(BundleShape shape) {
    switch (shape) {
        case BundleShape::S1: return "S1";
        case BundleShape::S2: return "S2";
        case BundleShape::S3: return "S3";
        case BundleShape::S4: return "S4";
        case BundleShape::Empty: return "empty";
        case BundleShape::None: return "none";
    }
    return "?";
}

ReductionState ReductionState::start(const Instance& ordered, Renormalization mode) {
    ReductionState s;
    s.mode_ = mode;
    s.total_items_ = ordered.items();
    s.values_.resize(ordered.agents());
    for (AgentId a = 0; a < ordered.agents(); ++a) {
        const auto row = ordered.row(a);
        s.values_[a].assign(row.begin(), row.end());
        s.agents_.push_back(a);
    }
    s.items_.resize(ordered.items());
    for (ItemId j = 0; j < ordered.items(); ++j) s.items_[j] = j;
    s.sweep_zero_agents(RecordKind::Fixed);
    if (mode == Renormalization::Average) s.renormalize();
    return s;
}

bool ReductionState::has_agent(AgentId a) const {
    return std::binary_search(agents_.begin(), agents_.end(), a);
}

bool ReductionState::has_item(ItemId j) const {
    return std::binary_search(items_.begin(), items_.end(), j);
}

Rational ReductionState::bundle_value(AgentId a, std::span<const ItemId> bundle) const {
    Rational sum;
    for (ItemId j : bundle) sum += values_[a][j];
    return sum;
}

Rational ReductionState::total(AgentId a) const { return bundle_value(a, items_); }

std::size_t ReductionState::tentative_start() const {
    return snapshot_ ? snapshot_->log_size : log_.size();
}

void ReductionState::remove(AgentId agent, const Bundle& bundle, RecordKind kind,
                            BundleShape shape) {
    if (!has_agent(agent)) {
        throw Error(ErrorCode::InvalidArgument, "agent " + std::to_string(agent) + " not remaining");
    }
    for (ItemId j : bundle) {
        if (!has_item(j)) {
            throw Error(ErrorCode::InvalidArgument, "item " + std::to_string(j) + " not remaining");
        }
    }
    agents_.erase(std::lower_bound(agents_.begin(), agents_.end(), agent));
    std::erase_if(items_, [&](ItemId j) {
        return std::find(bundle.begin(), bundle.end(), j) != bundle.end();
    });
    Bundle sorted = bundle;
    std::sort(sorted.begin(), sorted.end());
    log_.push_back({agent, std::move(sorted), kind, shape, Rational(1)});
    sweep_zero_agents(kind);
    if (mode_ == Renormalization::Average) renormalize();
}

void ReductionState::rescale(AgentId agent, const Rational& factor) {
    if (!has_agent(agent)) {
        throw Error(ErrorCode::InvalidArgument, "agent " + std::to_string(agent) + " not remaining");
    }
    if (factor.sign() <= 0) throw Error(ErrorCode::NonPositiveScale, factor.to_string());
    for (ItemId j : items_) values_[agent][j] *= factor;
    log_.push_back({agent, {}, RecordKind::Rescale, BundleShape::None, factor});
}

void ReductionState::open_tentative() {
    snapshot_ = Snapshot{agents_, items_, values_, log_.size()};
}

void ReductionState::restore_tentative() {
    if (!snapshot_) return;
    agents_ = std::move(snapshot_->agents);
    items_ = std::move(snapshot_->items);
    values_ = std::move(snapshot_->values);
    log_.resize(snapshot_->log_size);
    snapshot_.reset();
}

void ReductionState::commit_tentative() { snapshot_.reset(); }

void ReductionState::renormalize() {
    const Rational n(static_cast<long long>(agents_.size()));
    for (AgentId a : agents_) {
        const Rational sum = total(a);
        if (sum == n || sum.is_zero()) continue;
        const Rational factor = n / sum;
        for (ItemId j : items_) values_[a][j] *= factor;
    }
}

void ReductionState::sweep_zero_agents(RecordKind kind) {
    std::vector<AgentId> zero;
    for (AgentId a : agents_) {
        if (total(a).is_zero()) zero.push_back(a);
    }
    for (AgentId a : zero) {
        agents_.erase(std::lower_bound(agents_.begin(), agents_.end(), a));
        log_.push_back({a, {}, kind, BundleShape::Empty, Rational(1)});
    }
}

bool ReductionState::same_values(const ReductionState& other) const {
    if (values_.size() != other.values_.size()) return false;
    for (AgentId a : agents_) {
        for (ItemId j : items_) {
            if (values_[a][j] != other.values_[a][j]) return false;
        }
    }
    return true;
}

std::array<Bundle, 4> candidate_bundles(const ReductionState& state) {
    const std::size_t n = state.agent_count();
    const std::size_t m = state.item_count();
    const auto& items = state.items();
    auto pick = [&](std::initializer_list<std::size_t> positions) {
        Bundle b;
        for (std::size_t p : positions) {
            // 1-based positions
            if (p >= 1 && p <= m) b.push_back(items[p - 1]);
        }
        std::sort(b.begin(), b.end());
        b.erase(std::unique(b.begin(), b.end()), b.end());
        return b;
    };
    if (n == 0) return {};
    return {pick({1}), pick({n, n + 1}), pick({2 * n - 1, 2 * n, 2 * n + 1}), pick({1, 2 * n + 1})};
}

std::vector<AgentId> gamma(const ReductionState& state, std::span<const ItemId> bundle,
                           const Rational& alpha) {
    std::vector<AgentId> out;
    for (AgentId a : state.agents()) {
        if (state.bundle_value(a, bundle) >= alpha) out.push_back(a);
    }
    return out;
}

ReductionState apply_reduction(ReductionState state, AgentId agent, const Bundle& bundle,
                               RecordKind kind, BundleShape shape, const Rational& alpha) {
    if (!state.has_agent(agent)) {
        throw Error(ErrorCode::InvalidArgument, "agent " + std::to_string(agent) + " not remaining");
    }
    const Rational v = state.bundle_value(agent, bundle);
    if (v < alpha) {
        throw Error(ErrorCode::BelowThreshold, "agent " + std::to_string(agent) + " values bundle at " +
                                                   v.to_string() + " < " + alpha.to_string());
    }
    state.remove(agent, bundle, kind, shape);
    return state;
}

ReductionState initial_assignment(ReductionState state, const Rational& alpha) {
    return greedy_loop(std::move(state), 4, alpha, RecordKind::Fixed);
}

ReductionState fixed_assignment(ReductionState state) {
    return greedy_loop(std::move(state), 3, kThreeQuarters, RecordKind::Fixed);
}

ReductionState tentative_assignment(ReductionState state) {
    state.open_tentative();
    return greedy_loop(std::move(state), 4, kThreeQuarters, RecordKind::Tentative);
}

ReductionState undo_tentative(ReductionState state) {
    state.restore_tentative();
    return state;
}

ReductionState replay(const ReductionState& initial, std::span<const AssignmentRecord> log) {
    ReductionState state = initial;
    for (std::size_t r = initial.log().size(); r < log.size(); ++r) {
        const auto& rec = log[r];
        if (rec.kind == RecordKind::Rescale) {
            state.rescale(rec.agent, rec.factor);
        } else if (rec.shape != BundleShape::Empty) {
            state.remove(rec.agent, rec.bundle, rec.kind, rec.shape);
        }
    }
    return state;
}

}  // namespace mms

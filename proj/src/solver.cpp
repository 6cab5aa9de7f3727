#include "mms/solver.hpp"

#include "mms/error.hpp"

#include <algorithm>
#include <set>

namespace mms {

namespace {

const Rational kThreeQuarters = frac(3, 4);
const Rational kFourThirds = frac(4, 3);

void count_assignments(const ReductionState& state, SolveStats& stats) {
    for (const auto& rec : state.log()) {
        if (rec.kind == RecordKind::Rescale) continue;
        if (rec.shape == BundleShape::Empty) {
            ++stats.zero_value_agents;
        } else if (rec.kind == RecordKind::Fixed) {
            ++stats.fixed_assignments;
        } else {
            ++stats.tentative_assignments;
        }
    }
}

}  // namespace

Rational gamma_constant(std::size_t n0) {
    if (n0 == 0) throw Error(ErrorCode::InvalidArgument, "gamma needs at least one agent");
    return Rational(1) / Rational(static_cast<long long>(12 * n0));
}

std::size_t iteration_cap(std::size_t n) { return 4 * n * n * n + 16; }

Rational existence_alpha(ExistenceMode mode, std::size_t n) {
    return mode == ExistenceMode::ThreeQuarter ? kThreeQuarters : kThreeQuarters + gamma_constant(n);
}

UpperBoundUpdate update_upper_bound(const ReductionState& undone, const ReductionState& tentative,
                                    AgentId agent) {
    const auto n21 = detect_n21(tentative);
    if (!std::binary_search(n21.begin(), n21.end(), agent)) {
        throw Error(ErrorCode::NotInN21, "agent " + std::to_string(agent) + " is not in N21");
    }
    if (!undone.has_agent(agent)) {
        throw Error(ErrorCode::InvalidArgument, "agent missing from the undone state");
    }

    const std::size_t n = undone.agent_count();
    const std::size_t m = undone.item_count();
    // 1-based position lookup; positions past the end count as nothing.
    auto v = [&](std::size_t pos) {
        return pos >= 1 && pos <= m ? undone.value_at(agent, pos - 1) : Rational(0);
    };

    UpperBoundUpdate up;
    up.terms[0] = kFourThirds * v(1);
    up.terms[1] = kFourThirds * (v(n) + v(n + 1));
    up.terms[2] = kFourThirds * (v(2 * n - 1) + v(2 * n) + v(2 * n + 1));

    std::set<ItemId> tentatively_assigned;
    for (std::size_t r = undone.log().size(); r < tentative.log().size(); ++r) {
        const auto& rec = tentative.log()[r];
        if (rec.kind == RecordKind::Tentative) {
            tentatively_assigned.insert(rec.bundle.begin(), rec.bundle.end());
        }
    }
    const auto& items = undone.items();
    const std::size_t j_end = std::min(2 * n, m);
    std::optional<std::size_t> best_high;
    std::optional<std::size_t> best_low;
    for (std::size_t pos = 0; pos < m; ++pos) {
        if (tentatively_assigned.contains(items[pos])) continue;
        if (pos < j_end) {
            if (!best_high) best_high = pos;
        } else if (!best_low) {
            best_low = pos;
        }
    }
    if (best_high) {
        Rational pair = undone.value_at(agent, *best_high);
        if (best_low) pair += undone.value_at(agent, *best_low);
        up.terms[3] = kFourThirds * pair;
    }

    const AgentClass cls = classify_agent(undone, agent, Rational(0));
    if (cls.l == 0) {
        up.alpha5_skipped = true;
    } else {
        const Rational l(static_cast<long long>(cls.l));
        up.terms[4] = (cls.low_total + kThreeQuarters * l - cls.x) / (frac(7, 8) * l);
    }

    bool first = true;
    for (std::size_t t = 0; t < up.terms.size(); ++t) {
        if (!up.terms[t]) continue;
        if (first || *up.terms[t] > up.alpha) {
            up.alpha = *up.terms[t];
            up.argmax = t;
            first = false;
        }
    }
    return up;
}

SolveTrace solve_poly34_traced(const Instance& inst, const SolveObserver& observer) {
    OrderedView view = order_instance(inst);
    ReductionState state = ReductionState::start(view.ordered, Renormalization::Average);
    const ReductionState initial = state;

    SolveStats stats;
    stats.iteration_cap = iteration_cap(inst.agents());

    auto run_phases = [&](ReductionState s) {
        s = fixed_assignment(std::move(s));
        if (observer.after_fixed) observer.after_fixed(s);
        s = tentative_assignment(std::move(s));
        if (observer.after_tentative) observer.after_tentative(s);
        return s;
    };

    state = run_phases(std::move(state));
    for (auto n21 = detect_n21(state); !n21.empty(); n21 = detect_n21(state)) {
        if (stats.update_loop_iterations == stats.iteration_cap) {
            throw Error(ErrorCode::IterationCapExceeded,
                        "bound-update loop exceeded " + std::to_string(stats.iteration_cap) +
                            " iterations");
        }
        ++stats.update_loop_iterations;
        const AgentId agent = n21.front();
        const ReductionState before_undo = state;
        state = undo_tentative(std::move(state));
        const UpperBoundUpdate up = update_upper_bound(state, before_undo, agent);
        if (up.alpha5_skipped) {
            stats.diagnostics.push_back("agent " + std::to_string(agent) +
                                        " classified N21 with no low bag after undo; alpha5 skipped");
        }
        if (up.alpha.sign() <= 0 || up.alpha >= Rational(1)) {
            throw Error(ErrorCode::InvariantViolation,
                        "upper bound update for agent " + std::to_string(agent) + " gave " +
                            up.alpha.to_string() + ", expected a value in (0, 1)");
        }
        if (observer.on_update) observer.on_update(agent, up);
        state.rescale(agent, Rational(1) / up.alpha);
        state = run_phases(std::move(state));
    }
    state.commit_tentative();

    BagFillResult filled = bag_fill(state, kThreeQuarters);
    count_assignments(state, stats);
    stats.bag_rounds = filled.rounds.size();
    filled.allocation.stats = stats;

    Allocation lifted = lift_allocation(inst, view, filled.allocation);
    return SolveTrace{std::move(lifted), std::move(view), initial, std::move(state),
                      std::move(filled.rounds)};
}

Allocation solve_poly34(const Instance& inst) { return solve_poly34_traced(inst).allocation; }

SolveTrace solve_existence_traced(const Instance& inst, ExistenceMode mode, std::size_t oracle_cap,
                                  const SolveObserver& observer) {
    const std::size_t n0 = inst.agents();
    const Rational alpha = existence_alpha(mode, n0);
    OrderedView view = order_instance(inst);

    std::vector<Rational> mus;
    mus.reserve(n0);
    for (AgentId a = 0; a < n0; ++a) mus.push_back(exact_mms(view.ordered.row(a), n0, oracle_cap).value);

    // Rows scaled to mu = 1. Agents with mu = 0 get an all-zero row so the
    // start state removes them up front with an empty bundle.
    auto rows = view.ordered.to_rows();
    for (AgentId a = 0; a < n0; ++a) {
        for (auto& v : rows[a]) v = mus[a].is_zero() ? Rational(0) : v / mus[a];
    }
    ReductionState state = ReductionState::start(Instance::make(rows), Renormalization::None);
    const ReductionState initial = state;

    state = initial_assignment(std::move(state), alpha);
    if (observer.after_fixed) observer.after_fixed(state);

    BagFillResult filled = bag_fill(state, alpha);
    SolveStats stats;
    stats.iteration_cap = iteration_cap(n0);
    count_assignments(state, stats);
    stats.bag_rounds = filled.rounds.size();
    filled.allocation.stats = stats;

    Allocation lifted = lift_allocation(inst, view, filled.allocation);
    lifted.stats.per_agent_ratio.resize(n0);
    for (AgentId a = 0; a < n0; ++a) {
        if (mus[a].is_zero()) continue;
        lifted.stats.per_agent_ratio[a] = inst.bundle_value(a, lifted.bundles[a]) / mus[a];
    }
    return SolveTrace{std::move(lifted), std::move(view), initial, std::move(state),
                      std::move(filled.rounds)};
}

Allocation solve_existence(const Instance& inst, ExistenceMode mode, std::size_t oracle_cap) {
    return solve_existence_traced(inst, mode, oracle_cap).allocation;
}

}  // namespace mms

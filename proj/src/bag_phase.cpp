#include "mms/bag_phase.hpp"

#include "mms/error.hpp"

#include <algorithm>

namespace mms {

BagLayout init_bags(std::size_t n) {
    BagLayout layout;
    layout.bags.reserve(n);
    for (std::size_t k = 0; k < n; ++k) layout.bags.push_back({k, 2 * n - 1 - k});
    return layout;
}

std::vector<Bundle> bag_items(const ReductionState& state) {
    const auto layout = init_bags(state.agent_count());
    const auto& items = state.items();
    std::vector<Bundle> out;
    out.reserve(layout.bags.size());
    for (const auto& bag : layout.bags) {
        Bundle b;
        for (std::size_t pos : bag) {
            if (pos < items.size()) b.push_back(items[pos]);
        }
        out.push_back(std::move(b));
    }
    return out;
}

AgentClass classify_agent(const ReductionState& state, AgentId agent, const Rational& gamma) {
    const Rational low = frac(3, 4) + gamma;
    const Rational high = Rational(1) + frac(3, 2) * gamma;

    AgentClass c;
    for (const auto& bag : bag_items(state)) {
        const Rational v = state.bundle_value(agent, bag);
        if (v < low) {
            ++c.l;
            c.x += low - v;
        }
        if (v > high) ++c.k;
    }
    const auto& items = state.items();
    for (std::size_t pos = 2 * state.agent_count(); pos < items.size(); ++pos) {
        c.low_total += state.value(agent, items[pos]);
    }
    c.type = c.k > 0 ? AgentType::N2 : AgentType::N1;
    c.n21 = c.type == AgentType::N2 && c.k > c.l &&
            c.low_total < c.x + Rational(static_cast<long long>(c.l)) / Rational(8);
    return c;
}

std::vector<AgentId> detect_n21(const ReductionState& state) {
    std::vector<AgentId> out;
    for (AgentId a : state.agents()) {
        if (classify_agent(state, a, Rational(0)).n21) out.push_back(a);
    }
    return out;
}

BagFillResult bag_fill(const ReductionState& state, const Rational& alpha) {
    const std::size_t n = state.agent_count();
    const auto& items = state.items();

    BagFillResult result;
    auto& alloc = result.allocation;
    alloc.bundles.resize(state.total_agents());
    std::optional<AgentId> last;
    for (const auto& rec : state.log()) {
        if (rec.kind == RecordKind::Rescale) continue;
        alloc.bundles[rec.agent] = rec.bundle;
        last = rec.agent;
    }

    std::vector<AgentId> waiting = state.agents();
    std::size_t next_filler = std::min(2 * n, items.size());
    for (const auto& bag : bag_items(state)) {
        BagRound round;
        round.bundle = bag;
        for (;;) {
            const auto it = std::find_if(waiting.begin(), waiting.end(), [&](AgentId a) {
                return state.bundle_value(a, round.bundle) >= alpha;
            });
            if (it != waiting.end()) {
                round.receiver = *it;
                waiting.erase(it);
                break;
            }
            if (next_filler >= items.size()) {
                throw Error(ErrorCode::Exhausted,
                            "filler items ran out in bag round " + std::to_string(result.rounds.size()) +
                                " with " + std::to_string(waiting.size()) + " agents waiting");
            }
            round.bundle.push_back(items[next_filler++]);
            ++round.fillers;
        }
        alloc.bundles[round.receiver] = round.bundle;
        last = round.receiver;
        result.rounds.push_back(std::move(round));
    }

    for (std::size_t pos = next_filler; pos < items.size(); ++pos) alloc.leftovers.push_back(items[pos]);
    if (!alloc.leftovers.empty()) {
        if (!last) throw Error(ErrorCode::InvariantViolation, "leftover items but no agent");
        auto& sink = alloc.bundles[*last];
        sink.insert(sink.end(), alloc.leftovers.begin(), alloc.leftovers.end());
        alloc.leftover_folded_into = last;
    }
    for (auto& b : alloc.bundles) std::sort(b.begin(), b.end());
    std::sort(alloc.leftovers.begin(), alloc.leftovers.end());
    alloc.stats.bag_rounds = result.rounds.size();
    return result;
}

}  // namespace mms

#include "mms/instance.hpp"

#include "mms/error.hpp"

#include <algorithm>
#include <numeric>

namespace mms {

Instance Instance::make(const std::vector<std::vector<Rational>>& values) {
    if (values.empty()) throw Error(ErrorCode::EmptyAgents, "instance needs at least one agent");
    const std::size_t n = values.size();
    const std::size_t m = values.front().size();
    std::vector<Rational> flat;
    flat.reserve(n * m);
    for (std::size_t i = 0; i < n; ++i) {
        if (values[i].size() != m) {
            throw Error(ErrorCode::RaggedMatrix, "row " + std::to_string(i) + " has " +
                                                     std::to_string(values[i].size()) +
                                                     " entries, expected " + std::to_string(m));
        }
        for (std::size_t j = 0; j < m; ++j) {
            if (values[i][j].sign() < 0) {
                throw Error(ErrorCode::NegativeValue, "v[" + std::to_string(i) + "][" +
                                                          std::to_string(j) + "] = " +
                                                          values[i][j].to_string());
            }
            flat.push_back(values[i][j]);
        }
    }
    return Instance(n, m, std::move(flat));
}

Rational Instance::total(AgentId i) const {
    Rational sum;
    for (const auto& v : row(i)) sum += v;
    return sum;
}

Rational Instance::bundle_value(AgentId i, std::span<const ItemId> bundle) const {
    Rational sum;
    for (ItemId j : bundle) sum += value(i, j);
    return sum;
}

std::vector<std::vector<Rational>> Instance::to_rows() const {
    std::vector<std::vector<Rational>> rows(n_);
    for (std::size_t i = 0; i < n_; ++i) rows[i].assign(row(i).begin(), row(i).end());
    return rows;
}

OrderedView order_instance(const Instance& inst) {
    const std::size_t n = inst.agents();
    const std::size_t m = inst.items();
    OrderedView view{inst, std::vector<std::vector<ItemId>>(n)};
    std::vector<std::vector<Rational>> rows(n);
    for (AgentId i = 0; i < n; ++i) {
        auto& rank = view.ranking[i];
        rank.resize(m);
        std::iota(rank.begin(), rank.end(), ItemId{0});
        const auto row = inst.row(i);
        std::stable_sort(rank.begin(), rank.end(),
                         [&](ItemId a, ItemId b) { return row[a] > row[b]; });
        rows[i].reserve(m);
        for (ItemId j : rank) rows[i].push_back(row[j]);
    }
    view.ordered = Instance::make(rows);
    return view;
}

bool is_partition(const std::vector<Bundle>& bundles, std::size_t items) {
    std::vector<char> seen(items, 0);
    std::size_t count = 0;
    for (const auto& b : bundles) {
        for (ItemId j : b) {
            if (j >= items || seen[j]) return false;
            seen[j] = 1;
            ++count;
        }
    }
    return count == items;
}

Allocation lift_allocation(const Instance& inst, const OrderedView& view,
                           const Allocation& ordered_alloc) {
    const std::size_t n = inst.agents();
    const std::size_t m = inst.items();
    if (ordered_alloc.bundles.size() != n || !is_partition(ordered_alloc.bundles, m)) {
        throw Error(ErrorCode::IncompleteAllocation,
                    "ordered allocation does not partition the items among the agents");
    }

    std::vector<AgentId> owner(m);
    for (AgentId i = 0; i < n; ++i) {
        for (ItemId r : ordered_alloc.bundles[i]) owner[r] = i;
    }

    // Each agent walks down its own ranking; the cursor never moves back, so
    // the whole pass is O(mn).
    std::vector<char> taken(m, 0);
    std::vector<std::size_t> cursor(n, 0);
    std::vector<ItemId> picked_at_rank(m);
    Allocation out;
    out.bundles.resize(n);
    for (ItemId r = 0; r < m; ++r) {
        const AgentId a = owner[r];
        const auto& rank = view.ranking[a];
        while (taken[rank[cursor[a]]]) ++cursor[a];
        const ItemId pick = rank[cursor[a]];
        taken[pick] = 1;
        picked_at_rank[r] = pick;
        out.bundles[a].push_back(pick);
    }
    for (auto& b : out.bundles) std::sort(b.begin(), b.end());
    for (ItemId r : ordered_alloc.leftovers) out.leftovers.push_back(picked_at_rank[r]);
    std::sort(out.leftovers.begin(), out.leftovers.end());
    out.leftover_folded_into = ordered_alloc.leftover_folded_into;
    out.stats = ordered_alloc.stats;
    return out;
}

Instance scale_agent(const Instance& inst, AgentId i, const Rational& c) {
    if (c.sign() <= 0) throw Error(ErrorCode::NonPositiveScale, "scale " + c.to_string());
    if (i >= inst.agents()) throw Error(ErrorCode::InvalidArgument, "agent out of range");
    auto rows = inst.to_rows();
    for (auto& v : rows[i]) v *= c;
    return Instance::make(rows);
}

Instance normalize_average(const Instance& inst) {
    auto rows = inst.to_rows();
    const Rational n(static_cast<long long>(inst.agents()));
    for (AgentId i = 0; i < inst.agents(); ++i) {
        const Rational total = inst.total(i);
        if (total.is_zero()) continue;
        const Rational factor = n / total;
        for (auto& v : rows[i]) v *= factor;
    }
    return Instance::make(rows);
}

std::vector<AgentId> zero_value_agents(const Instance& inst) {
    std::vector<AgentId> out;
    for (AgentId i = 0; i < inst.agents(); ++i) {
        if (inst.total(i).is_zero()) out.push_back(i);
    }
    return out;
}

Instance normalize_mms(const Instance& inst, std::span<const Rational> mms) {
    if (mms.size() != inst.agents()) {
        throw Error(ErrorCode::InvalidArgument, "one MMS value per agent required");
    }
    auto rows = inst.to_rows();
    for (AgentId i = 0; i < inst.agents(); ++i) {
        if (mms[i].sign() <= 0) {
            throw Error(ErrorCode::ZeroMMS, "agent " + std::to_string(i) + " has MMS " +
                                                mms[i].to_string());
        }
        for (auto& v : rows[i]) v /= mms[i];
    }
    return Instance::make(rows);
}

}  // namespace mms

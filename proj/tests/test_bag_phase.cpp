#include "mms/bag_phase.hpp"
#include "mms/error.hpp"
#include "support/fixtures.hpp"

#include <doctest.h>

using namespace mms;
using mms::testing::n21_instance;
using mms::testing::random_instance;

namespace {

using Bag = std::array<std::size_t, 2>;

ReductionState raw_state(const std::vector<std::vector<Rational>>& rows,
                         Renormalization mode = Renormalization::None) {
    return ReductionState::start(Instance::make(rows), mode);
}

std::vector<Rational> hundredths(std::initializer_list<long long> head, std::size_t ones) {
    std::vector<Rational> row;
    for (long long v : head) row.push_back(frac(v, 100));
    row.resize(head.size() + ones, frac(1, 100));
    return row;
}

}  // namespace

TEST_CASE("init_bags pairs the best with the worst") {
    CHECK(init_bags(1).bags == std::vector<Bag>{{0, 1}});
    CHECK(init_bags(2).bags == std::vector<Bag>{{0, 3}, {1, 2}});
    CHECK(init_bags(3).bags == std::vector<Bag>{{0, 5}, {1, 4}, {2, 3}});
    for (std::size_t n = 1; n < 8; ++n) {
        std::vector<int> seen(2 * n, 0);
        for (const auto& bag : init_bags(n).bags) {
            CHECK(bag[0] < n);
            CHECK(bag[1] >= n);
            ++seen[bag[0]];
            ++seen[bag[1]];
        }
        for (int s : seen) CHECK(s == 1);
    }
}

TEST_CASE("classify_agent") {
    SUBCASE("all bags between 3/4 and 1") {
        const std::vector<Rational> row{frac(1, 2), frac(1, 2), frac(1, 2), frac(1, 2)};
        const auto s = raw_state({row, row});
        const AgentClass c = classify_agent(s, 0, Rational(0));
        CHECK(c.type == AgentType::N1);
        CHECK(c.l == 0);
        CHECK(c.k == 0);
        CHECK(c.x == 0);
    }
    SUBCASE("one high bag and one low bag") {
        const auto row = hundredths({73, 68, 37, 36, 30, 28}, 28);
        const auto s = raw_state({row, row, row});
        const AgentClass c = classify_agent(s, 0, Rational(0));
        CHECK(c.type == AgentType::N2);
        CHECK(c.l == 1);
        CHECK(c.k == 1);
        CHECK(c.x == frac(1, 50));
        CHECK(c.low_total == frac(28, 100));
        CHECK_FALSE(c.n21);
    }
    SUBCASE("two high bags, one low bag and little outside value") {
        const auto s = ReductionState::start(n21_instance(), Renormalization::Average);
        const AgentClass c = classify_agent(s, 0, Rational(0));
        CHECK(c.type == AgentType::N2);
        CHECK(c.k == 2);
        CHECK(c.l == 1);
        CHECK(c.low_total < c.x + frac(1, 8));
        CHECK(c.n21);
    }
    SUBCASE("gamma moves both thresholds") {
        const auto row = hundredths({73, 68, 37, 36, 30, 28}, 28);
        const auto s = raw_state({row, row, row});
        const AgentClass c = classify_agent(s, 0, frac(1, 36));
        // low = 7/9 and high = 25/24: the 1.01 bag is no longer high.
        CHECK(c.l == 1);
        CHECK(c.k == 0);
        CHECK(c.type == AgentType::N1);
        CHECK(c.x == frac(43, 900));
    }
}

TEST_CASE("detect_n21") {
    const Instance base = n21_instance();
    const auto tall = base.to_rows()[0];
    const std::vector<Rational> flat(tall.size(), Rational(1));

    CHECK(detect_n21(ReductionState::start(Instance::make({flat, flat, flat}), Renormalization::Average)).empty());
    CHECK(detect_n21(ReductionState::start(Instance::make({tall, flat, flat}), Renormalization::Average)) ==
          std::vector<AgentId>{0});
    const auto two = ReductionState::start(Instance::make({tall, flat, tall}), Renormalization::Average);
    CHECK(detect_n21(two) == std::vector<AgentId>{0, 2});
    for (AgentId a : two.agents()) {
        CHECK(classify_agent(two, a, Rational(0)).n21 == (a != 1));
    }
}

TEST_CASE("bag_fill") {
    SUBCASE("every bag already good enough") {
        const std::vector<Rational> row(4, frac(1, 2));
        const auto result = bag_fill(raw_state({row, row}), frac(3, 4));
        REQUIRE(result.rounds.size() == 2);
        CHECK(result.rounds[0].receiver == 0);
        CHECK(result.rounds[0].fillers == 0);
        CHECK(result.rounds[0].bundle == Bundle{0, 3});
        CHECK(result.rounds[1].bundle == Bundle{1, 2});
        CHECK(result.allocation.leftovers.empty());
        CHECK(is_partition(result.allocation.bundles, 4));
    }
    SUBCASE("one agent left: immediate assignment, the rest folded in") {
        const auto result = bag_fill(raw_state({{frac(1, 2), frac(3, 10), frac(1, 10), frac(1, 10)}}), frac(3, 4));
        REQUIRE(result.rounds.size() == 1);
        CHECK(result.rounds[0].fillers == 0);
        CHECK(result.allocation.bundles[0] == Bundle{0, 1, 2, 3});
        CHECK(result.allocation.leftovers == Bundle{2, 3});
        CHECK(result.allocation.leftover_folded_into == AgentId{0});
    }
    SUBCASE("fillers are added from the top of the remaining items") {
        std::vector<Rational> row{frac(1, 2), frac(1, 8), frac(1, 8), frac(1, 8), frac(1, 8)};
        const auto result = bag_fill(raw_state({row}), frac(3, 4));
        REQUIRE(result.rounds.size() == 1);
        CHECK(result.rounds[0].bundle == Bundle{0, 1, 2});
        CHECK(result.rounds[0].fillers == 1);
        CHECK(result.allocation.leftovers == Bundle{3, 4});
    }
    SUBCASE("running out of fillers is an internal error") {
        const std::vector<Rational> row(4, frac(1, 10));
        try {
            bag_fill(raw_state({row, row}), frac(3, 4));
            FAIL("expected Exhausted");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::Exhausted);
        }
    }
}

TEST_CASE("bag filling succeeds whenever no agent is in N21") {
    int filled = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 2 + trial % 4;
        const Instance inst = random_instance(n, n + trial % 10, 8000 + trial);
        auto state = fixed_assignment(ReductionState::start(order_instance(inst).ordered, Renormalization::Average));
        state = tentative_assignment(std::move(state));
        if (!detect_n21(state).empty()) continue;
        for (AgentId a : state.agents()) {
            const AgentClass c = classify_agent(state, a, Rational(0));
            if (c.type == AgentType::N2) {
                CHECK(c.l >= 1);
            }
        }
        const auto result = bag_fill(state, frac(3, 4));
        for (const auto& round : result.rounds) {
            CHECK(state.bundle_value(round.receiver, round.bundle) >= frac(3, 4));
        }
        CHECK(is_partition(result.allocation.bundles, inst.items()));
        ++filled;
    }
    CHECK(filled > 900);
}

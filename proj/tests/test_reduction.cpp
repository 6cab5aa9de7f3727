#include "mms/error.hpp"
#include "mms/oracle.hpp"
#include "mms/reduction.hpp"
#include "mms/verify.hpp"
#include "support/fixtures.hpp"

#include <doctest.h>

#include <random>

using namespace mms;
using mms::testing::random_instance;
using mms::testing::rows_of;

namespace {

ReductionState start_from(const std::vector<std::vector<Rational>>& rows,
                          Renormalization mode = Renormalization::Average) {
    return ReductionState::start(order_instance(Instance::make(rows)).ordered, mode);
}

std::vector<std::vector<Rational>> identical_rows(std::size_t n, const std::vector<Rational>& row) {
    return std::vector<std::vector<Rational>>(n, row);
}

std::vector<Rational> rationals(std::initializer_list<Rational> xs) { return xs; }

}  // namespace

TEST_CASE("start normalizes every row to the agent count") {
    const auto s = start_from(rows_of({{1, 2, 3}, {5, 0, 5}}));
    CHECK(s.total(0) == 2);
    CHECK(s.total(1) == 2);
    CHECK(s.log().empty());

    const auto z = start_from(rows_of({{1, 2, 3}, {0, 0, 0}}));
    CHECK(z.agents() == std::vector<AgentId>{0});
    REQUIRE(z.log().size() == 1);
    CHECK(z.log()[0].shape == BundleShape::Empty);
    CHECK(z.total(0) == 1);
}

TEST_CASE("candidate bundles use positions among the remaining items") {
    SUBCASE("n = 3 with at least seven items") {
        const auto s = start_from(rows_of({{9, 8, 7, 6, 5, 4, 3, 2}, {9, 8, 7, 6, 5, 4, 3, 2}, {9, 8, 7, 6, 5, 4, 3, 2}}));
        const auto b = candidate_bundles(s);
        CHECK(b[0] == Bundle{0});
        CHECK(b[1] == Bundle{2, 3});
        CHECK(b[2] == Bundle{4, 5, 6});
        CHECK(b[3] == Bundle{0, 6});
    }
    SUBCASE("one agent and one item: every shape collapses to that item") {
        const auto b = candidate_bundles(start_from(rows_of({{4}})));
        for (const auto& bundle : b) CHECK(bundle == Bundle{0});
    }
    SUBCASE("n = 2 with four items truncates S3 and S4") {
        const auto b = candidate_bundles(start_from(rows_of({{4, 3, 2, 1}, {4, 3, 2, 1}})));
        CHECK(b[1] == Bundle{1, 2});
        CHECK(b[2] == Bundle{2, 3});
        CHECK(b[3] == Bundle{0});
    }
    SUBCASE("positions shift after a removal") {
        auto s = start_from(identical_rows(2, rationals({Rational(9), Rational(1), Rational(1), Rational(1), Rational(1), Rational(1)})));
        s = apply_reduction(std::move(s), 0, {0}, RecordKind::Fixed, BundleShape::S1, frac(3, 4));
        const auto b = candidate_bundles(s);
        CHECK(b[0] == Bundle{1});
        CHECK(b[1] == Bundle{1, 2});
    }
}

TEST_CASE("gamma uses a non-strict threshold") {
    auto s = start_from(identical_rows(2, rationals({Rational(1)})), Renormalization::None);
    CHECK(gamma(s, Bundle{0}, Rational(1)) == std::vector<AgentId>{0, 1});
    CHECK(gamma(s, Bundle{0}, Rational(0)) == std::vector<AgentId>{0, 1});

    // Values 0.8 and 0.5 for the same one-item bundle.
    const auto t = start_from({{frac(4, 5), frac(1, 5)}, {frac(1, 2), frac(1, 2)}}, Renormalization::None);
    CHECK(gamma(t, Bundle{0}, frac(3, 4)) == std::vector<AgentId>{0});
    const auto u = start_from({{frac(3, 4), frac(1, 4)}, {frac(1, 2), frac(1, 2)}}, Renormalization::None);
    CHECK(gamma(u, Bundle{0}, frac(3, 4)) == std::vector<AgentId>{0});
}

TEST_CASE("initial_assignment") {
    SUBCASE("nothing qualifies") {
        const auto s = start_from(identical_rows(3, std::vector<Rational>(9, Rational(1))), Renormalization::None);
        CHECK(initial_assignment(s, Rational(5)) == s);
    }
    SUBCASE("a single agent takes S1") {
        const auto s = start_from({{frac(3, 4), frac(1, 4)}}, Renormalization::None);
        const auto r = initial_assignment(s, frac(3, 4));
        CHECK(r.agent_count() == 0);
        REQUIRE(r.log().size() == 1);
        CHECK(r.log()[0].shape == BundleShape::S1);
    }
    SUBCASE("no candidate bundle qualifies afterwards") {
        for (int trial = 0; trial < 60; ++trial) {
            const Instance inst = random_instance(2 + trial % 4, 4 + trial % 9, 300 + trial);
            const auto r = initial_assignment(ReductionState::start(order_instance(inst).ordered, Renormalization::Average),
                                              frac(3, 4));
            if (r.agent_count() == 0) continue;
            for (const auto& b : candidate_bundles(r)) CHECK(gamma(r, b, frac(3, 4)).empty());
        }
    }
}

TEST_CASE("fixed_assignment") {
    SUBCASE("many tiny items: nothing to assign") {
        const auto s = start_from(identical_rows(3, std::vector<Rational>(30, Rational(1))));
        CHECK(fixed_assignment(s) == s);
    }
    SUBCASE("an agent whose value sits in one item takes it") {
        const auto s = start_from(rows_of({{10, 0, 0}, {1, 1, 1}}));
        const auto r = fixed_assignment(s);
        REQUIRE(!r.log().empty());
        CHECK(r.log()[0].agent == 0);
        CHECK(r.log()[0].shape == BundleShape::S1);
        CHECK(r.log()[0].kind == RecordKind::Fixed);
    }
    SUBCASE("afterwards S1 to S3 are below 3/4 and the bounds hold") {
        for (int trial = 0; trial < 100; ++trial) {
            const Instance inst = random_instance(2 + trial % 4, 3 + trial % 10, 700 + trial);
            const auto r = fixed_assignment(ReductionState::start(order_instance(inst).ordered, Renormalization::Average));
            if (r.agent_count() == 0) continue;
            const auto b = candidate_bundles(r);
            for (int s = 0; s < 3; ++s) CHECK(gamma(r, b[s], frac(3, 4)).empty());
            CHECK(check_corollary_bounds(r, Rational(0)));
        }
    }
}

TEST_CASE("tentative_assignment and undo") {
    // v(pos 1) + v(pos 5) = 3/4 exactly for agent 0 only; S1 to S3 stay below 3/4.
    std::vector<Rational> a0{frac(7, 10), frac(3, 10), frac(3, 10), frac(3, 10)};
    a0.resize(12, frac(1, 20));
    const std::vector<Rational> a1(12, frac(1, 6));
    const auto s = start_from({a0, a1});
    REQUIRE(s.total(0) == 2);

    SUBCASE("nothing reaches 3/4 on S4") {
        const auto flat = start_from(identical_rows(2, std::vector<Rational>(20, Rational(1))));
        const auto r = tentative_assignment(flat);
        CHECK(r.log() == flat.log());
        CHECK(r.tentative_open());
    }
    SUBCASE("one tentative S4 record, then an exact restore") {
        const auto fixed = fixed_assignment(s);
        CHECK(fixed == s);
        const auto t = tentative_assignment(fixed);
        REQUIRE(!t.log().empty());
        CHECK(t.log()[0].kind == RecordKind::Tentative);
        CHECK(t.log()[0].shape == BundleShape::S4);
        CHECK(t.log()[0].agent == 0);
        CHECK(t.log()[0].bundle == Bundle{0, 4});

        const auto u = undo_tentative(t);
        CHECK(u == fixed);
        CHECK_FALSE(u.tentative_open());

        const auto again = tentative_assignment(u);
        CHECK(again.log() == t.log());
    }
    SUBCASE("undo without a snapshot is a no-op") {
        CHECK(undo_tentative(s) == s);
    }
}

TEST_CASE("after an S4 the loop returns to the lower shapes") {
    // Agent 1 takes S4 = {pos 1, pos 5}. Agent 0 is then alone and values the
    // first three remaining items at 32/41, so the next record is an S3 even
    // though S4 would also qualify.
    const auto s = start_from(rows_of({{19, 13, 10, 9, 5, 5, 4}, {18, 10, 8, 7, 3, 3, 3}}));
    const auto fixed = fixed_assignment(s);
    CHECK(fixed.log().empty());
    const auto t = tentative_assignment(fixed);
    REQUIRE(t.log().size() == 2);
    CHECK(t.log()[0].agent == 1);
    CHECK(t.log()[0].shape == BundleShape::S4);
    CHECK(t.log()[0].bundle == Bundle{0, 4});
    CHECK(t.log()[1].agent == 0);
    CHECK(t.log()[1].shape == BundleShape::S3);
    CHECK(t.log()[1].kind == RecordKind::Tentative);
}

TEST_CASE("apply_reduction renormalizes the survivors") {
    const auto s = start_from(rows_of({{4, 3, 2, 1}, {1, 1, 1, 1}}));
    const auto r = apply_reduction(s, 0, {0}, RecordKind::Fixed, BundleShape::S1, frac(3, 4));
    CHECK(r.agents() == std::vector<AgentId>{1});
    CHECK(r.total(1) == 1);

    // The survivor values the removed item at zero: proportions are kept.
    const auto hand = ReductionState::start(Instance::make(rows_of({{4, 3, 2, 1}, {0, 2, 1, 1}})),
                                            Renormalization::Average);
    const auto after = apply_reduction(hand, 0, {0}, RecordKind::Fixed, BundleShape::S1, frac(3, 4));
    CHECK(after.value(1, 1) == frac(1, 2));
    CHECK(after.value(1, 2) == frac(1, 4));
    CHECK(after.value(1, 3) == frac(1, 4));

    CHECK_THROWS_AS(apply_reduction(s, 1, {3}, RecordKind::Fixed, BundleShape::S1, frac(3, 4)), Error);
    try {
        apply_reduction(s, 1, {3}, RecordKind::Fixed, BundleShape::S1, frac(3, 4));
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::BelowThreshold);
    }
}

TEST_CASE("every reduction keeps rows summing to the agent count") {
    for (int trial = 0; trial < 80; ++trial) {
        const Instance inst = random_instance(2 + trial % 4, 4 + trial % 9, 1300 + trial);
        auto state = ReductionState::start(order_instance(inst).ordered, Renormalization::Average);
        for (;;) {
            const auto b = candidate_bundles(state);
            if (state.agent_count() == 0) break;
            const auto q = gamma(state, b[0], frac(3, 4));
            if (q.empty()) break;
            state = apply_reduction(std::move(state), q.front(), b[0], RecordKind::Fixed, BundleShape::S1, frac(3, 4));
            for (AgentId a : state.agents()) {
                CHECK(state.total(a) == Rational(static_cast<long long>(state.agent_count())));
            }
        }
    }
}

TEST_CASE("S1 to S3 removals never lower a survivor's maximin share") {
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 2 + trial % 3;
        const Instance inst = random_instance(n, n + 2 + trial % 6, 4100 + trial);
        const Instance ordered = order_instance(inst).ordered;
        auto state = ReductionState::start(ordered, Renormalization::Average);
        const auto done = fixed_assignment(state);
        for (const auto& rec : done.log()) {
            if (rec.kind == RecordKind::Fixed && rec.shape != BundleShape::Empty && state.agent_count() >= 2) {
                const Instance sub = restrict_to_state(ordered, state);
                const auto& agents = state.agents();
                const AgentId local = static_cast<AgentId>(std::find(agents.begin(), agents.end(), rec.agent) - agents.begin());
                Bundle local_bundle;
                for (ItemId j : rec.bundle) {
                    const auto& items = state.items();
                    local_bundle.push_back(static_cast<ItemId>(std::find(items.begin(), items.end(), j) - items.begin()));
                }
                CHECK(check_valid_reduction(sub, local, local_bundle, frac(3, 4)));
                ++checked;
            }
            state = replay(state, std::span(done.log()).first(state.log().size() + 1));
        }
        CHECK(state == done);
    }
    CHECK(checked > 20);
}

TEST_CASE("replaying a log reproduces the state") {
    for (int trial = 0; trial < 40; ++trial) {
        const Instance inst = random_instance(2 + trial % 4, 5 + trial % 8, 5100 + trial);
        const auto start = ReductionState::start(order_instance(inst).ordered, Renormalization::Average);
        auto s = fixed_assignment(start);
        s = tentative_assignment(std::move(s));
        s.commit_tentative();
        CHECK(replay(start, s.log()) == s);
    }
}

#include "mms/oracle.hpp"

#include "mms/error.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>

namespace mms {

namespace {

thread_local std::uint64_t g_oracle_calls = 0;

// Depth-first search over item -> bundle assignments. Items arrive sorted by
// descending weight; all weights are strictly positive integers.
template <typename T>
class PartitionSearch {
public:
    PartitionSearch(std::vector<T> weights, std::size_t k)
        : w_(std::move(weights)), k_(k), load_(k, T(0)), assign_(w_.size(), 0) {
        suffix_.assign(w_.size() + 1, T(0));
        for (std::size_t i = w_.size(); i-- > 0;) suffix_[i] = suffix_[i + 1] + w_[i];
        ceiling_ = suffix_[0] / T(static_cast<long>(k_));
    }

    void run() {
        seed_with_greedy();
        if (best_ < ceiling_) dfs(0);
    }

    const T& best() const { return best_; }
    const std::vector<std::size_t>& best_assignment() const { return best_assign_; }

private:
    // Largest-first onto the lightest bundle; gives the search a starting floor.
    void seed_with_greedy() {
        std::vector<T> load(k_, T(0));
        best_assign_.assign(w_.size(), 0);
        for (std::size_t i = 0; i < w_.size(); ++i) {
            const auto b = static_cast<std::size_t>(
                std::min_element(load.begin(), load.end()) - load.begin());
            load[b] += w_[i];
            best_assign_[i] = b;
        }
        best_ = *std::min_element(load.begin(), load.end());
    }

    // Highest level t such that lifting every bundle below t up to t fits into
    // the remaining weight. Bounds the final minimum from above.
    T water_level(const T& remaining) const {
        std::vector<T> sorted = load_;
        std::sort(sorted.begin(), sorted.end());
        T prefix(0);
        for (std::size_t p = 1; p <= k_; ++p) {
            prefix += sorted[p - 1];
            T level = (prefix + remaining) / T(static_cast<long>(p));
            if (p == k_ || level <= sorted[p]) return level;
        }
        return T(0);
    }

    void dfs(std::size_t idx) {
        if (best_ >= ceiling_) return;
        if (idx == w_.size()) {
            const T& lightest = *std::min_element(load_.begin(), load_.end());
            if (lightest > best_) {
                best_ = lightest;
                best_assign_.assign(assign_.begin(), assign_.end());
            }
            return;
        }
        if (water_level(suffix_[idx]) <= best_) return;

        std::vector<std::size_t> order(k_);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return load_[a] < load_[b]; });
        for (std::size_t pos = 0; pos < k_; ++pos) {
            const std::size_t b = order[pos];
            // Bundles with equal loads are interchangeable; this also lets an
            // item open at most one empty bundle.
            if (pos > 0 && load_[order[pos - 1]] == load_[b]) continue;
            load_[b] += w_[idx];
            assign_[idx] = b;
            dfs(idx + 1);
            load_[b] -= w_[idx];
            if (best_ >= ceiling_) return;
        }
    }

    std::vector<T> w_;
    std::size_t k_;
    std::vector<T> suffix_;
    std::vector<T> load_;
    std::vector<std::size_t> assign_;
    std::vector<std::size_t> best_assign_;
    T best_{0};
    T ceiling_{0};
};

struct IntegerRow {
    mpz_class scale;  // common denominator
    std::vector<mpz_class> weights;
};

IntegerRow to_integers(std::span<const Rational> values) {
    IntegerRow row{mpz_class(1), {}};
    for (const auto& v : values) mpz_lcm(row.scale.get_mpz_t(), row.scale.get_mpz_t(), v.den().get_mpz_t());
    row.weights.reserve(values.size());
    for (const auto& v : values) row.weights.push_back(v.num() * (row.scale / v.den()));
    return row;
}

template <typename T>
T convert(const mpz_class& z);

template <>
long convert<long>(const mpz_class& z) {
    return z.get_si();
}

template <>
mpz_class convert<mpz_class>(const mpz_class& z) {
    return z;
}

template <typename T>
std::pair<mpz_class, std::vector<std::size_t>> search(const std::vector<mpz_class>& sorted,
                                                      std::size_t k) {
    std::vector<T> w;
    w.reserve(sorted.size());
    for (const auto& z : sorted) w.push_back(convert<T>(z));
    PartitionSearch<T> s(std::move(w), k);
    s.run();
    return {mpz_class(s.best()), s.best_assignment()};
}

}  // namespace

std::uint64_t oracle_call_count() { return g_oracle_calls; }

Rational average_bound(std::span<const Rational> values, std::size_t k) {
    if (k == 0) throw Error(ErrorCode::ZeroBundles, "k must be at least 1");
    Rational total;
    for (const auto& v : values) total += v;
    return total / Rational(static_cast<long long>(k));
}

MmsResult exact_mms(std::span<const Rational> values, std::size_t k, std::size_t cap) {
    ++g_oracle_calls;
    if (k == 0) throw Error(ErrorCode::ZeroBundles, "k must be at least 1");
    if (values.size() > cap) {
        throw Error(ErrorCode::TooLarge, std::to_string(values.size()) +
                                             " items exceed the oracle cap of " +
                                             std::to_string(cap));
    }
    for (const auto& v : values) {
        if (v.sign() < 0) throw Error(ErrorCode::NegativeValue, "oracle needs non-negative values");
    }

    MmsResult result;
    result.partition.resize(k);

    // Zero-valued items never change a bundle's value; they are placed last.
    std::vector<std::size_t> positive;
    std::vector<std::size_t> zeros;
    for (std::size_t j = 0; j < values.size(); ++j) {
        (values[j].is_zero() ? zeros : positive).push_back(j);
    }
    std::stable_sort(positive.begin(), positive.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });

    if (positive.size() < k) {
        // Some bundle is necessarily worthless.
        for (std::size_t p = 0; p < positive.size(); ++p) result.partition[p].push_back(positive[p]);
        auto& sink = result.partition.back();
        sink.insert(sink.end(), zeros.begin(), zeros.end());
        for (auto& b : result.partition) std::sort(b.begin(), b.end());
        result.value = Rational(0);
        return result;
    }

    std::vector<Rational> pos_values;
    pos_values.reserve(positive.size());
    for (std::size_t j : positive) pos_values.push_back(values[j]);
    const IntegerRow row = to_integers(pos_values);

    mpz_class total;
    for (const auto& w : row.weights) total += w;
    const bool fits = total < mpz_class(std::numeric_limits<long>::max() / 4);
    const auto [best, assignment] =
        fits ? search<long>(row.weights, k) : search<mpz_class>(row.weights, k);

    std::vector<mpz_class> loads(k);
    for (std::size_t p = 0; p < positive.size(); ++p) {
        result.partition[assignment[p]].push_back(positive[p]);
        loads[assignment[p]] += row.weights[p];
    }
    const auto lightest = static_cast<std::size_t>(
        std::min_element(loads.begin(), loads.end()) - loads.begin());
    result.partition[lightest].insert(result.partition[lightest].end(), zeros.begin(), zeros.end());
    for (auto& b : result.partition) std::sort(b.begin(), b.end());
    result.value = Rational(best, row.scale);
    return result;
}

Rational partition_min(std::span<const Rational> values, const std::vector<Bundle>& partition) {
    if (partition.empty() || !is_partition(partition, values.size())) {
        throw Error(ErrorCode::BadPartition, "bundles must be disjoint and cover every item");
    }
    std::optional<Rational> lightest;
    for (const auto& b : partition) {
        Rational sum;
        for (ItemId j : b) sum += values[j];
        if (!lightest || sum < *lightest) lightest = sum;
    }
    return *lightest;
}

}  // namespace mms

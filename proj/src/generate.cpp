#include "mms/generate.hpp"

#include "mms/error.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <random>
#include <vector>

namespace mms {

namespace {

std::int64_t parse_int(std::string_view s) {
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw Error(ErrorCode::BadSpec, "not an integer: '" + std::string(s) + "'");
    }
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        parts.push_back(s.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

// Uniform integer in [lo, hi] by rejection on raw engine output.
std::int64_t draw(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(rng());  // full 64-bit range
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t x = rng();
    while (x >= limit) x = rng();
    return lo + static_cast<std::int64_t>(x % span);
}

}  // namespace

void parse_distribution(std::string_view text, GenSpec& spec) {
    const auto parts = split(text, ':');
    const auto kind = parts.front();
    if (kind == "uniform" && parts.size() == 3) {
        spec.distribution = Distribution::Uniform;
    } else if (kind == "identical" && parts.size() == 3) {
        spec.distribution = Distribution::Identical;
    } else if (kind == "correlated" && parts.size() == 4) {
        spec.distribution = Distribution::Correlated;
        spec.noise = parse_int(parts[3]);
    } else {
        throw Error(ErrorCode::BadSpec, "unknown distribution '" + std::string(text) + "'");
    }
    spec.lo = parse_int(parts[1]);
    spec.hi = parse_int(parts[2]);
}

std::string distribution_string(const GenSpec& spec) {
    const std::string range = std::to_string(spec.lo) + ":" + std::to_string(spec.hi);
    switch (spec.distribution) {
        case Distribution::Uniform: return "uniform:" + range;
        case Distribution::Identical: return "identical:" + range;
        case Distribution::Correlated: return "correlated:" + range + ":" + std::to_string(spec.noise);
    }
    return "?";
}

Instance gen_instance(const GenSpec& spec) {
    if (spec.n == 0) throw Error(ErrorCode::BadSpec, "n must be at least 1");
    if (spec.lo < 0 || spec.hi < spec.lo) throw Error(ErrorCode::BadSpec, "need 0 <= lo <= hi");
    if (spec.noise < 0) throw Error(ErrorCode::BadSpec, "noise must be non-negative");

    std::mt19937_64 rng(spec.seed);
    std::vector<std::vector<Rational>> rows(spec.n, std::vector<Rational>(spec.m));
    switch (spec.distribution) {
        case Distribution::Uniform:
            for (auto& row : rows) {
                for (auto& v : row) v = Rational(draw(rng, spec.lo, spec.hi));
            }
            break;
        case Distribution::Identical: {
            for (auto& v : rows.front()) v = Rational(draw(rng, spec.lo, spec.hi));
            std::fill(rows.begin() + 1, rows.end(), rows.front());
            break;
        }
        case Distribution::Correlated: {
            std::vector<std::int64_t> base(spec.m);
            for (auto& b : base) b = draw(rng, spec.lo, spec.hi);
            for (auto& row : rows) {
                for (std::size_t j = 0; j < spec.m; ++j) {
                    const std::int64_t shifted = base[j] + draw(rng, -spec.noise, spec.noise);
                    row[j] = Rational(std::max<std::int64_t>(shifted, 0));
                }
            }
            break;
        }
    }
    return Instance::make(rows);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    std::uint64_t z = base + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace mms

#include "mms/io.hpp"

#include "mms/error.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace mms {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) malformed(std::string("missing field '") + key + "'");
    return j.at(key);
}

std::size_t as_count(const json& j, const char* what) {
    if (!j.is_number_integer() || j.get<long long>() < 0) {
        malformed(std::string(what) + " must be a non-negative integer");
    }
    return j.get<std::size_t>();
}

json optional_rational(const std::optional<Rational>& r) {
    return r ? rational_to_json(*r) : json(nullptr);
}

}  // namespace

json rational_to_json(const Rational& r) {
    if (r.is_integer() && r.num().fits_slong_p()) return json(static_cast<long long>(r.num().get_si()));
    return json(r.to_string());
}

Rational rational_from_json(const json& j) {
    if (j.is_number_integer()) {
        if (j.is_number_unsigned()) return Rational::parse(std::to_string(j.get<unsigned long long>()));
        return Rational(j.get<long long>());
    }
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    malformed("valuation must be an integer or a string, got " + j.dump());
}

json instance_to_json(const Instance& inst) {
    json rows = json::array();
    for (AgentId a = 0; a < inst.agents(); ++a) {
        json row = json::array();
        for (const auto& v : inst.row(a)) row.push_back(rational_to_json(v));
        rows.push_back(std::move(row));
    }
    return json{{"agents", inst.agents()}, {"items", inst.items()}, {"valuations", std::move(rows)}};
}

Instance instance_from_json(const json& j) {
    const std::size_t n = as_count(field(j, "agents"), "agents");
    const std::size_t m = as_count(field(j, "items"), "items");
    const json& vals = field(j, "valuations");
    if (!vals.is_array()) malformed("valuations must be an array of rows");
    if (vals.size() != n) {
        if (n == 0) throw Error(ErrorCode::EmptyAgents, "instance needs at least one agent");
        throw Error(ErrorCode::RaggedMatrix, "expected " + std::to_string(n) + " rows, got " +
                                                 std::to_string(vals.size()));
    }
    std::vector<std::vector<Rational>> rows;
    rows.reserve(n);
    for (const auto& row : vals) {
        if (!row.is_array() || row.size() != m) {
            throw Error(ErrorCode::RaggedMatrix, "every row must have " + std::to_string(m) + " entries");
        }
        std::vector<Rational> r;
        r.reserve(m);
        for (const auto& v : row) r.push_back(rational_from_json(v));
        rows.push_back(std::move(r));
    }
    return Instance::make(rows);
}

json allocation_to_json(const Allocation& alloc) {
    json stats{
        {"update_loop_iterations", alloc.stats.update_loop_iterations},
        {"iteration_cap", alloc.stats.iteration_cap},
        {"fixed_assignments", alloc.stats.fixed_assignments},
        {"tentative_assignments", alloc.stats.tentative_assignments},
        {"bag_rounds", alloc.stats.bag_rounds},
        {"zero_value_agents", alloc.stats.zero_value_agents},
        {"diagnostics", alloc.stats.diagnostics},
    };
    if (!alloc.stats.per_agent_ratio.empty()) {
        json ratios = json::array();
        for (const auto& r : alloc.stats.per_agent_ratio) ratios.push_back(optional_rational(r));
        stats["per_agent_ratio"] = std::move(ratios);
    }
    return json{
        {"bundles", alloc.bundles},
        {"leftovers", alloc.leftovers},
        {"leftover_folded_into",
         alloc.leftover_folded_into ? json(*alloc.leftover_folded_into) : json(nullptr)},
        {"stats", std::move(stats)},
    };
}

Allocation allocation_from_json(const json& j) {
    Allocation alloc;
    const json& bundles = field(j, "bundles");
    if (!bundles.is_array()) malformed("bundles must be an array");
    for (const auto& b : bundles) {
        if (!b.is_array()) malformed("each bundle must be an array of item ids");
        Bundle bundle;
        for (const auto& item : b) bundle.push_back(as_count(item, "item id"));
        alloc.bundles.push_back(std::move(bundle));
    }
    if (j.contains("leftovers")) {
        for (const auto& item : j.at("leftovers")) alloc.leftovers.push_back(as_count(item, "item id"));
    }
    if (j.contains("leftover_folded_into") && !j.at("leftover_folded_into").is_null()) {
        alloc.leftover_folded_into = as_count(j.at("leftover_folded_into"), "agent id");
    }
    if (j.contains("stats") && j.at("stats").is_object()) {
        const json& s = j.at("stats");
        auto count = [&](const char* key) -> std::size_t {
            return s.contains(key) ? as_count(s.at(key), key) : 0;
        };
        alloc.stats.update_loop_iterations = count("update_loop_iterations");
        alloc.stats.iteration_cap = count("iteration_cap");
        alloc.stats.fixed_assignments = count("fixed_assignments");
        alloc.stats.tentative_assignments = count("tentative_assignments");
        alloc.stats.bag_rounds = count("bag_rounds");
        alloc.stats.zero_value_agents = count("zero_value_agents");
        if (s.contains("diagnostics")) {
            alloc.stats.diagnostics = s.at("diagnostics").get<std::vector<std::string>>();
        }
        if (s.contains("per_agent_ratio")) {
            for (const auto& r : s.at("per_agent_ratio")) {
                alloc.stats.per_agent_ratio.push_back(
                    r.is_null() ? std::nullopt : std::optional<Rational>(rational_from_json(r)));
            }
        }
    }
    return alloc;
}

json report_to_json(const VerifyReport& report) {
    json agents = json::array();
    for (const auto& v : report.per_agent) {
        agents.push_back({
            {"agent", v.agent},
            {"bundle_value", rational_to_json(v.bundle_value)},
            {"mms", rational_to_json(v.mms)},
            {"ratio", optional_rational(v.ratio)},
            {"pass", v.pass},
        });
    }
    return json{{"alpha", rational_to_json(report.alpha)},
                {"overall", report.overall},
                {"per_agent", std::move(agents)}};
}

json log_to_json(std::span<const AssignmentRecord> log) {
    json out = json::array();
    for (const auto& rec : log) {
        json entry{{"agent", rec.agent},
                   {"kind", std::string(to_string(rec.kind))},
                   {"shape", std::string(to_string(rec.shape))},
                   {"bundle", rec.bundle}};
        if (rec.kind == RecordKind::Rescale) entry["factor"] = rational_to_json(rec.factor);
        out.push_back(std::move(entry));
    }
    return out;
}

json rounds_to_json(std::span<const BagRound> rounds) {
    json out = json::array();
    for (const auto& r : rounds) {
        out.push_back({{"receiver", r.receiver}, {"bundle", r.bundle}, {"fillers", r.fillers}});
    }
    return out;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) malformed("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        malformed("'" + path + "': " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) malformed("cannot write '" + path + "'");
    out << text;
}

}  // namespace mms

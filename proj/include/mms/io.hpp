#pragma once

#include "mms/bag_phase.hpp"
#include "mms/instance.hpp"
#include "mms/reduction.hpp"
#include "mms/verify.hpp"

#include <json.hpp>

#include <span>
#include <string>

namespace mms {

using json = nlohmann::json;

/// Integers within 64 bits become JSON numbers, everything else a "p/q" string.
json rational_to_json(const Rational& r);
/// Accepts JSON integers and strings in any form Rational::parse takes.
Rational rational_from_json(const json& j);

/// {"agents": n, "items": m, "valuations": [[...], ...]}
json instance_to_json(const Instance& inst);
Instance instance_from_json(const json& j);

/// {"bundles": [[...]], "leftover_folded_into": id|null, "leftovers": [...], "stats": {...}}
json allocation_to_json(const Allocation& alloc);
Allocation allocation_from_json(const json& j);

json report_to_json(const VerifyReport& report);
json log_to_json(std::span<const AssignmentRecord> log);
json rounds_to_json(std::span<const BagRound> rounds);

/// File helpers; errors surface as mms::Error(ParseError).
json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace mms

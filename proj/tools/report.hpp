#pragma once

#include "spf/twisting.hpp"
#include "spf/universal.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace spf::report {

using json = nlohmann::json;

constexpr int kSchemaVersion = 1;

struct ExtReport {
    uint32_t p = 0, n = 0;
    std::string b0, b;
    size_t len = 0;
    std::vector<size_t> dims;
    bool complete = false;
    bool operator==(const ExtReport&) const = default;
};

json to_json(const Bigraded& b);
Bigraded bigraded_from_json(const json& j);

json to_json(const ExtReport& r);
json to_json(const E2Page& e);
json to_json(const TwistedCohomology& t);
json to_json(const CollapseReport& c);
json to_json(const PoincareReport& r);
json to_json(const UniversalClass& c);
json to_json(const Verification& v);

ExtReport ext_from_json(const json& j);
E2Page e2_from_json(const json& j);
TwistedCohomology twisted_from_json(const json& j);
CollapseReport collapse_from_json(const json& j);
PoincareReport poincare_from_json(const json& j);
UniversalClass universal_from_json(const json& j);
Verification verification_from_json(const json& j);

// Plain text tables.
std::string table(const ExtReport& r);
std::string table(const E2Page& e);
std::string table(const CollapseReport& c);
std::string table(const PoincareReport& r, bool closed_form);
std::string table(const UniversalClass& c, const Verification& v);

// CSV: (s, t, dim) triples, (s, dim) pairs, or (k, e2, twisted) rows.
std::string csv(const Bigraded& b);
std::string csv(const ExtReport& r);
std::string csv(const CollapseReport& c);

} // namespace spf::report

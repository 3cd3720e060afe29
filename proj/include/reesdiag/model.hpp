#pragma once

#include "reesdiag/theta.hpp"

// vendored single-header nlohmann/json
#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace reesdiag {

// Declarative model file: JSON is canonical, a TOML subset is accepted.
// Schema versioned via `spec = 1`; all rationals are "p/q" strings.
struct ModelFile {
    int spec = 1;
    std::string name;
    std::vector<std::string> variables;
    long precision = 0;
    std::vector<DivisorData> divisors;
    std::vector<std::vector<int>> simplices;
    // levels in listed order; level tags are the multiplicative degrees
    std::vector<std::pair<int, std::vector<LaurentPoly>>> levels;
    std::optional<std::vector<std::vector<long>>> weight_tags; // per top-level section
    std::map<std::string, std::string> metadata;

    SkeletonComplex complex() const;
    // level by position; -1 means the last (top) level
    SectionSpace space(int level_pos = -1) const;
    const std::vector<LaurentPoly>& sections_at(int level_pos = -1) const;
};

ModelFile parse_model(const std::string& path);
ModelFile parse_model_text(const std::string& text, bool toml);

nlohmann::json model_to_json(const ModelFile& m);
std::string serialize_model(const ModelFile& m);

// Minimal TOML reader covering the model schema: top-level scalars,
// arrays (nested), [table] and [[array-of-tables]] headers, strings,
// integers, booleans. Returns the equivalent JSON document.
nlohmann::json toml_subset_to_json(const std::string& text);

} // namespace reesdiag

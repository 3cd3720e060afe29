#include "reesdiag/model.hpp"

#include "reesdiag/errors.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace reesdiag {

using nlohmann::json;

SkeletonComplex ModelFile::complex() const {
    return SkeletonComplex::create(static_cast<int>(variables.size()), precision, divisors,
                                   simplices);
}

const std::vector<LaurentPoly>& ModelFile::sections_at(int level_pos) const {
    if (levels.empty()) fail(ErrorKind::InvariantViolation, "model declares no sections");
    size_t idx = level_pos < 0 ? levels.size() - 1 : static_cast<size_t>(level_pos);
    if (idx >= levels.size()) fail(ErrorKind::InvariantViolation, "no such level");
    return levels[idx].second;
}

SectionSpace ModelFile::space(int level_pos) const {
    return SectionSpace::create(sections_at(level_pos), static_cast<int>(variables.size()),
                                precision);
}

namespace {

Rational json_rational(const json& j, const std::string& where) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    fail(ErrorKind::ParseError, where + ": expected an integer or a \"p/q\" string");
}

ModelFile model_from_json(const json& j) {
    if (!j.is_object()) fail(ErrorKind::ParseError, "model root must be an object/table");
    ModelFile m;
    if (!j.contains("spec") || !j["spec"].is_number_integer())
        fail(ErrorKind::SchemaVersionError, "missing schema version field 'spec'");
    m.spec = j["spec"].get<int>();
    if (m.spec != 1)
        fail(ErrorKind::SchemaVersionError,
             "unsupported schema version " + std::to_string(m.spec));
    if (!j.contains("precision"))
        fail(ErrorKind::SchemaVersionError, "missing required field 'precision' (no default)");
    if (!j["precision"].is_number_integer() || j["precision"].get<long>() <= 0)
        fail(ErrorKind::InvariantViolation, "precision must be a positive integer");
    m.precision = j["precision"].get<long>();
    m.name = j.value("name", std::string("unnamed"));
    if (!j.contains("variables") || !j["variables"].is_array())
        fail(ErrorKind::ParseError, "missing 'variables' array");
    for (const auto& v : j["variables"]) m.variables.push_back(v.get<std::string>());
    if (static_cast<int>(m.variables.size()) > kMaxVars)
        fail(ErrorKind::InvariantViolation, "at most 8 variables supported");

    if (!j.contains("divisors") || !j["divisors"].is_array())
        fail(ErrorKind::ParseError, "missing 'divisors' array");
    for (const auto& d : j["divisors"]) {
        DivisorData dd;
        dd.label = d.value("label", std::string("E") + std::to_string(m.divisors.size()));
        if (!d.contains("weights") || !d["weights"].is_array())
            fail(ErrorKind::ParseError, "divisor '" + dd.label + "': missing 'weights'");
        for (const auto& w : d["weights"])
            dd.weights.push_back(json_rational(w, "divisor '" + dd.label + "' weight"));
        if (dd.weights.size() != m.variables.size())
            fail(ErrorKind::InvariantViolation,
                 "divisor '" + dd.label + "': one weight per variable expected");
        if (d.contains("b")) {
            if (!d["b"].is_number_integer() || d["b"].get<long>() < 1)
                fail(ErrorKind::InvariantViolation,
                     "divisor '" + dd.label + "': multiplicity b must be a positive integer");
            dd.b = d["b"].get<long>();
        }
        if (d.contains("A")) dd.log_discrepancy = json_rational(d["A"], "divisor A");
        if (dd.log_discrepancy < 0)
            fail(ErrorKind::InvariantViolation,
                 "divisor '" + dd.label + "': log discrepancy must be >= 0");
        m.divisors.push_back(std::move(dd));
    }

    if (!j.contains("simplices") || !j["simplices"].is_array())
        fail(ErrorKind::ParseError, "missing 'simplices' array");
    for (const auto& s : j["simplices"]) {
        std::vector<int> simplex;
        for (const auto& idx : s) simplex.push_back(idx.get<int>());
        m.simplices.push_back(std::move(simplex));
    }

    auto parse_sections = [&](const json& arr) {
        std::vector<LaurentPoly> out;
        for (const auto& s : arr)
            out.push_back(parse_laurent(s.get<std::string>(), m.variables, m.precision));
        return out;
    };
    if (j.contains("levels")) {
        for (const auto& lvl : j["levels"]) {
            int tag = lvl.value("level", static_cast<int>(m.levels.size()));
            if (!lvl.contains("sections"))
                fail(ErrorKind::ParseError, "level entry without 'sections'");
            m.levels.emplace_back(tag, parse_sections(lvl["sections"]));
        }
    } else if (j.contains("sections")) {
        m.levels.emplace_back(0, parse_sections(j["sections"]));
    } else {
        fail(ErrorKind::ParseError, "model needs 'sections' or 'levels'");
    }

    if (j.contains("weight_tags")) {
        std::vector<std::vector<long>> tags;
        for (const auto& t : j["weight_tags"]) {
            std::vector<long> tag;
            for (const auto& x : t) tag.push_back(x.get<long>());
            tags.push_back(std::move(tag));
        }
        if (tags.size() != m.sections_at(-1).size())
            fail(ErrorKind::InvariantViolation,
                 "one weight tag per top-level section expected");
        m.weight_tags = std::move(tags);
    }
    if (j.contains("metadata"))
        for (const auto& [k, v] : j["metadata"].items())
            m.metadata[k] = v.get<std::string>();

    // re-validate every referenced invariant now, with model diagnostics
    m.complex();
    for (size_t l = 0; l < m.levels.size(); ++l)
        if (!sections_independent(m.levels[l].second, static_cast<int>(m.variables.size()),
                                  m.precision))
            fail(ErrorKind::InvariantViolation,
                 "sections of level " + std::to_string(m.levels[l].first) +
                     " are linearly dependent");
    return m;
}

} // namespace

nlohmann::json model_to_json(const ModelFile& m) {
    json j;
    j["spec"] = m.spec;
    j["name"] = m.name;
    j["variables"] = m.variables;
    j["precision"] = m.precision;
    json divs = json::array();
    for (const auto& d : m.divisors) {
        json dd;
        dd["label"] = d.label;
        json ws = json::array();
        for (const auto& w : d.weights) ws.push_back(rational_str(w));
        dd["weights"] = ws;
        dd["b"] = d.b;
        dd["A"] = rational_str(d.log_discrepancy);
        divs.push_back(dd);
    }
    j["divisors"] = divs;
    j["simplices"] = m.simplices;
    json levels = json::array();
    for (const auto& [tag, sections] : m.levels) {
        json lvl;
        lvl["level"] = tag;
        json secs = json::array();
        for (const auto& s : sections) secs.push_back(s.str(m.variables));
        lvl["sections"] = secs;
        levels.push_back(lvl);
    }
    j["levels"] = levels;
    if (m.weight_tags) j["weight_tags"] = *m.weight_tags;
    if (!m.metadata.empty()) j["metadata"] = m.metadata;
    return j;
}

std::string serialize_model(const ModelFile& m) { return model_to_json(m).dump(2) + "\n"; }

namespace {

struct TomlParser {
    const std::string& text;
    size_t pos = 0;

    explicit TomlParser(const std::string& t) : text(t) {}

    [[noreturn]] void err(const std::string& msg) {
        size_t line = 1;
        for (size_t i = 0; i < pos && i < text.size(); ++i)
            if (text[i] == '\n') ++line;
        fail(ErrorKind::ParseError, "TOML line " + std::to_string(line) + ": " + msg);
    }

    void skip_inline_ws() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    }
    void skip_ws_and_comments() {
        while (pos < text.size()) {
            char c = text[pos];
            if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
                ++pos;
            } else if (c == '#') {
                while (pos < text.size() && text[pos] != '\n') ++pos;
            } else {
                break;
            }
        }
    }

    std::string parse_key() {
        skip_inline_ws();
        size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_' ||
                text[pos] == '-'))
            ++pos;
        if (pos == start) err("expected a key");
        return text.substr(start, pos - start);
    }

    json parse_value() {
        skip_inline_ws();
        if (pos >= text.size()) err("expected a value");
        char c = text[pos];
        if (c == '"') {
            ++pos;
            std::string s;
            while (pos < text.size() && text[pos] != '"') {
                if (text[pos] == '\\' && pos + 1 < text.size()) {
                    ++pos;
                    char e = text[pos];
                    s += (e == 'n' ? '\n' : e == 't' ? '\t' : e);
                } else {
                    s += text[pos];
                }
                ++pos;
            }
            if (pos >= text.size()) err("unterminated string");
            ++pos;
            return json(s);
        }
        if (c == '[') {
            ++pos;
            json arr = json::array();
            skip_ws_and_comments();
            if (pos < text.size() && text[pos] == ']') {
                ++pos;
                return arr;
            }
            while (true) {
                arr.push_back(parse_value());
                skip_ws_and_comments();
                if (pos < text.size() && text[pos] == ',') {
                    ++pos;
                    skip_ws_and_comments();
                    if (pos < text.size() && text[pos] == ']') break; // trailing comma
                    continue;
                }
                break;
            }
            skip_ws_and_comments();
            if (pos >= text.size() || text[pos] != ']') err("expected ']'");
            ++pos;
            return arr;
        }
        if (c == 't' && text.compare(pos, 4, "true") == 0) {
            pos += 4;
            return json(true);
        }
        if (c == 'f' && text.compare(pos, 5, "false") == 0) {
            pos += 5;
            return json(false);
        }
        if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos;
            if (c == '-') ++pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            if (pos < text.size() && (text[pos] == '.' || text[pos] == '/'))
                err("only integers are supported; write rationals as \"p/q\" strings");
            return json(std::stol(text.substr(start, pos - start)));
        }
        err("unsupported value syntax");
    }
};

} // namespace

nlohmann::json toml_subset_to_json(const std::string& text) {
    TomlParser p(text);
    json root = json::object();
    json* target = &root;
    while (true) {
        p.skip_ws_and_comments();
        if (p.pos >= text.size()) break;
        if (text[p.pos] == '[') {
            bool array_table = p.pos + 1 < text.size() && text[p.pos + 1] == '[';
            p.pos += array_table ? 2 : 1;
            std::string name = p.parse_key();
            p.skip_inline_ws();
            if (array_table) {
                if (text.compare(p.pos, 2, "]]") != 0) p.err("expected ']]'");
                p.pos += 2;
                if (!root.contains(name)) root[name] = json::array();
                root[name].push_back(json::object());
                target = &root[name].back();
            } else {
                if (p.pos >= text.size() || text[p.pos] != ']') p.err("expected ']'");
                ++p.pos;
                root[name] = json::object();
                target = &root[name];
            }
            continue;
        }
        std::string key = p.parse_key();
        p.skip_inline_ws();
        if (p.pos >= text.size() || text[p.pos] != '=') p.err("expected '=' after key");
        ++p.pos;
        (*target)[key] = p.parse_value();
    }
    return root;
}

ModelFile parse_model_text(const std::string& text, bool toml) {
    json j;
    if (toml) {
        j = toml_subset_to_json(text);
    } else {
        j = json::parse(text, nullptr, /*allow_exceptions=*/false);
        if (j.is_discarded()) fail(ErrorKind::ParseError, "invalid JSON in model file");
    }
    return model_from_json(j);
}

ModelFile parse_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::ParseError, "cannot open model file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    bool toml = path.size() >= 5 && path.substr(path.size() - 5) == ".toml";
    return parse_model_text(buf.str(), toml);
}

} // namespace reesdiag

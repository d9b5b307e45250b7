#pragma once

/**
 * Presentation files: a JSON tree describing a ring, an algebra, an optional
 * module, and named subalgebra / submodule / weight lists.
 *
 *   {
 *     "ring": {"kind": "rationals" | "integers" | "prime_field", "p": 3},
 *     "algebra": {"rank": 3, "basis": ["e", "f", "z"], "brackets": [[0, 1, 2, "1"]]},
 *     "module": {"rank": 2, "action": [[["0", "1"], ["0", "0"]], ...]},
 *     "subalgebras": {"H": [["0", "1", "0"]]},
 *     "submodules": {"N": [["1", "0"]]},
 *     "weights": {"H": [["2"], ["-2"]]}
 *   }
 *
 * Bracket entries are [i, j, k, c] with i < j, meaning c e_k appears in [e_i, e_j];
 * repeated (i, j, k) keys are rejected. Scalars are strings ("a" or "a/b") or JSON
 * integers. A weight lists one value per canonical basis row of the named
 * subalgebra. Without a module block the adjoint module is meant.
 */

#include <json.hpp>

#include <cstddef>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "catalog.hpp"
#include "errors.hpp"
#include "lattice.hpp"
#include "lie_algebra.hpp"
#include "lie_module.hpp"
#include "scalar.hpp"
#include "submodule.hpp"

namespace liealg {

using json = nlohmann::json;

/// Rejection of a presentation file, located by line/column or by block path.
class PresentationError : public std::runtime_error {
   public:
    PresentationError(std::string location, const std::string& message)
        : std::runtime_error(location + ": " + message), location_(std::move(location)) {}
    const std::string& location() const noexcept { return location_; }

   private:
    std::string location_;
};

/// A well-formed file whose structures break an axiom or a closure requirement.
class PresentationValidationError : public std::runtime_error {
   public:
    PresentationValidationError(std::string location, const std::string& message, ValidationReport report = {})
        : std::runtime_error(location + ": " + message), location_(std::move(location)), report_(std::move(report)) {}
    const std::string& location() const noexcept { return location_; }
    const ValidationReport& report() const noexcept { return report_; }

   private:
    std::string location_;
    ValidationReport report_;
};

inline constexpr std::size_t max_presentation_rank = 64;

struct Presentation {
    ScalarRing ring;
    LieAlgebra algebra;
    std::optional<LieModule> module;
    std::map<std::string, Submodule> subalgebras;
    std::map<std::string, Submodule> submodules;
    std::map<std::string, std::vector<Vector>> weights;

    /// The declared module, or the adjoint module when none is declared.
    LieModule acting_module() const { return module ? *module : adjoint(algebra); }
};

/// "Q", "Z", "GF(p)" or "GFp".
inline ScalarRing parse_ring_name(const std::string& text) {
    if (text == "Q") return ScalarRing::rationals();
    if (text == "Z") return ScalarRing::integers();
    static const std::regex gf(R"(GF\(?([0-9]{1,10})\)?)");
    std::smatch m;
    if (std::regex_match(text, m, gf)) return ScalarRing::prime_field(std::stoull(m[1].str()));
    throw std::invalid_argument("unknown ring \"" + text + "\"");
}

inline json ring_json(const ScalarRing& ring) {
    switch (ring.kind()) {
        case RingKind::Rationals: return {{"kind", "rationals"}};
        case RingKind::Integers: return {{"kind", "integers"}};
        case RingKind::PrimeField: return {{"kind", "prime_field"}, {"p", ring.characteristic()}};
    }
    return {};
}

inline json scalar_json(const Scalar& s) { return s.to_string(); }

inline json vector_json(const Vector& v) {
    json out = json::array();
    for (const auto& s : v) out.push_back(scalar_json(s));
    return out;
}

inline json matrix_json(const Matrix& m) {
    json out = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(vector_json(m.row(i)));
    return out;
}

inline json rows_json(const std::vector<Vector>& rows) {
    json out = json::array();
    for (const auto& r : rows) out.push_back(vector_json(r));
    return out;
}

inline json submodule_json(const Submodule& s) { return {{"rank", s.rank()}, {"basis", rows_json(s.rows())}}; }

namespace detail {

inline std::string line_column(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

inline std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

inline const json& member(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object()) throw PresentationError(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw PresentationError(path, "missing \"" + key + "\"");
    return *it;
}

inline std::size_t count_value(const json& v, const std::string& path, std::size_t limit) {
    if (!v.is_number_integer() || v.get<long long>() < 0) throw PresentationError(path, "expected a non-negative integer");
    auto n = static_cast<unsigned long long>(v.get<long long>());
    if (n > limit) throw PresentationError(path, "value " + std::to_string(n) + " exceeds " + std::to_string(limit));
    return static_cast<std::size_t>(n);
}

inline Scalar scalar_value(const ScalarRing& ring, const json& v, const std::string& path) {
    try {
        if (v.is_string()) return Scalar::parse(ring, v.get<std::string>());
        if (v.is_number_integer()) return Scalar::parse(ring, v.dump());
    } catch (const std::exception& e) {
        throw PresentationError(path, e.what());
    }
    throw PresentationError(path, "expected a scalar string or integer");
}

inline Vector vector_value(const ScalarRing& ring, const json& v, std::size_t length, const std::string& path) {
    if (!v.is_array()) throw PresentationError(path, "expected an array of scalars");
    if (v.size() != length) {
        throw PresentationError(path, "expected " + std::to_string(length) + " entries, found " + std::to_string(v.size()));
    }
    Vector out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(scalar_value(ring, v[i], at(path, i)));
    return out;
}

inline Matrix matrix_value(const ScalarRing& ring, const json& v, std::size_t n, const std::string& path) {
    if (!v.is_array() || v.size() != n) throw PresentationError(path, "expected " + std::to_string(n) + " rows");
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < n; ++i) rows.push_back(vector_value(ring, v[i], n, at(path, i)));
    return Matrix::from_rows(ring, n, rows);
}

inline std::vector<Vector> generator_list(const ScalarRing& ring, const json& v, std::size_t length, const std::string& path) {
    if (!v.is_array()) throw PresentationError(path, "expected a list of generators");
    std::vector<Vector> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(vector_value(ring, v[i], length, at(path, i)));
    return out;
}

inline ScalarRing ring_value(const json& v) {
    const std::string path = "ring";
    const json& kind = member(v, "kind", path);
    if (!kind.is_string()) throw PresentationError("ring.kind", "expected a string");
    const std::string k = kind.get<std::string>();
    if (k == "rationals") return ScalarRing::rationals();
    if (k == "integers") return ScalarRing::integers();
    if (k == "prime_field") {
        const json& p = member(v, "p", path);
        if (!p.is_number_unsigned()) throw PresentationError("ring.p", "expected a positive integer");
        try {
            return ScalarRing::prime_field(p.get<std::uint64_t>());
        } catch (const std::exception& e) {
            throw PresentationError("ring.p", e.what());
        }
    }
    throw PresentationError("ring.kind", "unknown ring kind \"" + k + "\"");
}

}  // namespace detail

/**
 * Parses and validates a presentation. `ring_override` replaces the file's ring;
 * scalars are then read in the override ring.
 *
 * Throws PresentationError for malformed input (JSON syntax, shape, ranges,
 * scalars) and PresentationValidationError for axiom or closure failures.
 */
inline Presentation parse_presentation(const std::string& text, const std::optional<ScalarRing>& ring_override = {}) {
    using namespace detail;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        std::string msg = e.what();
        auto pos = msg.find("parse error");
        throw PresentationError(line_column(text, e.byte == 0 ? 0 : e.byte - 1),
                                pos == std::string::npos ? msg : msg.substr(pos));
    }
    if (!doc.is_object()) throw PresentationError("document", "expected an object at top level");
    static const std::set<std::string> known{"ring", "algebra", "module", "subalgebras", "submodules", "weights"};
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        if (!known.count(it.key())) throw PresentationError(it.key(), "unknown block");
    }

    Presentation p;
    ScalarRing file_ring = ring_value(member(doc, "ring", "document"));
    p.ring = ring_override.value_or(file_ring);

    const json& alg = member(doc, "algebra", "document");
    const std::size_t n = count_value(member(alg, "rank", "algebra"), "algebra.rank", max_presentation_rank);
    std::vector<std::string> names;
    if (alg.contains("basis")) {
        const json& b = alg["basis"];
        if (!b.is_array() || b.size() != n) throw PresentationError("algebra.basis", "expected " + std::to_string(n) + " names");
        for (std::size_t i = 0; i < n; ++i) {
            if (!b[i].is_string()) throw PresentationError(at("algebra.basis", i), "expected a string");
            names.push_back(b[i].get<std::string>());
        }
    }
    StructureTable table{p.ring, n, {}};
    std::set<std::array<std::size_t, 3>> seen;
    if (alg.contains("brackets")) {
        const json& br = alg["brackets"];
        if (!br.is_array()) throw PresentationError("algebra.brackets", "expected an array");
        for (std::size_t t = 0; t < br.size(); ++t) {
            const std::string path = at("algebra.brackets", t);
            const json& e = br[t];
            if (!e.is_array() || e.size() != 4) throw PresentationError(path, "expected [i, j, k, c]");
            std::size_t idx[3];
            for (std::size_t q = 0; q < 3; ++q) {
                idx[q] = count_value(e[q], at(path, q), max_presentation_rank);
                if (idx[q] >= n) throw PresentationError(at(path, q), "index " + std::to_string(idx[q]) + " out of range");
            }
            if (idx[0] >= idx[1]) throw PresentationError(path, "entries must have i < j");
            if (!seen.insert({idx[0], idx[1], idx[2]}).second) {
                throw PresentationError(path, "duplicate entry (" + std::to_string(idx[0]) + "," + std::to_string(idx[1]) +
                                                  "," + std::to_string(idx[2]) + ")");
            }
            Scalar c = scalar_value(p.ring, e[3], at(path, 3));
            if (!c.is_zero()) table.entries.push_back({idx[0], idx[1], idx[2], c});
        }
    }
    ValidationReport report = validate_algebra(table);
    if (!report.passed()) throw PresentationValidationError("algebra", report.summary(), report);
    p.algebra = LieAlgebra::from_table(table, names);

    if (doc.contains("module")) {
        const json& mod = doc["module"];
        const std::size_t m = count_value(member(mod, "rank", "module"), "module.rank", max_presentation_rank);
        const json& action = member(mod, "action", "module");
        if (!action.is_array() || action.size() != n) {
            throw PresentationError("module.action", "expected one matrix per algebra basis element (" + std::to_string(n) + ")");
        }
        std::vector<Matrix> mats;
        for (std::size_t k = 0; k < n; ++k) mats.push_back(matrix_value(p.ring, action[k], m, at("module.action", k)));
        ValidationReport mr = validate_module(p.algebra, mats);
        if (!mr.passed()) throw PresentationValidationError("module", mr.summary(), mr);
        p.module = LieModule::create(p.algebra, m, std::move(mats));
    }

    if (doc.contains("subalgebras")) {
        const json& subs = doc["subalgebras"];
        if (!subs.is_object()) throw PresentationError("subalgebras", "expected an object of named generator lists");
        for (auto it = subs.begin(); it != subs.end(); ++it) {
            const std::string path = "subalgebras." + it.key();
            Submodule s = canonicalize(p.ring, n, generator_list(p.ring, it.value(), n, path));
            if (!is_subalgebra(p.algebra, s)) throw PresentationValidationError(path, "not closed under the bracket");
            p.subalgebras.emplace(it.key(), std::move(s));
        }
    }
    if (doc.contains("submodules")) {
        const json& subs = doc["submodules"];
        if (!subs.is_object()) throw PresentationError("submodules", "expected an object of named generator lists");
        LieModule acting = p.acting_module();
        for (auto it = subs.begin(); it != subs.end(); ++it) {
            const std::string path = "submodules." + it.key();
            Submodule s = canonicalize(p.ring, acting.rank(), generator_list(p.ring, it.value(), acting.rank(), path));
            if (!is_invariant(acting, s)) throw PresentationValidationError(path, "not invariant under the algebra action");
            p.submodules.emplace(it.key(), std::move(s));
        }
    }
    if (doc.contains("weights")) {
        const json& ws = doc["weights"];
        if (!ws.is_object()) throw PresentationError("weights", "expected an object keyed by subalgebra name");
        for (auto it = ws.begin(); it != ws.end(); ++it) {
            const std::string path = "weights." + it.key();
            auto sub = p.subalgebras.find(it.key());
            if (sub == p.subalgebras.end()) throw PresentationError(path, "no subalgebra named \"" + it.key() + "\"");
            p.weights.emplace(it.key(), generator_list(p.ring, it.value(), sub->second.rank(), path));
        }
    }
    return p;
}

/// Canonical JSON of a presentation (sorted keys, scalars as strings).
inline json presentation_json(const Presentation& p) {
    json doc;
    doc["ring"] = ring_json(p.ring);
    json brackets = json::array();
    for (const auto& [key, v] : p.algebra.brackets()) {
        for (std::size_t k = 0; k < v.size(); ++k) {
            if (!v[k].is_zero()) brackets.push_back({key.first, key.second, k, scalar_json(v[k])});
        }
    }
    doc["algebra"] = {{"rank", p.algebra.rank()}, {"basis", p.algebra.basis_names()}, {"brackets", brackets}};
    if (p.module) {
        json action = json::array();
        for (const auto& a : p.module->action()) action.push_back(matrix_json(a));
        doc["module"] = {{"rank", p.module->rank()}, {"action", action}};
    }
    auto named = [](const std::map<std::string, Submodule>& m) {
        json out = json::object();
        for (const auto& [name, s] : m) out[name] = rows_json(s.rows());
        return out;
    };
    if (!p.subalgebras.empty()) doc["subalgebras"] = named(p.subalgebras);
    if (!p.submodules.empty()) doc["submodules"] = named(p.submodules);
    if (!p.weights.empty()) {
        json out = json::object();
        for (const auto& [name, list] : p.weights) out[name] = rows_json(list);
        doc["weights"] = out;
    }
    return doc;
}

inline std::string emit_presentation(const Presentation& p) { return presentation_json(p).dump(2) + "\n"; }

/// Presentation of a catalog member; `natural` attaches its natural module when it has one.
inline Presentation catalog_presentation(const CatalogEntry& e, bool natural) {
    Presentation p;
    p.ring = e.algebra.ring();
    p.algebra = e.algebra;
    if (natural && e.natural) p.module = e.natural;
    p.subalgebras = e.subalgebras;
    return p;
}

}  // namespace liealg

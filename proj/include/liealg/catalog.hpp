#pragma once

/**
 * Built-in example algebras used as the test corpus and exported by the CLI.
 *
 *   abelian(n)                   zero bracket on n generators
 *   heisenberg                   e, f, z with [e, f] = z
 *   strictly_upper_triangular(n) E_ij (i < j), ordered by superdiagonal then row
 *   upper_triangular(n)          E_ii first, then the strictly upper part
 *   gl(n)                        all E_ij in row-major order
 *   sl2                          e, h, f with [e,h] = -2e, [e,f] = h, [h,f] = -2f
 *   sl2_nilpotent_basis          e, f, n = e + h - f; every basis element is ad-nilpotent
 *
 * The triangular families, gl(n) and both sl2 presentations ship with their
 * natural column modules. Each entry also names a few subalgebras of interest.
 */

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "lie_algebra.hpp"
#include "lie_module.hpp"
#include "submodule.hpp"

namespace liealg {

struct CatalogEntry {
    std::string name;
    LieAlgebra algebra;
    std::optional<LieModule> natural;
    std::map<std::string, Submodule> subalgebras;
};

inline const std::vector<std::string>& catalog_names() {
    static const std::vector<std::string> names{
        "abelian", "heisenberg", "strictly_upper_triangular", "upper_triangular", "gl", "sl2", "sl2_nilpotent_basis"};
    return names;
}

inline bool catalog_takes_parameter(const std::string& name) {
    return name == "abelian" || name == "strictly_upper_triangular" || name == "upper_triangular" || name == "gl";
}

namespace detail {

inline std::string elementary_name(std::size_t i, std::size_t j, std::size_t n) {
    if (n <= 9) return "E" + std::to_string(i + 1) + std::to_string(j + 1);
    return "E" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
}

inline Matrix elementary(ScalarRing ring, std::size_t n, std::size_t i, std::size_t j) {
    Matrix m(ring, n, n);
    m(i, j) = Scalar(ring, 1);
    return m;
}

/// Span of the given E_ij inside gl(n), via [E_ij, E_kl] = d_jk E_il - d_li E_kj.
inline CatalogEntry elementary_family(const std::string& name, ScalarRing ring, std::size_t n,
                                      const std::vector<std::pair<std::size_t, std::size_t>>& basis) {
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
    std::vector<std::string> names;
    for (std::size_t b = 0; b < basis.size(); ++b) {
        index[basis[b]] = b;
        names.push_back(elementary_name(basis[b].first, basis[b].second, n));
    }
    StructureTable table{ring, basis.size(), {}};
    for (std::size_t a = 0; a < basis.size(); ++a) {
        for (std::size_t b = a + 1; b < basis.size(); ++b) {
            auto [i, j] = basis[a];
            auto [k, l] = basis[b];
            std::map<std::size_t, long> coeffs;
            if (j == k) coeffs[index.at({i, l})] += 1;
            if (l == i) coeffs[index.at({k, j})] -= 1;
            for (auto [c, v] : coeffs) {
                if (v != 0) table.entries.push_back({a, b, c, Scalar(ring, v)});
            }
        }
    }
    CatalogEntry entry{name, LieAlgebra::from_table(table, names), std::nullopt, {}};
    std::vector<Matrix> action;
    for (auto [i, j] : basis) action.push_back(elementary(ring, n, i, j));
    entry.natural = LieModule::create(entry.algebra, n, std::move(action));
    return entry;
}

inline std::vector<std::pair<std::size_t, std::size_t>> strict_upper_pairs(std::size_t n) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t d = 1; d < n; ++d) {
        for (std::size_t i = 0; i + d < n; ++i) out.emplace_back(i, i + d);
    }
    return out;
}

inline Submodule coordinate_span(ScalarRing ring, std::size_t n, const std::vector<std::size_t>& indices) {
    std::vector<Vector> rows;
    for (auto i : indices) rows.push_back(unit_vector(ring, n, i));
    return canonicalize(ring, n, rows);
}

}  // namespace detail

/**
 * Looks up a catalog member. Throws std::invalid_argument for an unknown name, a
 * missing or out-of-range parameter (1..12), or a parameter given to a fixed-rank member.
 */
inline CatalogEntry catalog(const std::string& name, ScalarRing ring, std::optional<std::size_t> parameter = {}) {
    const bool parametric = catalog_takes_parameter(name);
    if (parametric) {
        if (!parameter) throw std::invalid_argument(name + " needs a size parameter");
        if (*parameter < 1 || *parameter > 12) {
            throw std::invalid_argument("parameter " + std::to_string(*parameter) + " out of range 1..12");
        }
    } else if (parameter) {
        throw std::invalid_argument(name + " takes no parameter");
    }
    const std::size_t n = parameter.value_or(0);

    if (name == "abelian") {
        std::vector<std::string> names;
        for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
        CatalogEntry e{name, LieAlgebra::abelian(ring, n, names), std::nullopt, {}};
        e.subalgebras["first_axis"] = detail::coordinate_span(ring, n, {0});
        return e;
    }
    if (name == "heisenberg") {
        StructureTable t{ring, 3, {{0, 1, 2, Scalar(ring, 1)}}};
        CatalogEntry e{name, LieAlgebra::from_table(t, {"e", "f", "z"}), std::nullopt, {}};
        e.subalgebras["center"] = detail::coordinate_span(ring, 3, {2});
        return e;
    }
    if (name == "strictly_upper_triangular") {
        CatalogEntry e = detail::elementary_family(name, ring, n, detail::strict_upper_pairs(n));
        if (n >= 2) e.subalgebras["center"] = detail::coordinate_span(ring, e.algebra.rank(), {e.algebra.rank() - 1});
        return e;
    }
    if (name == "upper_triangular") {
        std::vector<std::pair<std::size_t, std::size_t>> basis;
        std::vector<std::size_t> diagonal;
        for (std::size_t i = 0; i < n; ++i) {
            diagonal.push_back(basis.size());
            basis.emplace_back(i, i);
        }
        for (auto p : detail::strict_upper_pairs(n)) basis.push_back(p);
        CatalogEntry e = detail::elementary_family(name, ring, n, basis);
        e.subalgebras["diagonal"] = detail::coordinate_span(ring, basis.size(), diagonal);
        return e;
    }
    if (name == "gl") {
        std::vector<std::pair<std::size_t, std::size_t>> basis;
        std::vector<std::size_t> diagonal;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) diagonal.push_back(basis.size());
                basis.emplace_back(i, j);
            }
        }
        CatalogEntry e = detail::elementary_family(name, ring, n, basis);
        e.subalgebras["diagonal"] = detail::coordinate_span(ring, basis.size(), diagonal);
        return e;
    }
    if (name == "sl2" || name == "sl2_nilpotent_basis") {
        Matrix e_m(ring, {{0, 1}, {0, 0}});
        Matrix h_m(ring, {{1, 0}, {0, -1}});
        Matrix f_m(ring, {{0, 0}, {1, 0}});
        std::vector<Matrix> basis;
        std::vector<std::string> names;
        Vector h_coords;
        if (name == "sl2") {
            basis = {e_m, h_m, f_m};
            names = {"e", "h", "f"};
            h_coords = make_vector(ring, {0, 1, 0});
        } else {
            basis = {e_m, f_m, e_m + h_m - f_m};
            names = {"e", "f", "n"};
            h_coords = make_vector(ring, {-1, 1, 1});
        }
        CatalogEntry e{name, matrix_algebra(ring, basis, names), std::nullopt, {}};
        e.natural = LieModule::create(e.algebra, 2, basis);
        e.subalgebras["H"] = canonicalize(ring, 3, {h_coords});
        return e;
    }
    throw std::invalid_argument("unknown catalog member \"" + name + "\"");
}

}  // namespace liealg

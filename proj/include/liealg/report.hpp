#pragma once

/**
 * Command dispatch for the command-line tool. Every command turns a presentation
 * file into a JSON report (sorted keys, scalars as strings) and an exit status:
 *
 *   0  computed, whatever the verdict
 *   1  usage or parse error, unsupported ring, unmet command precondition
 *   2  validation failure of the input structures
 *   3  theorem violation: an equivalence that must hold failed (always a bug)
 *
 * Reports are deterministic except for the "timings" block.
 */

#include <openssl/evp.h>

#include <chrono>
#include <cstdint>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "engel.hpp"
#include "io.hpp"
#include "roots.hpp"

namespace liealg {

inline constexpr const char* tool_name = "liealg";
inline constexpr const char* tool_version = "0.1.0";
inline constexpr std::size_t default_exponent_samples = 32;

enum ExitStatus : int { Computed = 0, UsageError = 1, ValidationFailure = 2, TheoremViolation = 3 };

inline const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names{"validate", "lcs",     "nilpotent", "engel", "flag",
                                                "ascent",   "weights", "roots",     "cartan"};
    return names;
}

struct CommandOptions {
    std::string command;
    std::optional<ScalarRing> ring;
    std::uint64_t seed = 0;
    std::size_t budget = default_witness_budget;
    std::size_t samples = default_exponent_samples;
    std::optional<std::string> subalgebra;
    std::vector<std::string> weights;  ///< comma-separated scalar lists
};

struct CommandOutcome {
    json report;
    int status = Computed;
    std::string diagnostic;
};

inline std::string sha256_hex(const std::string& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 digest failed");
    }
    std::ostringstream out;
    for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return out.str();
}

/// The report with its timing block replaced, for byte comparisons across runs.
inline json mask_timings(json report) {
    if (report.contains("timings")) report["timings"] = "masked";
    return report;
}

inline std::string dump_report(const json& report) { return report.dump(2) + "\n"; }

namespace detail {

class TheoremFailure : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

class UsageFailure : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

inline json chain_json(const LcsChain& chain) {
    json terms = json::array();
    for (const auto& t : chain.terms) terms.push_back(submodule_json(t.carrier()));
    json out{{"terms", terms},
             {"verdict", chain.nilpotent() ? "terminated" : "stabilized"},
             {"index", chain.index}};
    if (!chain.nilpotent()) out["exact_fixed_point"] = chain.exact_fixed_point();
    return out;
}

inline json verdict_certificate(const NilpotencyVerdict& v) {
    json out{{"chain", chain_json(v.chain)}};
    out["self_reproducing"] = v.self_reproducing ? submodule_json(v.self_reproducing->carrier()) : json(nullptr);
    return out;
}

inline json violations_json(const ValidationReport& r) {
    json out = json::array();
    for (const auto& v : r.violations) {
        out.push_back({{"axiom", axiom_name(v.axiom)},
                       {"tuple", v.tuple},
                       {"lhs", matrix_json(v.lhs)},
                       {"rhs", matrix_json(v.rhs)}});
    }
    return out;
}

inline json algebra_json(const LieAlgebra& a) {
    json brackets = json::array();
    for (const auto& [key, v] : a.brackets()) {
        for (std::size_t k = 0; k < v.size(); ++k) {
            if (!v[k].is_zero()) brackets.push_back({key.first, key.second, k, scalar_json(v[k])});
        }
    }
    return {{"rank", a.rank()}, {"basis", a.basis_names()}, {"brackets", brackets}};
}

inline json action_json(const std::vector<Matrix>& mats) {
    json out = json::array();
    for (const auto& m : mats) out.push_back(matrix_json(m));
    return out;
}

inline void require(bool ok, const std::string& what) {
    if (!ok) throw TheoremFailure(what);
}

inline NilpotentSubalgebra selected_subalgebra(const Presentation& p, const CommandOptions& opt) {
    if (!opt.subalgebra) throw UsageFailure(opt.command + " needs --subalgebra <name>");
    auto it = p.subalgebras.find(*opt.subalgebra);
    if (it == p.subalgebras.end()) throw UsageFailure("no subalgebra named \"" + *opt.subalgebra + "\" in the input");
    return NilpotentSubalgebra::make(p.algebra, it->second);
}

inline std::optional<std::vector<Weight>> selected_weights(const Presentation& p, const CommandOptions& opt,
                                                           const NilpotentSubalgebra& h) {
    if (!opt.weights.empty()) {
        std::vector<Weight> out;
        for (const auto& text : opt.weights) {
            Weight w;
            std::stringstream in(text);
            std::string item;
            while (std::getline(in, item, ',')) w.push_back(Scalar::parse(p.ring, item));
            if (w.size() != h.rank()) {
                throw UsageFailure("weight \"" + text + "\" has " + std::to_string(w.size()) + " entries; H has rank " +
                                   std::to_string(h.rank()));
            }
            out.push_back(std::move(w));
        }
        return out;
    }
    auto it = p.weights.find(*opt.subalgebra);
    if (it != p.weights.end()) return it->second;
    return std::nullopt;
}

inline json weight_json(const Weight& w, const std::vector<std::string>& labels) {
    json out = json::object();
    for (std::size_t i = 0; i < w.size(); ++i) out[labels[i]] = scalar_json(w[i]);
    return out;
}

inline void decomposition(json& report, const Presentation& p, const CommandOptions& opt, const LieModule& mod) {
    NilpotentSubalgebra h = selected_subalgebra(p, opt);
    const auto& labels = h.as_algebra().basis_names();
    RootSpaceDecomposition dec = weight_decomposition(restrict(mod, h), selected_weights(p, opt, h));
    json spaces = json::array();
    std::size_t total = 0;
    for (const auto& [w, space] : dec.spaces) {
        spaces.push_back({{"weight", weight_json(w, labels)}, {"space", submodule_json(space.carrier())}});
        total += space.rank();
    }
    require(total <= mod.rank(), "weight spaces for distinct weights are not independent");
    report["verdict"] = {{"spaces", dec.spaces.size()}, {"spans_module", dec.spans_module}};
    report["certificate"] = {{"subalgebra", submodule_json(h.carrier())},
                             {"subalgebra_basis", labels},
                             {"module_rank", mod.rank()},
                             {"weight_spaces", spaces}};
}

inline void run(json& report, const Presentation& p, const CommandOptions& opt) {
    const LieModule mod = p.acting_module();
    const std::string& cmd = opt.command;
    if (cmd == "validate") {
        report["verdict"] = {{"result", "valid"}};
        json subs = json::object();
        for (const auto& [name, s] : p.subalgebras) subs[name] = submodule_json(s);
        json mods = json::object();
        for (const auto& [name, s] : p.submodules) mods[name] = submodule_json(s);
        report["certificate"] = {{"algebra", algebra_json(p.algebra)},
                                 {"module", p.module ? "declared" : "adjoint"},
                                 {"module_rank", mod.rank()},
                                 {"subalgebras", subs},
                                 {"submodules", mods},
                                 {"violations", json::array()}};
    } else if (cmd == "lcs") {
        LcsChain chain = lower_central_series(mod);
        report["verdict"] = {{"result", chain.nilpotent() ? "terminated" : "stabilized"}, {"index", chain.index}};
        report["certificate"] = {{"chain", chain_json(chain)}};
    } else if (cmd == "nilpotent") {
        NilpotencyVerdict v = is_nilpotent(mod);
        bool verified = verify_certificate(mod, v);
        report["verdict"] = {{"result", v.nilpotent ? "nilpotent" : "not nilpotent"},
                             {"index", v.index()},
                             {"certificate_verified", verified}};
        report["certificate"] = verdict_certificate(v);
        require(verified, "nilpotency certificate failed re-verification");
    } else if (cmd == "engel") {
        EngelVerdict v = check_forall_nilpotent(mod, opt.budget, opt.seed);
        json cert = verdict_certificate(v.lcs);
        json verdict{{"result", v.acts_nilpotently ? "nilpotent" : "not nilpotent"}, {"index", v.lcs.index()}};
        if (v.acts_nilpotently) {
            if (v.flag) {
                bool ok = verify_flag(mod, *v.flag);
                cert["flag"] = {{"block_sizes", v.flag->block_sizes},
                                {"change_of_basis", matrix_json(v.flag->change_of_basis)},
                                {"conjugated_action", action_json(conjugated_action(mod, *v.flag))},
                                {"verified", ok}};
                require(ok, "Engel flag failed re-verification");
            }
            UniformExponentReport u = uniform_exponent_check(mod, opt.samples, opt.seed);
            cert["uniform_exponent"] = {{"exponent", u.uniform_exponent},
                                        {"elements", rows_json(u.elements)},
                                        {"minimal_exponents", u.minimal_exponents},
                                        {"all_vanish", u.all_vanish}};
            verdict["uniform_exponent_holds"] = u.all_vanish;
            require(u.all_vanish, "uniform exponent failed on a sample");
        } else {
            const WitnessSearchResult& s = *v.search;
            verdict["witness_found"] = !s.exhausted();
            json w{{"candidates_tried", s.candidates_tried}, {"budget", opt.budget}, {"exhausted", s.exhausted()}};
            if (s.witness) {
                w["element"] = vector_json(s.witness->element);
                w["stage"] = s.witness->stage;
                w["endomorphism"] = matrix_json(s.witness->endo);
                w["evidence"] = matrix_json(s.witness->evidence);
                require(!s.witness->evidence.is_zero(), "witness endomorphism is nilpotent");
            }
            cert["witness"] = w;
        }
        report["verdict"] = verdict;
        report["certificate"] = cert;
    } else if (cmd == "flag") {
        auto result = engel_flag(mod);
        bool lcs_nilpotent = lower_central_series(mod).nilpotent();
        if (auto* f = std::get_if<EngelFlag>(&result)) {
            json flag = json::array();
            for (const auto& s : f->flag) flag.push_back(submodule_json(s.carrier()));
            bool ok = verify_flag(mod, *f);
            report["verdict"] = {{"result", "nilpotent"}, {"verified", ok}};
            report["certificate"] = {{"flag", flag},
                                     {"block_sizes", f->block_sizes},
                                     {"change_of_basis", matrix_json(f->change_of_basis)},
                                     {"conjugated_action", action_json(conjugated_action(mod, *f))}};
            require(ok, "Engel flag failed re-verification");
            require(lcs_nilpotent, "flag exists for a module whose lower central series does not terminate");
        } else {
            const auto& r = std::get<FlagRefutation>(result);
            report["verdict"] = {{"result", "not nilpotent"}, {"step", r.step}};
            report["certificate"] = {{"reached", submodule_json(r.reached.carrier())},
                                     {"quotient_rank", r.offending.module.rank()},
                                     {"quotient_action", action_json(r.offending.module.action())},
                                     {"projection", matrix_json(r.offending.projection)},
                                     {"section", matrix_json(r.offending.section)}};
            require(!lcs_nilpotent, "nilpotent module admits no Engel flag");
        }
    } else if (cmd == "ascent") {
        AscentResult r = engelian_ascent(mod);
        const LieAlgebra& lp = r.range.image_algebra;
        json steps = json::array();
        for (const auto& s : r.steps) {
            bool ok = verify_ascent_step(lp, s);
            steps.push_back({{"k", submodule_json(s.k)},
                             {"x", vector_json(s.x)},
                             {"killed_class", vector_json(s.m0_class)},
                             {"k_next", submodule_json(s.k_next)},
                             {"verified", ok}});
            require(ok, "ascent step failed re-verification");
        }
        bool nilpotent = lower_central_series(mod).nilpotent();
        report["verdict"] = {{"result", r.complete() ? "complete" : "stopped"},
                             {"steps", r.steps.size()},
                             {"image_rank", lp.rank()}};
        json cert{{"image_algebra", algebra_json(lp)},
                  {"image_basis", action_json(r.range.module.action())},
                  {"phi", matrix_json(r.range.phi)},
                  {"steps", steps}};
        if (r.failure) {
            cert["failure"] = {{"step", r.failure->step},
                               {"k", submodule_json(r.failure->k)},
                               {"quotient_lcs", chain_json(r.failure->quotient_verdict.chain)}};
        }
        report["certificate"] = cert;
        if (nilpotent) require(r.complete(), "ascent stopped on a nilpotent module");
        if (r.complete()) require(r.steps.size() == lp.rank(), "ascent chain length differs from the image rank");
    } else if (cmd == "weights") {
        decomposition(report, p, opt, mod);
    } else if (cmd == "roots") {
        decomposition(report, p, opt, adjoint(p.algebra));
    } else if (cmd == "cartan") {
        NilpotentSubalgebra h = selected_subalgebra(p, opt);
        CartanReport c = cartan_iff_zero_root(p.algebra, h);
        report["verdict"] = {{"zero_root_equals_h", c.zero_root_equals_h},
                             {"is_cartan", c.is_cartan},
                             {"consistent", c.consistent()}};
        report["certificate"] = {{"subalgebra", submodule_json(h.carrier())},
                                 {"zero_root", submodule_json(c.zero_root)},
                                 {"normalizer", submodule_json(c.normalizer)},
                                 {"h_in_zero_root", c.h_in_zero_root},
                                 {"zero_root_nilpotency", verdict_certificate(c.zero_root_nilpotency)}};
        require(c.consistent(), "zero root subalgebra and Cartan test disagree");
    } else {
        throw UsageFailure("unknown command \"" + cmd + "\"");
    }
}

}  // namespace detail

/// Exit status, location and message for an exception escaping a command.
struct Failure {
    int status = UsageError;
    std::string location;
    std::string message;
    ValidationReport violations;
};

inline Failure classify_failure(std::exception_ptr error) {
    auto tail = [](const std::string& what, const std::string& location) {
        return what.size() > location.size() + 2 ? what.substr(location.size() + 2) : what;
    };
    try {
        std::rethrow_exception(error);
    } catch (const PresentationError& e) {
        return {UsageError, e.location(), tail(e.what(), e.location()), {}};
    } catch (const PresentationValidationError& e) {
        return {ValidationFailure, e.location(), tail(e.what(), e.location()), e.report()};
    } catch (const ValidationError& e) {
        return {ValidationFailure, "", e.what(), e.report()};
    } catch (const detail::TheoremFailure& e) {
        return {TheoremViolation, "", std::string("theorem violation: ") + e.what(), {}};
    } catch (const InvariantViolation& e) {
        return {TheoremViolation, "", std::string("theorem violation: ") + e.what(), {}};
    } catch (const std::exception& e) {
        return {UsageError, "", e.what(), {}};
    }
}

/// Runs one command on the text of a presentation file.
inline CommandOutcome run_command(const CommandOptions& opt, const std::string& input_text) {
    const auto start = std::chrono::steady_clock::now();
    CommandOutcome out;
    json& report = out.report;
    report["tool"] = {{"name", tool_name}, {"version", tool_version}};
    report["command"] = opt.command;
    report["input"] = {{"sha256", sha256_hex(input_text)}, {"bytes", input_text.size()}};
    json options{{"seed", opt.seed}, {"budget", opt.budget}, {"samples", opt.samples}};
    options["ring"] = opt.ring ? json(opt.ring->name()) : json(nullptr);
    options["subalgebra"] = opt.subalgebra ? json(*opt.subalgebra) : json(nullptr);
    options["weights"] = opt.weights;
    report["options"] = options;

    try {
        Presentation p = parse_presentation(input_text, opt.ring);
        report["ring"] = p.ring.name();
        detail::run(report, p, opt);
    } catch (...) {
        Failure f = classify_failure(std::current_exception());
        out.status = f.status;
        out.diagnostic = f.location.empty() ? f.message : f.location + ": " + f.message;
        report["error"] = {{"location", f.location}, {"message", f.message}};
        if (f.status == ValidationFailure) {
            report["verdict"] = {{"result", "invalid"}};
            report["certificate"] = {{"violations", detail::violations_json(f.violations)}};
        }
    }
    report["status"] = out.status;
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    report["timings"] = {{"total_ms", ms}};
    return out;
}

/// A built-in example exported by `catalog --all`.
struct CatalogExample {
    std::string stem;
    std::string name;
    std::optional<std::size_t> parameter;
    ScalarRing ring;
    bool natural = false;
    /// Supplied weight lists per subalgebra, for ranks where no scan is available.
    std::map<std::string, std::vector<std::vector<long>>> weights = {};
};

inline std::vector<CatalogExample> catalog_examples() {
    const ScalarRing q = ScalarRing::rationals(), z = ScalarRing::integers();
    const ScalarRing f2 = ScalarRing::prime_field(2), f3 = ScalarRing::prime_field(3);
    return {
        {"abelian2_q", "abelian", 2, q, false},
        {"abelian2_q_trivial", "abelian", 2, q, true},
        {"heisenberg_q", "heisenberg", std::nullopt, q, false},
        {"heisenberg_z", "heisenberg", std::nullopt, z, false},
        {"heisenberg_gf3", "heisenberg", std::nullopt, f3, false},
        {"strictly_upper_triangular3_q", "strictly_upper_triangular", 3, q, false},
        {"strictly_upper_triangular3_q_natural", "strictly_upper_triangular", 3, q, true},
        {"strictly_upper_triangular4_q", "strictly_upper_triangular", 4, q, false},
        {"strictly_upper_triangular4_q_natural", "strictly_upper_triangular", 4, q, true},
        {"strictly_upper_triangular5_q", "strictly_upper_triangular", 5, q, false},
        {"strictly_upper_triangular4_gf2", "strictly_upper_triangular", 4, f2, false},
        {"upper_triangular2_q", "upper_triangular", 2, q, false, {{"diagonal", {{0, 0}, {1, -1}}}}},
        {"upper_triangular3_q_natural", "upper_triangular", 3, q, true},
        {"gl2_q", "gl", 2, q, false, {{"diagonal", {{0, 0}, {1, -1}, {-1, 1}}}}},
        {"sl2_q_adjoint", "sl2", std::nullopt, q, false},
        {"sl2_q_natural", "sl2", std::nullopt, q, true},
        {"sl2_z", "sl2", std::nullopt, z, false},
        {"sl2_gf2", "sl2", std::nullopt, f2, false},
        {"sl2_gf3", "sl2", std::nullopt, f3, false},
        {"sl2_nilpotent_basis_q", "sl2_nilpotent_basis", std::nullopt, q, false},
    };
}

inline Presentation example_presentation(const CatalogExample& e) {
    CatalogEntry entry = catalog(e.name, e.ring, e.parameter);
    Presentation p = catalog_presentation(entry, e.natural);
    // a trivial module stands in where no natural module exists
    if (e.natural && !entry.natural) p.module = LieModule::trivial(entry.algebra, entry.algebra.rank());
    for (const auto& [name, list] : e.weights) {
        auto& out = p.weights[name];
        for (const auto& w : list) {
            Weight v;
            for (long c : w) v.emplace_back(e.ring, c);
            out.push_back(std::move(v));
        }
    }
    return p;
}

}  // namespace liealg

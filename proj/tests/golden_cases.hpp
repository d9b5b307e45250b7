#pragma once

// Golden-report manifest and a small runner for the command-line binary.

#include <sys/wait.h>

#include <array>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "liealg/report.hpp"

namespace golden {

struct Case {
    std::string stem;     // input file stem
    std::string command;
    std::vector<std::string> args;

    std::string id() const {
        std::string s = stem + "." + command;
        for (const auto& a : args) {
            if (a.rfind("--", 0) == 0) continue;
            std::string part;
            for (char c : a) part += (std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
            s += "." + part;
        }
        return s;
    }
};

inline std::filesystem::path root() { return LIEALG_GOLDEN_DIR; }
inline std::filesystem::path input_path(const std::string& stem) { return root() / "inputs" / (stem + ".json"); }
inline std::filesystem::path report_path(const Case& c) { return root() / "reports" / (c.id() + ".json"); }

/// Every built-in example crossed with every command that applies to it.
inline std::vector<Case> cases() {
    using namespace liealg;
    std::vector<Case> out;
    for (const auto& e : catalog_examples()) {
        Presentation p = example_presentation(e);
        const bool field = p.ring.is_field();
        for (std::string cmd : {"validate", "lcs", "nilpotent", "engel"}) out.push_back({e.stem, cmd, {}});
        if (field) {
            out.push_back({e.stem, "flag", {}});
            out.push_back({e.stem, "ascent", {}});
        }
        for (const auto& [name, h] : p.subalgebras) {
            out.push_back({e.stem, "cartan", {"--subalgebra", name}});
            const bool scannable = h.rank() <= 1 || p.ring.kind() == RingKind::PrimeField || p.weights.count(name);
            if (!field || !scannable) continue;
            out.push_back({e.stem, "roots", {"--subalgebra", name}});
            out.push_back({e.stem, "weights", {"--subalgebra", name}});
        }
    }
    // explicit option paths
    out.push_back({"gl2_q", "weights", {"--subalgebra", "diagonal", "--weight", "1,-1", "--weight", "0,0"}});
    out.push_back({"sl2_q_adjoint", "roots", {"--subalgebra", "H", "--weight", "2"}});
    out.push_back({"sl2_nilpotent_basis_q", "engel", {"--seed", "7", "--budget", "16"}});
    out.push_back({"strictly_upper_triangular4_q_natural", "engel", {"--seed", "3", "--samples", "8"}});
    out.push_back({"sl2_q_adjoint", "nilpotent", {"--ring", "GF(3)"}});
    return out;
}

struct Run {
    int status = -1;
    std::string out;
};

inline std::string quote(const std::string& s) {
    std::string q = "'";
    for (char c : s) q += (c == '\'') ? std::string("'\\''") : std::string(1, c);
    return q + "'";
}

/// Runs the tool with arguments; stdout is captured, stderr discarded.
inline Run run_cli(const std::vector<std::string>& args, bool keep_stderr = false) {
    std::string cmd = quote(LIEALG_CLI);
    for (const auto& a : args) cmd += " " + quote(a);
    cmd += keep_stderr ? " 2>&1" : " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    int st = pclose(pipe);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

inline Run run_case(const Case& c) {
    std::vector<std::string> args{c.command, input_path(c.stem).string()};
    args.insert(args.end(), c.args.begin(), c.args.end());
    return run_cli(args);
}

/// Masked canonical text of a report, or the raw text if it is not JSON.
inline std::string masked(const std::string& report_text) {
    try {
        return liealg::dump_report(liealg::mask_timings(liealg::json::parse(report_text)));
    } catch (const std::exception&) {
        return report_text;
    }
}

inline std::string read(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace golden

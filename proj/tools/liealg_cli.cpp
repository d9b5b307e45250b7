#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "liealg/liealg.hpp"
#include "liealg/report.hpp"

namespace {

using namespace liealg;

bool read_file(const std::string& path, std::string& text) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
    return true;
}

bool write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return static_cast<bool>(std::cout);
    }
    std::ofstream out(path, std::ios::binary);
    out << text;
    return static_cast<bool>(out);
}

int export_catalog(const std::string& name, std::optional<std::size_t> param, std::optional<ScalarRing> ring,
                   bool natural, bool all, const std::string& output) {
    if (all) {
        if (output.empty()) {
            std::cerr << "catalog --all needs --output <directory>\n";
            return UsageError;
        }
        std::filesystem::create_directories(output);
        for (const auto& e : catalog_examples()) {
            const auto path = std::filesystem::path(output) / (e.stem + ".json");
            if (!write_text(path.string(), emit_presentation(example_presentation(e)))) {
                std::cerr << path.string() << ": cannot write\n";
                return UsageError;
            }
        }
        return Computed;
    }
    if (name.empty()) {
        std::cerr << "catalog needs a member name or --all; members:";
        for (const auto& n : catalog_names()) std::cerr << ' ' << n;
        std::cerr << '\n';
        return UsageError;
    }
    try {
        CatalogEntry e = catalog(name, ring.value_or(ScalarRing::rationals()), param);
        if (natural && !e.natural) {
            std::cerr << name << " has no natural module\n";
            return UsageError;
        }
        if (!write_text(output, emit_presentation(catalog_presentation(e, natural)))) {
            std::cerr << output << ": cannot write\n";
            return UsageError;
        }
    } catch (const std::exception& ex) {
        std::cerr << ex.what() << '\n';
        return UsageError;
    }
    return Computed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Lie algebra and Lie module computations"};
    app.set_version_flag("--version", std::string(tool_version));
    app.require_subcommand(1);

    std::string ring_text, output, input, subalgebra;
    std::uint64_t seed = 0;
    std::size_t budget = default_witness_budget;
    std::size_t samples = default_exponent_samples;
    std::vector<std::string> weights;

    for (const auto& name : command_names()) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("input", input, "Presentation file")->required();
        sub->add_option("--ring", ring_text, "Override the ring: Q, Z or GF(p)");
        sub->add_option("--seed", seed, "Seed for randomized steps")->capture_default_str();
        sub->add_option("--budget", budget, "Random candidates for the witness search")->capture_default_str();
        sub->add_option("--samples", samples, "Sampled elements for the uniform exponent check")->capture_default_str();
        sub->add_option("--output", output, "Report file (default: standard output)");
        sub->add_option("--subalgebra", subalgebra, "Name of a subalgebra block");
        sub->add_option("--weight", weights, "Weight as a comma-separated scalar list (repeatable)");
    }

    std::string member;
    std::size_t param = 0;
    bool natural = false, all = false;
    CLI::App* cat = app.add_subcommand("catalog", "Write presentation files for built-in examples");
    cat->add_option("name", member, "Catalog member");
    cat->add_option("--param", param, "Size parameter for parameterized members");
    cat->add_option("--ring", ring_text, "Q, Z or GF(p)");
    cat->add_flag("--natural", natural, "Include the natural module");
    cat->add_flag("--all", all, "Export every built-in example into the --output directory");
    cat->add_option("--output", output, "Output file, or directory with --all");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? Computed : UsageError;
    }

    std::optional<ScalarRing> ring;
    if (!ring_text.empty()) {
        try {
            ring = parse_ring_name(ring_text);
        } catch (const std::exception& e) {
            std::cerr << "--ring: " << e.what() << '\n';
            return UsageError;
        }
    }

    if (cat->parsed()) {
        std::optional<std::size_t> p;
        if (cat->count("--param")) p = param;
        return export_catalog(member, p, ring, natural, all, output);
    }

    CommandOptions opt;
    for (auto* sub : app.get_subcommands()) opt.command = sub->get_name();
    opt.ring = ring;
    opt.seed = seed;
    opt.budget = budget;
    opt.samples = samples;
    if (!subalgebra.empty()) opt.subalgebra = subalgebra;
    opt.weights = weights;

    std::string text;
    if (!read_file(input, text)) {
        std::cerr << input << ": cannot read\n";
        return UsageError;
    }
    CommandOutcome outcome = run_command(opt, text);
    if (!outcome.diagnostic.empty()) std::cerr << input << ": " << outcome.diagnostic << '\n';
    if (!write_text(output, dump_report(outcome.report))) {
        std::cerr << output << ": cannot write\n";
        return UsageError;
    }
    return outcome.status;
}

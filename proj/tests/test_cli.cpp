#include <catch_amalgamated.hpp>

#include <unistd.h>

#include <random>

#include "golden_cases.hpp"

using namespace liealg;
namespace fs = std::filesystem;

namespace {

const ScalarRing QQ = ScalarRing::rationals();

std::string exported(const std::string& stem) {
    for (const auto& e : catalog_examples()) {
        if (e.stem == stem) return emit_presentation(example_presentation(e));
    }
    throw std::invalid_argument("unknown example " + stem);
}

std::string sl2_text(const std::string& brackets, const std::string& ring = R"({"kind": "rationals"})") {
    return R"({"ring": )" + ring + R"(, "algebra": {"rank": 3, "basis": ["e", "h", "f"], "brackets": )" + brackets +
           "}}";
}

const std::string sl2_brackets = R"([[0, 1, 0, "-2"], [0, 2, 1, "1"], [1, 2, 2, "-2"]])";
const std::string sl2_corrupted = R"([[0, 1, 0, "-2"], [0, 2, 1, "1"], [1, 2, 2, "2"]])";

std::string location_of(const std::string& text, const std::optional<ScalarRing>& ring = {}) {
    try {
        parse_presentation(text, ring);
    } catch (const PresentationError& e) {
        return e.location();
    } catch (const PresentationValidationError& e) {
        return "invalid:" + e.location();
    }
    return "accepted";
}

std::string message_of(const std::string& text) {
    try {
        parse_presentation(text);
    } catch (const std::exception& e) {
        return e.what();
    }
    return "";
}

/// Temporary file holding `text`, removed on destruction.
struct TempFile {
    fs::path path;
    explicit TempFile(const std::string& text, const std::string& name = "input.json") {
        static int counter = 0;
        path = fs::temp_directory_path() / ("liealg_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + "_" + name);
        std::ofstream(path, std::ios::binary) << text;
    }
    ~TempFile() { fs::remove(path); }
    std::string str() const { return path.string(); }
};

json report_of(const golden::Run& r) { return json::parse(r.out); }

}  // namespace

TEST_CASE("presentations round-trip", "[cli]") {
    for (const auto& e : catalog_examples()) {
        CAPTURE(e.stem);
        Presentation x = example_presentation(e);
        Presentation y = parse_presentation(emit_presentation(x));
        CHECK(y.ring == x.ring);
        CHECK(y.algebra.brackets() == x.algebra.brackets());
        CHECK(y.algebra.basis_names() == x.algebra.basis_names());
        CHECK(y.module.has_value() == x.module.has_value());
        if (x.module) CHECK(y.module->action() == x.module->action());
        CHECK(y.subalgebras == x.subalgebras);
        CHECK(y.weights == x.weights);
        CHECK(emit_presentation(y) == emit_presentation(x));
    }
    auto heis = parse_presentation(exported("heisenberg_q"));
    CHECK(heis.algebra.basis_names() == std::vector<std::string>{"e", "f", "z"});
    CHECK(heis.algebra.basis_bracket(0, 1) == unit_vector(QQ, 3, 2));
}

TEST_CASE("scalars parse from strings and integers", "[cli]") {
    auto p = parse_presentation(sl2_text(R"([[0, 1, 0, -2], [0, 2, 1, 1], [1, 2, 2, "-4/2"]])"));
    CHECK(p.algebra.brackets() == parse_presentation(sl2_text(sl2_brackets)).algebra.brackets());
    CHECK(location_of(sl2_text(R"([[0, 1, 0, 1.5]])")) == "algebra.brackets[0][3]");
    CHECK(location_of(sl2_text(R"([[0, 1, 0, "1/0"]])")) == "algebra.brackets[0][3]");
    CHECK(location_of(sl2_text(R"([[0, 1, 0, "x"]])")) == "algebra.brackets[0][3]");
}

TEST_CASE("ring descriptors", "[cli]") {
    CHECK(message_of(sl2_text("[]", R"({"kind": "prime_field", "p": 4})")).find("4 is not prime") != std::string::npos);
    CHECK(location_of(sl2_text("[]", R"({"kind": "prime_field", "p": 4})")) == "ring.p");
    CHECK(location_of(sl2_text("[]", R"({"kind": "reals"})")) == "ring.kind");
    CHECK(location_of(sl2_text("[]", R"({"kind": "prime_field"})")) == "ring");
    CHECK_THROWS_WITH(parse_ring_name("GF(4)"), Catch::Matchers::ContainsSubstring("4 is not prime"));
    CHECK(parse_ring_name("GF(7)") == ScalarRing::prime_field(7));
    CHECK(parse_ring_name("GF5") == ScalarRing::prime_field(5));
    CHECK(parse_ring_name("Z") == ScalarRing::integers());
    CHECK_THROWS(parse_ring_name("R"));

    // the override reads scalars in the new ring
    auto f2 = parse_presentation(sl2_text(sl2_brackets), ScalarRing::prime_field(2));
    CHECK(f2.ring == ScalarRing::prime_field(2));
    CHECK(f2.algebra.brackets().size() == 1);  // -2 vanishes mod 2
    CHECK(location_of(sl2_text(R"([[0, 1, 0, "1/2"]])"), ScalarRing::integers()) == "algebra.brackets[0][3]");
}

TEST_CASE("located diagnostics", "[cli]") {
    CHECK(location_of("{\n  \"ring\": {\"kind\": \"rationals\"},\n  \"algebra\": {\"rank\": 3,,}\n}") == "line 3, column 25");
    CHECK(location_of("") == "line 1, column 1");
    CHECK(location_of("[1, 2]") == "document");
    CHECK(location_of(R"({"ring": {"kind": "rationals"}})") == "document");
    CHECK(location_of(R"({"ring": {"kind": "rationals"}, "algebra": {"rank": 1}, "extra": 1})") == "extra");
    CHECK(location_of(sl2_text(R"([[1, 0, 0, "1"]])")) == "algebra.brackets[0]");
    CHECK(location_of(sl2_text(R"([[0, 0, 0, "1"]])")) == "algebra.brackets[0]");
    CHECK(location_of(sl2_text(R"([[0, 1, 0, "1"], [0, 1, 0, "2"]])")) == "algebra.brackets[1]");
    CHECK(message_of(sl2_text(R"([[0, 1, 0, "1"], [0, 1, 0, "2"]])")).find("duplicate entry (0,1,0)") != std::string::npos);
    CHECK(location_of(sl2_text(R"([[0, 1, 3, "1"]])")) == "algebra.brackets[0][2]");
    CHECK(location_of(sl2_text(R"([[0, 1, "1"]])")) == "algebra.brackets[0]");
    CHECK(location_of(R"({"ring": {"kind": "rationals"}, "algebra": {"rank": 100}})") == "algebra.rank");
    CHECK(location_of(R"({"ring": {"kind": "rationals"}, "algebra": {"rank": 2, "basis": ["a"]}})") == "algebra.basis");

    const std::string ab = R"({"ring": {"kind": "rationals"}, "algebra": {"rank": 1}, )";
    CHECK(location_of(ab + R"("module": {"rank": 2, "action": []}})") == "module.action");
    CHECK(location_of(ab + R"("module": {"rank": 2, "action": [[["1", "0"]]]}})") == "module.action[0]");
    CHECK(location_of(ab + R"("module": {"rank": 2, "action": [[["1", "0"], ["0"]]]}})") == "module.action[0][1]");
    CHECK(location_of(ab + R"("module": {"rank": 1, "action": [[["5"]]]}, "submodules": {"N": [["1"]]}})") == "accepted");
    CHECK(location_of(ab + R"("subalgebras": {"H": [["1", "2"]]}})") == "subalgebras.H[0]");
    CHECK(location_of(ab + R"("subalgebras": {"H": [["1"]]}, "weights": {"K": [["1"]]}})") == "weights.K");
    CHECK(location_of(ab + R"("subalgebras": {"H": [["1"]]}, "weights": {"H": [["1", "2"]]}})") == "weights.H[0]");
}

TEST_CASE("validation failures name the offending block and tuple", "[cli]") {
    CHECK(location_of(sl2_text(sl2_corrupted)) == "invalid:algebra");
    try {
        parse_presentation(sl2_text(sl2_corrupted));
        FAIL("corrupted table accepted");
    } catch (const PresentationValidationError& e) {
        REQUIRE_FALSE(e.report().passed());
        CHECK(e.report().violations.front().tuple == std::vector<std::size_t>{0, 1, 2});
    }
    // phi_h = identity on a rank-1 natural module breaks the commutator identity
    const std::string bad_module = R"({"ring": {"kind": "rationals"}, "algebra": {"rank": 3, "brackets": )" + sl2_brackets +
                                   R"(}, "module": {"rank": 1, "action": [[["0"]], [["1"]], [["0"]]]}})";
    CHECK(location_of(bad_module) == "invalid:module");
    // e does not close with h
    CHECK(location_of(R"({"ring": {"kind": "rationals"}, "algebra": {"rank": 3, "brackets": )" + sl2_brackets +
                      R"(}, "subalgebras": {"X": [["1", "0", "0"], ["0", "0", "1"]]}})") == "invalid:subalgebras.X");
    CHECK(location_of(R"({"ring": {"kind": "rationals"}, "algebra": {"rank": 3, "brackets": )" + sl2_brackets +
                      R"(}, "submodules": {"N": [["0", "1", "0"]]}})") == "invalid:submodules.N");
}

TEST_CASE("exception classification", "[cli]") {
    auto status = [](auto e) { return classify_failure(std::make_exception_ptr(e)).status; };
    CHECK(status(PresentationError("x", "y")) == UsageError);
    CHECK(status(PresentationValidationError("x", "y")) == ValidationFailure);
    CHECK(status(InvariantViolation("broken")) == TheoremViolation);
    CHECK(status(detail::TheoremFailure("broken")) == TheoremViolation);
    CHECK(status(UnsupportedRingError("Z")) == UsageError);
    CHECK(status(PreconditionError("p")) == UsageError);
    auto f = classify_failure(std::make_exception_ptr(PresentationError("algebra.rank", "too big")));
    CHECK(f.location == "algebra.rank");
    CHECK(f.message == "too big");
}

TEST_CASE("reports of the reference commands", "[cli]") {
    TempFile heis(exported("heisenberg_q"));
    auto r = golden::run_cli({"nilpotent", heis.str()});
    REQUIRE(r.status == 0);
    json rep = report_of(r);
    CHECK(rep["verdict"]["result"] == "nilpotent");
    CHECK(rep["verdict"]["index"] == 2);
    CHECK(rep["certificate"]["chain"]["terms"].size() == 3);
    CHECK(rep["certificate"]["chain"]["terms"][1]["basis"] == json::parse(R"([["0", "0", "1"]])"));
    CHECK(rep["tool"]["version"] == tool_version);
    CHECK(rep["input"]["sha256"] == sha256_hex(exported("heisenberg_q")));
    CHECK(rep.contains("timings"));

    TempFile sl2(exported("sl2_q_adjoint"));
    r = golden::run_cli({"cartan", sl2.str(), "--subalgebra", "H"});
    REQUIRE(r.status == 0);
    rep = report_of(r);
    CHECK(rep["verdict"]["zero_root_equals_h"] == true);
    CHECK(rep["verdict"]["is_cartan"] == true);

    r = golden::run_cli({"flag", sl2.str()});
    REQUIRE(r.status == 0);
    CHECK(report_of(r)["verdict"]["result"] == "not nilpotent");

    // --output writes the same report
    TempFile out("");
    r = golden::run_cli({"flag", sl2.str(), "--output", out.str()});
    CHECK(r.status == 0);
    CHECK(r.out.empty());
    CHECK(golden::masked(golden::read(out.path)) == golden::masked(golden::run_cli({"flag", sl2.str()}).out));

    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("exit statuses per command", "[cli]") {
    TempFile heis(exported("heisenberg_q"));
    TempFile heis_z(exported("heisenberg_z"));
    TempFile broken(sl2_text(sl2_corrupted));
    TempFile garbled("{\"ring\": ");
    const std::string missing = (fs::temp_directory_path() / "liealg_no_such_file.json").string();
    for (const auto& cmd : command_names()) {
        CAPTURE(cmd);
        const bool needs_h = cmd == "weights" || cmd == "roots" || cmd == "cartan";
        std::vector<std::string> extra;
        if (needs_h) extra = {"--subalgebra", "center"};
        auto with = [&](const std::string& file, std::vector<std::string> more = {}) {
            std::vector<std::string> args{cmd, file};
            args.insert(args.end(), more.begin(), more.end());
            return golden::run_cli(args).status;
        };
        CHECK(with(heis.str(), extra) == 0);
        CHECK(with(missing, extra) == 1);
        CHECK(with(garbled.str(), extra) == 1);
        CHECK(with(broken.str(), extra) == 2);
        CHECK(with(heis.str(), {"--ring", "GF(4)"}) == 1);
        CHECK(with(heis.str(), {"--bogus-flag"}) == 1);
        const bool field_only = cmd == "flag" || cmd == "ascent" || cmd == "weights" || cmd == "roots";
        CHECK(with(heis_z.str(), extra) == (field_only ? 1 : 0));
        if (needs_h) {
            CHECK(with(heis.str()) == 1);
            CHECK(with(heis.str(), {"--subalgebra", "nope"}) == 1);
        }
    }
    CHECK(golden::run_cli({}).status == 1);
    CHECK(golden::run_cli({"frobnicate", heis.str()}).status == 1);
    CHECK(golden::run_cli({"weights", heis.str(), "--subalgebra", "center", "--weight", "1,2"}).status == 1);

    // a validation failure still reports its violations
    auto r = golden::run_cli({"validate", broken.str()});
    CHECK(r.status == 2);
    json rep = report_of(r);
    CHECK(rep["certificate"]["violations"][0]["tuple"] == json::parse("[0, 1, 2]"));
    CHECK(rep["error"]["location"] == "algebra");

    // diagnostics on stderr carry a location
    auto d = golden::run_cli({"lcs", garbled.str()}, true);
    CHECK(d.out.find("line 1, column") != std::string::npos);
}

TEST_CASE("catalog command", "[cli]") {
    TempFile out("");
    CHECK(golden::run_cli({"catalog", "heisenberg", "--output", out.str()}).status == 0);
    CHECK(golden::read(out.path) == exported("heisenberg_q"));
    CHECK(golden::run_cli({"catalog", "sl2", "--ring", "GF(3)", "--output", out.str()}).status == 0);
    CHECK(golden::read(out.path) == exported("sl2_gf3"));
    CHECK(golden::run_cli({"catalog", "strictly_upper_triangular", "--param", "4", "--natural", "--output", out.str()})
              .status == 0);
    CHECK(golden::read(out.path) == exported("strictly_upper_triangular4_q_natural"));
    auto r = golden::run_cli({"catalog", "heisenberg"});
    CHECK(r.status == 0);
    CHECK(r.out == exported("heisenberg_q"));
    CHECK(golden::run_cli({"catalog"}).status == 1);
    CHECK(golden::run_cli({"catalog", "nonesuch"}).status == 1);
    CHECK(golden::run_cli({"catalog", "heisenberg", "--natural"}).status == 1);
    CHECK(golden::run_cli({"catalog", "gl"}).status == 1);
    CHECK(golden::run_cli({"catalog", "--all"}).status == 1);
}

TEST_CASE("mutated files never crash the parser", "[cli][fuzz]") {
    std::mt19937_64 rng(2024);
    const std::string alphabet = "0123456789-/,:[]{}\" abcdefghijklmnopqrstuvwxyzGFQZ.";
    std::vector<std::string> seeds;
    for (const auto& e : catalog_examples()) {
        if (e.stem.find("5") == std::string::npos) seeds.push_back(emit_presentation(example_presentation(e)));
    }
    std::size_t rejected = 0, accepted = 0;
    for (int t = 0; t < 1500; ++t) {
        std::string text = seeds[rng() % seeds.size()];
        const int edits = 1 + static_cast<int>(rng() % 3);
        for (int k = 0; k < edits && !text.empty(); ++k) {
            const std::size_t pos = rng() % text.size();
            switch (rng() % 6) {
                case 0: text[pos] = alphabet[rng() % alphabet.size()]; break;
                case 1: text.erase(pos, 1 + rng() % 8); break;
                case 2: text.insert(pos, 1, alphabet[rng() % alphabet.size()]); break;
                case 3:
                    if (std::isdigit(static_cast<unsigned char>(text[pos]))) text[pos] = static_cast<char>('0' + rng() % 10);
                    break;
                case 4: text.resize(pos); break;
                default: {
                    const std::size_t len = 1 + rng() % 16;
                    text.insert(pos, text.substr(pos, len));
                }
            }
        }
        CommandOutcome out;
        REQUIRE_NOTHROW(out = run_command(CommandOptions{.command = "validate"}, text));
        CAPTURE(text, out.diagnostic);
        REQUIRE((out.status == 0 || out.status == 1 || out.status == 2));
        if (out.status == 0) {
            ++accepted;
        } else {
            ++rejected;
            CHECK_FALSE(out.report["error"]["location"].get<std::string>().empty());
        }
    }
    CHECK(rejected > 500);
    CHECK(accepted > 0);

    // a handful through the binary: exit normally with 0, 1 or 2
    for (int t = 0; t < 40; ++t) {
        std::string text = seeds[rng() % seeds.size()];
        text.erase(rng() % text.size(), 1 + rng() % 4);
        TempFile f(text);
        auto r = golden::run_cli({"validate", f.str()});
        CHECK((r.status == 0 || r.status == 1 || r.status == 2));
    }
}

#include <catch_amalgamated.hpp>

#include <cstdlib>

#include "golden_cases.hpp"

namespace fs = std::filesystem;

namespace {

bool regenerating() {
    const char* v = std::getenv("LIEALG_REGEN_GOLDEN");
    return v && std::string(v) == "1";
}

void write(const fs::path& p, const std::string& text) {
    fs::create_directories(p.parent_path());
    std::ofstream(p, std::ios::binary) << text;
}

}  // namespace

TEST_CASE("catalog export reproduces the stored inputs", "[golden]") {
    const fs::path dir = fs::temp_directory_path() / "liealg_golden_export";
    fs::remove_all(dir);
    auto r = golden::run_cli({"catalog", "--all", "--output", dir.string()});
    REQUIRE(r.status == 0);
    for (const auto& e : liealg::catalog_examples()) {
        CAPTURE(e.stem);
        const std::string fresh = golden::read(dir / (e.stem + ".json"));
        REQUIRE_FALSE(fresh.empty());
        if (regenerating()) write(golden::input_path(e.stem), fresh);
        CHECK(fresh == golden::read(golden::input_path(e.stem)));
        // exported files round-trip through the parser
        auto p = liealg::parse_presentation(fresh);
        CHECK(liealg::emit_presentation(p) == fresh);
    }
    fs::remove_all(dir);
}

TEST_CASE("every example and applicable command reproduces its stored report", "[golden]") {
    auto cases = golden::cases();
    CHECK(cases.size() > 80);
    for (const auto& c : cases) {
        CAPTURE(c.id());
        auto r = golden::run_case(c);
        CHECK(r.status == 0);
        const std::string text = golden::masked(r.out);
        if (regenerating()) write(golden::report_path(c), text);
        CHECK(text == golden::read(golden::report_path(c)));
    }
}

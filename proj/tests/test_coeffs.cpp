#include "doctest.h"
#include "vcnls/coeffs.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>

using namespace vcnls;

TEST_SUITE("coeffs") {

TEST_CASE("builtin catalog covers the documented scenarios") {
    auto names = list_scenarios();
    for (const char* want :
         {"example1", "example1_blowup", "example2_gp", "example3_toy",
          "family_bright", "family_dark", "example4_bright", "example5_dark",
          "bending_bright", "bending_dark", "sch1", "sch1_fastdecay", "sch2",
          "sch2_peregrine2"}) {
        CAPTURE(want);
        CHECK(std::find(names.begin(), names.end(), want) != names.end());
    }
}

TEST_CASE("unknown scenario raises a scenario error") {
    CHECK_THROWS_AS(load_scenario("no_such_scenario"), scenario_error);
    CHECK_THROWS_AS(load_scenario("/tmp/definitely/missing.json"), scenario_error);
}

TEST_CASE("catalog directory overrides and extends the builtins") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "vcnls_catalog_test";
    fs::create_directories(dir);
    {
        std::ofstream out(dir / "custom_free.json");
        out << R"({"name":"custom_free","dimension":1,"l0":-1,"s":1.0,)"
            << R"("coefficients":{"a":"1/4","h":"-1"},)"
            << R"("time_domain":[0.0,2.0]})";
    }
    setenv("VCNLS_CATALOG_DIR", dir.c_str(), 1);
    auto sc = load_scenario("custom_free");
    CHECK(sc.name == "custom_free");
    CHECK(sc.coefficients.a.value(0.0) == doctest::Approx(0.25));
    CHECK(sc.coefficients.l0 == -1);
    auto names = list_scenarios();
    CHECK(std::find(names.begin(), names.end(), "custom_free") != names.end());
    // builtins remain reachable
    CHECK(load_scenario("example1").coefficients.a.value(0.0) ==
          doctest::Approx(0.5));
    unsetenv("VCNLS_CATALOG_DIR");
}

TEST_CASE("malformed scenarios are rejected with context") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "vcnls_catalog_test";
    fs::create_directories(dir);
    {
        std::ofstream out(dir / "broken.json");
        out << R"({"name":"broken","coefficients":{}})";
    }
    CHECK_THROWS_AS(load_scenario((dir / "broken.json").string()), scenario_error);
    {
        std::ofstream out(dir / "garbage.json");
        out << "not json at all";
    }
    CHECK_THROWS_AS(load_scenario((dir / "garbage.json").string()), scenario_error);
}

}  // TEST_SUITE

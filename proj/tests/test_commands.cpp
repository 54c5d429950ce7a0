#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "swingnet/commands.hpp"

using namespace swingnet;
namespace fs = std::filesystem;

namespace {

bool contains(const std::string& haystack, std::string_view needle) {
    return haystack.find(needle) != std::string::npos;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch(const char* name) {
    const auto dir = fs::temp_directory_path() / "swingnet-tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("classify report on the bundled network") {
    const auto s = bundled_scenario("nigeria");
    std::ostringstream out;
    const std::vector<double> d{1.0, 3.0, 6.0};
    CHECK(cmd_classify(s, d, out) == kExitOk);
    const auto text = out.str();
    CHECK(contains(text, "AllRealGuaranteed (D=6 ≥ √32≈5.657)"));
    CHECK(contains(text, "ComplexModeExists (D=3 ≤ 4)"));
    CHECK(contains(text, "ComplexModeExists (D=1 ≤ 4)"));
    CHECK(contains(text, "Gombe"));
}

TEST_CASE("classify resolves the indeterminate band") {
    const auto s = parse_scenario(R"({"topology": {"node_count": 2, "edges": [[0, 1]]}, "params": {"D": 2.5}})");
    std::ostringstream out;
    CHECK(cmd_classify(s, {}, out) == kExitOk);
    CHECK(contains(out.str(), "Indeterminate (2 < D=2.5 < √8≈2.828); resolved by inspection: ComplexModeExists"));
}

TEST_CASE("classify skips nonhomogeneous networks") {
    const auto s = parse_scenario(R"({"topology": {"node_count": 2, "edges": [[0, 1]]}, "params": {"D": [1, 2]}})");
    std::ostringstream out;
    CHECK(cmd_classify(s, {}, out) == kExitOk);
    CHECK(contains(out.str(), "not classified"));
}

TEST_CASE("spectrum reports") {
    std::ostringstream nigeria;
    CHECK(cmd_spectrum(bundled_scenario("nigeria"), nigeria) == kExitOk);
    CHECK(contains(nigeria.str(), "mu_max = 5.17483"));
    CHECK(contains(nigeria.str(), "bracket [4, 8] contains"));

    std::ostringstream pair;
    cmd_spectrum(parse_scenario(R"({"topology": {"node_count": 2, "edges": [[0, 1]]}, "params": {"D": 1}})"), pair);
    CHECK(contains(pair.str(), "  0 2\n"));

    std::ostringstream split;
    cmd_spectrum(parse_scenario(R"({"topology": {"node_count": 4, "edges": [[0, 1], [2, 3]]}, "params": {"D": 1}})"),
                 split);
    CHECK(contains(split.str(), "warning: graph is disconnected"));
}

TEST_CASE("simulate writes deterministic csv files") {
    const auto dir = scratch("simulate");
    SimulateOptions options;
    options.dampings = {1.0, 3.0, 6.0};
    options.out_dir = dir / "a";
    std::ostringstream log;
    const auto s = bundled_scenario("nigeria");
    CHECK(cmd_simulate(s, options, log) == kExitOk);
    options.out_dir = dir / "b";
    CHECK(cmd_simulate(s, options, log) == kExitOk);
    for (const char* f : {"nigeria_D1.csv", "nigeria_D3.csv", "nigeria_D6.csv"}) {
        const auto a = slurp(dir / "a" / f);
        CHECK_FALSE(a.empty());
        CHECK(a == slurp(dir / "b" / f));
        CHECK(a.rfind("t,f_Yobe,", 0) == 0);
    }

    const auto zero = parse_scenario(
        R"({"name": "still", "topology": {"node_count": 2, "edges": [[0, 1]]}, "params": {"D": 1},
            "sim": {"steps": 3, "initial": "zero"}})");
    options.dampings.clear();
    options.out_dir = dir / "zero";
    cmd_simulate(zero, options, log);
    CHECK(slurp(dir / "zero" / "still.csv") == "t,f_1,f_2,P_1,P_2\n0,0,0,0,0\n0.01,0,0,0,0\n0.02,0,0,0,0\n0.03,0,0,0,0\n");
}

TEST_CASE("spr command exit codes") {
    std::ostringstream out;
    const auto grid = default_omega_grid();
    CHECK(cmd_spr({{1.0, 1.0, 1.0}, 1.0}, grid, std::nullopt, out) == kExitOk);
    CHECK(contains(out.str(), "verdict: StrictlyPositiveReal"));
    CHECK(contains(out.str(), "-0.5+0.866025i"));

    std::ostringstream zero;
    CHECK(cmd_spr({{1.0, 1.0, 1.0}, 0.0}, grid, std::nullopt, zero) == kExitOk);

    // Large inertia: H(omega) is indefinite at low frequency.
    std::ostringstream bad;
    const auto dir = scratch("spr");
    CHECK(cmd_spr({{4.0, 1.0, 1.0}, 1.0}, grid, dir / "sweep.csv", bad) == kExitViolation);
    CHECK(contains(bad.str(), "Violated"));
    CHECK(contains(slurp(dir / "sweep.csv"), "# verdict=Violated"));
}

TEST_CASE("replicate writes both campaigns") {
    const auto dir = scratch("replicate");
    ReplicateOptions options;
    options.out_dir = dir;
    std::ostringstream out;
    CHECK(cmd_replicate(bundled_scenario("nigeria"), options, out) == kExitOk);
    for (const char* f : {"campaign1_D1.csv", "campaign1_D3.csv", "campaign1_D6.csv", "campaign2_xi1.csv",
                          "campaign2_xi5.csv", "campaign2_xi10.csv", "campaign2_D1.csv", "campaign2_D3.csv",
                          "campaign2_D5.csv"})
        CHECK(fs::exists(dir / f));
    CHECK(contains(out.str(), "campaign 2"));
}

TEST_CASE("single grid scenario") {
    const auto s = single_grid_scenario(1.0, 3);
    const auto sys = s.system();
    CHECK(sys.state_matrix() == GridParams{1.0, 1.0, 1.0}.state_matrix());
    CHECK(s.sim.steps == 1000);
}

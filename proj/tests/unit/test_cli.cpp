#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli/commands.hpp"
#include "support.hpp"

using namespace royal;
using namespace royal::cli;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / ("royalgamma_cli_" + std::to_string(std::rand()))) {
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string write(const std::string& name, const std::string& text) const {
        std::ofstream(path / name) << text;
        return (path / name).string();
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* kInterior = R"({"nodes":[{"sigma":[0,0],"eta":[0.5,0]}]})";
const char* kBoundary = R"({"nodes":[{"sigma":[1,0],"eta":[0,1],"rho":1}]})";

int run_cmd(Command c, const std::string& in, const std::string& out, std::string* log = nullptr, int grid = 256) {
    JobConfig cfg;
    cfg.command = c;
    cfg.input = in;
    cfg.output = out;
    cfg.omega_grid = grid;
    std::ostringstream os;
    const int rc = run(cfg, os);
    if (log) *log = os.str();
    return rc;
}

}  // namespace

TEST_CASE("solve writes verified solutions") {
    TempDir t;
    const std::string out = t.file("out.json");
    CHECK(run_cmd(Command::Solve, t.write("d.json", kInterior), out) == kSuccess);
    const Json j = parse_json_text(slurp(out));
    CHECK(j.at("status") == "solved");
    CHECK(j.at("verified").get<int>() >= 1);
}

TEST_CASE("solve reports input errors and unsolvable steps") {
    TempDir t;
    std::string log;
    CHECK(run_cmd(Command::Solve, t.write("e.json", R"({"nodes":[]})"), t.file("o.json"), &log) == kInputError);
    CHECK(run_cmd(Command::Solve, t.write("m.json", "{\n\"nodes\": [\n{\"sigma\": [0,0],]}"), t.file("o.json"), &log) ==
          kInputError);
    CHECK(log.find("m.json:3") != std::string::npos);
    CHECK(run_cmd(Command::Solve, t.file("missing.json"), t.file("o.json")) == kInputError);

    CHECK(run_cmd(Command::Solve, t.write("i.json", R"({"nodes":[{"sigma":[0,0],"eta":[0.9,0]},{"sigma":[0.5,0],"eta":[0,0]}]})"),
                  t.file("o.json"), &log) == kUnsolvable);
    CHECK(log.find("step 1") != std::string::npos);
}

TEST_CASE("configuration validation") {
    JobConfig cfg;
    cfg.input = "x.json";
    cfg.omega_grid = 4;
    std::ostringstream os;
    CHECK(run(cfg, os) == kInputError);
    cfg.omega_grid = 256;
    cfg.tol = -1.0;
    CHECK(run(cfg, os) == kInputError);
    cfg = {};
    cfg.command = Command::Roundtrip;
    CHECK(run(cfg, os) == kInputError);
    CHECK(plot_path("a/b/sweep.csv") == "a/b/sweep.svg");
}

TEST_CASE("sweep emits one row per accepted omega") {
    TempDir t;
    const std::string out = t.file("s.csv");
    CHECK(run_cmd(Command::Sweep, t.write("b.json", kBoundary), out) == kSuccess);
    std::istringstream csv(slurp(out));
    std::string line;
    std::getline(csv, line);
    CHECK(line.rfind("index,omega_re,omega_im,t,", 0) == 0);
    int rows = 0;
    while (std::getline(csv, line)) ++rows;
    CHECK(rows >= 250);

    const std::string out2 = t.file("s2.csv");
    CHECK(run_cmd(Command::Sweep, t.write("i.json", kInterior), out2) == kSuccess);
    std::istringstream csv2(slurp(out2));
    std::getline(csv2, line);
    while (std::getline(csv2, line)) {
        std::istringstream cells(line);
        std::string cell;
        for (int col = 0; col < 4; ++col) std::getline(cells, cell, ',');
        CHECK(std::abs(std::stod(cell)) < 1.0);
    }

    CHECK(run_cmd(Command::Sweep, t.write("nu.json", R"({"nodes":[{"sigma":[-1,0],"eta":[1,0],"rho":2},{"sigma":[0,0],"eta":[0,0]}]})"),
                  t.file("s3.csv")) == kUnsolvable);
}

TEST_CASE("verify exit codes") {
    TempDir t;
    const std::string h = to_json(generate_h_nu(0, 0.5)).dump();
    const std::string good = R"({"nodes":[{"sigma":[-1,0],"eta":[1,0],"rho":2},{"sigma":[0,0],"eta":[0,0]}]})";
    const std::string bad = R"({"nodes":[{"sigma":[-1,0],"eta":[1,0],"rho":3},{"sigma":[0,0],"eta":[0,0]}]})";
    CHECK(run_cmd(Command::Verify, t.write("g.json", "{\"h\":" + h + ",\"data\":" + good + "}"), t.file("o.json")) == kSuccess);
    CHECK(run_cmd(Command::Verify, t.write("b.json", "{\"h\":" + h + ",\"data\":" + bad + "}"), t.file("o.json")) ==
          kVerificationFailed);
    std::string log;
    CHECK(run_cmd(Command::Verify,
                  t.write("r.json", R"({"s":{"num":[[0,0],[2,0]],"den":[[1,0]]},"p":{"num":[[0,0],[0,0],[1,0]],"den":[[1,0]]}})"),
                  t.file("o.json"), &log) == kVerificationFailed);
    CHECK(log.find("RoyalRange") != std::string::npos);
}

TEST_CASE("roundtrip recovers h_nu") {
    for (const auto& [nu, r] : std::vector<std::pair<int, double>>{{0, 0.5}, {0, 0.9}, {1, 0.5}}) {
        JobConfig cfg;
        cfg.command = Command::Roundtrip;
        cfg.generator = "h_nu";
        cfg.nu = nu;
        cfg.r = r;
        TempDir t;
        cfg.output = t.file("rt.json");
        std::ostringstream os;
        CHECK(run(cfg, os) == kSuccess);
        CHECK(parse_json_text(slurp(cfg.output)).at("best_distance").get<double>() <= 1e-6);
    }
}

TEST_CASE("outputs are deterministic") {
    TempDir t;
    const std::string in = t.write("b.json", kBoundary);
    for (Command c : {Command::Solve, Command::Sweep, Command::Blaschke}) {
        REQUIRE(run_cmd(c, in, t.file("1.out"), nullptr, 32) == kSuccess);
        REQUIRE(run_cmd(c, in, t.file("2.out"), nullptr, 32) == kSuccess);
        CHECK(slurp(t.file("1.out")) == slurp(t.file("2.out")));
    }
}

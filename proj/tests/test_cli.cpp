#include "hawkes/io.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct CliFixture {
    fs::path dir;
    CliFixture() {
        dir = fs::temp_directory_path() / ("hawkes_cli_test_" + std::to_string(std::rand()));
        fs::create_directories(dir);
    }
    ~CliFixture() { fs::remove_all(dir); }
    std::string file(const std::string& name) const { return (dir / name).string(); }
};

int run(const std::string& args) {
    const std::string cmd = std::string(HAWKES_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

} // namespace

TEST_CASE("cli: simulate is reproducible and validates its arguments") {
    CliFixture fx;
    const std::string a = fx.file("a.csv");
    const std::string b = fx.file("b.csv");
    CHECK(run("simulate S1 --events 300 --seed 5 --out " + a) == 0);
    CHECK(run("simulate S1 --events 300 --seed 5 --out " + b) == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(hawkes::read_events(a).size() == 300);

    CHECK(run("simulate S1 --events 0 --out " + a) == 2);
    CHECK(run("simulate S1 --out " + a) == 2);                  // no stop rule
    CHECK(run("simulate S1 --events 5 --horizon 2 --out " + a) == 2);
    CHECK(run("simulate nosuch.json --events 5 --out " + a) == 3);
}

TEST_CASE("cli: fit, gof and select round-trip") {
    CliFixture fx;
    const std::string train = fx.file("train.csv");
    const std::string test = fx.file("test.csv");
    const std::string model = fx.file("model.json");
    REQUIRE(run("simulate S2 --events 600 --seed 11 --out " + train) == 0);
    REQUIRE(run("simulate S2 --events 600 --seed 12 --out " + test) == 0);

    CHECK(run("fit " + train + " --restarts 2 --seed 3 --out " + model) == 0);
    const auto doc = hawkes::read_model(model);
    CHECK(doc.model.dim() == 2);
    CHECK(doc.meta_json.find("loglik") != std::string::npos);

    const std::string report = fx.file("gof.json");
    const std::string pcsv = fx.file("p.csv");
    CHECK(run("gof " + model + " " + test + " --out " + report + " --pcsv " + pcsv) == 0);
    CHECK(slurp(report).find("p_tot") != std::string::npos);
    CHECK(slurp(pcsv).find("hypothesis,p,threshold,rejected") != std::string::npos);

    const std::string selected = fx.file("selected.json");
    const std::string support = fx.file("support.csv");
    CHECK(run("select " + model + " " + train + " --method eps --level 0.2 --restarts 2" +
              " --out " + selected + " --support-out " + support) == 0);
    CHECK(hawkes::read_model(selected).model.dim() == 2);
    CHECK_FALSE(slurp(support).empty());

    // cfe with a single training file and no --resample is a usage error.
    CHECK(run("select " + model + " " + train + " --method cfe --out " + selected) == 2);
    // ... and works on several fixed-window realizations, with or without
    // resampling-by-concatenation.
    const std::string w1 = fx.file("w1.csv");
    const std::string w2 = fx.file("w2.csv");
    REQUIRE(run("simulate S2 --horizon 300 --seed 21 --out " + w1) == 0);
    REQUIRE(run("simulate S2 --horizon 300 --seed 22 --out " + w2) == 0);
    CHECK(run("select " + model + " " + w1 + " " + w2 + " --method cfst --restarts 1" +
              " --out " + selected) == 0);
    CHECK(run("select " + model + " " + w1 + " " + w2 + " --method cfe --resample" +
              " --resample-k 2 --resample-reps 6 --restarts 1 --out " + selected) == 0);

    CHECK(run("select " + model + " " + train + " --method nosuch --out " + selected) == 2);

    // Empty events file: a data error.
    const std::string empty = fx.file("empty.csv");
    std::ofstream(empty) << "# horizon=5\ntime,mark\n";
    CHECK(run("fit " + empty + " --out " + model) == 3);
}

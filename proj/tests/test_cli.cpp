#include <doctest.h>

#include "entropyne/cli.hpp"
#include "entropyne/grid.hpp"

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace entropyne;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path scratch_dir() {
    auto dir = std::filesystem::temp_directory_path() / "entropyne_cli_test";
    std::filesystem::create_directories(dir);
    return dir;
}

std::string write_file(const std::string& name, const std::string& text) {
    const auto path = scratch_dir() / name;
    std::ofstream(path) << text;
    return path.string();
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> fields;
        std::size_t start = 0;
        for (;;) {
            const auto comma = line.find(',', start);
            fields.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        rows.push_back(fields);
    }
    return rows;
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"no-such-command"}).code == kExitUsage);
    CHECK(run({"qubit-grid", "--p-norm", "0.5"}).code == kExitUsage);
    CHECK(run({"qubit-grid", "--p-norm", "0.5", "--h-norm", "1", "--temp", "1:2:3", "--bogus", "1"}).code ==
          kExitUsage);
    CHECK(run({"qubit-grid", "--p-norm", "0.5", "--h-norm", "1", "--temp", "1:2"}).code == kExitUsage);
    CHECK(run({"qubit-grid", "--p-norm", "0.5", "--h-norm", "1", "--temp", "-1:1:5"}).code == kExitUsage);
    CHECK(run({"qubit-grid", "--p-norm", "0.5", "--h-norm", "1", "--temp", "1:2:3", "--format", "xml"}).code ==
          kExitUsage);
    CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("qubit-grid") {
    const auto r = run({"qubit-grid", "--p-norm", "0.01", "--h-norm", "3.7416574", "--theta", "0:3.14159265:181",
                        "--temp", "150:220:141"});
    REQUIRE(r.code == kExitOk);
    const auto rows = csv_rows(r.out);
    CHECK(rows.front() == std::vector<std::string>{"theta", "T", "delta"});
    CHECK(rows.size() == 1 + 181 * 141);
    std::size_t best = 1;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (std::abs(std::stod(rows[i][2])) < std::abs(std::stod(rows[best][2]))) best = i;
    }
    CHECK(std::stod(rows[best][0]) == doctest::Approx(3.14159265));
    CHECK(std::stod(rows[best][1]) == doctest::Approx(187.1).epsilon(0.002));

    SUBCASE("negative temperatures") {
        const auto n = run({"qubit-grid", "--p-norm", "0.99", "--h-norm", "3.7416574", "--theta", "-1:1:201",
                            "--temp", "-1:-0.5:101"});
        REQUIRE(n.code == kExitOk);
        const auto nr = csv_rows(n.out);
        std::size_t b = 1;
        for (std::size_t i = 1; i < nr.size(); ++i) {
            if (std::abs(std::stod(nr[i][2])) < std::abs(std::stod(nr[b][2]))) b = i;
        }
        CHECK(std::stod(nr[b][0]) == doctest::Approx(0.0));
        CHECK(std::stod(nr[b][1]) == doctest::Approx(-0.71).epsilon(0.01));
    }

    SUBCASE("p = 0 rows are constant in theta") {
        const auto z = run({"qubit-grid", "--p-norm", "0", "--h-norm", "2", "--theta", "0:3:4", "--temp", "1:2:3",
                            "--format", "json"});
        REQUIRE(z.code == kExitOk);
        const auto j = nlohmann::ordered_json::parse(z.out);
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t k = 0; k < 3; ++k) {
                CHECK(j["cells"][i * 3 + k].get<double>() == doctest::Approx(j["cells"][k].get<double>()));
            }
        }
        CHECK(j["metadata"]["parameters"]["theta"] == "0:3:4");
        CHECK(j["metadata"]["version"] == ENTROPYNE_VERSION);
    }
}

TEST_CASE("amplifier-grid") {
    const auto r = run({"amplifier-grid", "--temp", "0.2:10:50", "--nbar", "1:5:5"});
    REQUIRE(r.code == kExitOk);
    const auto rows = csv_rows(r.out);
    CHECK(rows.front() == std::vector<std::string>{"T", "nbar", "delta", "row_argmin"});
    CHECK(rows.size() == 1 + 250);
    int marked = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) marked += rows[i][3] == "1";
    CHECK(marked == 5);

    SUBCASE("k = 0 puts the minimum on the Gibbs temperature") {
        const auto k0 = run({"amplifier-grid", "--k", "0", "--format", "json"});
        REQUIRE(k0.code == kExitOk);
        const auto j = nlohmann::ordered_json::parse(k0.out);
        const auto nbar = j["axis1"]["values"].get<std::vector<double>>();
        const auto temp = j["axis2"]["values"].get<std::vector<double>>();
        const double step = temp[1] - temp[0];
        for (std::size_t i = 0; i < nbar.size(); i += 7) {
            const double gibbs = 1.0 / std::log1p(1.0 / nbar[i]);
            if (gibbs > temp.back()) continue;
            const double t_star = temp[j["row_argmin"][i].get<std::size_t>()];
            CHECK(std::abs(t_star - gibbs) <= step);
        }
    }

    SUBCASE("JSON matches CSV cell for cell") {
        const auto js = run({"amplifier-grid", "--temp", "0.2:10:50", "--nbar", "1:5:5", "--format", "json"});
        const auto g = grid_from_json(nlohmann::ordered_json::parse(js.out));
        for (std::size_t i = 1; i < rows.size(); ++i) {
            CHECK(format_double(*g.cells[i - 1]) == rows[i][2]);
        }
    }

    SUBCASE("every cell divergent") {
        const auto bad = run({"amplifier-grid", "--k", "0.6", "--omega0", "1"});
        CHECK(bad.code == kExitDomain);
        CHECK(bad.err.find("DivergentPartition") != std::string::npos);
    }
}

TEST_CASE("output file and thread invariance") {
    const auto dir = scratch_dir();
    const std::string a = (dir / "t1.csv").string();
    const std::string b = (dir / "t8.csv").string();
    const std::vector<std::string> base{"amplifier-grid", "--temp", "0.2:10:40", "--nbar", "0.2:10:40"};
    auto with = [&](std::string threads, std::string path) {
        auto args = base;
        args.insert(args.end(), {"--threads", threads, "--output", path});
        return run(args);
    };
    REQUIRE(with("1", a).code == kExitOk);
    REQUIRE(with("8", b).code == kExitOk);
    std::ifstream fa(a), fb(b);
    std::stringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    CHECK(sa.str() == sb.str());
    CHECK(sa.str().size() > 1000);
}

TEST_CASE("gaussian-z") {
    const auto r = run({"gaussian-z", "--omega0", "1", "--omega1", "0.5", "--omega3", "0.5", "--beta", "1",
                        "--fock", "--format", "json"});
    REQUIRE(r.code == kExitOk);
    const auto j = nlohmann::ordered_json::parse(r.out);
    CHECK(j["partition"].get<double>() == doctest::Approx(0.9595173756674719).epsilon(1e-13));
    CHECK(j["fock"]["relative_difference"].get<double>() < 1e-10);
    CHECK(run({"gaussian-z", "--omega3", "-0.5"}).code == kExitDomain);
    CHECK(run({"gaussian-z", "--beta", "-1"}).code == kExitDomain);
}

TEST_CASE("tsallis") {
    const auto rho = write_file("rho.txt", "2\n0.7 0\n0 0.3\n");
    const auto sigma = write_file("sigma.txt", "2\n0.5 0\n0 0.5\n");
    const auto pure = write_file("pure.txt", "2\n1 0\n0 0\n");
    const auto broken = write_file("broken.txt", "2\n1 0\n0\n");

    auto value_of = [](const std::string& out, const std::string& key) {
        const auto pos = out.find("\n" + key + " ");
        REQUIRE(pos != std::string::npos);
        const auto start = pos + key.size() + 2;
        return out.substr(start, out.find('\n', start) - start);
    };

    auto r = run({"tsallis", "--rho-file", rho, "--sigma-file", sigma, "--q", "2"});
    REQUIRE(r.code == kExitOk);
    CHECK(std::stod(value_of(r.out, "value")) == doctest::Approx(0.16));

    r = run({"tsallis", "--rho-file", rho, "--sigma-file", rho, "--q", "0.5"});
    CHECK(std::stod(value_of(r.out, "value")) == doctest::Approx(0.0));

    r = run({"tsallis", "--rho-file", rho, "--sigma-file", pure, "--q", "2"});
    CHECK(r.code == kExitOk);
    CHECK(value_of(r.out, "value") == "inf");
    CHECK(r.out.find("note ") != std::string::npos);

    r = run({"tsallis", "--rho-file", rho, "--sigma-file", sigma, "--delta-series", "0.1,0.031622776601683794,0.01"});
    REQUIRE(r.code == kExitOk);
    CHECK(std::stod(value_of(r.out, "residual_slope")) == doctest::Approx(3.0).epsilon(0.1));
    CHECK(std::stod(value_of(r.out, "order1")) == doctest::Approx(0.07876617079029555));

    CHECK(run({"tsallis", "--rho-file", rho, "--sigma-file", sigma}).code == kExitUsage);
    CHECK(run({"tsallis", "--rho-file", rho, "--sigma-file", sigma, "--q", "1"}).code == kExitDomain);
    CHECK(run({"tsallis", "--rho-file", broken, "--sigma-file", sigma, "--q", "2"}).code == kExitUsage);
    CHECK(run({"tsallis", "--rho-file", "/nonexistent", "--sigma-file", sigma, "--q", "2"}).code == kExitUsage);
}

TEST_CASE("verify subcommand") {
    auto r = run({"verify", "--quick", "--seed", "7"});
    CHECK(r.code == kExitOk);
    const auto j = nlohmann::ordered_json::parse(r.out);
    CHECK(j["passed"] == true);
    CHECK(j["metadata"]["seed"] == 7);
    CHECK(j["families"].size() >= 10);

    r = run({"verify", "--quick", "--inject-fault"});
    CHECK(r.code == kExitVerifyFailed);
    CHECK(nlohmann::ordered_json::parse(r.out)["passed"] == false);
}

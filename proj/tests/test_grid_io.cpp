#include <doctest.h>

#include "entropyne/errors.hpp"
#include "entropyne/grid.hpp"
#include "entropyne/matrix_io.hpp"

#include <atomic>
#include <clocale>
#include <cmath>
#include <sstream>

using namespace entropyne;

TEST_CASE("grid specs") {
    const auto g = GridSpec::parse("0:1:5");
    const auto v = g.values();
    REQUIRE(v.size() == 5);
    CHECK(v[0] == 0.0);
    CHECK(v[2] == doctest::Approx(0.5));
    CHECK(v[4] == 1.0);
    CHECK(GridSpec::parse("-1:-0.5:101").values().back() == -0.5);
    CHECK(GridSpec::parse("2:3:1").values() == std::vector<double>{2.0});
    CHECK(GridSpec::parse("1e-3:+2E1:3").stop == 20.0);
    for (const char* bad : {"", "1:2", "1:2:3:4", "a:1:2", "0:1:0", "0:1:-3", "0:1:2.5", "0::4", "nan:1:2"}) {
        CHECK_THROWS_AS(GridSpec::parse(bad), Error);
    }
    CHECK(GridSpec::parse(g.to_string()).values() == v);
}

TEST_CASE("number formatting") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(187.0) == "187");
    CHECK(format_double(-2.5e-12) == "-2.4999999999999998e-12");
    CHECK(std::stod(format_double(M_PI)) == M_PI);
}

namespace {

DeltaGrid sample_grid() {
    DeltaGrid g;
    g.axis1_name = "nbar";
    g.axis2_name = "T";
    g.axis1_values = {0.5, 1.0};
    g.axis2_values = {0.25, 0.5, 0.75};
    g.cells = {0.3, std::nullopt, 0.1, 0.2, 0.05, 1.0 / 3.0};
    g.metadata = {{"tool", "entropyne"}, {"seed", nullptr}};
    return g;
}

}  // namespace

TEST_CASE("CSV output") {
    std::ostringstream os;
    write_csv(sample_grid(), os);
    CHECK(os.str() ==
          "nbar,T,delta\n"
          "0.5,0.25,0.29999999999999999\n"
          "0.5,0.5,\n"
          "0.5,0.75,0.10000000000000001\n"
          "1,0.25,0.20000000000000001\n"
          "1,0.5,0.050000000000000003\n"
          "1,0.75,0.33333333333333331\n");

    std::ostringstream swapped;
    write_csv(sample_grid(), swapped, CsvLayout{true, true});
    CHECK(swapped.str().substr(0, swapped.str().find('\n')) == "T,nbar,delta,row_argmin");
    CHECK(swapped.str().find("0.75,0.5,0.10000000000000001,1\n") != std::string::npos);
    CHECK(swapped.str().find("0.5,1,0.050000000000000003,1\n") != std::string::npos);
    CHECK(swapped.str().find("0.5,0.5,,0\n") != std::string::npos);
}

TEST_CASE("CSV ignores the C locale") {
    const char* prev = std::setlocale(LC_NUMERIC, nullptr);
    const std::string saved = prev ? prev : "C";
    if (std::setlocale(LC_NUMERIC, "de_DE.UTF-8") != nullptr) {
        std::ostringstream os;
        write_csv(sample_grid(), os);
        CHECK(os.str().find("0.29999999999999999") != std::string::npos);
    }
    std::setlocale(LC_NUMERIC, saved.c_str());
}

TEST_CASE("JSON round trip") {
    const auto g = sample_grid();
    const auto j = grid_to_json(g, true);
    CHECK(j["cells"][1].is_null());
    CHECK(j["row_argmin"][0] == 2);
    CHECK(j["row_argmin"][1] == 1);
    const auto back = grid_from_json(nlohmann::ordered_json::parse(j.dump()));
    CHECK(back.axis1_values == g.axis1_values);
    CHECK(back.axis2_values == g.axis2_values);
    CHECK(back.cells == g.cells);
    CHECK(back.metadata == g.metadata);

    auto broken = j;
    broken["cells"].erase(0);
    CHECK_THROWS_AS(grid_from_json(broken), Error);
    CHECK_THROWS_AS(grid_from_json(nlohmann::ordered_json::object()), Error);
}

TEST_CASE("parallel loop") {
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), 8, [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) CHECK(h == 1);
    CHECK_THROWS_AS(parallel_for(100, 4, [](std::size_t i) {
                        if (i == 57) throw Error(ErrorKind::NumericalFailure, "boom");
                    }),
                    Error);
    std::atomic<int> count{0};
    parallel_for(0, 8, [&](std::size_t) { ++count; });
    CHECK(count == 0);
}

TEST_CASE("thread resolution") {
    CHECK(resolve_threads(3) == 3u);
    setenv("ENTROPYNE_THREADS", "5", 1);
    CHECK(resolve_threads(0) == 5u);
    setenv("ENTROPYNE_THREADS", "junk", 1);
    CHECK(resolve_threads(0) == 1u);
    unsetenv("ENTROPYNE_THREADS");
    CHECK(resolve_threads(0) == 1u);
}

TEST_CASE("complex tokens") {
    CHECK(parse_complex("0.5+0.25j") == Complex(0.5, 0.25));
    CHECK(parse_complex("0.5-0.25j") == Complex(0.5, -0.25));
    CHECK(parse_complex("-1e-3+2E+2j") == Complex(-1e-3, 200.0));
    CHECK(parse_complex("0.7") == Complex(0.7, 0.0));
    CHECK(parse_complex("-2j") == Complex(0.0, -2.0));
    for (const char* bad : {"", "j", "1+j", "abc", "1+2", "1+2jj"}) CHECK_THROWS_AS(parse_complex(bad), Error);
    for (Complex z : {Complex(0.1, -0.3), Complex(-2.0, 0.0), Complex(1e-17, 3e5)}) {
        CHECK(parse_complex(format_complex(z)) == z);
    }
}

TEST_CASE("matrix files") {
    std::istringstream in("2\n0.6 0.1-0.2j\n0.1+0.2j 0.4\n");
    const auto m = read_matrix(in);
    CHECK(m(0, 1) == Complex(0.1, -0.2));
    CHECK(m(1, 0) == Complex(0.1, 0.2));
    std::ostringstream out;
    write_matrix(out, m);
    std::istringstream again(out.str());
    CHECK(read_matrix(again) == m);

    std::istringstream short_in("2\n1 0\n0\n");
    CHECK_THROWS_AS(read_matrix(short_in), Error);
    std::istringstream extra("1\n1 2\n");
    CHECK_THROWS_AS(read_matrix(extra), Error);
    std::istringstream zero("0\n");
    CHECK_THROWS_AS(read_matrix(zero), Error);
    CHECK_THROWS_AS(read_matrix_file("/nonexistent/matrix.txt"), Error);
}

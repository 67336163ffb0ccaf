#include "doctest.h"

#include "grushin/config.hpp"
#include "grushin/constants.hpp"
#include "grushin/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

using namespace grushin;

TEST_CASE("config parsing: sections, values, lists, comments") {
    const char* text =
        "# experiment configuration\n"
        "[domain]\n"
        "gamma = 1.0\n"
        "grid = 64          # per-axis cells\n"
        "[solver]\n"
        "p = 2.5\n"
        "preconditioned = true\n"
        "[constants]\n"
        "p_list = 1.1, 1.3, 1.5\n"
        "which = cp, c1\n";
    RunConfig cfg = RunConfig::from_string(text);
    CHECK(cfg.get_double("domain", "gamma", 0.0) == 1.0);
    CHECK(cfg.get_int("domain", "grid", 0) == 64);
    CHECK(cfg.get_double("solver", "p", 2.0) == 2.5);
    CHECK(cfg.get_bool("solver", "preconditioned", false));
    CHECK(cfg.get_double("domain", "missing", 7.5) == 7.5);
    const auto ps = cfg.get_double_list("constants", "p_list", {});
    REQUIRE(ps.size() == 3);
    CHECK(ps[1] == 1.3);
    const auto which = cfg.get_string_list("constants", "which", {});
    REQUIRE(which.size() == 2);
    CHECK(which[0] == "cp");
}

TEST_CASE("config rejects unknown keys by name") {
    RunConfig cfg = RunConfig::from_string("[solver]\np = 2\ntypo_key = 1\n");
    try {
        cfg.reject_unknown("solver", {"p", "tolerance"});
        FAIL("expected invalid_argument");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("typo_key") != std::string::npos);
    }
}

TEST_CASE("config errors") {
    CHECK_THROWS_AS(RunConfig::from_string("[solver\np=2\n"), std::invalid_argument);
    CHECK_THROWS_AS(RunConfig::from_string("[solver]\nnovalue\n"), std::invalid_argument);
    CHECK_THROWS_AS(RunConfig::from_file("/nonexistent/path.ini"), std::invalid_argument);
    RunConfig cfg = RunConfig::from_string("[a]\nx = abc\n");
    CHECK_THROWS_AS(cfg.get_double("a", "x", 0.0), std::invalid_argument);
    CHECK_THROWS_AS(cfg.get_int("a", "x", 0), std::invalid_argument);
    CHECK_THROWS_AS(cfg.get_bool("a", "x", false), std::invalid_argument);
}

TEST_CASE("constant result survives a csv round-trip exactly") {
    ConstantQuery q;
    q.p = 3.0;
    q.which = ConstantKind::CP;
    q.coarse_grid = 401;
    const ConstantResult r = compute_constant(q);

    const std::string path = "test_constants_roundtrip.csv";
    {
        CsvWriter w(path, 7, {"p", "which", "value", "s_star", "t_star", "uncertainty",
                              "bound_check", "possibly_unbounded"});
        w.row_begin();
        w.field(q.p);
        w.field(to_string(q.which));
        w.field(r.value);
        w.field(r.s);
        w.field(r.t);
        w.field(r.uncertainty);
        w.field(std::string(r.bound_check ? "pass" : "fail"));
        w.field(std::string(r.possibly_unbounded ? "true" : "false"));
        w.row_end();
    }
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);  // seed comment
    std::getline(in, line);  // header
    std::getline(in, line);
    std::istringstream row(line);
    std::string tok;
    std::vector<std::string> cells;
    while (std::getline(row, tok, ',')) cells.push_back(tok);
    REQUIRE(cells.size() == 8);
    ConstantResult back;
    back.value = std::stod(cells[2]);
    back.s = std::stod(cells[3]);
    back.t = std::stod(cells[4]);
    back.uncertainty = std::stod(cells[5]);
    back.bound_check = cells[6] == "pass";
    back.possibly_unbounded = cells[7] == "true";
    CHECK(std::stod(cells[0]) == q.p);
    CHECK(constant_kind_from_string(cells[1]) == q.which);
    CHECK(back.value == r.value);
    CHECK(back.s == r.s);
    CHECK(back.t == r.t);
    CHECK(back.uncertainty == r.uncertainty);
    CHECK(back.bound_check == r.bound_check);
    CHECK(back.possibly_unbounded == r.possibly_unbounded);
    std::remove(path.c_str());
}

TEST_CASE("csv round-trip with 17 significant digits") {
    const std::string path = "test_csv_roundtrip.csv";
    const double values[] = {1.0 / 3.0, 2.0 * M_PI * M_PI, -1.2345678901234567e-8, 42.0};
    {
        CsvWriter w(path, 1234, {"a", "b", "c", "d"});
        w.row_begin();
        for (double v : values) w.field(v);
        w.row_end();
    }
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    CHECK(line == "# seed=1234");
    std::getline(in, line);
    CHECK(line == "a,b,c,d");
    std::getline(in, line);
    std::istringstream row(line);
    std::string tok;
    int i = 0;
    while (std::getline(row, tok, ',')) {
        const double parsed = std::stod(tok);
        CHECK(parsed == values[i]);  // bitwise round-trip
        ++i;
    }
    CHECK(i == 4);
    std::remove(path.c_str());
}

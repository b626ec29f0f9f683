#include <doctest.h>

#include <cmath>

#include "qdev/io.hpp"
#include "qdev/svg.hpp"

using namespace qdev;

TEST_CASE("preparation set JSON round-trip") {
    auto trine = trine_states();
    auto j = preparation_set_to_json(trine);
    CHECK(j.at("dim") == 2);
    auto back = preparation_set_from_json(j);
    REQUIRE(back.n() == 3);
    for (int x = 0; x < 3; ++x)
        CHECK((back.states[x].matrix - trine.states[x].matrix).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("states JSON validation failures") {
    CHECK_THROWS(preparation_set_from_json(Json{{"dim", 2}}));
    // non-PSD matrix rejected on load
    Json bad{{"dim", 2},
             {"states",
              {{{{1.5, 0.0}, {0.0, 0.0}}, {{0.0, 0.0}, {-0.5, 0.0}}},
               {{{0.5, 0.0}, {0.0, 0.0}}, {{0.0, 0.0}, {0.5, 0.0}}}}}};
    CHECK_THROWS_AS(preparation_set_from_json(bad), NotPsd);
}

TEST_CASE("ensemble JSON round-trip") {
    auto ens = random_ensemble(3, 5, 42);
    auto j = ensemble_to_json(ens);
    CHECK(j.at("L") == 5);
    auto back = ensemble_from_json(j);
    REQUIRE(back.n() == 3);
    for (int x = 0; x < 3; ++x)
        CHECK((back.mus[x].probs - ens.mus[x].probs).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("metrics report JSON uses the contract field names") {
    auto rep = realist_metrics(random_ensemble(3, 4, 9));
    auto j = metrics_report_to_json(rep);
    for (const char* key :
         {"n", "dim", "pairwise", "avg_pairwise", "subset", "avg_set", "deviation"})
        CHECK(j.contains(key));
    CHECK(j.size() == 7);
}

TEST_CASE("format_double round-trips exactly") {
    for (double v : {1.0 / 3.0, 0.1453, -5.0e-5, 0.0, 1e300}) {
        CHECK(std::stod(format_double(v)) == v);
    }
}

TEST_CASE("csv parsing") {
    auto table = parse_csv("a,b\n1,2\n3,4\n");
    REQUIRE(table.rows.size() == 2);
    CHECK(table.column("b") == 1);
    CHECK(table.column("zz") == -1);
    CHECK(table.rows[1][0] == 3.0);

    CHECK_THROWS_AS(parse_csv(""), Error);
    CHECK_THROWS_AS(parse_csv("a,b\n"), Error);          // empty body
    CHECK_THROWS_AS(parse_csv("a,b\n1,x\n"), Error);     // malformed cell
    CHECK_THROWS_AS(parse_csv("a,b\n1,2,3\n"), Error);   // width mismatch
}

TEST_CASE("scatter SVG has exactly one line element for the diagonal") {
    auto table = parse_csv(
        "sample_id,avg_set,avg_pairwise,deviation\n0,0.8,0.9,0.1\n1,0.85,0.9,0.05\n");
    auto svg = scatter_svg(table);
    size_t count = 0, pos = 0;
    while ((pos = svg.find("<line", pos)) != std::string::npos) {
        ++count;
        ++pos;
    }
    CHECK(count == 1);
    CHECK(svg.find("<circle") != std::string::npos);
}

TEST_CASE("bars SVG has one bar per row") {
    auto table = parse_csv("n,deviation_lb\n3,0.0997\n4,0.1453\n5,0.17\n");
    auto svg = bars_svg(table);
    size_t count = 0, pos = 0;
    while ((pos = svg.find("class=\"bar\"", pos)) != std::string::npos) {
        ++count;
        ++pos;
    }
    CHECK(count == 3);
}

TEST_CASE("frontier CSV has the contract columns") {
    FrontierPoint p;
    p.kappa = 0.5;
    p.avg_set = 0.8;
    p.avg_pairwise = 0.9;
    p.deviation = 0.1;
    p.restarts_used = 7;
    auto csv = frontier_csv({p});
    CHECK(csv.rfind("kappa,avg_set,avg_pairwise,deviation,restarts_used\n", 0) == 0);
    CHECK(csv.find(",7\n") != std::string::npos);
}

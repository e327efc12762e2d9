#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "evoclust/geometry.hpp"
#include "evoclust/rng.hpp"

using namespace evoclust;

namespace {
Dataset line4() {
    Dataset ds;
    ds.dimension = 1;
    ds.points = {{0.0}, {1.0}, {10.0}, {11.0}};
    return ds;
}
}  // namespace

TEST_CASE("distance basics") {
    CHECK(distance(DistanceKind::Euclidean, {0, 0}, {3, 4}) == doctest::Approx(5.0));
    CHECK(distance(DistanceKind::SquaredEuclidean, {0, 0}, {3, 4}) ==
          doctest::Approx(25.0));
    CHECK(distance(DistanceKind::Euclidean, {2.5, -1}, {2.5, -1}) == 0.0);
    CHECK(distance(DistanceKind::SquaredEuclidean, {7.0}, {7.0}) == 0.0);
    CHECK_THROWS_AS(distance(DistanceKind::Euclidean, {0.0}, {0.0, 1.0}),
                    std::invalid_argument);
}

TEST_CASE("build_table on the 4-point line") {
    DistanceTable t = build_table(line4());
    CHECK(t.size() == 4);
    CHECK(t.at(0, 3) == doctest::Approx(11.0));
    CHECK(t.metric());
    for (int i = 0; i < 4; ++i) {
        CHECK(t.at(i, i) == 0.0);
        for (int j = 0; j < 4; ++j) CHECK(t.at(i, j) == t.at(j, i));
    }
}

TEST_CASE("build_table degenerate and squared cases") {
    Dataset one;
    one.dimension = 2;
    one.points = {{0.5, 0.5}};
    DistanceTable t1 = build_table(one);
    CHECK(t1.size() == 1);
    CHECK(t1.at(0, 0) == 0.0);

    Dataset sq;
    sq.dimension = 2;
    sq.points = {{0.0, 0.0}, {3.0, 4.0}};
    sq.kind = DistanceKind::SquaredEuclidean;
    DistanceTable t2 = build_table(sq);
    CHECK(t2.at(0, 1) == doctest::Approx(25.0));
    CHECK_FALSE(t2.metric());
}

TEST_CASE("check_metric") {
    DistanceTable t = build_table(line4());
    CHECK(check_metric(t, metric_tolerance(t)).holds);

    Dataset sq;
    sq.dimension = 1;
    sq.points = {{0.0}, {1.0}, {2.0}};
    sq.kind = DistanceKind::SquaredEuclidean;
    DistanceTable ts = build_table(sq);
    MetricCheck mc = check_metric(ts, metric_tolerance(ts));
    CHECK_FALSE(mc.holds);
    // witness must actually violate the triangle inequality
    CHECK(ts.at(mc.i, mc.j) > ts.at(mc.i, mc.m) + ts.at(mc.m, mc.j));

    Dataset one;
    one.dimension = 1;
    one.points = {{4.0}};
    DistanceTable t1 = build_table(one);
    CHECK(check_metric(t1, metric_tolerance(t1)).holds);
}

TEST_CASE("euclidean tables are metric on random instances") {
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        Dataset ds;
        ds.dimension = 3;
        const int n = 3 + static_cast<int>(rng.below(10));
        for (int i = 0; i < n; ++i)
            ds.points.push_back({rng.uniform01(), rng.uniform01(), rng.uniform01()});
        DistanceTable t = build_table(ds);
        CHECK(check_metric(t, metric_tolerance(t)).holds);
    }
}

TEST_CASE("squared distance on distinct collinear points is never metric") {
    Rng rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        Dataset ds;
        ds.dimension = 2;
        const double dx = 0.3 + rng.uniform01(), dy = rng.uniform01();
        for (int i = 0; i < 3; ++i)
            ds.points.push_back({i * dx, i * dy});
        ds.kind = DistanceKind::SquaredEuclidean;
        DistanceTable t = build_table(ds);
        CHECK_FALSE(check_metric(t, metric_tolerance(t)).holds);
    }
}

TEST_CASE("dataset validation") {
    Dataset bad;
    bad.dimension = 2;
    bad.points = {{0.0, 0.0}, {1.0}};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    Dataset empty;
    empty.dimension = 1;
    CHECK_THROWS_AS(empty.validate(), std::invalid_argument);
}

TEST_CASE("instance files round-trip") {
    const char* jpath = "test_instance.json";
    {
        std::ofstream f(jpath);
        f << R"({"dimension": 1, "points": [[0],[1],[10],[11]],)"
          << R"( "distance": "euclidean"})";
    }
    Dataset ds = load_instance(jpath);
    CHECK(ds.n() == 4);
    CHECK(ds.kind == DistanceKind::Euclidean);
    CHECK(build_table(ds).at(0, 3) == doctest::Approx(11.0));

    const char* cpath = "test_instance.csv";
    {
        std::ofstream f(cpath);
        f << "0,0\n3,4\n";
    }
    Dataset dc = load_instance(cpath);
    CHECK(dc.n() == 2);
    CHECK(dc.dimension == 2);
    CHECK(build_table(dc).at(0, 1) == doctest::Approx(5.0));
    std::remove(jpath);
    std::remove(cpath);
}

TEST_CASE("explicit table instances require validity") {
    Dataset ds;
    ds.dimension = 1;
    ds.points = {{0.0}, {1.0}};
    ds.kind = DistanceKind::ExplicitTable;
    ds.table = {{0.0, 2.0}, {2.0, 0.0}};
    DistanceTable t = build_table(ds);
    CHECK(t.at(0, 1) == 2.0);
    CHECK(t.metric());

    ds.table = {{0.0, -1.0}, {-1.0, 0.0}};
    CHECK_THROWS_AS(ds.validate(), std::invalid_argument);
}

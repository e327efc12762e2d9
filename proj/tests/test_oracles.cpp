#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "evoclust/oracles.hpp"
#include "evoclust/rng.hpp"

using namespace evoclust;

namespace {
constexpr double kE = 2.718281828459045235;

Dataset line4() {
    Dataset ds;
    ds.dimension = 1;
    ds.points = {{0.0}, {1.0}, {10.0}, {11.0}};
    return ds;
}

Dataset random_euclidean(Rng& rng, int n) {
    Dataset ds;
    ds.dimension = 2;
    for (int i = 0; i < n; ++i) ds.points.push_back({rng.uniform01(), rng.uniform01()});
    return ds;
}
}  // namespace

TEST_CASE("exact_subset_opt") {
    Dataset ds = line4();
    DistanceTable t = build_table(ds);

    SubsetOpt med = exact_subset_opt(make_kmedian(ds, t, 2));
    CHECK(med.optimum == doctest::Approx(2.0));
    CHECK(med.evaluated == 6);

    SubsetOpt cen = exact_subset_opt(make_kcenter(ds, t, 2));
    CHECK(cen.optimum == doctest::Approx(1.0));

    SubsetOpt all = exact_subset_opt(make_kmedian(ds, t, 4));
    CHECK(all.optimum == 0.0);

    Dataset sq = line4();
    sq.kind = DistanceKind::SquaredEuclidean;
    Formulation km = make_kmeans(sq, build_candidate_set(sq, CandidateStrategy::DataPoints), 2);
    CHECK(exact_subset_opt(km).optimum == doctest::Approx(2.0));
}

TEST_CASE("exact_subset_opt refuses beyond the cap") {
    Rng rng(41);
    Dataset big = random_euclidean(rng, 200);
    DistanceTable t = build_table(big);
    CHECK_THROWS_AS(exact_subset_opt(make_kmedian(big, t, 4)), std::invalid_argument);
}

TEST_CASE("exact_partition_opt") {
    Dataset ds = line4();
    PartitionOpt tmm = exact_partition_opt(ds, 2, PartitionObjective::KTmm);
    CHECK(tmm.optimum == doctest::Approx(1.0));

    Dataset sq = line4();
    sq.kind = DistanceKind::SquaredEuclidean;
    PartitionOpt km = exact_partition_opt(sq, 2, PartitionObjective::KMeansCentroid);
    CHECK(km.optimum == doctest::Approx(1.0));  // centroids 0.5 and 10.5

    PartitionOpt single = exact_partition_opt(ds, 4, PartitionObjective::KTmm);
    CHECK(single.optimum == 0.0);

    Dataset big;
    big.dimension = 1;
    for (int i = 0; i < 14; ++i) big.points.push_back({static_cast<double>(i)});
    CHECK_THROWS_AS(exact_partition_opt(big, 3, PartitionObjective::KTmm),
                    std::invalid_argument);
}

TEST_CASE("exact_fair_opt") {
    Dataset ds = line4();
    DistanceTable t = build_table(ds);

    FairOpt tight = exact_fair_opt(make_fair(ds, t, 2, 1.0));
    CHECK(tight.feasible);
    CHECK(tight.optimum == doctest::Approx(2.0));

    FairOpt loose = exact_fair_opt(make_fair(ds, t, 2, 11.0));
    CHECK(loose.feasible);
    CHECK(loose.optimum == doctest::Approx(exact_subset_opt(make_kmedian(ds, t, 2)).optimum));
}

TEST_CASE("gonzalez") {
    DistanceTable t = build_table(line4());
    CHECK(gonzalez(t, 2, 0) == Selection::of(4, {0, 3}));
    CHECK(gonzalez(t, 1, 2) == Selection::of(4, {2}));
    CHECK(gonzalez(t, 4, 0).size() == 4);
}

TEST_CASE("gonzalez 2-approximation on random instances") {
    Rng rng(42);
    for (int trial = 0; trial < 15; ++trial) {
        const int n = 4 + static_cast<int>(rng.below(6));
        const int k = 2 + static_cast<int>(rng.below(2));
        Dataset ds = random_euclidean(rng, n);
        DistanceTable t = build_table(ds);
        Selection g = gonzalez(t, k, 0);

        Formulation cen = make_kcenter(ds, t, k);
        CHECK(eval_kcenter(g, t) <= 2.0 * exact_subset_opt(cen).optimum + 1e-12);

        const double part = eval_ktmm_partition_cost(assign_clusters(g, t), t);
        CHECK(part <=
              2.0 * exact_partition_opt(ds, k, PartitionObjective::KTmm).optimum + 1e-12);
    }
}

TEST_CASE("local_search_pswap") {
    Dataset ds = line4();
    DistanceTable t = build_table(ds);
    Formulation med = make_kmedian(ds, t, 2);
    const double delta = 0.1 / 2;  // eps/k

    Selection opt_start = Selection::of(4, {0, 2});
    CHECK(local_search_pswap(med, 1, delta, opt_start, 100) == opt_start);

    Selection bad_start = Selection::of(4, {0, 1});  // cost 21
    Selection improved = local_search_pswap(med, 1, delta, bad_start, 100);
    CHECK(eval_kmedian(improved, t) == doctest::Approx(2.0));

    Selection lazy = local_search_pswap(med, 1, 0.999, bad_start, 100);
    CHECK(eval_kmedian(lazy, t) <= eval_kmedian(bad_start, t));

    CHECK_THROWS_AS(local_search_pswap(med, 1, delta, Selection::of(4, {0}), 100),
                    std::invalid_argument);
}

TEST_CASE("local_search_pswap on the fair formulation") {
    Dataset ds = line4();
    DistanceTable t = build_table(ds);
    Formulation fair = make_fair(ds, t, 2, 1.0);
    Selection feasible = Selection::of(4, {1, 3});  // covers both balls (radius 1)
    REQUIRE(violation_count(feasible, fair.balls, t) == 0);
    Selection res = local_search_pswap(fair, 4, 1.0 / 16, feasible, 100);
    CHECK(violation_count(res, fair.balls, t) == 0);
    CHECK(eval_kmedian(res, t) <= eval_kmedian(feasible, t));

    // infeasible start rejected; so is p != 4
    CHECK_THROWS_AS(local_search_pswap(fair, 4, 0.1, Selection::of(4, {0, 1}), 100),
                    std::invalid_argument);
    CHECK_THROWS_AS(local_search_pswap(fair, 1, 0.1, feasible, 100),
                    std::invalid_argument);
}

TEST_CASE("local search matches the theorem ratio on oracle instances") {
    Rng rng(43);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 5 + static_cast<int>(rng.below(5));
        const int k = 2;
        Dataset ds = random_euclidean(rng, n);
        DistanceTable t = build_table(ds);
        Formulation med = make_kmedian(ds, t, k);
        Selection start = Selection::of(n, {0, 1});
        Selection res = local_search_pswap(med, 1, 0.1 / k, start, 1000);
        const double opt = exact_subset_opt(med).optimum;
        CHECK(eval_kmedian(res, t) <= (5.0 / 0.9) * opt + 1e-12);
    }
}

TEST_CASE("oracle witnesses re-evaluate to the optimum") {
    Rng rng(44);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 4 + static_cast<int>(rng.below(5));
        Dataset ds = random_euclidean(rng, n);
        DistanceTable t = build_table(ds);
        Formulation med = make_kmedian(ds, t, 2);
        SubsetOpt res = exact_subset_opt(med);
        CHECK(eval_kmedian(res.witness, t) == doctest::Approx(res.optimum));
    }
}

TEST_CASE("iteration_bound closed forms") {
    BoundParams bp;
    bp.problem = ProblemKind::KTmm;
    bp.n = 16;
    bp.k = 3;
    bp.ground = 16;
    CHECK(iteration_bound(bp).value == doctest::Approx(99.0 * kE));

    bp.k = 1;
    CHECK(iteration_bound(bp).value == doctest::Approx(kE));

    CHECK(per_step_bound(1.0 / 3, 1.0 / (kE * 16 * 16), 1) ==
          doctest::Approx(kE * 3 * 16 * 16).epsilon(0.01));
}

TEST_CASE("iteration_bound reports infinity on duplicate-point degeneracy") {
    Dataset dup;
    dup.dimension = 1;
    dup.points = {{0.0}, {0.0}, {0.0}, {1.0}};
    DistanceTable t = build_table(dup);
    Formulation med = make_kmedian(dup, t, 2);
    BoundParams bp = bound_params_from(med, 1, 0.1);
    BoundResult br = iteration_bound(bp);
    CHECK(std::isinf(br.value));
    CHECK_FALSE(br.note.empty());
}

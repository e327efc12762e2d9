#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sstream>

#include "doctest.h"
#include "evoclust/harness.hpp"

using namespace evoclust;

namespace {
bool records_equal(const TrialRecord& a, const TrialRecord& b) {
    return a.trial == b.trial && a.seed == b.seed && a.first_hit == b.first_hit &&
           a.cost == b.cost && a.opt == b.opt && a.ratio == b.ratio &&
           a.fairness == b.fairness && a.wall_ms == b.wall_ms;
}
}  // namespace

TEST_CASE("parse_generator") {
    GeneratorSpec u = parse_generator("uniform_square(12)");
    CHECK(u.kind == GeneratorSpec::Kind::UniformSquare);
    CHECK(u.n == 12);

    GeneratorSpec g = parse_generator("gaussian_blobs(12,3,0.05)");
    CHECK(g.kind == GeneratorSpec::Kind::GaussianBlobs);
    CHECK(g.n == 12);
    CHECK(g.centers == 3);
    CHECK(g.spread == doctest::Approx(0.05));

    CHECK(parse_generator("line(4)").kind == GeneratorSpec::Kind::Line);
    CHECK_THROWS_AS(parse_generator("torus(5)"), std::invalid_argument);
    CHECK_THROWS_AS(parse_generator("uniform_square"), std::invalid_argument);
    CHECK_THROWS_AS(parse_generator("line(0)"), std::invalid_argument);
}

TEST_CASE("line generator is the canonical two-group template") {
    Dataset ds = generate_instance(parse_generator("line(4)"), 123);
    REQUIRE(ds.n() == 4);
    CHECK(ds.points[0][0] == 0.0);
    CHECK(ds.points[1][0] == 1.0);
    CHECK(ds.points[2][0] == 10.0);
    CHECK(ds.points[3][0] == 11.0);
    // seed-independent
    Dataset other = generate_instance(parse_generator("line(4)"), 999);
    CHECK(ds.points == other.points);
}

TEST_CASE("uniform generator is deterministic per seed") {
    GeneratorSpec spec = parse_generator("uniform_square(16)");
    Dataset a = generate_instance(spec, 7);
    Dataset b = generate_instance(spec, 7);
    Dataset c = generate_instance(spec, 8);
    CHECK(a.points == b.points);
    CHECK(a.points != c.points);
    CHECK(a.n() == 16);
    for (const auto& p : a.points) {
        CHECK(p[0] >= 0.0);
        CHECK(p[0] < 1.0);
    }
}

TEST_CASE("gaussian blobs cluster better than a single cluster") {
    Dataset ds = generate_instance(parse_generator("gaussian_blobs(12,3,0.05)"), 5);
    ds.kind = DistanceKind::SquaredEuclidean;
    REQUIRE(ds.n() == 12);
    PartitionOpt three = exact_partition_opt(ds, 3, PartitionObjective::KMeansCentroid);
    PartitionOpt one = exact_partition_opt(ds, 1, PartitionObjective::KMeansCentroid);
    CHECK(three.optimum < one.optimum);
}

TEST_CASE("run_trials on the line instance hits the optimum") {
    ExperimentConfig cfg;
    cfg.problem = ProblemKind::KTmm;
    cfg.k = 2;
    cfg.generator = parse_generator("line(4)");
    cfg.trials = 10;
    cfg.base_seed = 0;
    cfg.budget = 10000;
    ExperimentResult res = run_trials(cfg);
    REQUIRE(res.records.size() == 10);
    CHECK(res.summary.max_ratio == doctest::Approx(1.0));
    for (const auto& r : res.records) {
        CHECK(r.opt == doctest::Approx(1.0));
        CHECK(r.seed == cfg.base_seed + static_cast<uint64_t>(r.trial));
    }
}

TEST_CASE("single-trial summary matches the record") {
    ExperimentConfig cfg;
    cfg.problem = ProblemKind::KMedian;
    cfg.k = 2;
    cfg.generator = parse_generator("uniform_square(8)");
    cfg.trials = 1;
    cfg.base_seed = 3;
    cfg.budget = 5000;
    cfg.stop.kind = StopRule::Kind::FirstHit;
    cfg.stop.threshold = 1e9;  // first size-k member triggers it
    ExperimentResult res = run_trials(cfg);
    REQUIRE(res.records.size() == 1);
    const TrialRecord& r = res.records[0];
    CHECK(res.summary.max_ratio == doctest::Approx(*r.ratio));
    CHECK(res.summary.mean_first_hit ==
          doctest::Approx(static_cast<double>(r.first_hit.value_or(cfg.budget))));
    CHECK(res.summary.median_first_hit == res.summary.mean_first_hit);
}

TEST_CASE("kmedian trials stay within the local-search ratio") {
    ExperimentConfig cfg;
    cfg.problem = ProblemKind::KMedian;
    cfg.k = 2;
    cfg.generator = parse_generator("uniform_square(8)");
    cfg.trials = 5;
    cfg.base_seed = 11;
    cfg.budget = 100000;
    ExperimentResult res = run_trials(cfg);
    CHECK(res.summary.max_ratio <= 5.0 / 0.9);
}

TEST_CASE("csv export") {
    TrialRecord r;
    r.trial = 0;
    r.seed = 7;
    r.first_hit = 42;
    r.cost = 2.0;
    r.opt = 2.0;
    r.ratio = 1.0;

    std::ostringstream out;
    export_csv({r}, out);
    std::istringstream lines(out.str());
    std::string header, row, extra;
    REQUIRE(std::getline(lines, header));
    REQUIRE(std::getline(lines, row));
    CHECK_FALSE(std::getline(lines, extra));
    CHECK(header == "trial,seed,first_hit,cost,opt,ratio,fairness_factor,wall_ms");
    CHECK(row == "0,7,42,2,2,1,,0");

    CHECK_THROWS_AS(export_csv({}, out), std::invalid_argument);
}

TEST_CASE("csv leaves oracle fields empty when the oracle refused") {
    TrialRecord r;
    r.trial = 1;
    r.seed = 9;
    r.cost = 3.5;
    std::ostringstream out;
    export_csv({r}, out);
    CHECK(out.str().find("1,9,,3.5,,,,0") != std::string::npos);
}

TEST_CASE("json round-trip") {
    TrialRecord a;
    a.trial = 0;
    a.seed = 1;
    a.first_hit = 10;
    a.cost = 1.25;
    a.opt = 1.0;
    a.ratio = 1.25;
    TrialRecord b;
    b.trial = 1;
    b.seed = 2;
    b.cost = 0.5;
    b.fairness = 3.0;
    b.wall_ms = 12;

    std::vector<TrialRecord> in = {a, b};
    std::vector<TrialRecord> back = records_from_json(records_to_json(in));
    REQUIRE(back.size() == in.size());
    for (size_t i = 0; i < in.size(); ++i) CHECK(records_equal(in[i], back[i]));
}

TEST_CASE("identical configs export byte-identical csv") {
    ExperimentConfig cfg;
    cfg.problem = ProblemKind::KCenter;
    cfg.k = 2;
    cfg.generator = parse_generator("uniform_square(8)");
    cfg.trials = 3;
    cfg.base_seed = 5;
    cfg.budget = 3000;
    std::ostringstream a, b;
    export_csv(run_trials(cfg).records, a);
    export_csv(run_trials(cfg).records, b);
    CHECK(a.str() == b.str());
}

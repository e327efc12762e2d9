#include "evoclust/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "evoclust/fairness.hpp"
#include "json.hpp"

namespace evoclust {

namespace {
constexpr double kE = 2.718281828459045235;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}
}  // namespace

GeneratorSpec parse_generator(const std::string& spec) {
    const auto open = spec.find('(');
    const auto close = spec.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open)
        throw std::invalid_argument("bad generator spec: " + spec);
    const std::string name = spec.substr(0, open);
    std::vector<double> args;
    std::stringstream ss(spec.substr(open + 1, close - open - 1));
    std::string cell;
    while (std::getline(ss, cell, ',')) args.push_back(std::stod(cell));
    GeneratorSpec g;
    if (name == "uniform_square") {
        g.kind = GeneratorSpec::Kind::UniformSquare;
        if (args.size() != 1) throw std::invalid_argument("uniform_square(n)");
    } else if (name == "gaussian_blobs") {
        g.kind = GeneratorSpec::Kind::GaussianBlobs;
        if (args.size() != 3) throw std::invalid_argument("gaussian_blobs(n,centers,spread)");
        g.centers = static_cast<int>(args[1]);
        g.spread = args[2];
    } else if (name == "line") {
        g.kind = GeneratorSpec::Kind::Line;
        if (args.size() != 1) throw std::invalid_argument("line(n)");
    } else {
        throw std::invalid_argument("unknown generator: " + name);
    }
    g.n = static_cast<int>(args[0]);
    if (g.n < 1) throw std::invalid_argument("generator needs n >= 1");
    return g;
}

Dataset generate_instance(const GeneratorSpec& spec, uint64_t seed) {
    if (spec.n < 1) throw std::invalid_argument("generator needs n >= 1");
    Rng rng(seed);
    Dataset ds;
    switch (spec.kind) {
        case GeneratorSpec::Kind::UniformSquare:
            ds.dimension = 2;
            for (int i = 0; i < spec.n; ++i)
                ds.points.push_back({rng.uniform01(), rng.uniform01()});
            break;
        case GeneratorSpec::Kind::GaussianBlobs: {
            ds.dimension = 2;
            std::vector<Point> centers;
            for (int c = 0; c < spec.centers; ++c)
                centers.push_back({rng.uniform01(), rng.uniform01()});
            for (int i = 0; i < spec.n; ++i) {
                const Point& c = centers[i % spec.centers];
                ds.points.push_back({c[0] + spec.spread * rng.normal(),
                                     c[1] + spec.spread * rng.normal()});
            }
            break;
        }
        case GeneratorSpec::Kind::Line: {
            // two separated groups on a line; the n=4 case is {0,1,10,11}
            ds.dimension = 1;
            const int g1 = (spec.n + 1) / 2;
            for (int i = 0; i < g1; ++i) ds.points.push_back({static_cast<double>(i)});
            for (int i = 0; i < spec.n - g1; ++i)
                ds.points.push_back({10.0 + static_cast<double>(i)});
            break;
        }
    }
    ds.validate();
    return ds;
}

namespace {

// The formulation keeps pointers into the dataset and table, so they live on
// the heap to stay stable while the setup moves around.
struct TrialSetup {
    std::unique_ptr<Dataset> ds;
    std::unique_ptr<DistanceTable> table;
    Formulation form;
};

TrialSetup make_setup(const ExperimentConfig& cfg, uint64_t seed) {
    TrialSetup s;
    if (cfg.instance_path) {
        s.ds = std::make_unique<Dataset>(load_instance(*cfg.instance_path));
    } else if (cfg.generator) {
        s.ds = std::make_unique<Dataset>(generate_instance(*cfg.generator, seed));
        s.ds->kind = cfg.generated_kind;
    } else {
        throw std::invalid_argument("experiment needs an instance file or generator");
    }
    if (cfg.problem == ProblemKind::KMeans) {
        s.ds->kind = DistanceKind::SquaredEuclidean;
        s.form = make_kmeans(*s.ds,
                             build_candidate_set(*s.ds, CandidateStrategy::DataPoints),
                             cfg.k);
        return s;
    }
    s.table = std::make_unique<DistanceTable>(build_table(*s.ds));
    switch (cfg.problem) {
        case ProblemKind::KTmm:
            s.form = make_ktmm(*s.ds, *s.table, cfg.k);
            break;
        case ProblemKind::KCenter:
            s.form = make_kcenter(*s.ds, *s.table, cfg.k);
            break;
        case ProblemKind::KMedian:
            s.form = make_kmedian(*s.ds, *s.table, cfg.k);
            break;
        case ProblemKind::FairKMedian:
            s.form = make_fair(*s.ds, *s.table, cfg.k, cfg.beta);
            break;
        default:
            break;
    }
    return s;
}

std::optional<double> trial_oracle(const ExperimentConfig& cfg, const TrialSetup& s) {
    if (!cfg.want_oracle) return std::nullopt;
    try {
        switch (cfg.problem) {
            case ProblemKind::KTmm:
                return exact_partition_opt(*s.ds, cfg.k, PartitionObjective::KTmm).optimum;
            case ProblemKind::FairKMedian: {
                FairOpt fo = exact_fair_opt(s.form);
                if (!fo.feasible) return std::nullopt;
                return fo.optimum;
            }
            default:
                return exact_subset_opt(s.form).optimum;
        }
    } catch (const std::invalid_argument&) {
        return std::nullopt;  // oracle refused (cap); trial records raw cost
    }
}

}  // namespace

ExperimentResult run_trials(const ExperimentConfig& cfg) {
    if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
    ExperimentResult out;
    std::optional<BoundResult> bound;
    for (int t = 0; t < cfg.trials; ++t) {
        const uint64_t seed = cfg.base_seed + static_cast<uint64_t>(t);
        const auto t0 = std::chrono::steady_clock::now();
        TrialSetup s = make_setup(cfg, seed);
        const std::optional<double> opt = trial_oracle(cfg, s);

        RunConfig rc;
        rc.k = cfg.k;
        rc.budget = cfg.budget;
        rc.seed = seed;
        rc.stop = cfg.stop;
        rc.trace_level = 0;
        RunResult rr = run(s.form, rc);

        TrialRecord rec;
        rec.trial = t;
        rec.seed = seed;
        rec.first_hit = rr.first_hit_iteration;
        rec.cost = rr.output ? original_cost(s.form, *rr.output) : kInf;
        rec.opt = opt;
        if (opt && *opt > 0.0 && rr.output) rec.ratio = rec.cost / *opt;
        if (cfg.problem == ProblemKind::FairKMedian && rr.output)
            rec.fairness = fairness_factor(*rr.output, *s.table, s.form.radii);
        if (cfg.timing)
            rec.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                              std::chrono::steady_clock::now() - t0)
                              .count();
        out.records.push_back(std::move(rec));
        if (!bound) bound = iteration_bound(bound_params_from(s.form, cfg.p, cfg.epsilon));
    }

    std::vector<long> hits;
    for (const auto& r : out.records) hits.push_back(r.first_hit.value_or(cfg.budget));
    std::sort(hits.begin(), hits.end());
    out.summary.mean_first_hit =
        std::accumulate(hits.begin(), hits.end(), 0.0) / hits.size();
    out.summary.median_first_hit =
        hits.size() % 2 ? hits[hits.size() / 2]
                        : 0.5 * (hits[hits.size() / 2 - 1] + hits[hits.size() / 2]);
    out.summary.max_first_hit = hits.back();
    for (const auto& r : out.records)
        if (r.ratio) out.summary.max_ratio = std::max(out.summary.max_ratio, *r.ratio);
    out.summary.bound = bound->value;
    out.summary.bound_note = bound->note;
    return out;
}

void export_csv(const std::vector<TrialRecord>& records, std::ostream& out) {
    if (records.empty()) throw std::invalid_argument("export: no records");
    out << "trial,seed,first_hit,cost,opt,ratio,fairness_factor,wall_ms\n";
    for (const auto& r : records) {
        out << r.trial << ',' << r.seed << ',';
        if (r.first_hit) out << *r.first_hit;
        out << ',' << fmt_double(r.cost) << ',';
        if (r.opt) out << fmt_double(*r.opt);
        out << ',';
        if (r.ratio) out << fmt_double(*r.ratio);
        out << ',';
        if (r.fairness) out << fmt_double(*r.fairness);
        out << ',' << r.wall_ms << '\n';
    }
}

std::string records_to_json(const std::vector<TrialRecord>& records) {
    if (records.empty()) throw std::invalid_argument("export: no records");
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : records) {
        nlohmann::json j;
        j["trial"] = r.trial;
        j["seed"] = r.seed;
        j["first_hit"] = r.first_hit ? nlohmann::json(*r.first_hit) : nlohmann::json();
        j["cost"] = r.cost;
        j["opt"] = r.opt ? nlohmann::json(*r.opt) : nlohmann::json();
        j["ratio"] = r.ratio ? nlohmann::json(*r.ratio) : nlohmann::json();
        j["fairness_factor"] = r.fairness ? nlohmann::json(*r.fairness) : nlohmann::json();
        j["wall_ms"] = r.wall_ms;
        arr.push_back(std::move(j));
    }
    return arr.dump(2);
}

std::vector<TrialRecord> records_from_json(const std::string& json_text) {
    nlohmann::json arr = nlohmann::json::parse(json_text);
    std::vector<TrialRecord> out;
    for (const auto& j : arr) {
        TrialRecord r;
        r.trial = j.at("trial").get<int>();
        r.seed = j.at("seed").get<uint64_t>();
        if (!j.at("first_hit").is_null()) r.first_hit = j["first_hit"].get<long>();
        r.cost = j.at("cost").get<double>();
        if (!j.at("opt").is_null()) r.opt = j["opt"].get<double>();
        if (!j.at("ratio").is_null()) r.ratio = j["ratio"].get<double>();
        if (!j.at("fairness_factor").is_null())
            r.fairness = j["fairness_factor"].get<double>();
        r.wall_ms = j.at("wall_ms").get<long>();
        out.push_back(std::move(r));
    }
    return out;
}

namespace {

// Shared runs for the k-tMM / k-center experiment: 100 trials on
// uniform_square(12), k=3, stop at J_max = k.
struct T12Data {
    std::vector<TrialRecord> records;   // k-tMM cost vs partition OPT
    std::vector<double> kcenter_cost;
    std::vector<double> kcenter_opt;
    long budget = 0;
};

T12Data run_t12(uint64_t base_seed) {
    const int n = 12, k = 3, trials = 100;
    T12Data data;
    data.budget = 10 * static_cast<long>(std::ceil(kE * k * k * n));
    const GeneratorSpec spec{GeneratorSpec::Kind::UniformSquare, n, 0, 0.0};
    for (int t = 0; t < trials; ++t) {
        const uint64_t seed = base_seed + static_cast<uint64_t>(t);
        Dataset ds = generate_instance(spec, seed);
        DistanceTable table = build_table(ds);
        Formulation form = make_ktmm(ds, table, k);

        RunConfig rc;
        rc.k = k;
        rc.budget = data.budget;
        rc.seed = seed;
        rc.stop.kind = StopRule::Kind::JmaxK;
        rc.trace_level = 0;
        RunResult rr = run(form, rc);

        TrialRecord rec;
        rec.trial = t;
        rec.seed = seed;
        rec.first_hit = rr.first_jmax_k;
        rec.cost = rr.output ? original_cost(form, *rr.output) : kInf;
        const double opt = exact_partition_opt(ds, k, PartitionObjective::KTmm).optimum;
        rec.opt = opt;
        if (opt > 0.0) rec.ratio = rec.cost / opt;
        data.records.push_back(std::move(rec));

        Formulation center = make_kcenter(ds, table, k);
        data.kcenter_cost.push_back(rr.output ? eval_kcenter(*rr.output, table) : kInf);
        data.kcenter_opt.push_back(exact_subset_opt(center).optimum);
    }
    return data;
}

VerifyReport verify_t1(uint64_t base_seed) {
    T12Data data = run_t12(base_seed);
    VerifyReport rep;
    rep.records = data.records;
    bool ratio_ok = true;
    for (const auto& r : rep.records)
        if (!(r.cost <= 2.0 * *r.opt * (1.0 + 1e-9))) ratio_ok = false;
    rep.checks.emplace_back("theorem1 ratio: k-tMM cost <= 2*OPT in every trial",
                            ratio_ok);
    double mean = 0.0;
    for (const auto& r : rep.records)
        mean += static_cast<double>(r.first_hit.value_or(data.budget));
    mean /= rep.records.size();
    const double bound = kE * (9.0 * 12.0 - 3.0 * 11.0);  // e*k^2*n - e*k*(n-1)
    rep.checks.emplace_back("theorem1 iterations: mean first-hit of J_max=k <= 75e",
                            mean <= bound);
    rep.metrics.push_back("mean first-hit = " + fmt_double(mean) +
                          ", bound = " + fmt_double(bound));
    return rep;
}

VerifyReport verify_t2(uint64_t base_seed) {
    T12Data data = run_t12(base_seed);
    VerifyReport rep;
    rep.records = data.records;
    bool ok = true;
    double worst = 0.0;
    for (size_t i = 0; i < data.kcenter_cost.size(); ++i) {
        if (!(data.kcenter_cost[i] <= 2.0 * data.kcenter_opt[i] * (1.0 + 1e-9)))
            ok = false;
        if (data.kcenter_opt[i] > 0.0)
            worst = std::max(worst, data.kcenter_cost[i] / data.kcenter_opt[i]);
    }
    rep.checks.emplace_back("theorem2 ratio: k-center cost <= 2*OPT in every trial", ok);
    rep.metrics.push_back("max k-center ratio = " + fmt_double(worst));
    return rep;
}

VerifyReport verify_local_search_family(ProblemKind problem, uint64_t base_seed) {
    const int n = 12, k = 3, trials = 50, p = 1;
    const double epsilon = 0.1;
    const double ratio_gate = problem == ProblemKind::KMedian
                                  ? (3.0 + 2.0 / p) / (1.0 - epsilon)
                                  : std::pow(3.0 + 2.0 / p, 2) / std::pow(1.0 - epsilon, 2);
    ExperimentConfig cfg;
    cfg.problem = problem;
    cfg.k = k;
    cfg.p = p;
    cfg.epsilon = epsilon;
    cfg.trials = trials;
    cfg.base_seed = base_seed;
    cfg.budget = 1000000;
    cfg.stop.kind = StopRule::Kind::FirstHit;
    if (problem == ProblemKind::KMedian) {
        cfg.generator = GeneratorSpec{GeneratorSpec::Kind::UniformSquare, n, 0, 0.0};
    } else {
        cfg.generator = GeneratorSpec{GeneratorSpec::Kind::GaussianBlobs, n, 3, 0.05};
        cfg.generated_kind = DistanceKind::SquaredEuclidean;
    }

    // stop threshold depends on per-trial OPT, so drive the trials by hand
    VerifyReport rep;
    bool ok = true;
    double worst = 0.0, mean_hit = 0.0;
    std::optional<BoundResult> bound;
    for (int t = 0; t < trials; ++t) {
        const uint64_t seed = base_seed + static_cast<uint64_t>(t);
        TrialSetup s = make_setup(cfg, seed);
        const double opt = exact_subset_opt(s.form).optimum;
        RunConfig rc;
        rc.k = k;
        rc.budget = cfg.budget;
        rc.seed = seed;
        rc.stop.kind = StopRule::Kind::FirstHit;
        rc.stop.threshold = ratio_gate * opt;
        rc.trace_level = 0;
        RunResult rr = run(s.form, rc);

        TrialRecord rec;
        rec.trial = t;
        rec.seed = seed;
        rec.first_hit = rr.first_hit_iteration;
        rec.cost = rr.output ? original_cost(s.form, *rr.output) : kInf;
        rec.opt = opt;
        if (opt > 0.0) {
            rec.ratio = rec.cost / opt;
            worst = std::max(worst, *rec.ratio);
        }
        if (!(rec.cost <= ratio_gate * opt * (1.0 + 1e-12))) ok = false;
        mean_hit += static_cast<double>(rec.first_hit.value_or(cfg.budget));
        rep.records.push_back(std::move(rec));
        if (!bound) bound = iteration_bound(bound_params_from(s.form, p, epsilon));
    }
    mean_hit /= trials;
    const char* name = problem == ProblemKind::KMedian
                           ? "theorem3 ratio: k-median cost <= 5.556*OPT in every trial"
                           : "theorem4 ratio: k-means cost <= 30.86*OPT_C in every trial";
    rep.checks.emplace_back(name, ok);
    rep.metrics.push_back("max ratio = " + fmt_double(worst) +
                          " (gate " + fmt_double(ratio_gate) + ")");
    rep.metrics.push_back("mean first-hit = " + fmt_double(mean_hit) +
                          "; expected-iteration reference (not gated) = " +
                          fmt_double(bound->value) + " [" + bound->note + "]");
    return rep;
}

VerifyReport verify_t5(uint64_t base_seed) {
    const int n = 12, k = 3, trials = 30;
    const GeneratorSpec spec{GeneratorSpec::Kind::UniformSquare, n, 0, 0.0};
    VerifyReport rep;
    bool feasible_ok = true, fair_ok = true, cost_ok = true;
    for (int t = 0; t < trials; ++t) {
        const uint64_t seed = base_seed + static_cast<uint64_t>(t);
        Dataset ds = generate_instance(spec, seed);
        DistanceTable table = build_table(ds);

        // smallest beta in {1, 1.5, 2} with a feasible exact fair optimum
        std::optional<Formulation> form;
        std::optional<FairOpt> fo;
        double beta = 0.0;
        for (double b : {1.0, 1.5, 2.0}) {
            Formulation f = make_fair(ds, table, k, b);
            FairOpt cand = exact_fair_opt(f);
            if (cand.feasible) {
                form = std::move(f);
                fo = std::move(cand);
                beta = b;
                break;
            }
        }
        TrialRecord rec;
        rec.trial = t;
        rec.seed = seed;
        if (!form) {
            feasible_ok = false;
            rec.cost = kInf;
            rep.records.push_back(std::move(rec));
            continue;
        }

        RunConfig rc;
        rc.k = k;
        rc.budget = 1000000;
        rc.seed = seed;
        rc.stop.kind = StopRule::Kind::FirstHit;
        rc.stop.threshold = 84.0 * fo->optimum;
        rc.trace_level = 0;
        RunResult rr = run(*form, rc);

        rec.first_hit = rr.first_hit_iteration;
        rec.cost = rr.output ? original_cost(*form, *rr.output) : kInf;
        rec.opt = fo->optimum;
        if (fo->optimum > 0.0) rec.ratio = rec.cost / fo->optimum;
        if (!rr.output || violation_count(*rr.output, form->balls, table) != 0) {
            feasible_ok = false;
        } else {
            rec.fairness = fairness_factor(*rr.output, table, form->radii);
            if (!(*rec.fairness <= 7.0 * beta * (1.0 + 1e-12))) fair_ok = false;
        }
        if (!(rec.cost <= 84.0 * fo->optimum * (1.0 + 1e-12))) cost_ok = false;
        rep.records.push_back(std::move(rec));
    }
    rep.checks.emplace_back("theorem5 feasibility: zero ball violations in every trial",
                            feasible_ok);
    rep.checks.emplace_back("theorem5 fairness: fairness factor <= 7*beta", fair_ok);
    rep.checks.emplace_back("theorem5 cost: k-median cost <= 84*OPT_fair", cost_ok);
    return rep;
}

}  // namespace

VerifyReport verify_theorem(int which, uint64_t base_seed) {
    switch (which) {
        case 1:
            return verify_t1(base_seed);
        case 2:
            return verify_t2(base_seed);
        case 3:
            return verify_local_search_family(ProblemKind::KMedian, base_seed);
        case 4:
            return verify_local_search_family(ProblemKind::KMeans, base_seed);
        case 5:
            return verify_t5(base_seed);
        default:
            throw std::invalid_argument("verify: theorem must be t1..t5");
    }
}

}  // namespace evoclust

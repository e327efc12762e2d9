#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "evoclust/fairness.hpp"
#include "evoclust/harness.hpp"

using namespace evoclust;

namespace {

ProblemKind parse_problem(const std::string& s) {
    if (s == "ktmm") return ProblemKind::KTmm;
    if (s == "kcenter") return ProblemKind::KCenter;
    if (s == "kmedian") return ProblemKind::KMedian;
    if (s == "kmeans") return ProblemKind::KMeans;
    if (s == "fair") return ProblemKind::FairKMedian;
    throw std::invalid_argument("unknown problem: " + s +
                                " (expected ktmm|kcenter|kmedian|kmeans|fair)");
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(std::stoi(cell));
    if (out.empty()) throw std::invalid_argument("empty list: " + s);
    return out;
}

void write_records(const std::vector<TrialRecord>& records, const std::string& path,
                   const std::string& format) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    if (format == "json")
        f << records_to_json(records) << "\n";
    else
        export_csv(records, f);
}

struct CommonOpts {
    std::string instance;
    std::string generator;
    std::string problem = "ktmm";
    int k = 2;
    int p = 1;
    double epsilon = 0.1;
    double beta = 1.0;
    long budget = 100000;
    int trials = 1;
    uint64_t seed = 0;
    std::string out;
    std::string format = "csv";
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_trials) {
    cmd->add_option("--instance", o.instance, "instance file (json or csv)");
    cmd->add_option("--generator", o.generator,
                    "generator spec, e.g. uniform_square(12)");
    cmd->add_option("--problem", o.problem, "ktmm|kcenter|kmedian|kmeans|fair");
    cmd->add_option("--k", o.k, "number of clusters");
    cmd->add_option("--p", o.p, "swap size for local-search bounds");
    cmd->add_option("--epsilon", o.epsilon, "approximation slack");
    cmd->add_option("--beta", o.beta, "fairness relaxation factor");
    cmd->add_option("--budget", o.budget, "iteration budget");
    if (with_trials) cmd->add_option("--trials", o.trials, "number of trials");
    cmd->add_option("--seed", o.seed, "base seed");
    cmd->add_option("--out", o.out, "output file for records/trace");
    cmd->add_option("--format", o.format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
}

ExperimentConfig to_config(const CommonOpts& o) {
    ExperimentConfig cfg;
    cfg.problem = parse_problem(o.problem);
    cfg.k = o.k;
    cfg.p = o.p;
    cfg.epsilon = o.epsilon;
    cfg.beta = o.beta;
    if (!o.instance.empty()) cfg.instance_path = o.instance;
    if (!o.generator.empty()) cfg.generator = parse_generator(o.generator);
    if (cfg.problem == ProblemKind::KMeans)
        cfg.generated_kind = DistanceKind::SquaredEuclidean;
    cfg.trials = o.trials;
    cfg.base_seed = o.seed;
    cfg.budget = o.budget;
    return cfg;
}

Dataset dataset_from(const CommonOpts& o) {
    if (!o.instance.empty()) return load_instance(o.instance);
    if (!o.generator.empty())
        return generate_instance(parse_generator(o.generator), o.seed);
    throw std::invalid_argument("need --instance or --generator");
}

int cmd_run(const CommonOpts& o) {
    ExperimentConfig cfg = to_config(o);
    cfg.trials = 1;
    cfg.want_oracle = false;

    // single run with trace; reuse the experiment plumbing for the record
    Dataset ds = dataset_from(o);
    if (cfg.problem == ProblemKind::KMeans) ds.kind = DistanceKind::SquaredEuclidean;
    DistanceTable table;
    Formulation form;
    std::vector<Point> cands;
    if (cfg.problem == ProblemKind::KMeans) {
        cands = build_candidate_set(ds, CandidateStrategy::DataPoints);
        form = make_kmeans(ds, cands, o.k);
    } else {
        table = build_table(ds);
        switch (cfg.problem) {
            case ProblemKind::KTmm: form = make_ktmm(ds, table, o.k); break;
            case ProblemKind::KCenter: form = make_kcenter(ds, table, o.k); break;
            case ProblemKind::KMedian: form = make_kmedian(ds, table, o.k); break;
            default: form = make_fair(ds, table, o.k, o.beta); break;
        }
    }
    RunConfig rc;
    rc.k = o.k;
    rc.budget = o.budget;
    rc.seed = o.seed;
    rc.trace_level = 1;
    RunResult rr = run(form, rc);

    std::cout << "iterations: " << rr.iterations << "\n";
    std::cout << "population size: " << rr.population.size() << "\n";
    if (rr.output) {
        std::cout << "output cost: " << original_cost(form, *rr.output) << "\n";
        std::cout << "output centers:";
        for (int i : rr.output->ones()) std::cout << " " << i;
        std::cout << "\n";
        if (cfg.problem == ProblemKind::FairKMedian) {
            std::cout << "violations: " << violation_count(*rr.output, form.balls, table)
                      << "\n";
            std::cout << "fairness factor: "
                      << fairness_factor(*rr.output, table, form.radii) << "\n";
        }
    } else {
        std::cout << "no size-k member found within budget\n";
    }
    std::cout << "trace events: " << rr.trace.size() << "\n";
    if (!o.out.empty()) {
        std::ofstream f(o.out);
        if (!f) throw std::runtime_error("cannot write " + o.out);
        write_trace_jsonl(rr.trace, f);
        std::cout << "trace written to " << o.out << "\n";
    }
    return 0;
}

int cmd_verify(const std::string& which, const CommonOpts& o) {
    int t = 0;
    if (which.size() == 2 && which[0] == 't' && which[1] >= '1' && which[1] <= '5')
        t = which[1] - '0';
    else
        throw std::invalid_argument("verify expects t1|t2|t3|t4|t5");
    VerifyReport rep = verify_theorem(t, o.seed);
    for (const auto& [name, ok] : rep.checks)
        std::cout << (ok ? "PASS" : "FAIL") << "  " << name << "\n";
    for (const auto& m : rep.metrics) std::cout << "      " << m << "\n";
    if (!o.out.empty()) write_records(rep.records, o.out, o.format);
    return rep.pass() ? 0 : 1;
}

int cmd_sweep(const CommonOpts& o, const std::string& n_list, const std::string& k_list) {
    std::vector<int> ns = parse_int_list(n_list);
    std::vector<int> ks = parse_int_list(k_list);
    if (o.generator.empty()) throw std::invalid_argument("sweep needs --generator");
    GeneratorSpec base = parse_generator(o.generator);

    std::vector<TrialRecord> all;
    for (int n : ns)
        for (int k : ks) {
            if (k > n) continue;
            CommonOpts cell = o;
            cell.k = k;
            ExperimentConfig cfg = to_config(cell);
            GeneratorSpec g = base;
            g.n = n;
            cfg.generator = g;
            ExperimentResult res = run_trials(cfg);
            std::cout << "n=" << n << " k=" << k
                      << " mean_first_hit=" << res.summary.mean_first_hit
                      << " max_ratio=" << res.summary.max_ratio
                      << " bound=" << res.summary.bound << "\n";
            for (TrialRecord r : res.records) {
                r.trial = static_cast<int>(all.size());
                all.push_back(std::move(r));
            }
        }
    if (!o.out.empty()) write_records(all, o.out, o.format);
    return 0;
}

int cmd_oracle(const CommonOpts& o) {
    Dataset ds = dataset_from(o);
    ProblemKind problem = parse_problem(o.problem);
    if (problem == ProblemKind::KMeans) ds.kind = DistanceKind::SquaredEuclidean;
    if (problem == ProblemKind::KTmm) {
        PartitionOpt res = exact_partition_opt(ds, o.k, PartitionObjective::KTmm);
        std::cout << "optimum: " << res.optimum << "\n";
        std::cout << "evaluated: " << res.evaluated << "\n";
        for (size_t b = 0; b < res.blocks.size(); ++b) {
            std::cout << "block " << b << ":";
            for (int i : res.blocks[b]) std::cout << " " << i;
            std::cout << "\n";
        }
        return 0;
    }
    DistanceTable table;
    Formulation form;
    std::vector<Point> cands;
    if (problem == ProblemKind::KMeans) {
        cands = build_candidate_set(ds, CandidateStrategy::DataPoints);
        form = make_kmeans(ds, cands, o.k);
    } else {
        table = build_table(ds);
        switch (problem) {
            case ProblemKind::KCenter: form = make_kcenter(ds, table, o.k); break;
            case ProblemKind::KMedian: form = make_kmedian(ds, table, o.k); break;
            default: form = make_fair(ds, table, o.k, o.beta); break;
        }
    }
    if (problem == ProblemKind::FairKMedian) {
        FairOpt res = exact_fair_opt(form);
        if (!res.feasible) {
            std::cout << "infeasible at beta=" << o.beta << "\n";
            return 1;
        }
        std::cout << "optimum: " << res.optimum << "\n";
        std::cout << "witness:";
        for (int i : res.witness.ones()) std::cout << " " << i;
        std::cout << "\nevaluated: " << res.evaluated << "\n";
        return 0;
    }
    SubsetOpt res = exact_subset_opt(form);
    std::cout << "optimum: " << res.optimum << "\n";
    std::cout << "witness:";
    for (int i : res.witness.ones()) std::cout << " " << i;
    std::cout << "\nevaluated: " << res.evaluated << "\n";
    return 0;
}

int cmd_fairness_audit(const CommonOpts& o, const std::string& centers_arg) {
    Dataset ds = dataset_from(o);
    DistanceTable table = build_table(ds);
    Formulation form = make_fair(ds, table, o.k, o.beta);

    std::cout << "n: " << ds.points.size() << "  k: " << o.k << "  beta: " << o.beta
              << "\n";
    std::cout << "fair radii (threshold " << form.radii.threshold << "):";
    for (double r : form.radii.r) std::cout << " " << r;
    std::cout << "\n";
    std::cout << "critical balls: " << balls_to_json(form.balls) << "\n";
    if (!centers_arg.empty()) {
        std::vector<int> idx = parse_int_list(centers_arg);
        Selection x = Selection::of(form.ground_size(), idx);
        std::cout << "violations: " << violation_count(x, form.balls, table) << "\n";
        std::cout << "fairness factor: " << fairness_factor(x, table, form.radii)
                  << "\n";
        std::cout << "kmedian cost: " << eval_kmedian(x, table) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"GSEMO clustering toolkit"};
    app.require_subcommand(1);

    CommonOpts run_o, verify_o, sweep_o, oracle_o, audit_o;
    std::string verify_which, sweep_ns = "12", sweep_ks = "3", audit_centers;

    CLI::App* c_run = app.add_subcommand("run", "single GSEMO run with trace summary");
    add_common(c_run, run_o, false);

    CLI::App* c_verify =
        app.add_subcommand("verify", "canned theorem experiment (t1..t5)");
    c_verify->add_option("theorem", verify_which, "t1|t2|t3|t4|t5")->required();
    add_common(c_verify, verify_o, false);

    CLI::App* c_sweep = app.add_subcommand("sweep", "grid over n, k, seeds");
    add_common(c_sweep, sweep_o, true);
    c_sweep->add_option("--n", sweep_ns, "comma-separated n values");
    c_sweep->add_option("--k-list", sweep_ks, "comma-separated k values");

    CLI::App* c_oracle = app.add_subcommand("oracle", "exact solve with witness");
    add_common(c_oracle, oracle_o, false);

    CLI::App* c_audit =
        app.add_subcommand("fairness-audit", "fair radii, critical balls, factor");
    add_common(c_audit, audit_o, false);
    c_audit->add_option("--centers", audit_centers,
                        "comma-separated center indices to audit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (c_run->parsed()) return cmd_run(run_o);
        if (c_verify->parsed()) return cmd_verify(verify_which, verify_o);
        if (c_sweep->parsed()) return cmd_sweep(sweep_o, sweep_ns, sweep_ks);
        if (c_oracle->parsed()) return cmd_oracle(oracle_o);
        if (c_audit->parsed()) return cmd_fairness_audit(audit_o, audit_centers);
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

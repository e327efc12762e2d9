#include "evoclust/gsemo.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

namespace evoclust {

bool weakly_dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
    return a.f1 >= b.f1 && a.f2 >= b.f2;
}

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
    return weakly_dominates(a, b) && (a.f1 > b.f1 || a.f2 > b.f2);
}

Selection mutate(const Selection& x, Rng& rng) {
    Selection child = x;
    const int g = x.ground();
    const double p = 1.0 / g;
    for (int i = 0; i < g; ++i)
        if (rng.uniform01() < p) child.flip(i);
    return child;
}

bool update_population(Population& P, Selection x, ObjectiveVector v, int k) {
    if (x.size() > k) return false;
    for (const Member& z : P)
        if (dominates(z.v, v)) return false;
    std::erase_if(P, [&](const Member& z) { return weakly_dominates(v, z.v); });
    P.push_back({std::move(x), v});
    return true;
}

const Member* select_output(const Population& P, int k) {
    for (const Member& m : P)
        if (m.v.f2 == k) return &m;
    return nullptr;
}

int j_max(const Population& P) {
    int best = -1;
    for (const Member& m : P)
        if (m.v.f1 >= 0.0) best = std::max(best, m.v.f2);
    return best;
}

bool population_invariants_ok(const Population& P, int k) {
    bool nonzero = false;
    for (const Member& m : P) {
        if (m.v.f2 != m.x.size() || m.x.size() > k) return false;
        if (m.x.size() >= 1) nonzero = true;
    }
    for (size_t a = 0; a < P.size(); ++a)
        for (size_t b = 0; b < P.size(); ++b) {
            if (a == b) continue;
            if (weakly_dominates(P[a].v, P[b].v)) return false;  // also catches f2 ties
        }
    if (nonzero && static_cast<int>(P.size()) > k) return false;
    return true;
}

RunResult run(const Formulation& form, const RunConfig& cfg,
              const RunObserver& observer) {
    if (cfg.budget < 1) throw std::invalid_argument("budget must be >= 1");
    if (cfg.k != form.k) throw std::invalid_argument("config k must match formulation k");
    Rng rng(cfg.seed);

    RunResult res;
    const int g = form.ground_size();
    Selection zero = Selection::zeros(g);
    ObjectiveVector zv = evaluate(form, zero);
    res.population.push_back({std::move(zero), zv});

    auto trace_state = [&](long iter, const char* event, const ObjectiveVector& v) {
        if (cfg.trace_level < 1) return;
        TraceEvent e;
        e.iteration = iter;
        e.event = event;
        e.f1 = v.f1;
        e.f2 = v.f2;
        if (form.problem == ProblemKind::KTmm) e.j_max = j_max(res.population);
        if (form.problem == ProblemKind::FairKMedian) {
            if (const Member* m = select_output(res.population, cfg.k))
                e.j_vio = violation_count(m->x, form.balls, *form.table);
        }
        res.trace.push_back(std::move(e));
    };
    trace_state(0, "init", zv);

    for (long it = 1; it <= cfg.budget; ++it) {
        res.iterations = it;
        const Member& parent = res.population[rng.below(res.population.size())];
        Selection child = mutate(parent.x, rng);
        ObjectiveVector v = evaluate(form, child);
        if (!update_population(res.population, std::move(child), v, cfg.k)) continue;

        trace_state(it, "insert", v);
        if (observer) observer(res.population, it);

        if (form.problem == ProblemKind::KTmm && !res.first_jmax_k &&
            j_max(res.population) == cfg.k)
            res.first_jmax_k = it;

        if (cfg.stop.kind == StopRule::Kind::JmaxK) {
            if (res.first_jmax_k) {
                res.first_hit_iteration = res.first_jmax_k;
                break;
            }
        } else if (cfg.stop.kind == StopRule::Kind::FirstHit) {
            if (const Member* m = select_output(res.population, cfg.k)) {
                const bool feasible =
                    form.problem != ProblemKind::FairKMedian ||
                    violation_count(m->x, form.balls, *form.table) == 0;
                if (feasible && original_cost(form, m->x) <= cfg.stop.threshold) {
                    res.first_hit_iteration = it;
                    break;
                }
            }
        }
    }

    if (const Member* m = select_output(res.population, cfg.k)) res.output = m->x;
    return res;
}

void write_trace_jsonl(const std::vector<TraceEvent>& trace, std::ostream& out) {
    for (const TraceEvent& e : trace) {
        nlohmann::json j;
        j["iteration"] = e.iteration;
        j["event"] = e.event;
        if (std::isinf(e.f1))
            j["f1"] = e.f1 > 0 ? "+inf" : "-inf";
        else
            j["f1"] = e.f1;
        j["f2"] = e.f2;
        if (e.j_max) j["j_max"] = *e.j_max;
        if (e.j_vio) j["j_vio"] = *e.j_vio;
        out << j.dump() << "\n";
    }
}

}  // namespace evoclust

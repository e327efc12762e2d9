#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "evoclust/objectives.hpp"
#include "evoclust/rng.hpp"
#include "evoclust/selection.hpp"

namespace evoclust {

bool weakly_dominates(const ObjectiveVector& a, const ObjectiveVector& b);
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

struct Member {
    Selection x;
    ObjectiveVector v;
};

// Archive of pairwise-incomparable selections of size <= k.
using Population = std::vector<Member>;

// Flip each bit independently with probability 1/g.
Selection mutate(const Selection& x, Rng& rng);

// Algorithm-1 population update. Offspring larger than k are dropped.
// Returns true iff the offspring was inserted.
bool update_population(Population& P, Selection x, ObjectiveVector v, int k);

const Member* select_output(const Population& P, int k);

// max{|x| : x in P, f1(x) >= 0}; progress potential of the k-tMM analysis.
int j_max(const Population& P);

bool population_invariants_ok(const Population& P, int k);

struct StopRule {
    enum class Kind { BudgetOnly, FirstHit, JmaxK } kind = Kind::BudgetOnly;
    // FirstHit: stop once the size-k member's original cost is <= threshold
    // (for fair runs, additionally zero ball violations).
    double threshold = 0.0;
};

struct RunConfig {
    int k = 1;
    long budget = 1000;
    uint64_t seed = 0;
    StopRule stop;
    int trace_level = 1;  // 0: no trace, 1: population-changing events
};

struct TraceEvent {
    long iteration = 0;
    std::string event;
    double f1 = 0.0;
    int f2 = 0;
    std::optional<int> j_max;
    std::optional<int> j_vio;
};

struct RunResult {
    Population population;
    std::optional<Selection> output;  // the size-k member, when present
    long iterations = 0;
    std::vector<TraceEvent> trace;
    std::optional<long> first_hit_iteration;
    std::optional<long> first_jmax_k;  // k-tMM runs: first iteration with J_max = k
};

// Called after every iteration that changed the population.
using RunObserver = std::function<void(const Population&, long iteration)>;

RunResult run(const Formulation& form, const RunConfig& cfg,
              const RunObserver& observer = {});

void write_trace_jsonl(const std::vector<TraceEvent>& trace, std::ostream& out);

}  // namespace evoclust

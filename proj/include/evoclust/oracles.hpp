#pragma once

#include <string>
#include <vector>

#include "evoclust/objectives.hpp"
#include "evoclust/selection.hpp"

namespace evoclust {

struct SubsetOpt {
    double optimum = 0.0;
    Selection witness;
    long evaluated = 0;
};

struct PartitionOpt {
    double optimum = 0.0;
    std::vector<std::vector<int>> blocks;
    long evaluated = 0;
};

struct FairOpt {
    bool feasible = false;
    double optimum = 0.0;
    Selection witness;
    long evaluated = 0;
};

// Enumeration caps; the oracles refuse (throw) beyond these.
constexpr long kSubsetEnumerationCap = 2'000'000;
constexpr int kPartitionEnumerationCap = 13;

// Brute-force optimum over all size-k selections of the formulation's ground
// set, under its original objective.
SubsetOpt exact_subset_opt(const Formulation& form);

enum class PartitionObjective { KTmm, KMeansCentroid };

// Brute-force optimum over all partitions of D into at most k non-empty
// blocks. KMeansCentroid scores each block against its continuous centroid.
PartitionOpt exact_partition_opt(const Dataset& ds, int k, PartitionObjective obj);

// Optimum k-median cost among size-k selections with fairness_factor <= beta.
FairOpt exact_fair_opt(const Formulation& form);

// Farthest-first traversal; ties broken by lowest index.
Selection gonzalez(const DistanceTable& t, int k, int start);

// First-improvement p-swap local search: accept the first swap (lexicographic
// by out-set then in-set) whose cost is <= (1 - delta) * current. For the fair
// formulation only swaps preserving zero ball violations are considered.
Selection local_search_pswap(const Formulation& form, int p, double delta,
                             Selection start, long max_rounds);

struct BoundParams {
    ProblemKind problem = ProblemKind::KTmm;
    int n = 0;
    int k = 0;
    int ground = 0;  // |F| or |C|; equals n for k-tMM/k-center/fair
    int p = 1;
    double epsilon = 0.1;
    int lambda = 1;
    double sum_dmax = 0.0;       // sum_i d_i^max
    double sum_dmin_low = 0.0;   // sum of the n-k smallest d_i^min
    double sum_dmax_high = 0.0;  // sum of the n-k largest d_i^max (fair)
};

struct BoundResult {
    double value = 0.0;
    std::string note;  // records the unit-constant convention for O(.) bounds
};

BoundParams bound_params_from(const Formulation& form, int p, double epsilon);

// Closed-form expected-iteration bounds; big-O expressions are reported
// pre-asymptotically with all hidden constants taken as 1.
BoundResult iteration_bound(const BoundParams& bp);

// Expected iterations per successful local-search step:
// 1 / (1 - (1 - pr_sel * pr_rep)^lambda).
double per_step_bound(double pr_sel, double pr_rep, int lambda);

}  // namespace evoclust

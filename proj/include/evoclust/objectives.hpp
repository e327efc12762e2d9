#pragma once

#include <vector>

#include "evoclust/fairness.hpp"
#include "evoclust/geometry.hpp"
#include "evoclust/selection.hpp"

namespace evoclust {

enum class ProblemKind { KTmm, KCenter, KMedian, KMeans, FairKMedian };

// Nearest-center clustering induced by a selection. Ties go to the lowest
// center index; clusters may be empty.
struct Partition {
    std::vector<int> assignment;  // point index -> position in `centers`
    std::vector<int> centers;     // selected indices, ascending
    std::vector<std::vector<int>> clusters;
};

// One of the five bi-objective reformulations, bound to its instance data.
struct Formulation {
    ProblemKind problem = ProblemKind::KTmm;
    int k = 1;
    const Dataset* ds = nullptr;
    const DistanceTable* table = nullptr;  // null for k-means

    // k-means over a candidate set
    std::vector<Point> candidates;
    std::vector<std::vector<double>> cand_dist;  // [point][candidate], squared

    // fair k-median
    double beta = 1.0;
    FairRadii radii;
    CriticalBallSet balls;
    double penalty_weight = 0.0;  // sum_i d_i^max

    int ground_size() const;
};

Formulation make_ktmm(const Dataset& ds, const DistanceTable& t, int k);
Formulation make_kcenter(const Dataset& ds, const DistanceTable& t, int k);
Formulation make_kmedian(const Dataset& ds, const DistanceTable& t, int k);
Formulation make_kmeans(const Dataset& ds, std::vector<Point> candidates, int k);
Formulation make_fair(const Dataset& ds, const DistanceTable& t, int k, double beta);

Partition assign_clusters(const Selection& x, const DistanceTable& t);

// f1 of the k-tMM reformulation: min inter-center distance minus max
// point-to-own-center distance; +inf for |x| <= 1.
double eval_ktmm_f1(const Selection& x, const DistanceTable& t);

// Max pairwise distance within any cluster; 0 for empty/singleton clusters.
double eval_ktmm_partition_cost(const Partition& p, const DistanceTable& t);

double eval_kcenter(const Selection& x, const DistanceTable& t);
double eval_kmedian(const Selection& x, const DistanceTable& t);
double eval_kmeans(const Selection& x, const Formulation& form);
double eval_fair_penalized(const Selection& x, const DistanceTable& t,
                           const CriticalBallSet& balls, double penalty_weight);

ObjectiveVector evaluate(const Formulation& form, const Selection& x);

// Cost under the original (minimization) objective of each problem. For the
// fair formulation this is the plain k-median cost.
double original_cost(const Formulation& form, const Selection& x);

enum class CandidateStrategy { DataPoints, Grid };

// Grid spacing is resolution * (bounding-box diagonal); output deduplicated.
std::vector<Point> build_candidate_set(const Dataset& ds, CandidateStrategy strategy,
                                       double resolution = 0.0);

}  // namespace evoclust

#pragma once

#include <string>
#include <vector>

#include "evoclust/geometry.hpp"
#include "evoclust/selection.hpp"

namespace evoclust {

// Per-point fair radii: r[i] is the smallest radius whose ball around point i
// contains at least ceil(n/k) points of D (the point itself included).
struct FairRadii {
    std::vector<double> r;
    int threshold = 0;  // ceil(n/k)
};

struct CriticalBallSet {
    std::vector<int> centers;   // point indices c*_1..c*_q
    std::vector<double> radii;  // beta * r(c*_j)
    double beta = 1.0;
    int q() const { return static_cast<int>(centers.size()); }
};

FairRadii fair_radius_all(const DistanceTable& t, int k);

// Greedy sweep over points in ascending-r order; the result satisfies both
// critical-ball conditions (verified post-construction) and q <= k (rejected
// with a diagnostic otherwise).
CriticalBallSet build_critical_balls(const DistanceTable& t, const FairRadii& radii,
                                     double beta, int k);

// Number of balls containing no selected center.
int violation_count(const Selection& x, const CriticalBallSet& balls,
                    const DistanceTable& t);

// max_i d(v_i, X) / r_i; a set is gamma-fair iff this is <= gamma.
double fairness_factor(const Selection& x, const DistanceTable& t,
                       const FairRadii& radii);

std::string balls_to_json(const CriticalBallSet& balls);

}  // namespace evoclust

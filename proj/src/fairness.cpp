#include "evoclust/fairness.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "json.hpp"

namespace evoclust {

FairRadii fair_radius_all(const DistanceTable& t, int k) {
    const int n = t.n_points();
    if (k < 1 || k > n) throw std::invalid_argument("fair_radius_all: need 1 <= k <= n");
    const int threshold = (n + k - 1) / k;  // ceil(n/k)
    FairRadii out;
    out.threshold = threshold;
    out.r.resize(n);
    std::vector<double> dists(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) dists[j] = t.at(i, j);
        std::nth_element(dists.begin(), dists.begin() + (threshold - 1), dists.end());
        out.r[i] = dists[threshold - 1];
    }
    return out;
}

CriticalBallSet build_critical_balls(const DistanceTable& t, const FairRadii& radii,
                                     double beta, int k) {
    if (beta < 1.0) throw std::invalid_argument("build_critical_balls: beta must be >= 1");
    const int n = t.n_points();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return radii.r[a] < radii.r[b]; });

    CriticalBallSet balls;
    balls.beta = beta;
    for (int v : order) {
        bool separated = true;
        for (int c : balls.centers) {
            if (t.at(v, c) <= 6.0 * beta * std::max(radii.r[v], radii.r[c])) {
                separated = false;
                break;
            }
        }
        if (separated) {
            balls.centers.push_back(v);
            balls.radii.push_back(beta * radii.r[v]);
        }
    }

    // Verify both conditions regardless of how the centers were produced.
    for (int i = 0; i < n; ++i) {
        double dmin = std::numeric_limits<double>::infinity();
        for (int c : balls.centers) dmin = std::min(dmin, t.at(i, c));
        if (dmin > 6.0 * beta * radii.r[i])
            throw std::runtime_error("critical-ball construction violated condition 1");
    }
    for (size_t a = 0; a < balls.centers.size(); ++a)
        for (size_t b = a + 1; b < balls.centers.size(); ++b) {
            const int ca = balls.centers[a], cb = balls.centers[b];
            if (t.at(ca, cb) <= 6.0 * beta * std::max(radii.r[ca], radii.r[cb]))
                throw std::runtime_error("critical-ball construction violated condition 2");
        }
    if (balls.q() > k)
        throw std::invalid_argument(
            "critical-ball construction yielded q = " + std::to_string(balls.q()) +
            " > k = " + std::to_string(k) + "; instance rejected");
    return balls;
}

int violation_count(const Selection& x, const CriticalBallSet& balls,
                    const DistanceTable& t) {
    int violations = 0;
    for (int j = 0; j < balls.q(); ++j) {
        bool covered = false;
        for (int i = 0; i < x.ground() && !covered; ++i)
            if (x.test(i) && t.at(balls.centers[j], i) <= balls.radii[j]) covered = true;
        if (!covered) ++violations;
    }
    return violations;
}

double fairness_factor(const Selection& x, const DistanceTable& t,
                       const FairRadii& radii) {
    if (x.size() < 1) throw std::invalid_argument("fairness_factor: empty selection");
    const int n = t.n_points();
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        double dmin = std::numeric_limits<double>::infinity();
        for (int j = 0; j < x.ground(); ++j)
            if (x.test(j)) dmin = std::min(dmin, t.at(i, j));
        if (radii.r[i] == 0.0) {
            if (dmin > 0.0) return std::numeric_limits<double>::infinity();
            continue;  // contributes 0
        }
        worst = std::max(worst, dmin / radii.r[i]);
    }
    return worst;
}

std::string balls_to_json(const CriticalBallSet& balls) {
    nlohmann::json j;
    j["beta"] = balls.beta;
    j["centers"] = balls.centers;
    j["radii"] = balls.radii;
    return j.dump();
}

}  // namespace evoclust

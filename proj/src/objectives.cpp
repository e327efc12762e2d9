#include "evoclust/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace evoclust {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_nonempty(const Selection& x) {
    if (x.size() < 1) throw std::invalid_argument("empty selection");
}
}  // namespace

int Formulation::ground_size() const {
    switch (problem) {
        case ProblemKind::KTmm:
        case ProblemKind::KCenter:
        case ProblemKind::FairKMedian:
            return ds->n();
        case ProblemKind::KMedian:
            return table->n_facilities();
        case ProblemKind::KMeans:
            return static_cast<int>(candidates.size());
    }
    return 0;
}

namespace {
Formulation make_base(ProblemKind p, const Dataset& ds, const DistanceTable& t, int k) {
    Formulation f;
    f.problem = p;
    f.k = k;
    f.ds = &ds;
    f.table = &t;
    if (k < 1 || k > f.ground_size())
        throw std::invalid_argument("need 1 <= k <= ground-set size");
    return f;
}
}  // namespace

Formulation make_ktmm(const Dataset& ds, const DistanceTable& t, int k) {
    if (!t.metric()) throw std::invalid_argument("k-tMM requires a metric table");
    return make_base(ProblemKind::KTmm, ds, t, k);
}

Formulation make_kcenter(const Dataset& ds, const DistanceTable& t, int k) {
    if (!t.metric()) throw std::invalid_argument("k-center requires a metric table");
    return make_base(ProblemKind::KCenter, ds, t, k);
}

Formulation make_kmedian(const Dataset& ds, const DistanceTable& t, int k) {
    return make_base(ProblemKind::KMedian, ds, t, k);
}

Formulation make_kmeans(const Dataset& ds, std::vector<Point> candidates, int k) {
    Formulation f;
    f.problem = ProblemKind::KMeans;
    f.k = k;
    f.ds = &ds;
    f.candidates = std::move(candidates);
    if (k < 1 || k > f.ground_size())
        throw std::invalid_argument("need 1 <= k <= ground-set size");
    f.cand_dist.assign(ds.n(), std::vector<double>(f.candidates.size()));
    for (int i = 0; i < ds.n(); ++i)
        for (size_t c = 0; c < f.candidates.size(); ++c)
            f.cand_dist[i][c] =
                distance(DistanceKind::SquaredEuclidean, ds.points[i], f.candidates[c]);
    return f;
}

Formulation make_fair(const Dataset& ds, const DistanceTable& t, int k, double beta) {
    if (!t.metric()) throw std::invalid_argument("fair k-median requires a metric table");
    if (ds.has_facilities())
        throw std::invalid_argument("fair k-median selects centers from D (F = D)");
    Formulation f = make_base(ProblemKind::FairKMedian, ds, t, k);
    f.beta = beta;
    f.radii = fair_radius_all(t, k);
    f.balls = build_critical_balls(t, f.radii, beta, k);
    f.penalty_weight = 0.0;
    for (int i = 0; i < ds.n(); ++i) {
        double dmax = 0.0;
        for (int j = 0; j < ds.n(); ++j) dmax = std::max(dmax, t.at(i, j));
        f.penalty_weight += dmax;
    }
    return f;
}

Partition assign_clusters(const Selection& x, const DistanceTable& t) {
    require_nonempty(x);
    Partition p;
    p.centers = x.ones();
    p.clusters.assign(p.centers.size(), {});
    p.assignment.resize(t.n_points());
    for (int i = 0; i < t.n_points(); ++i) {
        int best = 0;
        double bestd = t.at(i, p.centers[0]);
        for (size_t m = 1; m < p.centers.size(); ++m) {
            const double d = t.at(i, p.centers[m]);
            if (d < bestd) {
                bestd = d;
                best = static_cast<int>(m);
            }
        }
        p.assignment[i] = best;
        p.clusters[best].push_back(i);
    }
    return p;
}

double eval_ktmm_f1(const Selection& x, const DistanceTable& t) {
    if (x.size() <= 1) return kInf;
    const auto centers = x.ones();
    double min_inter = kInf;
    for (size_t a = 0; a < centers.size(); ++a)
        for (size_t b = a + 1; b < centers.size(); ++b)
            min_inter = std::min(min_inter, t.at(centers[a], centers[b]));
    double max_to_center = 0.0;
    for (int i = 0; i < t.n_points(); ++i) {
        double d = kInf;
        for (int c : centers) d = std::min(d, t.at(i, c));
        max_to_center = std::max(max_to_center, d);
    }
    return min_inter - max_to_center;
}

double eval_ktmm_partition_cost(const Partition& p, const DistanceTable& t) {
    double cost = 0.0;
    for (const auto& cluster : p.clusters)
        for (size_t a = 0; a < cluster.size(); ++a)
            for (size_t b = a + 1; b < cluster.size(); ++b)
                cost = std::max(cost, t.at(cluster[a], cluster[b]));
    return cost;
}

double eval_kcenter(const Selection& x, const DistanceTable& t) {
    require_nonempty(x);
    const auto centers = x.ones();
    double worst = 0.0;
    for (int i = 0; i < t.n_points(); ++i) {
        double d = kInf;
        for (int c : centers) d = std::min(d, t.at(i, c));
        worst = std::max(worst, d);
    }
    return worst;
}

double eval_kmedian(const Selection& x, const DistanceTable& t) {
    require_nonempty(x);
    const auto facilities = x.ones();
    double total = 0.0;
    for (int i = 0; i < t.n_points(); ++i) {
        double d = kInf;
        for (int f : facilities) d = std::min(d, t.point_to_facility(i, f));
        total += d;
    }
    return total;
}

double eval_kmeans(const Selection& x, const Formulation& form) {
    require_nonempty(x);
    const auto centers = x.ones();
    double total = 0.0;
    for (int i = 0; i < form.ds->n(); ++i) {
        double d = kInf;
        for (int c : centers) d = std::min(d, form.cand_dist[i][c]);
        total += d;
    }
    return total;
}

double eval_fair_penalized(const Selection& x, const DistanceTable& t,
                           const CriticalBallSet& balls, double penalty_weight) {
    require_nonempty(x);
    return eval_kmedian(x, t) + penalty_weight * violation_count(x, balls, t);
}

ObjectiveVector evaluate(const Formulation& form, const Selection& x) {
    ObjectiveVector v;
    v.f2 = x.size();
    switch (form.problem) {
        case ProblemKind::KTmm:
            v.f1 = eval_ktmm_f1(x, *form.table);
            break;
        case ProblemKind::KCenter:
            v.f1 = x.size() == 0 ? -kInf : -eval_kcenter(x, *form.table);
            break;
        case ProblemKind::KMedian:
            v.f1 = x.size() == 0 ? -kInf : -eval_kmedian(x, *form.table);
            break;
        case ProblemKind::KMeans:
            v.f1 = x.size() == 0 ? -kInf : -eval_kmeans(x, form);
            break;
        case ProblemKind::FairKMedian:
            v.f1 = x.size() == 0
                       ? -kInf
                       : -eval_fair_penalized(x, *form.table, form.balls,
                                              form.penalty_weight);
            break;
    }
    return v;
}

double original_cost(const Formulation& form, const Selection& x) {
    switch (form.problem) {
        case ProblemKind::KTmm:
            return eval_ktmm_partition_cost(assign_clusters(x, *form.table), *form.table);
        case ProblemKind::KCenter:
            return eval_kcenter(x, *form.table);
        case ProblemKind::KMedian:
        case ProblemKind::FairKMedian:
            return eval_kmedian(x, *form.table);
        case ProblemKind::KMeans:
            return eval_kmeans(x, form);
    }
    return 0.0;
}

std::vector<Point> build_candidate_set(const Dataset& ds, CandidateStrategy strategy,
                                       double resolution) {
    if (ds.kind != DistanceKind::SquaredEuclidean)
        throw std::invalid_argument("candidate sets apply to squared-Euclidean datasets");
    std::set<Point> seen;
    std::vector<Point> out;
    auto push = [&](const Point& p) {
        if (seen.insert(p).second) out.push_back(p);
    };
    for (const auto& p : ds.points) push(p);
    if (strategy == CandidateStrategy::Grid) {
        if (resolution <= 0.0) throw std::invalid_argument("grid resolution must be > 0");
        const int l = ds.dimension;
        Point lo = ds.points.front(), hi = ds.points.front();
        for (const auto& p : ds.points)
            for (int d = 0; d < l; ++d) {
                lo[d] = std::min(lo[d], p[d]);
                hi[d] = std::max(hi[d], p[d]);
            }
        double diag = 0.0;
        for (int d = 0; d < l; ++d) diag += (hi[d] - lo[d]) * (hi[d] - lo[d]);
        diag = std::sqrt(diag);
        const double spacing = resolution * diag;
        if (spacing <= 0.0) return out;  // degenerate bounding box
        std::vector<int> steps(l);
        for (int d = 0; d < l; ++d)
            steps[d] = static_cast<int>(std::floor((hi[d] - lo[d]) / spacing)) + 1;
        // iterate the axis-aligned grid lo + spacing * idx
        std::vector<int> idx(l, 0);
        while (true) {
            Point p(l);
            for (int d = 0; d < l; ++d) p[d] = std::min(lo[d] + spacing * idx[d], hi[d]);
            push(p);
            int d = 0;
            for (; d < l; ++d) {
                if (++idx[d] < steps[d]) break;
                idx[d] = 0;
            }
            if (d == l) break;
        }
    }
    return out;
}

}  // namespace evoclust

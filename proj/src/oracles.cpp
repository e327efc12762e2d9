#include "evoclust/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace evoclust {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kE = 2.718281828459045235;

long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > 4 * kSubsetEnumerationCap) return r;  // avoid overflow, already refused
    }
    return r;
}

// Visit all s-subsets of `items` in lexicographic order; stop when f returns true.
template <typename F>
bool for_each_combination(const std::vector<int>& items, int s, F&& f) {
    const int n = static_cast<int>(items.size());
    if (s > n) return false;
    std::vector<int> idx(s);
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<int> pick(s);
    while (true) {
        for (int i = 0; i < s; ++i) pick[i] = items[idx[i]];
        if (f(pick)) return true;
        int i = s - 1;
        while (i >= 0 && idx[i] == n - s + i) --i;
        if (i < 0) return false;
        ++idx[i];
        for (int j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace

SubsetOpt exact_subset_opt(const Formulation& form) {
    const int g = form.ground_size();
    const int k = form.k;
    const long count = binomial(g, k);
    if (count > kSubsetEnumerationCap)
        throw std::invalid_argument("exact_subset_opt: C(" + std::to_string(g) + "," +
                                    std::to_string(k) + ") = " + std::to_string(count) +
                                    " exceeds the enumeration cap");
    SubsetOpt best;
    best.optimum = kInf;
    std::vector<int> all(g);
    std::iota(all.begin(), all.end(), 0);
    for_each_combination(all, k, [&](const std::vector<int>& pick) {
        Selection x = Selection::of(g, pick);
        const double cost = original_cost(form, x);
        ++best.evaluated;
        if (cost < best.optimum) {
            best.optimum = cost;
            best.witness = std::move(x);
        }
        return false;
    });
    if (original_cost(form, best.witness) != best.optimum)
        throw std::runtime_error("exact_subset_opt: witness self-check failed");
    return best;
}

namespace {

struct PartitionSearch {
    const Dataset* ds = nullptr;
    DistanceTable table;
    int n = 0, k = 0;
    PartitionObjective obj;
    std::vector<int> assign;
    double best = kInf;
    std::vector<int> best_assign;
    long evaluated = 0;

    // per-block incremental state
    std::vector<std::vector<int>> blocks;
    std::vector<Point> block_sum;     // kmeans: coordinate sums
    std::vector<double> block_sumsq;  // kmeans: sum of squared norms

    double block_add_cost_ktmm(int b, int point) const {
        double worst = 0.0;
        for (int m : blocks[b]) worst = std::max(worst, table.at(m, point));
        return worst;
    }

    // SSE of a block against its centroid, from (sum, sumsq, count).
    double sse(int b) const {
        const double cnt = static_cast<double>(blocks[b].size());
        if (cnt == 0.0) return 0.0;
        double norm2 = 0.0;
        for (double c : block_sum[b]) norm2 += c * c;
        return block_sumsq[b] - norm2 / cnt;
    }

    void search(int point, double cost) {
        if (cost >= best) return;  // both objectives are monotone under growth
        if (point == n) {
            ++evaluated;
            best = cost;
            best_assign = assign;
            return;
        }
        const int open = static_cast<int>(blocks.size());
        for (int b = 0; b <= open && b < k; ++b) {
            double next_cost;
            if (b == open) blocks.push_back({});
            if (obj == PartitionObjective::KTmm) {
                next_cost = std::max(cost, block_add_cost_ktmm(b, point));
                blocks[b].push_back(point);
            } else {
                if (b == open) {
                    block_sum.push_back(Point(ds->dimension, 0.0));
                    block_sumsq.push_back(0.0);
                }
                const double before = sse(b);
                blocks[b].push_back(point);
                for (int d = 0; d < ds->dimension; ++d)
                    block_sum[b][d] += ds->points[point][d];
                double p2 = 0.0;
                for (double c : ds->points[point]) p2 += c * c;
                block_sumsq[b] += p2;
                next_cost = cost - before + sse(b);
            }
            assign[point] = b;
            search(point + 1, next_cost);
            blocks[b].pop_back();
            if (obj == PartitionObjective::KMeansCentroid) {
                for (int d = 0; d < ds->dimension; ++d)
                    block_sum[b][d] -= ds->points[point][d];
                double p2 = 0.0;
                for (double c : ds->points[point]) p2 += c * c;
                block_sumsq[b] -= p2;
            }
            if (b == open) {
                blocks.pop_back();
                if (obj == PartitionObjective::KMeansCentroid) {
                    block_sum.pop_back();
                    block_sumsq.pop_back();
                }
            }
        }
    }
};

}  // namespace

PartitionOpt exact_partition_opt(const Dataset& ds, int k, PartitionObjective obj) {
    if (ds.n() > kPartitionEnumerationCap)
        throw std::invalid_argument("exact_partition_opt: n = " + std::to_string(ds.n()) +
                                    " exceeds the partition-enumeration cap");
    if (k < 1) throw std::invalid_argument("exact_partition_opt: k must be >= 1");
    PartitionSearch s;
    s.ds = &ds;
    s.n = ds.n();
    s.k = k;
    s.obj = obj;
    s.assign.assign(s.n, -1);
    if (obj == PartitionObjective::KTmm) s.table = build_table(ds);
    s.search(0, 0.0);

    PartitionOpt out;
    out.optimum = s.best;
    out.evaluated = s.evaluated;
    const int nblocks = *std::max_element(s.best_assign.begin(), s.best_assign.end()) + 1;
    out.blocks.assign(nblocks, {});
    for (int i = 0; i < s.n; ++i) out.blocks[s.best_assign[i]].push_back(i);

    // witness self-check: rescore the blocks from scratch
    double check = 0.0;
    if (obj == PartitionObjective::KTmm) {
        for (const auto& block : out.blocks)
            for (size_t a = 0; a < block.size(); ++a)
                for (size_t b = a + 1; b < block.size(); ++b)
                    check = std::max(check, s.table.at(block[a], block[b]));
    } else {
        for (const auto& block : out.blocks) {
            Point centroid(ds.dimension, 0.0);
            for (int i : block)
                for (int d = 0; d < ds.dimension; ++d) centroid[d] += ds.points[i][d];
            for (int d = 0; d < ds.dimension; ++d) centroid[d] /= block.size();
            for (int i : block)
                check += distance(DistanceKind::SquaredEuclidean, ds.points[i], centroid);
        }
    }
    if (std::abs(check - out.optimum) > 1e-9 * std::max(1.0, std::abs(out.optimum)))
        throw std::runtime_error("exact_partition_opt: witness self-check failed");
    return out;
}

FairOpt exact_fair_opt(const Formulation& form) {
    if (form.problem != ProblemKind::FairKMedian)
        throw std::invalid_argument("exact_fair_opt: fair formulation required");
    const int n = form.ds->n();
    const long count = binomial(n, form.k);
    if (count > kSubsetEnumerationCap)
        throw std::invalid_argument("exact_fair_opt: enumeration cap exceeded");
    FairOpt best;
    best.optimum = kInf;
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    for_each_combination(all, form.k, [&](const std::vector<int>& pick) {
        Selection x = Selection::of(n, pick);
        ++best.evaluated;
        if (fairness_factor(x, *form.table, form.radii) <= form.beta) {
            const double cost = eval_kmedian(x, *form.table);
            if (cost < best.optimum) {
                best.feasible = true;
                best.optimum = cost;
                best.witness = std::move(x);
            }
        }
        return false;
    });
    return best;
}

Selection gonzalez(const DistanceTable& t, int k, int start) {
    const int n = t.n_points();
    if (k < 1 || k > n) throw std::invalid_argument("gonzalez: need 1 <= k <= n");
    if (start < 0 || start >= n) throw std::invalid_argument("gonzalez: bad start index");
    Selection x = Selection::zeros(n);
    x.set(start, true);
    std::vector<double> dist(n);
    for (int i = 0; i < n; ++i) dist[i] = t.at(i, start);
    while (x.size() < k) {
        int far = 0;
        for (int i = 1; i < n; ++i)
            if (dist[i] > dist[far]) far = i;
        x.set(far, true);
        for (int i = 0; i < n; ++i) dist[i] = std::min(dist[i], t.at(i, far));
    }
    return x;
}

Selection local_search_pswap(const Formulation& form, int p, double delta,
                             Selection start, long max_rounds) {
    if (start.size() != form.k)
        throw std::invalid_argument("local_search_pswap: start must have size k");
    if (form.problem == ProblemKind::FairKMedian) {
        if (p != 4)
            throw std::invalid_argument("local_search_pswap: fair formulation uses p = 4");
        if (violation_count(start, form.balls, *form.table) != 0)
            throw std::invalid_argument("local_search_pswap: infeasible fair start");
    }
    const int g = form.ground_size();
    Selection current = std::move(start);
    double cost = original_cost(form, current);

    for (long round = 0; round < max_rounds; ++round) {
        bool accepted = false;
        const std::vector<int> ones = current.ones();
        std::vector<int> zeros;
        zeros.reserve(g - current.size());
        for (int i = 0; i < g; ++i)
            if (!current.test(i)) zeros.push_back(i);

        for (int s = 1; s <= p && !accepted; ++s) {
            for_each_combination(ones, s, [&](const std::vector<int>& out) {
                return for_each_combination(zeros, s, [&](const std::vector<int>& in) {
                    Selection cand = current;
                    for (int i : out) cand.set(i, false);
                    for (int i : in) cand.set(i, true);
                    if (form.problem == ProblemKind::FairKMedian &&
                        violation_count(cand, form.balls, *form.table) != 0)
                        return false;
                    const double c = original_cost(form, cand);
                    if (c <= (1.0 - delta) * cost) {
                        current = std::move(cand);
                        cost = c;
                        accepted = true;
                        return true;
                    }
                    return false;
                });
            });
        }
        if (!accepted) break;
    }
    return current;
}

BoundParams bound_params_from(const Formulation& form, int p, double epsilon) {
    BoundParams bp;
    bp.problem = form.problem;
    bp.n = form.ds->n();
    bp.k = form.k;
    bp.ground = form.ground_size();
    bp.p = p;
    bp.epsilon = epsilon;

    const int n = bp.n;
    std::vector<double> dmax(n, 0.0), dmin(n, kInf);
    auto dist_to_ground = [&](int i, int u) -> double {
        if (form.problem == ProblemKind::KMeans) return form.cand_dist[i][u];
        if (form.problem == ProblemKind::KMedian)
            return form.table->point_to_facility(i, u);
        return form.table->at(i, u);
    };
    const bool shared_ground =
        form.problem != ProblemKind::KMedian || !form.ds->has_facilities();
    for (int i = 0; i < n; ++i) {
        bool skipped_self = false;
        for (int u = 0; u < bp.ground; ++u) {
            const double d = dist_to_ground(i, u);
            dmax[i] = std::max(dmax[i], d);
            // exclude the point itself from d_i^min
            if (shared_ground && form.problem != ProblemKind::KMeans && u == i) continue;
            if (form.problem == ProblemKind::KMeans && d == 0.0 && !skipped_self) {
                skipped_self = true;
                continue;
            }
            dmin[i] = std::min(dmin[i], d);
        }
    }
    bp.sum_dmax = std::accumulate(dmax.begin(), dmax.end(), 0.0);
    std::sort(dmin.begin(), dmin.end());
    for (int i = 0; i < n - bp.k; ++i) bp.sum_dmin_low += dmin[i];
    std::sort(dmax.begin(), dmax.end());
    for (int i = bp.k; i < n; ++i) bp.sum_dmax_high += dmax[i];
    return bp;
}

BoundResult iteration_bound(const BoundParams& bp) {
    BoundResult out;
    const double n = bp.n, k = bp.k, g = bp.ground;
    switch (bp.problem) {
        case ProblemKind::KTmm:
        case ProblemKind::KCenter:
            out.value = kE * k * k * n - kE * k * (n - 1.0);
            out.note = "closed form";
            return out;
        case ProblemKind::KMedian:
        case ProblemKind::KMeans: {
            if (bp.sum_dmin_low <= 0.0) {
                out.value = kInf;
                out.note = "sum of smallest d_i^min is 0 (duplicate points)";
                return out;
            }
            const double ratio = 3.0 + 2.0 / bp.p;
            const double delta = bp.problem == ProblemKind::KMedian
                                     ? bp.epsilon / k
                                     : (1.0 + (1.0 - bp.epsilon) / ratio) * bp.epsilon / k;
            const double phase1 = kE * k * g * std::log(g / (g - k));
            const double phase2 = kE * k * std::pow(g, 2.0 * bp.p) * (1.0 / delta) *
                                  std::log(bp.sum_dmax / bp.sum_dmin_low);
            out.value = phase1 + phase2;
            out.note = "pre-asymptotic; O(.) constants taken as 1; natural log";
            return out;
        }
        case ProblemKind::FairKMedian: {
            if (bp.sum_dmin_low <= 0.0) {
                out.value = kInf;
                out.note = "sum of smallest d_i^min is 0 (duplicate points)";
                return out;
            }
            const double phase1 = kE * k * n * std::log(n / (n - k));
            const double phase2 = 2.0 * kE * k * k * n;
            const double phase3 = kE * k * std::pow(n, 8.0) * 8.0 * k *
                                  std::log(bp.sum_dmax_high / bp.sum_dmin_low);
            out.value = phase1 + phase2 + phase3;
            out.note = "pre-asymptotic; O(.) constants taken as 1; natural log";
            return out;
        }
    }
    return out;
}

double per_step_bound(double pr_sel, double pr_rep, int lambda) {
    return 1.0 / (1.0 - std::pow(1.0 - pr_sel * pr_rep, lambda));
}

}  // namespace evoclust

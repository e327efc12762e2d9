#pragma once

#include <string>
#include <vector>

namespace evoclust {

using Point = std::vector<double>;

enum class DistanceKind { Euclidean, SquaredEuclidean, ExplicitTable };

// Point set with an optional facility set (discrete k-median) and a distance
// source. For ExplicitTable, `table` is square over D∪F.
struct Dataset {
    int dimension = 0;
    std::vector<Point> points;
    std::vector<Point> facilities;  // empty means F = D
    DistanceKind kind = DistanceKind::Euclidean;
    std::vector<std::vector<double>> table;

    int n() const { return static_cast<int>(points.size()); }
    bool has_facilities() const { return !facilities.empty(); }
    int n_facilities() const {
        return has_facilities() ? static_cast<int>(facilities.size()) : n();
    }
    void validate() const;  // throws std::invalid_argument
};

struct MetricCheck {
    bool holds = true;
    int i = -1, j = -1, m = -1;  // witness: d(i,j) > d(i,m) + d(m,j) + tol
};

// Precomputed pairwise distances over D∪F (points first, then facilities).
class DistanceTable {
public:
    DistanceTable() = default;
    DistanceTable(std::vector<std::vector<double>> entries, int n_points, bool metric);

    double at(int a, int b) const { return entries_[a][b]; }
    int size() const { return static_cast<int>(entries_.size()); }
    int n_points() const { return n_points_; }
    int n_facilities() const {
        return size() == n_points_ ? n_points_ : size() - n_points_;
    }
    // Distance from data point i to facility j. Facilities share the point
    // columns when the dataset has no separate facility set.
    double point_to_facility(int i, int j) const {
        return entries_[i][size() == n_points_ ? j : n_points_ + j];
    }
    bool metric() const { return metric_; }
    double max_entry() const;

private:
    std::vector<std::vector<double>> entries_;
    int n_points_ = 0;
    bool metric_ = false;
};

double distance(DistanceKind kind, const Point& u, const Point& v);

DistanceTable build_table(const Dataset& ds);

// Additive tolerance for triangle-inequality checks: 1e-9 * max entry.
double metric_tolerance(const DistanceTable& t);

MetricCheck check_metric(const DistanceTable& t, double tol);

Dataset load_instance_json(const std::string& path);
Dataset load_instance_csv(const std::string& path);
Dataset load_instance(const std::string& path);  // dispatch on extension

}  // namespace evoclust

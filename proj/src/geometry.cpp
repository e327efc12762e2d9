#include "evoclust/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace evoclust {

void Dataset::validate() const {
    if (points.empty()) throw std::invalid_argument("dataset needs at least one point");
    for (const auto& p : points)
        if (static_cast<int>(p.size()) != dimension)
            throw std::invalid_argument("point dimension mismatch");
    for (const auto& p : facilities)
        if (static_cast<int>(p.size()) != dimension)
            throw std::invalid_argument("facility dimension mismatch");
    for (const auto& p : points)
        for (double c : p)
            if (!std::isfinite(c)) throw std::invalid_argument("non-finite coordinate");
    for (const auto& p : facilities)
        for (double c : p)
            if (!std::isfinite(c)) throw std::invalid_argument("non-finite coordinate");
    if (kind == DistanceKind::ExplicitTable) {
        const size_t total = points.size() + facilities.size();
        if (table.size() != total)
            throw std::invalid_argument("explicit table must be square over D∪F");
        for (size_t i = 0; i < total; ++i) {
            if (table[i].size() != total)
                throw std::invalid_argument("explicit table must be square over D∪F");
            if (table[i][i] != 0.0)
                throw std::invalid_argument("explicit table must be zero on the diagonal");
            for (size_t j = 0; j < total; ++j) {
                if (table[i][j] < 0.0)
                    throw std::invalid_argument("explicit table must be nonnegative");
                if (table[i][j] != table[j][i])
                    throw std::invalid_argument("explicit table must be symmetric");
            }
        }
    }
}

DistanceTable::DistanceTable(std::vector<std::vector<double>> entries, int n_points,
                             bool metric)
    : entries_(std::move(entries)), n_points_(n_points), metric_(metric) {}

double DistanceTable::max_entry() const {
    double m = 0.0;
    for (const auto& row : entries_)
        for (double v : row) m = std::max(m, v);
    return m;
}

double distance(DistanceKind kind, const Point& u, const Point& v) {
    if (u.size() != v.size()) throw std::invalid_argument("dimension mismatch");
    if (kind == DistanceKind::ExplicitTable)
        throw std::invalid_argument("explicit-table distances are indexed, not computed");
    double s = 0.0;
    for (size_t i = 0; i < u.size(); ++i) {
        const double d = u[i] - v[i];
        s += d * d;
    }
    return kind == DistanceKind::Euclidean ? std::sqrt(s) : s;
}

double metric_tolerance(const DistanceTable& t) { return 1e-9 * t.max_entry(); }

MetricCheck check_metric(const DistanceTable& t, double tol) {
    const int g = t.size();
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j)
            for (int m = 0; m < g; ++m)
                if (t.at(i, j) > t.at(i, m) + t.at(m, j) + tol) return {false, i, j, m};
    return {};
}

DistanceTable build_table(const Dataset& ds) {
    ds.validate();
    const int total = ds.n() + static_cast<int>(ds.facilities.size());
    std::vector<std::vector<double>> entries(total, std::vector<double>(total, 0.0));
    auto point_at = [&](int i) -> const Point& {
        return i < ds.n() ? ds.points[i] : ds.facilities[i - ds.n()];
    };
    if (ds.kind == DistanceKind::ExplicitTable) {
        entries = ds.table;
    } else {
        for (int i = 0; i < total; ++i)
            for (int j = i + 1; j < total; ++j)
                entries[i][j] = entries[j][i] = distance(ds.kind, point_at(i), point_at(j));
    }
    bool metric = false;
    if (ds.kind == DistanceKind::Euclidean) {
        metric = true;
    } else if (ds.kind == DistanceKind::ExplicitTable) {
        DistanceTable probe(entries, ds.n(), false);
        metric = check_metric(probe, metric_tolerance(probe)).holds;
    }
    return DistanceTable(std::move(entries), ds.n(), metric);
}

namespace {

DistanceKind parse_kind(const std::string& s) {
    if (s == "euclidean") return DistanceKind::Euclidean;
    if (s == "squared_euclidean") return DistanceKind::SquaredEuclidean;
    if (s == "table") return DistanceKind::ExplicitTable;
    throw std::invalid_argument("unknown distance kind: " + s);
}

std::vector<Point> parse_points(const nlohmann::json& arr) {
    std::vector<Point> out;
    for (const auto& row : arr) out.push_back(row.get<Point>());
    return out;
}

}  // namespace

Dataset load_instance_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open instance file: " + path);
    nlohmann::json j;
    in >> j;
    Dataset ds;
    ds.dimension = j.at("dimension").get<int>();
    ds.points = parse_points(j.at("points"));
    if (j.contains("facilities")) ds.facilities = parse_points(j["facilities"]);
    ds.kind = parse_kind(j.value("distance", "euclidean"));
    if (j.contains("table"))
        ds.table = j["table"].get<std::vector<std::vector<double>>>();
    ds.validate();
    return ds;
}

Dataset load_instance_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open instance file: " + path);
    Dataset ds;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        Point p;
        std::stringstream row(line);
        std::string cell;
        while (std::getline(row, cell, ',')) p.push_back(std::stod(cell));
        ds.points.push_back(std::move(p));
    }
    if (ds.points.empty()) throw std::invalid_argument("empty CSV instance: " + path);
    ds.dimension = static_cast<int>(ds.points.front().size());
    ds.validate();
    return ds;
}

Dataset load_instance(const std::string& path) {
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv")
        return load_instance_csv(path);
    return load_instance_json(path);
}

}  // namespace evoclust

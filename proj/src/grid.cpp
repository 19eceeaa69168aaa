#include "cdcurv/point.hpp"

#include <algorithm>

namespace cdcurv {

Point origin(int m) {
    return Point(std::vector<Complex>(static_cast<size_t>(m), Complex(0.0, 0.0)));
}

Complex Point::monomial(const MultiIndex& alpha) const {
    Complex p(1.0, 0.0);
    for (int i = 0; i < dim(); ++i)
        for (int k = 0; k < alpha[i]; ++k) p *= w[static_cast<size_t>(i)];
    return p;
}

Complex ball_inner(const Point& z, const Point& w) {
    if (z.dim() != w.dim()) throw ConfigError("inner product of points with mismatched dimension");
    Complex s(0.0, 0.0);
    for (int i = 0; i < z.dim(); ++i) s += z[i] * std::conj(w[i]);
    return s;
}

GridSpec GridSpec::explicit_points(std::vector<Point> pts) {
    if (pts.empty()) throw ConfigError("grid must contain at least one point");
    GridSpec g;
    g.m_ = pts.front().dim();
    double r = 0.0;
    for (const Point& p : pts) {
        if (p.dim() != g.m_) throw ConfigError("grid points have mismatched dimension");
        r = std::max(r, p.norm());
    }
    if (r >= 1.0) throw DomainError("grid point outside the open unit ball");
    g.r_max_ = r;
    g.points_ = std::move(pts);
    nlohmann::json pts_json = nlohmann::json::array();
    for (const Point& p : g.points_) {
        nlohmann::json coords = nlohmann::json::array();
        for (const Complex& c : p.w) coords.push_back({c.real(), c.imag()});
        pts_json.push_back(coords);
    }
    g.descriptor_ = {{"type", "points"}, {"points", pts_json}};
    return g;
}

GridSpec GridSpec::radial_ray(std::vector<Complex> direction, std::vector<double> radii) {
    if (direction.empty()) throw ConfigError("ray direction must have dimension >= 1");
    double n2 = 0.0;
    for (const Complex& c : direction) n2 += std::norm(c);
    if (std::abs(n2 - 1.0) > 1e-12) throw ConfigError("ray direction must be a unit vector");
    std::vector<Point> pts;
    double r_max = 0.0;
    for (double r : radii) {
        if (r < 0.0 || r >= 1.0) throw DomainError("ray radius must lie in [0, 1)");
        std::vector<Complex> c = direction;
        for (Complex& v : c) v *= r;
        pts.emplace_back(std::move(c));
        r_max = std::max(r_max, r);
    }
    GridSpec g = explicit_points(std::move(pts));
    nlohmann::json dir = nlohmann::json::array();
    for (const Complex& c : direction) dir.push_back({c.real(), c.imag()});
    g.descriptor_ = {{"type", "ray"}, {"direction", dir}, {"radii", radii}};
    g.r_max_ = r_max;
    return g;
}

GridSpec GridSpec::lattice(int m, int per_axis, double cap) {
    if (per_axis < 1) throw ConfigError("lattice resolution must be >= 1");
    if (cap <= 0.0 || cap >= 1.0) throw ConfigError("lattice cap must lie in (0, 1)");
    std::vector<double> axis;
    if (per_axis == 1) {
        axis.push_back(0.0);
    } else {
        for (int i = 0; i < per_axis; ++i)
            axis.push_back(-cap + 2.0 * cap * i / (per_axis - 1));
    }
    std::vector<Point> pts;
    std::vector<int> idx(static_cast<size_t>(m), 0);
    while (true) {
        std::vector<Complex> c;
        c.reserve(static_cast<size_t>(m));
        for (int i = 0; i < m; ++i) c.emplace_back(axis[static_cast<size_t>(idx[static_cast<size_t>(i)])], 0.0);
        Point p(std::move(c));
        if (p.norm() <= cap) pts.push_back(std::move(p));
        int i = 0;
        for (; i < m; ++i) {
            if (++idx[static_cast<size_t>(i)] < per_axis) break;
            idx[static_cast<size_t>(i)] = 0;
        }
        if (i == m) break;
    }
    GridSpec g = explicit_points(std::move(pts));
    g.descriptor_ = {{"type", "lattice"}, {"m", m}, {"per_axis", per_axis}, {"cap", cap}};
    g.r_max_ = cap;
    return g;
}

nlohmann::json GridSpec::to_json() const { return descriptor_; }

GridSpec GridSpec::from_json(const nlohmann::json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "ray") {
        std::vector<Complex> dir;
        for (const auto& c : j.at("direction")) dir.emplace_back(c.at(0).get<double>(), c.at(1).get<double>());
        return radial_ray(std::move(dir), j.at("radii").get<std::vector<double>>());
    }
    if (type == "lattice") {
        return lattice(j.at("m").get<int>(), j.at("per_axis").get<int>(), j.at("cap").get<double>());
    }
    if (type == "points") {
        std::vector<Point> pts;
        for (const auto& pj : j.at("points")) {
            std::vector<Complex> c;
            for (const auto& cj : pj) c.emplace_back(cj.at(0).get<double>(), cj.at(1).get<double>());
            pts.emplace_back(std::move(c));
        }
        return explicit_points(std::move(pts));
    }
    throw ConfigError("unknown grid type: " + type);
}

}  // namespace cdcurv

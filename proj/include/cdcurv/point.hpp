#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include <json.hpp>

#include "cdcurv/errors.hpp"
#include "cdcurv/multi_index.hpp"

namespace cdcurv {

using Complex = std::complex<double>;

// A point w = (w_1, ..., w_m) of C^m; operations on the open unit ball
// require |w| < 1.
struct Point {
    std::vector<Complex> w;

    Point() = default;
    explicit Point(std::vector<Complex> coords) : w(std::move(coords)) {}

    int dim() const { return static_cast<int>(w.size()); }

    double norm_sq() const {
        double s = 0.0;
        for (const Complex& c : w) s += std::norm(c);
        return s;
    }
    double norm() const { return std::sqrt(norm_sq()); }
    bool inside_ball() const { return norm_sq() < 1.0; }

    Complex operator[](int i) const { return w[static_cast<size_t>(i)]; }

    // w^alpha
    Complex monomial(const MultiIndex& alpha) const;
};

Point origin(int m);

// <z, w> = sum z_i * conj(w_i)
Complex ball_inner(const Point& z, const Point& w);

// Evaluation grids inside the ball. Three shapes: an explicit point list,
// a radial ray r -> r * direction, or a per-coordinate real lattice capped
// at |w| <= r_max.
class GridSpec {
public:
    static GridSpec explicit_points(std::vector<Point> pts);
    static GridSpec radial_ray(std::vector<Complex> direction, std::vector<double> radii);
    static GridSpec lattice(int m, int per_axis, double cap);

    const std::vector<Point>& points() const { return points_; }
    double r_max() const { return r_max_; }
    int dim() const { return m_; }

    nlohmann::json to_json() const;
    static GridSpec from_json(const nlohmann::json& j);

private:
    GridSpec() = default;
    std::vector<Point> points_;
    double r_max_ = 0.0;
    int m_ = 0;
    nlohmann::json descriptor_;
};

}  // namespace cdcurv

#pragma once

// Wirtinger finite differences: mixed partials d^I dbar^J of scalar- and
// matrix-valued fields on the unit ball, built from central differences in
// the underlying real coordinates via
//   d/dw = (d/dx - i d/dy) / 2,   d/dwbar = (d/dx + i d/dy) / 2.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <type_traits>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cdcurv/errors.hpp"
#include "cdcurv/multi_index.hpp"
#include "cdcurv/point.hpp"

namespace cdcurv {

struct WirtingerStencil {
    double step = 1e-4;
    int order = 2;            // 2 or 4
    bool richardson = false;  // one extrapolation pass at the top level
};

namespace detail {

inline bool value_finite(const Complex& v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
}

inline bool value_finite(const Eigen::MatrixXcd& v) { return v.allFinite(); }
inline bool value_finite(const Eigen::VectorXcd& v) { return v.allFinite(); }

// (coordinate, antiholomorphic?) steps, outermost first.
using DerivWord = std::vector<std::pair<int, bool>>;

template <class F>
auto wirtinger_impl(F& f, const Point& w, const DerivWord& word, size_t pos,
                    double h, int order) -> std::invoke_result_t<F&, const Point&> {
    using V = std::invoke_result_t<F&, const Point&>;
    if (pos == word.size()) {
        if (!w.inside_ball()) throw DomainError("finite-difference stencil left the unit ball");
        V v = f(w);
        if (!value_finite(v)) throw EvaluationError("field evaluated to a non-finite value");
        return v;
    }
    const auto [l, anti] = word[pos];
    auto shifted = [&](double t, bool imag_axis) -> V {
        Point p = w;
        p.w[static_cast<size_t>(l)] += imag_axis ? Complex(0.0, t) : Complex(t, 0.0);
        return wirtinger_impl(f, p, word, pos + 1, h, order);
    };
    auto real_diff = [&](bool imag_axis) -> V {
        if (order == 2) {
            return (shifted(h, imag_axis) - shifted(-h, imag_axis)) * (1.0 / (2.0 * h));
        }
        V a = shifted(2.0 * h, imag_axis);
        V b = shifted(h, imag_axis);
        V c = shifted(-h, imag_axis);
        V d = shifted(-2.0 * h, imag_axis);
        return (-a + 8.0 * b - 8.0 * c + d) * (1.0 / (12.0 * h));
    };
    V dx = real_diff(false);
    V dy = real_diff(true);
    const Complex iu(0.0, 1.0);
    if (anti) return (dx + iu * dy) * 0.5;
    return (dx - iu * dy) * 0.5;
}

inline DerivWord make_word(const MultiIndex& holo, const MultiIndex& anti) {
    DerivWord word;
    for (int l = 0; l < holo.dim(); ++l)
        for (int k = 0; k < holo[l]; ++k) word.emplace_back(l, false);
    for (int l = 0; l < anti.dim(); ++l)
        for (int k = 0; k < anti[l]; ++k) word.emplace_back(l, true);
    return word;
}

}  // namespace detail

// Step auto-scaling keeps all stencil points strictly interior.
inline double effective_step(const Point& w, const WirtingerStencil& st) {
    if (st.step <= 0.0) throw ConfigError("stencil step must be positive");
    if (st.order != 2 && st.order != 4) throw ConfigError("stencil order must be 2 or 4");
    const double margin = 1.0 - w.norm();
    if (margin <= 0.0) throw DomainError("differentiation point lies outside the open unit ball");
    return std::min(st.step, margin / 8.0);
}

// Mixed partial d^holo dbar^anti f(w). Entrywise for matrix-valued fields.
template <class F>
auto wirtinger(F&& f, const Point& w, const MultiIndex& holo, const MultiIndex& anti,
               const WirtingerStencil& st = {}) {
    using V = std::invoke_result_t<F&, const Point&>;
    if (holo.dim() != w.dim() || anti.dim() != w.dim())
        throw ConfigError("derivative word dimension does not match the point");
    const double h = effective_step(w, st);
    const auto word = detail::make_word(holo, anti);
    auto once = [&](double hh) -> V {
        return detail::wirtinger_impl(f, w, word, 0, hh, st.order);
    };
    if (!st.richardson) return once(h);
    const double p = std::pow(2.0, static_cast<double>(st.order));
    V fine = once(h / 2.0);
    V coarse = once(h);
    return static_cast<V>((p * fine - coarse) * (1.0 / (p - 1.0)));
}

// Single holomorphic / antiholomorphic first derivatives.
template <class F>
auto d_holo(F&& f, const Point& w, int i, const WirtingerStencil& st = {}) {
    return wirtinger(std::forward<F>(f), w, MultiIndex::unit(w.dim(), i),
                     MultiIndex::zero(w.dim()), st);
}

template <class F>
auto d_anti(F&& f, const Point& w, int j, const WirtingerStencil& st = {}) {
    return wirtinger(std::forward<F>(f), w, MultiIndex::zero(w.dim()),
                     MultiIndex::unit(w.dim(), j), st);
}

// d^2 / (dw_i dwbar_j)
template <class F>
auto d_mixed(F&& f, const Point& w, int i, int j, const WirtingerStencil& st = {}) {
    return wirtinger(std::forward<F>(f), w, MultiIndex::unit(w.dim(), i),
                     MultiIndex::unit(w.dim(), j), st);
}

}  // namespace cdcurv

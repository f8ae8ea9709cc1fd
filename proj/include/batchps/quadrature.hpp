#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "batchps/core.hpp"

namespace bps {

inline double norm_of(double v) { return std::abs(v); }
inline long double norm_of(long double v) { return std::abs(v); }
template <class R>
R norm_of(const std::complex<R>& v) {
    return std::abs(v);
}
template <class R, std::size_t N>
R norm_of(const std::array<std::complex<R>, N>& v) {
    R m = 0;
    for (auto& x : v) m = std::max(m, std::abs(x));
    return m;
}

template <class R, std::size_t N>
std::array<std::complex<R>, N> operator*(R a, const std::array<std::complex<R>, N>& v) {
    std::array<std::complex<R>, N> r;
    for (std::size_t i = 0; i < N; ++i) r[i] = a * v[i];
    return r;
}
template <class R, std::size_t N>
std::array<std::complex<R>, N>& operator+=(std::array<std::complex<R>, N>& a,
                                           const std::array<std::complex<R>, N>& b) {
    for (std::size_t i = 0; i < N; ++i) a[i] += b[i];
    return a;
}
template <class R, std::size_t N>
std::array<std::complex<R>, N> operator-(const std::array<std::complex<R>, N>& a,
                                         const std::array<std::complex<R>, N>& b) {
    std::array<std::complex<R>, N> r;
    for (std::size_t i = 0; i < N; ++i) r[i] = a[i] - b[i];
    return r;
}

template <class V>
struct QuadResult {
    V value{};
    double abs_error = 0;
    int panels = 0;
    bool converged = true;
};

// Adaptive Gauss-Kronrod (7/15) that visits nodes in increasing order of the
// integration variable.  The integrand may carry continuation state (e.g. the
// current branch of a multivalued function); it must expose
//   V operator()(R x);  State save() const;  void restore(const State&);
// Panels are refined depth first, left to right, and the state is rewound to
// the left edge before a panel is split, so every evaluation is a warm start
// from a nearby, smaller abscissa.
template <class R, class V, class F>
class OrderedGK {
public:
    OrderedGK(F& f, R rtol, R atol, int max_panels) : f_(f), rtol_(rtol), atol_(atol), max_panels_(max_panels) {
        using GK = boost::math::quadrature::gauss_kronrod<R, 15>;
        using G = boost::math::quadrature::gauss<R, 7>;
        const auto& xk = GK::abscissa();
        const auto& wk = GK::weights();
        const auto& wg = G::weights();
        // full ascending node list on [-1,1]
        for (int i = 7; i >= 1; --i) {
            x_.push_back(-xk[i]);
            wk_.push_back(wk[i]);
            wg_.push_back(i % 2 == 0 ? wg[i / 2] : R(0));
        }
        x_.push_back(0);
        wk_.push_back(wk[0]);
        wg_.push_back(wg[0]);
        for (int i = 1; i <= 7; ++i) {
            x_.push_back(xk[i]);
            wk_.push_back(wk[i]);
            wg_.push_back(i % 2 == 0 ? wg[i / 2] : R(0));
        }
    }

    QuadResult<V> integrate(R a, R b, int initial_panels = 8) {
        QuadResult<V> res;
        // coarse pass for the global scale, evaluated in order
        auto st0 = f_.save();
        V coarse{};
        R h = (b - a) / R(initial_panels);
        for (int k = 0; k < initial_panels; ++k) {
            R e;
            coarse += panel(a + k * h, a + (k + 1) * h, e);
        }
        f_.restore(st0);
        R scale = norm_of(coarse);
        tol_ = std::max(atol_, rtol_ * scale);
        len_ = b - a;
        panels_ = 0;
        converged_ = true;
        for (int k = 0; k < initial_panels; ++k) res.value += refine(a + k * h, a + (k + 1) * h, 0);
        res.abs_error = double(err_);
        res.panels = panels_;
        res.converged = converged_;
        return res;
    }

private:
    V panel(R a, R b, R& err) {
        R c = (a + b) / 2, hl = (b - a) / 2;
        V k{}, g{};
        for (std::size_t i = 0; i < x_.size(); ++i) {
            V fx = f_(c + hl * x_[i]);
            k += (wk_[i] * hl) * fx;
            if (wg_[i] != R(0)) g += (wg_[i] * hl) * fx;
        }
        err = norm_of(k - g);
        return k;
    }

    V refine(R a, R b, int depth) {
        auto st = f_.save();
        R e;
        V v = panel(a, b, e);
        ++panels_;
        R allowed = tol_ * (b - a) / len_;
        if (e <= allowed || depth > 50 || panels_ >= max_panels_) {
            if (e > allowed) converged_ = false;
            err_ += e;
            return v;
        }
        f_.restore(st);
        R m = (a + b) / 2;
        V left = refine(a, m, depth + 1);
        V right = refine(m, b, depth + 1);
        left += right;
        return left;
    }

    F& f_;
    R rtol_, atol_;
    int max_panels_;
    R tol_ = 0, len_ = 1, err_ = 0;
    int panels_ = 0;
    bool converged_ = true;
    std::vector<R> x_, wk_, wg_;
};

template <class R, class V, class F>
QuadResult<V> integrate_ordered(F& f, R a, R b, R rtol, R atol, int max_panels, int initial_panels = 8) {
    OrderedGK<R, V, F> q(f, rtol, atol, max_panels);
    return q.integrate(a, b, initial_panels);
}

// Stateless adapter.
template <class Fn>
struct Stateless {
    Fn fn;
    int save() const { return 0; }
    void restore(int) {}
    template <class X>
    auto operator()(X x) {
        return fn(x);
    }
};

}  // namespace bps

#pragma once

// Companion matrices, positive diagonal similarity and Gersgorin balls.
//
// The left eigenvalues of the companion matrix C_f (Ax = lambda x) are exactly
// the zeros of f, and a similarity D^{-1} C_f D with real positive D keeps them,
// since D commutes with every lambda. Left eigenvalues lie in the union of the
// row Gersgorin balls, so each choice of D gives a zero-inclusion region. The
// eigenvalues themselves are never computed here.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "qzero/polynomial.hpp"
#include "qzero/quaternion.hpp"

namespace qzero {

class QMatrix {
public:
    explicit QMatrix(std::size_t n) : n_(n), e_(n * n) {
        if (n == 0) throw std::invalid_argument("QMatrix: size must be positive");
    }

    std::size_t size() const { return n_; }
    Quaternion& operator()(std::size_t r, std::size_t c) { return e_[r * n_ + c]; }
    const Quaternion& operator()(std::size_t r, std::size_t c) const { return e_[r * n_ + c]; }

    bool operator==(const QMatrix&) const = default;

private:
    std::size_t n_;
    std::vector<Quaternion> e_;  // row major
};

struct Ball {
    Quaternion center;
    double radius = 0.0;
    bool open = false;  // open balls are zero-free regions

    /// radius - |q - center|; nonnegative inside.
    double margin(const Quaternion& q) const { return radius - (q - center).norm(); }

    bool contains(const Quaternion& q, double slack = 0.0) const {
        const double m = margin(q);
        return open ? m > -slack : m >= -slack;
    }
};

/// Finite union of balls.
class Region {
public:
    explicit Region(std::vector<Ball> balls) : balls_(std::move(balls)) {
        if (balls_.empty()) throw std::invalid_argument("Region: needs at least one ball");
        for (const auto& b : balls_)
            if (!(b.radius >= 0.0) || !std::isfinite(b.radius) || !b.center.is_finite())
                throw std::invalid_argument("Region: ball radius must be finite and nonnegative");
    }
    explicit Region(Ball b) : Region(std::vector<Ball>{b}) {}

    std::span<const Ball> balls() const { return balls_; }

    /// Best margin over the balls.
    double margin(const Quaternion& q) const {
        double m = -std::numeric_limits<double>::infinity();
        for (const auto& b : balls_) m = std::max(m, b.margin(q));
        return m;
    }

    bool contains(const Quaternion& q, double slack = 0.0) const {
        return std::ranges::any_of(balls_, [&](const Ball& b) { return b.contains(q, slack); });
    }

    /// Smallest origin-centered radius enclosing the union.
    double enclosing_radius() const {
        double r = 0.0;
        for (const auto& b : balls_) r = std::max(r, b.center.norm() + b.radius);
        return r;
    }

private:
    std::vector<Ball> balls_;
};

/// C_f: ones on the subdiagonal, last column -a_0, ..., -a_{n-1} top to bottom.
inline QMatrix companion_matrix(const QPolynomial& f) {
    const auto n = static_cast<std::size_t>(f.degree());
    QMatrix c(n);
    for (std::size_t mu = 0; mu + 1 < n; ++mu) c(mu + 1, mu) = Quaternion(1.0);
    for (std::size_t mu = 0; mu < n; ++mu) c(mu, n - 1) = -f[mu];
    return c;
}

/// D^{-1} C_f D for D = diag(d); entry (mu, nu) is c_{mu nu} d_nu / d_mu.
inline QMatrix scaled_companion(const QPolynomial& f, std::span<const double> d) {
    const auto n = static_cast<std::size_t>(f.degree());
    if (d.size() != n) throw std::invalid_argument("scaled_companion: diagonal length must equal degree");
    for (double v : d)
        if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument("scaled_companion: diagonal entries must be positive");
    QMatrix c = companion_matrix(f);
    for (std::size_t mu = 0; mu < n; ++mu)
        for (std::size_t nu = 0; nu < n; ++nu)
            if (!c(mu, nu).is_zero()) c(mu, nu) = c(mu, nu) * (d[nu] / d[mu]);
    return c;
}

/// diag(r^{n-1}, ..., r, 1). With this D the scaled companion has r on the
/// subdiagonal and -a_k / r^{n-k-1} in the last column.
inline std::vector<double> geometric_scaling(int n, double r) {
    if (n < 1) throw std::invalid_argument("geometric_scaling: n must be positive");
    if (!(r > 0.0)) throw std::invalid_argument("geometric_scaling: r must be positive");
    std::vector<double> d(static_cast<std::size_t>(n));
    for (int mu = 0; mu < n; ++mu) d[static_cast<std::size_t>(mu)] = std::pow(r, n - 1 - mu);
    return d;
}

/// Row balls |q - a_mm| <= sum_{n != m} |a_mn|. Off-diagonal norms are summed in
/// descending order.
inline Region gershgorin_balls(const QMatrix& a) {
    const std::size_t n = a.size();
    std::vector<Ball> balls;
    balls.reserve(n);
    std::vector<double> row;
    for (std::size_t mu = 0; mu < n; ++mu) {
        row.clear();
        for (std::size_t nu = 0; nu < n; ++nu)
            if (nu != mu) row.push_back(a(mu, nu).norm());
        std::ranges::sort(row, std::greater<>{});
        double rho = 0.0;
        for (double v : row) rho += v;
        balls.push_back({a(mu, mu), rho, false});
    }
    return Region(std::move(balls));
}

}  // namespace qzero

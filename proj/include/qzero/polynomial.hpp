#pragma once

// One-sided quaternionic polynomials in right-coefficient form
//
//   f(q) = q^n + q^{n-1} a_{n-1} + ... + q a_1 + a_0
//
// Powers of the indeterminate stand to the left of the coefficients. Products
// of polynomials treat the indeterminate as central, so (g h)_m = sum g_i h_j
// over i + j = m, and (g h)(q) = sum_j q^j g(q) h_j: a zero of the left factor
// is a zero of the product.

#include <algorithm>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qzero/quaternion.hpp"

namespace qzero {

/// Monic polynomial; stores a_0 .. a_{n-1}, the leading coefficient is 1.
class QPolynomial {
public:
    explicit QPolynomial(std::vector<Quaternion> lower) : a_(std::move(lower)) {
        if (a_.empty()) throw std::invalid_argument("QPolynomial: degree must be at least 1");
        for (const auto& c : a_)
            if (!c.is_finite()) throw std::invalid_argument("QPolynomial: non-finite coefficient");
    }

    /// Build from a_0 .. a_n with an invertible leading a_n. Every coefficient is
    /// right-multiplied by a_n^{-1}, which leaves the zeros unchanged.
    static QPolynomial from_leading(std::span<const Quaternion> all) {
        if (all.size() < 2) throw std::invalid_argument("QPolynomial: need a_0 .. a_n with n >= 1");
        const Quaternion lead = all.back();
        if (!lead.is_finite()) throw std::invalid_argument("QPolynomial: non-finite coefficient");
        const Quaternion inv = qinv(lead);
        std::vector<Quaternion> lower;
        lower.reserve(all.size() - 1);
        for (std::size_t k = 0; k + 1 < all.size(); ++k) lower.push_back(all[k] * inv);
        return QPolynomial(std::move(lower));
    }

    int degree() const { return static_cast<int>(a_.size()); }
    std::span<const Quaternion> coeffs() const { return a_; }
    const Quaternion& operator[](std::size_t k) const { return a_[k]; }

    /// a_0 .. a_{n-1}, 1
    std::vector<Quaternion> full_coeffs() const {
        std::vector<Quaternion> all(a_);
        all.emplace_back(1.0);
        return all;
    }

    /// Largest k with a_k != 0, or -1 when f = q^n.
    int lacunary_index() const {
        for (int k = degree() - 1; k >= 0; --k)
            if (!a_[k].is_zero()) return k;
        return -1;
    }

    double max_coeff_norm() const {
        double m = 0.0;
        for (const auto& c : a_) m = std::max(m, c.norm());
        return m;
    }

    bool operator==(const QPolynomial&) const = default;

private:
    std::vector<Quaternion> a_;
};

/// s q^m + sum_{k<m} q^k b_k with a real leading scalar s. Derivatives of a monic
/// polynomial have this shape.
struct ScaledPolynomial {
    double leading = 1.0;
    std::vector<Quaternion> lower;  // b_0 .. b_{m-1}

    int degree() const { return static_cast<int>(lower.size()); }
};

/// Real monic polynomial c_0 + c_1 z + ... + c_{2n} z^{2n}.
struct RealPolynomial {
    std::vector<double> c;

    int degree() const { return static_cast<int>(c.size()) - 1; }

    template <class Scalar>
    Scalar eval(Scalar z) const {
        Scalar acc = c.back();
        for (std::size_t k = c.size() - 1; k-- > 0;) acc = acc * z + c[k];
        return acc;
    }
};

/// Characteristic quadratic q^2 - 2 re q + normsq of a similarity class.
struct ClassQuadratic {
    double re = 0.0;
    double normsq = 0.0;

    /// The class is {re + v : v imaginary, |v| = radius()}.
    double radius() const { return std::sqrt(std::max(0.0, normsq - re * re)); }
    bool contains(const Quaternion& q, double tol) const {
        return std::abs(2.0 * q.w - 2.0 * re) <= tol && std::abs(q.norm2() - normsq) <= tol * (1.0 + normsq);
    }
};

namespace detail {

// Horner with left multiplication: a_0 + q (a_1 + q (a_2 + ... + q lead)).
template <class Lead>
Quaternion horner_right(const Lead& leading, std::span<const Quaternion> lower, const Quaternion& q) {
    Quaternion acc(leading);
    for (std::size_t k = lower.size(); k-- > 0;) acc = q * acc + lower[k];
    return acc;
}

}  // namespace detail

/// f(q) = q^n + sum q^k a_k.
inline Quaternion eval_right(const QPolynomial& f, const Quaternion& q) {
    return detail::horner_right(1.0, f.coeffs(), q);
}

inline Quaternion eval_right(const ScaledPolynomial& f, const Quaternion& q) {
    return detail::horner_right(f.leading, f.lower, q);
}

/// sum q^k c_k over an explicit coefficient list c_0 .. c_m (leading included).
inline Quaternion eval_right(std::span<const Quaternion> c, const Quaternion& q) {
    if (c.empty()) return {};
    return detail::horner_right(c.back(), c.first(c.size() - 1), q);
}

/// Left-coefficient evaluation sum a_k q^k, i.e. the g-form with the same
/// coefficient list.
inline Quaternion eval_left(std::span<const Quaternion> c, const Quaternion& q) {
    if (c.empty()) return {};
    Quaternion acc = c.back();
    for (std::size_t k = c.size() - 1; k-- > 0;) acc = acc * q + c[k];
    return acc;
}

inline ScaledPolynomial derivative(const ScaledPolynomial& f) {
    const int m = f.degree();
    if (m < 1) throw std::invalid_argument("derivative: polynomial is constant");
    ScaledPolynomial d{f.leading * m, {}};
    d.lower.reserve(static_cast<std::size_t>(m - 1));
    for (int k = 1; k < m; ++k) d.lower.push_back(f.lower[static_cast<std::size_t>(k)] * static_cast<double>(k));
    return d;
}

/// f' = n q^{n-1} + sum k q^{k-1} a_k.
inline ScaledPolynomial derivative(const QPolynomial& f) {
    return derivative(ScaledPolynomial{1.0, {f.coeffs().begin(), f.coeffs().end()}});
}

/// k-th derivative, 1 <= k <= n.
inline ScaledPolynomial nth_derivative(const QPolynomial& f, int k) {
    if (k < 1 || k > f.degree()) throw std::invalid_argument("nth_derivative: order out of range");
    ScaledPolynomial d = derivative(f);
    for (int i = 1; i < k; ++i) d = derivative(d);
    return d;
}

inline QPolynomial conjugate_poly(const QPolynomial& f) {
    std::vector<Quaternion> c;
    c.reserve(f.coeffs().size());
    for (const auto& a : f.coeffs()) c.push_back(a.conj());
    return QPolynomial(std::move(c));
}

/// Central-indeterminate product of two coefficient lists.
inline std::vector<Quaternion> multiply(std::span<const Quaternion> g, std::span<const Quaternion> h) {
    if (g.empty() || h.empty()) return {};
    std::vector<Quaternion> out(g.size() + h.size() - 1);
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < h.size(); ++j) out[i + j] += g[i] * h[j];
    return out;
}

/// f times conj-coefficient f; real, monic, degree 2n. Throws std::logic_error if an
/// imaginary part survives above 1e-12 of the coefficient scale.
inline RealPolynomial conjugate_product(const QPolynomial& f) {
    const auto a = f.full_coeffs();
    const std::size_t n = a.size() - 1;
    RealPolynomial out{std::vector<double>(2 * n + 1, 0.0)};
    for (std::size_t m = 0; m <= 2 * n; ++m) {
        Quaternion s;
        double scale = 0.0;
        const std::size_t lo = m > n ? m - n : 0;
        const std::size_t hi = std::min(m, n);
        for (std::size_t i = lo; i <= hi; ++i) {
            s += a[i] * a[m - i].conj();
            scale += a[i].norm() * a[m - i].norm();
        }
        if (s.vector_norm() > 1e-12 * std::max(scale, 1e-300))
            throw std::logic_error("conjugate_product: imaginary residue above tolerance");
        out.c[m] = s.w;
    }
    out.c[2 * n] = 1.0;
    return out;
}

struct ClassDivision {
    std::vector<Quaternion> quotient;  // empty when deg < 2
    Quaternion c;                      // remainder q c + d
    Quaternion d;
};

/// Division of sum q^k c_k by the real quadratic of `cq`. The divisor has real
/// coefficients, so left and right division agree.
inline ClassDivision divide_by_class(std::span<const Quaternion> coeffs, const ClassQuadratic& cq) {
    std::vector<Quaternion> r(coeffs.begin(), coeffs.end());
    ClassDivision out;
    if (r.size() >= 3) out.quotient.assign(r.size() - 2, Quaternion{});
    for (std::size_t m = r.size(); m-- > 2;) {
        const Quaternion t = r[m];
        out.quotient[m - 2] = t;
        r[m - 1] += t * (2.0 * cq.re);
        r[m - 2] -= t * cq.normsq;
        r[m] = Quaternion{};
    }
    out.c = r.size() > 1 ? r[1] : Quaternion{};
    out.d = r.empty() ? Quaternion{} : r[0];
    return out;
}

/// Remainder (c, d) with f == q c + d modulo q^2 - 2 re q + normsq.
inline std::pair<Quaternion, Quaternion> remainder_linear(const QPolynomial& f, const ClassQuadratic& cq) {
    const auto all = f.full_coeffs();
    const auto div = divide_by_class(all, cq);
    return {div.c, div.d};
}

}  // namespace qzero

#pragma once

// Independent zero finder for monic right-coefficient polynomials.
//
// The conjugate product F = f * conj-coefficient f is a real polynomial of degree
// 2n; the similarity class of every zero of f is the class of a complex root of
// F. Each class is resolved by dividing f by its characteristic quadratic: a
// vanishing remainder q c + d means the whole class consists of zeros
// (spherical), otherwise the class holds the single zero q = -d c^{-1}.
//
// Complex roots of F come from Aberth-Ehrlich iteration. Roots of F are double
// for every spherical class and every real zero, so approximations are grouped
// with Weierstrass inclusion disks and each group is replaced by its mean.

#include <algorithm>
#include <array>
#include <bit>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "qzero/companion.hpp"
#include "qzero/polynomial.hpp"

namespace qzero {

using Complex = std::complex<double>;

struct RootConfig {
    int max_iterations = 1000;
    double tolerance = 1e-14;            // Aberth step, relative to 1 + |z|
    double spherical_threshold = 1e-10;  // times (1 + max |a_k|)
    std::uint64_t seed = 0;              // unused: initial points are deterministic
    double tol_res = 1e-8;               // isolated residual, times the evaluation scale
};

class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double worst) : std::runtime_error(what), worst_residual(worst) {}
    double worst_residual;
};

struct IsolatedZero {
    Quaternion zero;
    double residual = 0.0;  // |f(zero)|
    int multiplicity = 1;
};

struct SphericalZero {
    ClassQuadratic cls;
    double residual = 0.0;  // max(|c|, |d|) of the vanishing remainder
    int multiplicity = 1;   // each counts as two zeros
};

struct ZeroSet {
    std::vector<IsolatedZero> isolated;
    std::vector<SphericalZero> spherical;
    int degree = 0;
    int deficit = 0;     // degree minus zeros found, with multiplicity
    double scale = 1.0;  // 1 + max |a_k| + (1 + max |a_k|)^n
    std::string digest;

    int counted() const {
        int c = 0;
        for (const auto& z : isolated) c += z.multiplicity;
        for (const auto& s : spherical) c += 2 * s.multiplicity;
        return c;
    }
};

/// A root of F with multiplicity; `value` has Im >= 0 and stands for its
/// conjugate as well when non-real.
struct RootCluster {
    Complex value;
    int multiplicity = 1;
    bool real = false;
};

namespace detail {

struct HornerResult {
    Complex p, dp;
    double bound;  // rounding error estimate for p
};

inline HornerResult horner_with_derivative(const RealPolynomial& F, Complex z) {
    const std::size_t N = F.c.size() - 1;
    Complex p = F.c[N], dp = 0.0;
    const double az = std::abs(z);
    double mag = std::abs(F.c[N]);
    for (std::size_t k = N; k-- > 0;) {
        dp = dp * z + p;
        p = p * z + F.c[k];
        mag = mag * az + std::abs(F.c[k]);
    }
    return {p, dp, 4.0 * static_cast<double>(N) * std::numeric_limits<double>::epsilon() * mag};
}

inline std::vector<Complex> aberth(const RealPolynomial& F, const RootConfig& cfg) {
    const std::size_t N = static_cast<std::size_t>(F.degree());
    double cmax = 0.0;
    for (std::size_t k = 0; k < N; ++k) cmax = std::max(cmax, std::abs(F.c[k]));
    const double R = 1.0 + cmax;

    std::vector<Complex> z(N);
    for (std::size_t k = 0; k < N; ++k)
        z[k] = std::polar(R, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(N) + 0.4);

    std::vector<bool> done(N, false);
    for (int it = 0; it < cfg.max_iterations; ++it) {
        bool all = true;
        for (std::size_t k = 0; k < N; ++k) {
            if (done[k]) continue;
            const auto h = horner_with_derivative(F, z[k]);
            if (std::abs(h.p) <= h.bound) {
                done[k] = true;
                continue;
            }
            Complex s = 0.0;
            for (std::size_t j = 0; j < N; ++j) {
                if (j == k) continue;
                Complex d = z[k] - z[j];
                if (d == Complex{}) d = Complex(1e-300, 0.0);
                s += 1.0 / d;
            }
            Complex w;
            if (h.dp == Complex{}) {
                w = Complex(1e-8 * (1.0 + std::abs(z[k])), 0.0);
            } else {
                const Complex ratio = h.p / h.dp;
                w = ratio / (1.0 - ratio * s);
            }
            z[k] -= w;
            if (std::abs(w) <= cfg.tolerance * (1.0 + std::abs(z[k])))
                done[k] = true;
            else
                all = false;
        }
        if (all && std::ranges::all_of(done, [](bool b) { return b; })) return z;
    }

    double worst = 0.0;
    for (const auto& zk : z) worst = std::max(worst, std::abs(F.eval(zk)));
    throw ConvergenceError("real_poly_roots: iteration cap reached, worst residual " + std::to_string(worst), worst);
}

// k-th derivative of a real polynomial (not monic).
inline RealPolynomial real_derivative(const RealPolynomial& F, int k) {
    RealPolynomial d = F;
    for (int i = 0; i < k && d.c.size() > 1; ++i) {
        for (std::size_t j = 1; j < d.c.size(); ++j) d.c[j - 1] = d.c[j] * static_cast<double>(j);
        d.c.pop_back();
    }
    return d;
}

// Newton on F^{(m-1)}, where a root of multiplicity m is simple.
inline Complex polish_multiple(const RealPolynomial& F, Complex z, int m) {
    const RealPolynomial g = real_derivative(F, m - 1);
    const RealPolynomial dg = real_derivative(g, 1);
    if (dg.c.empty()) return z;
    double best = std::abs(g.eval(z));
    for (int it = 0; it < 20; ++it) {
        const Complex d = dg.eval(z);
        if (d == Complex{}) break;
        const Complex step = g.eval(z) / d;
        const Complex z1 = z - step;
        const double v = std::abs(g.eval(z1));
        if (!(v < best)) break;
        z = z1;
        best = v;
        if (std::abs(step) <= 1e-16 * (1.0 + std::abs(z))) break;
    }
    return z;
}

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
    std::size_t find(std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace detail

/// Roots of F grouped by multiplicity. Approximations whose inclusion disks
/// N |F(z_k)| / |prod_{j != k} (z_k - z_j)| overlap form one cluster, and a
/// union of m disks contains m roots.
inline std::vector<RootCluster> root_clusters(const RealPolynomial& F, const RootConfig& cfg = {}) {
    if (F.degree() < 1) throw std::invalid_argument("real_poly_roots: degree must be positive");
    if (F.c.back() != 1.0) throw std::invalid_argument("real_poly_roots: polynomial must be monic");
    const auto z = detail::aberth(F, cfg);
    const std::size_t N = z.size();

    std::vector<double> rad(N, 0.0);
    for (std::size_t k = 0; k < N; ++k) {
        const auto h = detail::horner_with_derivative(F, z[k]);
        Complex prod = 1.0;
        for (std::size_t j = 0; j < N; ++j)
            if (j != k) prod *= z[k] - z[j];
        const double ap = std::abs(prod);
        rad[k] = ap == 0.0 ? 0.0 : static_cast<double>(N) * (std::abs(h.p) + h.bound) / ap;
    }
    detail::UnionFind uf(N);
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = i + 1; j < N; ++j)
            if (std::abs(z[i] - z[j]) <= rad[i] + rad[j]) uf.unite(i, j);

    struct Group {
        Complex sum = 0.0;
        int count = 0;
        double spread = 0.0;
    };
    std::vector<Group> groups(N);
    for (std::size_t k = 0; k < N; ++k) {
        auto& g = groups[uf.find(k)];
        g.sum += z[k];
        ++g.count;
    }
    for (std::size_t k = 0; k < N; ++k) {
        auto& g = groups[uf.find(k)];
        g.spread = std::max(g.spread, std::abs(z[k] - g.sum / static_cast<double>(g.count)) + rad[k]);
    }

    std::vector<RootCluster> out;
    for (const auto& g : groups) {
        if (g.count == 0) continue;
        const Complex mean = g.sum / static_cast<double>(g.count);
        const double tol = g.spread + 1e-12 * (1.0 + std::abs(mean));
        if (std::abs(mean.imag()) <= tol) {
            out.push_back({Complex(mean.real(), 0.0), g.count, true});
        } else if (mean.imag() > 0.0) {
            out.push_back({mean, g.count, false});
        }
        if (!out.empty() && g.count > 1 && (out.back().real || mean.imag() > 0.0)) {
            auto& c = out.back();
            c.value = detail::polish_multiple(F, c.value, c.multiplicity);
            if (c.real) c.value = Complex(c.value.real(), 0.0);
        }
    }
    std::ranges::sort(out, [](const RootCluster& a, const RootCluster& b) {
        if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
        return a.value.imag() < b.value.imag();
    });
    return out;
}

/// All 2n roots of a real monic polynomial with multiplicity, conjugate pairs
/// adjacent (Im >= 0 member first), sorted by real part.
inline std::vector<Complex> real_poly_roots(const RealPolynomial& F, const RootConfig& cfg = {}) {
    std::vector<Complex> out;
    for (const auto& c : root_clusters(F, cfg)) {
        for (int i = 0; i < c.multiplicity; ++i) {
            out.push_back(c.value);
            if (!c.real) out.push_back(std::conj(c.value));
        }
    }
    return out;
}

namespace detail {

inline std::string digest(const QPolynomial& f) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto& a : f.coeffs()) {
        for (double v : a.components()) {
            const auto bits = std::bit_cast<std::uint64_t>(v == 0.0 ? 0.0 : v);
            for (int b = 0; b < 8; ++b) {
                h ^= (bits >> (8 * b)) & 0xffU;
                h *= 0x100000001b3ULL;
            }
        }
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// Solve the 4x4 system a x = b by partial pivoting; false when singular.
inline bool solve4(std::array<std::array<double, 4>, 4> a, std::array<double, 4>& b) {
    for (int c = 0; c < 4; ++c) {
        int piv = c;
        for (int r = c + 1; r < 4; ++r)
            if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
        if (a[piv][c] == 0.0) return false;
        std::swap(a[piv], a[c]);
        std::swap(b[piv], b[c]);
        for (int r = c + 1; r < 4; ++r) {
            const double m = a[r][c] / a[c][c];
            for (int k = c; k < 4; ++k) a[r][k] -= m * a[c][k];
            b[r] -= m * b[c];
        }
    }
    for (int r = 3; r >= 0; --r) {
        for (int k = r + 1; k < 4; ++k) b[r] -= a[r][k] * b[k];
        b[r] /= a[r][r];
    }
    return true;
}

// One damped Newton step on f : R^4 -> R^4 with a central-difference Jacobian.
inline Quaternion polish(const QPolynomial& f, const Quaternion& q0) {
    const Quaternion r0 = eval_right(f, q0);
    const double res0 = r0.norm();
    if (res0 == 0.0) return q0;
    const double h = 1e-7 * (1.0 + q0.norm());
    std::array<std::array<double, 4>, 4> J{};
    for (int c = 0; c < 4; ++c) {
        Quaternion e;
        (c == 0 ? e.w : c == 1 ? e.x : c == 2 ? e.y : e.z) = h;
        const auto col = ((eval_right(f, q0 + e) - eval_right(f, q0 - e)) / (2.0 * h)).components();
        for (int r = 0; r < 4; ++r) J[r][c] = col[r];
    }
    std::array<double, 4> b{-r0.w, -r0.x, -r0.y, -r0.z};
    if (!solve4(J, b)) return q0;
    const Quaternion step{b[0], b[1], b[2], b[3]};
    for (double damp : {1.0, 0.5, 0.25}) {
        const Quaternion q1 = q0 + step * damp;
        if (eval_right(f, q1).norm() < res0) return q1;
    }
    return q0;
}

}  // namespace detail

/// Zeros of f: isolated zeros with residuals and spherical classes.
inline ZeroSet find_zeros(const QPolynomial& f, const RootConfig& cfg = {}) {
    ZeroSet zs;
    zs.degree = f.degree();
    zs.digest = detail::digest(f);
    const double amax = f.max_coeff_norm();
    zs.scale = 1.0 + amax + std::pow(1.0 + amax, f.degree());
    const double thr = cfg.spherical_threshold * (1.0 + amax);

    const auto all = f.full_coeffs();
    for (const auto& cl : root_clusters(conjugate_product(f), cfg)) {
        if (cl.real) {
            const Quaternion x(cl.value.real());
            zs.isolated.push_back({x, eval_right(f, x).norm(), std::max(1, cl.multiplicity / 2)});
            continue;
        }
        const ClassQuadratic cq{cl.value.real(), std::norm(cl.value)};
        std::vector<Quaternion> cur = all;
        int mult = cl.multiplicity;
        int sph = 0;
        double sph_res = 0.0;
        while (mult >= 2) {
            auto div = divide_by_class(cur, cq);
            const double rem = std::max(div.c.norm(), div.d.norm());
            if (rem > thr) break;
            if (sph == 0) sph_res = rem;
            ++sph;
            mult -= 2;
            cur = std::move(div.quotient);
        }
        if (sph > 0) zs.spherical.push_back({cq, sph_res, sph});
        if (mult == 0) continue;

        const auto div = divide_by_class(cur, cq);
        if (div.c.norm() <= thr) {
            throw std::logic_error("find_zeros: class (re " + std::to_string(cq.re) + ", normsq " +
                                   std::to_string(cq.normsq) + ") has no zero");
        }
        Quaternion q0 = -div.d * qinv(div.c);
        if (!cq.contains(q0, 1e-6)) {
            throw std::logic_error("find_zeros: zero outside its class (re " + std::to_string(cq.re) + ", normsq " +
                                   std::to_string(cq.normsq) + ")");
        }
        if (mult == 1 && sph == 0) q0 = detail::polish(f, q0);
        zs.isolated.push_back({q0, eval_right(f, q0).norm(), mult});
    }
    zs.deficit = zs.degree - zs.counted();
    return zs;
}

/// Nearest and farthest distance from w to the class sphere of cq.
struct DistanceRange {
    double min = 0.0, max = 0.0;
};

inline DistanceRange class_distance_range(const ClassQuadratic& cq, const Quaternion& w) {
    const double dr = w.w - cq.re;
    const double v = w.vector_norm();
    const double s = cq.radius();
    return {std::hypot(dr, v - s), std::hypot(dr, v + s)};
}

namespace detail {

// Smallest region margin over a Fibonacci lattice on the class sphere.
inline double class_union_margin(const ClassQuadratic& cq, const Region& region, int points = 4096) {
    const double rad = cq.radius();
    double worst = std::numeric_limits<double>::infinity();
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < points; ++k) {
        const double zc = 1.0 - 2.0 * (k + 0.5) / points;
        const double rho = std::sqrt(std::max(0.0, 1.0 - zc * zc));
        const double phi = golden * k;
        const Quaternion q{cq.re, rad * rho * std::cos(phi), rad * rho * std::sin(phi), rad * zc};
        worst = std::min(worst, region.margin(q));
    }
    return worst;
}

}  // namespace detail

struct ContainmentReport {
    bool pass = true;
    double worst_margin = std::numeric_limits<double>::infinity();  // min over zeros of the best ball margin
    std::size_t checked = 0;
};

/// Every isolated zero lies in some ball, and every spherical class lies
/// entirely in some ball, up to `slack`.
inline ContainmentReport verify_containment(const ZeroSet& zs, const Region& region, double slack) {
    ContainmentReport rep;
    auto record = [&](double margin, bool inside) {
        rep.worst_margin = std::min(rep.worst_margin, margin);
        rep.pass = rep.pass && inside;
        ++rep.checked;
    };
    for (const auto& z : zs.isolated) record(region.margin(z.zero), region.contains(z.zero, slack));
    for (const auto& s : zs.spherical) {
        double best = -std::numeric_limits<double>::infinity();
        bool inside = false;
        for (const auto& b : region.balls()) {
            const double m = b.radius - class_distance_range(s.cls, b.center).max;
            best = std::max(best, m);
            inside = inside || (b.open ? m > -slack : m >= -slack);
        }
        if (!inside && region.balls().size() > 1) {
            // no single ball holds the class; it may still be covered by the union
            const double sampled = detail::class_union_margin(s.cls, region);
            if (sampled > best) {
                best = sampled;
                inside = sampled >= -slack;
            }
        }
        record(best, inside);
    }
    return rep;
}

struct ExclusionReport {
    bool pass = true;
    double min_distance = std::numeric_limits<double>::infinity();  // nearest zero to the center
    double margin = std::numeric_limits<double>::infinity();        // min_distance - radius
};

/// No zero, and no point of a spherical class, inside `ball` (margin >= -slack).
inline ExclusionReport verify_exclusion(const ZeroSet& zs, const Ball& ball, double slack) {
    ExclusionReport rep;
    for (const auto& z : zs.isolated) rep.min_distance = std::min(rep.min_distance, (z.zero - ball.center).norm());
    for (const auto& s : zs.spherical)
        rep.min_distance = std::min(rep.min_distance, class_distance_range(s.cls, ball.center).min);
    rep.margin = rep.min_distance - ball.radius;
    rep.pass = rep.margin >= -slack;
    return rep;
}

}  // namespace qzero

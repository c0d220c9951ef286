#pragma once

// Max-modulus search on spheres |q| = t, sampled Bernstein-type derivative
// checks, and the zero-free ball around a max-modulus point.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "qzero/companion.hpp"
#include "qzero/polynomial.hpp"
#include "qzero/quaternion.hpp"

namespace qzero {

template <class P>
concept RightPolynomial = requires(const P& f, const Quaternion& q) {
    { eval_right(f, q) } -> std::convertible_to<Quaternion>;
    { f.degree() } -> std::convertible_to<int>;
};

struct MaxModulusResult {
    double t = 1.0;
    Quaternion argmax;
    double value = 0.0;  // |f(argmax)|
    std::size_t count = 0;
    std::uint64_t seed = 0;
};

inline constexpr std::size_t kDefaultSamples = 50000;
inline constexpr int kRefineRounds = 3;

namespace detail {

// Larger value wins; ties go to the lexicographically smaller point.
inline bool better(double v, const Quaternion& p, double best_v, const Quaternion& best_p) {
    if (v != best_v) return v > best_v;
    return p.components() < best_p.components();
}

template <RightPolynomial P>
void refine_on_sphere(const P& f, MaxModulusResult& r, int rounds) {
    double step = 0.05 * r.t;
    for (int round = 0; round < rounds; ++round, step *= 0.1) {
        for (int iter = 0; iter < 200; ++iter) {
            bool moved = false;
            for (int axis = 0; axis < 4 && !moved; ++axis) {
                for (double sign : {1.0, -1.0}) {
                    Quaternion c = r.argmax;
                    (axis == 0 ? c.w : axis == 1 ? c.x : axis == 2 ? c.y : c.z) += sign * step;
                    c = c * (r.t / c.norm());
                    const double v = eval_right(f, c).norm();
                    if (v > r.value) {
                        r.argmax = c;
                        r.value = v;
                        moved = true;
                        break;
                    }
                }
            }
            if (!moved) break;
        }
    }
}

}  // namespace detail

/// Largest |f| over a sample of the sphere, then shrinking-step axis
/// perturbations around the best point. A lower estimate of the true maximum.
template <RightPolynomial P>
MaxModulusResult max_modulus_on_sphere(const P& f, const SphereSample& s, int refine_rounds = kRefineRounds) {
    MaxModulusResult r{s.radius, s.points.front(), eval_right(f, s.points.front()).norm(), s.count, s.seed};
    for (const auto& p : s.points) {
        const double v = eval_right(f, p).norm();
        if (detail::better(v, p, r.value, r.argmax)) {
            r.value = v;
            r.argmax = p;
        }
    }
    detail::refine_on_sphere(f, r, refine_rounds);
    return r;
}

template <RightPolynomial P>
MaxModulusResult max_modulus_on_sphere(const P& f, double t, std::size_t count = kDefaultSamples,
                                       std::uint64_t seed = 0, int refine_rounds = kRefineRounds) {
    return max_modulus_on_sphere(f, sample_sphere(t, count, seed), refine_rounds);
}

/// Maximum of |f| on the circle t e^{i theta} of the complex slice.
template <RightPolynomial P>
MaxModulusResult max_modulus_on_complex_slice(const P& f, double t, std::size_t count = 4096) {
    if (!(t > 0.0)) throw std::invalid_argument("max_modulus_on_complex_slice: t must be positive");
    if (count == 0) throw std::invalid_argument("max_modulus_on_complex_slice: count must be positive");
    auto at = [&](double th) { return Quaternion{t * std::cos(th), t * std::sin(th), 0, 0}; };
    MaxModulusResult r{t, at(0.0), eval_right(f, at(0.0)).norm(), count, 0};
    double best_th = 0.0;
    for (std::size_t k = 1; k < count; ++k) {
        const double th = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count);
        const double v = eval_right(f, at(th)).norm();
        if (v > r.value) {
            r.value = v;
            r.argmax = at(th);
            best_th = th;
        }
    }
    double step = 2.0 * std::numbers::pi / static_cast<double>(count);
    for (int round = 0; round < 40; ++round, step *= 0.5) {
        for (double sign : {1.0, -1.0}) {
            const double th = best_th + sign * step;
            const double v = eval_right(f, at(th)).norm();
            if (v > r.value) {
                r.value = v;
                r.argmax = at(th);
                best_th = th;
            }
        }
    }
    return r;
}

struct BernsteinReport {
    int order = 1;
    double t = 1.0;
    double max_derivative = 0.0;  // sampled max |f^(k)|, no refinement
    double max_f = 0.0;           // refined max |f|
    double factor = 1.0;          // n (n-1) ... (n-k+1) / t^k
    double bound = 0.0;           // factor * max_f
    bool pass = false;            // sampled check, not a proof
};

/// max |f^(k)| <= n (n-1) ... (n-k+1) / t^k max |f| on |q| = t. The derivative
/// side uses the raw samples and the f side is refined, so sampling error can
/// only make the check easier to pass by underestimating the left side.
inline BernsteinReport bernstein_check(const QPolynomial& f, double t, int k, std::size_t samples = kDefaultSamples,
                                std::uint64_t seed = 0) {
    const int n = f.degree();
    if (k < 1 || k > n) throw std::invalid_argument("bernstein_check: k must be in 1..n");
    const auto s = sample_sphere(t, samples, seed);
    BernsteinReport rep;
    rep.order = k;
    rep.t = t;
    rep.max_f = max_modulus_on_sphere(f, s).value;
    const ScaledPolynomial d = nth_derivative(f, k);
    for (const auto& p : s.points) rep.max_derivative = std::max(rep.max_derivative, eval_right(d, p).norm());
    double factor = 1.0;
    for (int i = 0; i < k; ++i) factor *= static_cast<double>(n - i) / t;
    rep.factor = factor;
    rep.bound = factor * rep.max_f;
    rep.pass = rep.max_derivative <= rep.bound + 1e-9 * (1.0 + rep.bound);
    return rep;
}

/// t / (n (2^n - 1)^{1/n})
inline double zero_free_radius(double t, int n) {
    if (n < 1) throw std::invalid_argument("zero_free_radius: n must be positive");
    return t / (n * std::pow(std::exp2(n) - 1.0, 1.0 / n));
}

struct ZeroFreeBall {
    Quaternion center;  // full-sphere argmax
    double radius = 0.0;
    double t = 1.0;
    int degree = 1;
    MaxModulusResult sphere;  // center comes from here
    MaxModulusResult slice;   // complex-slice argmax, reported alongside

    Ball ball() const { return {center, radius, true}; }
    Ball slice_ball() const { return {slice.argmax, radius, true}; }
};

/// Open ball |q - w| < t / (n (2^n - 1)^{1/n}) around the max-modulus point w of
/// f on |q| = t.
inline ZeroFreeBall zero_free_ball(const QPolynomial& f, double t, std::size_t samples = kDefaultSamples,
                                   std::uint64_t seed = 0) {
    ZeroFreeBall z;
    z.sphere = max_modulus_on_sphere(f, t, samples, seed);
    z.slice = max_modulus_on_complex_slice(f, t);
    z.center = z.sphere.argmax;
    z.t = t;
    z.degree = f.degree();
    z.radius = zero_free_radius(t, z.degree);
    return z;
}

}  // namespace qzero

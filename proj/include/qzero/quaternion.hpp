#pragma once

// Quaternion arithmetic over floating point components, plus seeded sampling
// on the 3-sphere |q| = t.
//
//   q = w + x i + y j + z k,   i^2 = j^2 = k^2 = ijk = -1
//
// Multiplication is the Hamilton product and does not commute.

#include <array>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>
#include <vector>

namespace qzero {

template <std::floating_point T>
struct basic_quaternion {
    T w{0}, x{0}, y{0}, z{0};

    constexpr basic_quaternion() = default;
    constexpr basic_quaternion(T w_) : w{w_} {}  // NOLINT: reals embed implicitly
    constexpr basic_quaternion(T w_, T x_, T y_, T z_) : w{w_}, x{x_}, y{y_}, z{z_} {}

    static constexpr basic_quaternion i() { return {0, 1, 0, 0}; }
    static constexpr basic_quaternion j() { return {0, 0, 1, 0}; }
    static constexpr basic_quaternion k() { return {0, 0, 0, 1}; }

    constexpr bool operator==(const basic_quaternion&) const = default;

    constexpr basic_quaternion operator-() const { return {-w, -x, -y, -z}; }

    constexpr basic_quaternion operator+(const basic_quaternion& o) const {
        return {w + o.w, x + o.x, y + o.y, z + o.z};
    }
    constexpr basic_quaternion operator-(const basic_quaternion& o) const {
        return {w - o.w, x - o.x, y - o.y, z - o.z};
    }

    // Hamilton product
    constexpr basic_quaternion operator*(const basic_quaternion& o) const {
        return {w * o.w - x * o.x - y * o.y - z * o.z,
                w * o.x + x * o.w + y * o.z - z * o.y,
                w * o.y - x * o.z + y * o.w + z * o.x,
                w * o.z + x * o.y - y * o.x + z * o.w};
    }

    constexpr basic_quaternion operator*(T s) const { return {w * s, x * s, y * s, z * s}; }
    constexpr basic_quaternion operator/(T s) const { return {w / s, x / s, y / s, z / s}; }
    friend constexpr basic_quaternion operator*(T s, const basic_quaternion& q) { return q * s; }

    basic_quaternion& operator+=(const basic_quaternion& o) { return *this = *this + o; }
    basic_quaternion& operator-=(const basic_quaternion& o) { return *this = *this - o; }
    basic_quaternion& operator*=(const basic_quaternion& o) { return *this = *this * o; }
    basic_quaternion& operator*=(T s) { return *this = *this * s; }

    constexpr T real() const { return w; }
    constexpr basic_quaternion vector_part() const { return {0, x, y, z}; }
    constexpr basic_quaternion conj() const { return {w, -x, -y, -z}; }

    constexpr T norm2() const { return w * w + x * x + y * y + z * z; }
    // hypot-style scaling keeps |q| finite for components near the overflow limit
    T norm() const {
        const T m = std::max({std::abs(w), std::abs(x), std::abs(y), std::abs(z)});
        if (m == 0) return 0;
        const T a = w / m, b = x / m, c = y / m, d = z / m;
        return m * std::sqrt(a * a + b * b + c * c + d * d);
    }
    T vector_norm() const { return std::sqrt(x * x + y * y + z * z); }

    bool is_finite() const {
        return std::isfinite(w) && std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
    }
    bool is_zero() const { return w == 0 && x == 0 && y == 0 && z == 0; }

    constexpr std::array<T, 4> components() const { return {w, x, y, z}; }

    friend std::ostream& operator<<(std::ostream& os, const basic_quaternion& q) {
        return os << '(' << q.w << ' ' << q.x << ' ' << q.y << ' ' << q.z << ')';
    }
};

using Quaternion = basic_quaternion<double>;

template <std::floating_point T>
T abs(const basic_quaternion<T>& q) {
    return q.norm();
}

template <std::floating_point T>
constexpr basic_quaternion<T> conj(const basic_quaternion<T>& q) {
    return q.conj();
}

/// Multiplicative inverse conj(a)/|a|^2. Throws std::domain_error for a = 0.
template <std::floating_point T>
basic_quaternion<T> qinv(const basic_quaternion<T>& a) {
    if (a.is_zero()) throw std::domain_error("non-invertible: zero quaternion");
    // scale first so |a|^2 neither underflows nor overflows
    const T m = std::max({std::abs(a.w), std::abs(a.x), std::abs(a.y), std::abs(a.z)});
    const basic_quaternion<T> s = a / m;
    return s.conj() / (s.norm2() * m);
}

template <std::floating_point T>
constexpr basic_quaternion<T> qmul(const basic_quaternion<T>& a, const basic_quaternion<T>& b) {
    return a * b;
}

/// Points on the sphere |q| = t. The eight axis points +-t, +-ti, +-tj, +-tk come
/// first, followed by `count` seeded points.
struct SphereSample {
    std::vector<Quaternion> points;
    double radius = 1.0;
    std::uint64_t seed = 0;
    std::size_t count = 0;
};

namespace detail {

// 53-bit uniform in (0, 1]. mt19937_64 output is fixed by the standard, so the
// stream is identical across conforming implementations.
inline double uniform_open0(std::mt19937_64& gen) {
    return (static_cast<double>(gen() >> 11) + 1.0) * 0x1.0p-53;
}

// Box-Muller pair from two uniforms.
inline std::array<double, 2> normal_pair(std::mt19937_64& gen) {
    const double u1 = uniform_open0(gen);
    const double u2 = uniform_open0(gen);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(theta), r * std::sin(theta)};
}

}  // namespace detail

inline std::vector<Quaternion> axis_points(double t) {
    return {{t, 0, 0, 0}, {-t, 0, 0, 0}, {0, t, 0, 0}, {0, -t, 0, 0},
            {0, 0, t, 0}, {0, 0, -t, 0}, {0, 0, 0, t}, {0, 0, 0, -t}};
}

/// Uniform points on |q| = t: four Box-Muller normal deviates from a
/// mt19937_64 stream seeded with `seed`, normalized and scaled by t.
inline SphereSample sample_sphere(double t, std::size_t count, std::uint64_t seed) {
    if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("sample_sphere: radius must be positive");
    if (count == 0) throw std::invalid_argument("sample_sphere: count must be positive");

    SphereSample s{axis_points(t), t, seed, count};
    s.points.reserve(count + 8);
    std::mt19937_64 gen(seed);
    while (s.points.size() < count + 8) {
        const auto a = detail::normal_pair(gen);
        const auto b = detail::normal_pair(gen);
        const Quaternion g{a[0], a[1], b[0], b[1]};
        const double n = g.norm();
        if (n < 1e-150) continue;  // measure zero; redraw
        s.points.push_back(g * (t / n));
    }
    return s;
}

}  // namespace qzero

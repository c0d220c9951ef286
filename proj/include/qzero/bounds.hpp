#pragma once

// Zero-inclusion regions for monic right-coefficient polynomials.
//
// Each bound maps a polynomial (plus optional parameters) to a BoundResult. A
// bound whose hypotheses fail is returned flagged as not applicable, with the
// reason, instead of throwing; only malformed arguments throw.
//
// Coefficient convention: a_k multiplies q^k and p is the lacunary index, the
// largest k with a_k != 0.

#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qzero/companion.hpp"
#include "qzero/polynomial.hpp"

namespace qzero {

enum class BoundMethod {
    enestrom_kakeya,
    cauchy,
    rather_union,
    refined_lacunary,
    corollary_1,
    corollary_2,
    corollary_3,
    corollary_4,
    generalized_delta,
};

inline constexpr BoundMethod kAllBoundMethods[] = {
    BoundMethod::enestrom_kakeya, BoundMethod::cauchy,      BoundMethod::rather_union,
    BoundMethod::refined_lacunary, BoundMethod::corollary_1, BoundMethod::corollary_2,
    BoundMethod::corollary_3,     BoundMethod::corollary_4, BoundMethod::generalized_delta,
};

inline std::string_view to_string(BoundMethod m) {
    switch (m) {
        case BoundMethod::enestrom_kakeya: return "enestrom_kakeya";
        case BoundMethod::cauchy: return "cauchy";
        case BoundMethod::rather_union: return "rather_union";
        case BoundMethod::refined_lacunary: return "refined_lacunary";
        case BoundMethod::corollary_1: return "corollary_1";
        case BoundMethod::corollary_2: return "corollary_2";
        case BoundMethod::corollary_3: return "corollary_3";
        case BoundMethod::corollary_4: return "corollary_4";
        case BoundMethod::generalized_delta: return "generalized_delta";
    }
    return "unknown";
}

inline std::optional<BoundMethod> bound_method_from_string(std::string_view s) {
    for (auto m : kAllBoundMethods)
        if (to_string(m) == s) return m;
    return std::nullopt;
}

struct BoundResult {
    BoundMethod method{};
    std::optional<Region> region;  // present iff applicable
    std::map<std::string, double> parameters;
    std::string reason;  // why the bound does not apply; empty otherwise

    bool applicable() const { return region.has_value(); }

    static BoundResult make(BoundMethod m, Region r, std::map<std::string, double> params = {}) {
        return {m, std::move(r), std::move(params), {}};
    }
    static BoundResult not_applicable(BoundMethod m, std::string why, std::map<std::string, double> params = {}) {
        return {m, std::nullopt, std::move(params), std::move(why)};
    }
};

/// Weights for the generalized radius: p + 1 nonzero quaternions with sum of norms at most 1.
struct DeltaWeights {
    std::vector<Quaternion> deltas;
    double sum_norm = 0.0;

    static DeltaWeights from(std::vector<Quaternion> d) {
        DeltaWeights w{std::move(d), 0.0};
        for (const auto& x : w.deltas) w.sum_norm += x.norm();
        return w;
    }
};

// Slack on sum |delta_k| <= 1 for floating point sums.
inline constexpr double kDeltaSumSlack = 1e-11;

// Relative rounding slack when checking a supplied M against max |a_k|; a
// coefficient built as unit * M can have norm M (1 + eps).
inline constexpr double kNormSlack = 1e-14;

namespace detail {

inline Region origin_ball(double r) { return Region(Ball{Quaternion{}, r, false}); }

// log((1 + M)^e - 1) for e > 0, M > 0, without forming (1 + M)^e.
inline double log_pow1p_minus1(double M, double e) {
    const double a = e * std::log1p(M);
    return a + std::log(-std::expm1(-a));
}

}  // namespace detail

/// ((1 + M)^{p+1} - 1)^{1/n}, evaluated in log space. Zero for p < 0 or M = 0.
inline double refined_radius(int n, int p, double M) {
    if (n < 1) throw std::invalid_argument("refined_radius: n must be positive");
    if (p < 0 || M == 0.0) return 0.0;
    return std::exp(detail::log_pow1p_minus1(M, p + 1.0) / n);
}

/// sum_{k=1}^{p+1} M / (1 + M)^{n-p+k-1} in closed form, ((1 + M)^{p+1} - 1) / (1 + M)^n.
inline double geometric_weight_total(int n, int p, double M) {
    return std::exp(detail::log_pow1p_minus1(M, p + 1.0) - n * std::log1p(M));
}

/// Real coefficients 0 <= a_0 <= a_1 <= ... <= a_n give |q| <= 1. Takes the full
/// list a_0 .. a_n including the leading coefficient.
inline BoundResult bound_enestrom_kakeya(std::span<const Quaternion> all) {
    constexpr auto m = BoundMethod::enestrom_kakeya;
    if (all.size() < 2) throw std::invalid_argument("bound_enestrom_kakeya: need a_0 .. a_n with n >= 1");
    std::map<std::string, double> params{{"n", static_cast<double>(all.size() - 1)}};
    for (std::size_t k = 0; k < all.size(); ++k)
        if (all[k].vector_norm() > 1e-14)
            return BoundResult::not_applicable(m, "coefficient a_" + std::to_string(k) + " is not real", params);
    if (all.front().w < 0.0) return BoundResult::not_applicable(m, "a_0 is negative", params);
    for (std::size_t k = 1; k < all.size(); ++k)
        if (all[k].w < all[k - 1].w)
            return BoundResult::not_applicable(m, "coefficients decrease at a_" + std::to_string(k), params);
    if (all.back().w == 0.0) return BoundResult::not_applicable(m, "leading coefficient is zero", params);
    return BoundResult::make(m, detail::origin_ball(1.0), params);
}

inline BoundResult bound_enestrom_kakeya(const QPolynomial& f) {
    const auto all = f.full_coeffs();
    return bound_enestrom_kakeya(std::span<const Quaternion>(all));
}

/// |q| <= 1 + max |a_k|.
inline BoundResult bound_cauchy(const QPolynomial& f) {
    const double M = f.max_coeff_norm();
    return BoundResult::make(BoundMethod::cauchy, detail::origin_ball(1.0 + M), {{"M", M}, {"n", f.degree()}});
}

/// Union {|q| <= r (1 + alpha_2)} u {|q + A_1| <= r}, where A_nu = a_{n-nu} is the
/// coefficient of q^{n-nu} and alpha_nu = |A_nu| / r^nu for nu = 2 .. n.
///
/// The ordering alpha_2 >= ... >= alpha_n is checked over the positive alphas;
/// vanishing coefficients contribute only r to their Gersgorin row and are
/// skipped. The first positive alpha is then the largest and plays the role of
/// alpha_2. Without r, the smallest r satisfying the ordering is used.
inline BoundResult bound_rather(const QPolynomial& f, std::optional<double> r_opt = std::nullopt) {
    constexpr auto m = BoundMethod::rather_union;
    const int n = f.degree();
    if (r_opt && !(*r_opt > 0.0 && std::isfinite(*r_opt)))
        throw std::invalid_argument("bound_rather: r must be positive");
    std::map<std::string, double> params{{"n", n}};
    if (n < 2) return BoundResult::not_applicable(m, "requires degree n >= 2", params);

    auto A = [&](int nu) { return f[static_cast<std::size_t>(n - nu)]; };
    std::vector<int> support;  // nu in 2..n with A_nu != 0
    for (int nu = 2; nu <= n; ++nu)
        if (!A(nu).is_zero()) support.push_back(nu);
    if (support.empty()) return BoundResult::not_applicable(m, "alpha_2 .. alpha_n all vanish", params);

    double r = 0.0;
    if (r_opt) {
        r = *r_opt;
    } else {
        constexpr double floor = 1e-9;
        if (support.size() == 1) {
            const int nu = support.front();
            r = std::pow(A(nu).norm(), 1.0 / nu);
        } else {
            for (std::size_t i = 0; i + 1 < support.size(); ++i) {
                const int lo = support[i], hi = support[i + 1];
                r = std::max(r, std::pow(A(hi).norm() / A(lo).norm(), 1.0 / (hi - lo)));
            }
        }
        r = std::max(r, floor);
    }
    params["r"] = r;

    std::vector<double> alpha;
    for (int nu : support) alpha.push_back(A(nu).norm() / std::pow(r, nu));
    for (std::size_t i = 0; i + 1 < alpha.size(); ++i)
        if (alpha[i] < alpha[i + 1] * (1.0 - 1e-12))
            return BoundResult::not_applicable(
                m, "alpha ordering fails at nu = " + std::to_string(support[i + 1]) + " for r = " + std::to_string(r),
                params);

    params["alpha2"] = alpha.front();
    return BoundResult::make(m,
                             Region({Ball{Quaternion{}, r * (1.0 + alpha.front()), false},
                                     Ball{-A(1), r, false}}),
                             params);
}

/// |q| <= ((1 + M)^{p+1} - 1)^{1/n} with |a_k| <= M for k <= p. Throws
/// std::invalid_argument when a supplied M is below some |a_k|.
inline BoundResult bound_refined(const QPolynomial& f, std::optional<double> M_opt = std::nullopt) {
    const int n = f.degree();
    const int p = f.lacunary_index();
    const double max_norm = f.max_coeff_norm();
    double M = max_norm;
    if (M_opt) {
        if (!(*M_opt >= 0.0) || !std::isfinite(*M_opt)) throw std::invalid_argument("bound_refined: M must be nonnegative");
        if (*M_opt < max_norm * (1.0 - kNormSlack)) throw std::invalid_argument("bound_refined: M is below max |a_k|");
        M = *M_opt;
    }
    return BoundResult::make(BoundMethod::refined_lacunary, detail::origin_ball(refined_radius(n, p, M)),
                             {{"M", M}, {"n", n}, {"p", p}});
}

/// Four specializations of the refined radius, in order:
///   1. ((1 + M)^n - 1)^{1/n}      2. (1 + M)^{(p+1)/n}
///   3. 2^{(p+1)/n}                4. (2^n - 1)^{1/n}
/// 3 and 4 need every |a_j| <= 1.
inline std::vector<BoundResult> bound_corollaries(const QPolynomial& f) {
    const int n = f.degree();
    const int p = f.lacunary_index();
    const double M = f.max_coeff_norm();
    const std::map<std::string, double> params{{"M", M}, {"n", n}, {"p", p}};
    std::vector<BoundResult> out;

    out.push_back(BoundResult::make(BoundMethod::corollary_1, detail::origin_ball(refined_radius(n, n - 1, M)), params));
    out.push_back(BoundResult::make(BoundMethod::corollary_2,
                                    detail::origin_ball(std::exp((p + 1) * std::log1p(M) / n)), params));
    if (M <= 1.0) {
        out.push_back(BoundResult::make(BoundMethod::corollary_3,
                                        detail::origin_ball(std::exp2(static_cast<double>(p + 1) / n)), params));
        out.push_back(BoundResult::make(BoundMethod::corollary_4,
                                        detail::origin_ball(refined_radius(n, n - 1, 1.0)), params));
    } else {
        out.push_back(BoundResult::not_applicable(BoundMethod::corollary_3, "some |a_j| > 1", params));
        out.push_back(BoundResult::not_applicable(BoundMethod::corollary_4, "some |a_j| > 1", params));
    }
    return out;
}

/// |q| <= R with R = max_k (|a_{p-k+1}| / |delta_k|)^{1/(n-p+k-1)}, k = 1 .. p+1.
/// The root is taken per term, inside the max.
inline BoundResult bound_generalized(const QPolynomial& f, const DeltaWeights& w) {
    const int n = f.degree();
    const int p = f.lacunary_index();
    if (static_cast<int>(w.deltas.size()) != p + 1)
        throw std::invalid_argument("bound_generalized: need exactly p + 1 weights");
    double sum = 0.0;
    for (const auto& d : w.deltas) {
        if (d.is_zero()) throw std::invalid_argument("bound_generalized: weights must be nonzero");
        sum += d.norm();
    }
    if (sum > 1.0 + kDeltaSumSlack) throw std::invalid_argument("bound_generalized: sum of |delta_k| exceeds 1");

    double R = 0.0;
    for (int k = 1; k <= p + 1; ++k) {
        const double a = f[static_cast<std::size_t>(p - k + 1)].norm();
        if (a == 0.0) continue;
        const double ratio = a / w.deltas[static_cast<std::size_t>(k - 1)].norm();
        R = std::max(R, std::pow(ratio, 1.0 / (n - p + k - 1)));
    }
    return BoundResult::make(BoundMethod::generalized_delta, detail::origin_ball(R),
                             {{"R", R}, {"n", n}, {"p", p}, {"sum_delta", sum}});
}

/// delta_k = (1+M)^n / ((1+M)^{p+1} - 1) * a_{p-k+1} / (1+M)^{n-p+k-1}.
///
/// A vanishing a_{p-k+1} would give delta_k = 0; it gets the real weight
/// M 1e-12 / (1+M)^{n-p+k-1} instead, whose per-term radius is zero.
inline DeltaWeights default_deltas(const QPolynomial& f, double M) {
    if (!(M > 0.0) || !std::isfinite(M)) throw std::invalid_argument("default_deltas: M must be positive");
    const int n = f.degree();
    const int p = f.lacunary_index();
    if (M < f.max_coeff_norm() * (1.0 - kNormSlack)) throw std::invalid_argument("default_deltas: M is below max |a_k|");
    if (p < 0) return {};

    const double L = std::log1p(M);
    const double log_prefactor = n * L - detail::log_pow1p_minus1(M, p + 1.0);
    std::vector<Quaternion> d;
    d.reserve(static_cast<std::size_t>(p + 1));
    for (int k = 1; k <= p + 1; ++k) {
        const int e = n - p + k - 1;
        const Quaternion& a = f[static_cast<std::size_t>(p - k + 1)];
        if (a.is_zero())
            d.emplace_back(M * 1e-12 * std::exp(-e * L));
        else
            d.push_back(a * std::exp(log_prefactor - e * L));
    }
    return DeltaWeights::from(std::move(d));
}

/// Every bound, in kAllBoundMethods order, with default parameters.
inline std::vector<BoundResult> all_bounds(const QPolynomial& f) {
    std::vector<BoundResult> out;
    out.push_back(bound_enestrom_kakeya(f));
    out.push_back(bound_cauchy(f));
    out.push_back(bound_rather(f));
    out.push_back(bound_refined(f));
    for (auto& c : bound_corollaries(f)) out.push_back(std::move(c));
    const double M = f.max_coeff_norm();
    out.push_back(bound_generalized(f, M > 0.0 ? default_deltas(f, M) : DeltaWeights{}));
    return out;
}

}  // namespace qzero

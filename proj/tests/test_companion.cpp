#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "qzero/companion.hpp"
#include "qzero/oracle.hpp"
#include "test_support.hpp"

using qzero::QMatrix;
using qzero::QPolynomial;
using qzero::Quaternion;

namespace {

std::vector<double> sorted_radii(const qzero::Region& r) {
    std::vector<double> out;
    for (const auto& b : r.balls()) out.push_back(b.radius);
    std::ranges::sort(out);
    return out;
}

}  // namespace

TEST(CompanionMatrix, Quadratic) {
    const Quaternion a0{1, 2, 3, 4}, a1{0, -1, 0, 2};
    const auto c = qzero::companion_matrix(QPolynomial({a0, a1}));
    ASSERT_EQ(c.size(), 2u);
    EXPECT_EQ(c(0, 0), Quaternion{});
    EXPECT_EQ(c(1, 0), Quaternion(1.0));
    EXPECT_EQ(c(0, 1), -a0);
    EXPECT_EQ(c(1, 1), -a1);
}

TEST(CompanionMatrix, Structure) {
    std::mt19937_64 gen(1);
    const auto f = qzero::testing::random_polynomial(gen, 5, 2.0);
    const auto c = qzero::companion_matrix(f);
    for (std::size_t r = 0; r < 5; ++r)
        for (std::size_t col = 0; col < 5; ++col) {
            Quaternion want;
            if (col == 4) want = -f[r];
            else if (r == col + 1) want = Quaternion(1.0);
            EXPECT_EQ(c(r, col), want) << r << "," << col;
        }
    const auto lin = qzero::companion_matrix(QPolynomial({Quaternion{2, 0, 0, 1}}));
    ASSERT_EQ(lin.size(), 1u);
    EXPECT_EQ(lin(0, 0), (Quaternion{-2, 0, 0, -1}));
}

TEST(ScaledCompanion, IdentityScaling) {
    std::mt19937_64 gen(2);
    const auto f = qzero::testing::random_polynomial(gen, 4, 2.0);
    const std::vector<double> ones(4, 1.0);
    EXPECT_EQ(qzero::scaled_companion(f, ones), qzero::companion_matrix(f));
}

TEST(ScaledCompanion, QuadraticExample) {
    // q^2 + 1 with the geometric scaling at r: [[0, -1/r], [r, 0]]
    const QPolynomial f({Quaternion(1.0), Quaternion{}});
    for (double r : {0.5, 2.0, 3.0}) {
        const auto d = qzero::geometric_scaling(2, r);
        EXPECT_EQ(d, (std::vector<double>{r, 1.0}));
        const auto c = qzero::scaled_companion(f, d);
        EXPECT_EQ(c(0, 0), Quaternion{});
        EXPECT_EQ(c(1, 1), Quaternion{});
        EXPECT_DOUBLE_EQ(c(0, 1).w, -1.0 / r);
        EXPECT_DOUBLE_EQ(c(1, 0).w, r);
    }
    // the literal D^{-1} C D with d = (1/r, 1) gives the transposed pattern
    const std::vector<double> d{0.5, 1.0};
    const auto c = qzero::scaled_companion(f, d);
    EXPECT_DOUBLE_EQ(c(0, 1).w, -2.0);
    EXPECT_DOUBLE_EQ(c(1, 0).w, 0.5);
}

TEST(ScaledCompanion, GeometricSubdiagonal) {
    const QPolynomial f({Quaternion{}, Quaternion{}, Quaternion{}});
    const auto c = qzero::scaled_companion(f, qzero::geometric_scaling(3, 2.0));
    EXPECT_EQ(c(1, 0), Quaternion(2.0));
    EXPECT_EQ(c(2, 1), Quaternion(2.0));
    for (std::size_t r = 0; r < 3; ++r) EXPECT_EQ(c(r, 2), Quaternion{});
}

TEST(ScaledCompanion, Errors) {
    const QPolynomial f({Quaternion(1.0), Quaternion{}});
    EXPECT_THROW(qzero::scaled_companion(f, std::vector<double>{1.0}), std::invalid_argument);
    EXPECT_THROW(qzero::scaled_companion(f, std::vector<double>{1.0, 0.0}), std::invalid_argument);
    EXPECT_THROW(qzero::scaled_companion(f, std::vector<double>{-1.0, 1.0}), std::invalid_argument);
    EXPECT_THROW(qzero::geometric_scaling(0, 1.0), std::invalid_argument);
    EXPECT_THROW(qzero::geometric_scaling(2, 0.0), std::invalid_argument);
}

TEST(ScaledCompanion, StructuralScaling) {
    // last column norms scale by d_n / d_mu, subdiagonal by d_mu / d_{mu+1}; exact
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(0.1, 10.0);
    for (int it = 0; it < 100; ++it) {
        const int n = 1 + it % 6;
        const auto f = qzero::testing::random_polynomial(gen, n, 2.0);
        std::vector<double> d(static_cast<std::size_t>(n));
        for (auto& v : d) v = u(gen);
        const auto c = qzero::companion_matrix(f);
        const auto s = qzero::scaled_companion(f, d);
        const auto N = static_cast<std::size_t>(n);
        for (std::size_t mu = 0; mu < N; ++mu) {
            EXPECT_EQ(s(mu, N - 1), c(mu, N - 1) * (d[N - 1] / d[mu]));
            if (mu + 1 < N) { EXPECT_EQ(s(mu + 1, mu), Quaternion(d[mu] / d[mu + 1])); }
        }
    }
}

TEST(Gershgorin, CompanionOfQuadratic) {
    const QPolynomial f({Quaternion(1.0), Quaternion{}});
    const auto g = qzero::gershgorin_balls(qzero::companion_matrix(f));
    ASSERT_EQ(g.balls().size(), 2u);
    for (const auto& b : g.balls()) {
        EXPECT_EQ(b.center, Quaternion{});
        EXPECT_EQ(b.radius, 1.0);
        EXPECT_FALSE(b.open);
    }
    // zeros of q^2 + 1 are the unit imaginary sphere, on the boundary
    const auto zs = qzero::find_zeros(f);
    const auto rep = qzero::verify_containment(zs, g, 1e-9);
    EXPECT_TRUE(rep.pass);
    EXPECT_NEAR(rep.worst_margin, 0.0, 1e-12);
}

TEST(Gershgorin, ScaledQuadratic) {
    const QPolynomial f({Quaternion(1.0), Quaternion{}});
    const auto a = qzero::gershgorin_balls(qzero::scaled_companion(f, std::vector<double>{0.5, 1.0}));
    EXPECT_EQ(sorted_radii(a), (std::vector<double>{0.5, 2.0}));
    const auto b = qzero::gershgorin_balls(qzero::scaled_companion(f, qzero::geometric_scaling(2, 2.0)));
    EXPECT_EQ(sorted_radii(b), (std::vector<double>{0.5, 2.0}));
}

TEST(Gershgorin, DiagonalCenters) {
    QMatrix m(2);
    m(0, 0) = Quaternion{1, 1, 0, 0};
    m(0, 1) = Quaternion{0, 3, 4, 0};
    m(1, 1) = Quaternion{-2, 0, 0, 0};
    const auto g = qzero::gershgorin_balls(m);
    EXPECT_EQ(g.balls()[0].center, (Quaternion{1, 1, 0, 0}));
    EXPECT_EQ(g.balls()[0].radius, 5.0);
    EXPECT_EQ(g.balls()[1].center, Quaternion(-2.0));
    EXPECT_EQ(g.balls()[1].radius, 0.0);
}

TEST(Region, Queries) {
    const qzero::Region r({{Quaternion{}, 1.0, false}, {Quaternion(3.0), 0.5, false}});
    EXPECT_TRUE(r.contains(Quaternion{0, 1, 0, 0}));
    EXPECT_TRUE(r.contains(Quaternion(3.4)));
    EXPECT_FALSE(r.contains(Quaternion(2.0)));
    EXPECT_DOUBLE_EQ(r.margin(Quaternion(2.0)), -0.5);
    EXPECT_DOUBLE_EQ(r.enclosing_radius(), 3.5);
    const qzero::Ball open{Quaternion{}, 1.0, true};
    EXPECT_FALSE(open.contains(Quaternion(1.0)));
    EXPECT_TRUE(open.contains(Quaternion(0.999)));
    EXPECT_THROW(qzero::Region(std::vector<qzero::Ball>{}), std::invalid_argument);
    EXPECT_THROW(qzero::Region(qzero::Ball{Quaternion{}, -1.0, false}), std::invalid_argument);
}

TEST(GershgorinProperty, ZerosInsideScaledBalls) {
    std::mt19937_64 gen(4);
    std::uniform_real_distribution<double> logd(-3.0, 3.0);
    int checked = 0;
    for (int it = 0; it < 200; ++it) {
        const int n = 1 + it % 6;
        const auto f = qzero::testing::random_polynomial(gen, n, 2.0);
        const auto zs = qzero::find_zeros(f);
        ASSERT_EQ(zs.deficit, 0);
        for (int rep = 0; rep < 5; ++rep) {
            std::vector<double> d(static_cast<std::size_t>(n));
            for (auto& v : d) v = std::exp(logd(gen));
            const auto region = qzero::gershgorin_balls(qzero::scaled_companion(f, d));
            const auto c = qzero::verify_containment(zs, region, 1e-9);
            EXPECT_TRUE(c.pass) << "worst margin " << c.worst_margin;
            ++checked;
        }
    }
    EXPECT_EQ(checked, 1000);
}

TEST(GershgorinProperty, SphericalClassCoveredByUnion) {
    // (q^2 + 1)(q - 3): the unit sphere straddles two balls only through their union
    const auto c = qzero::multiply(std::vector<Quaternion>{Quaternion(1.0), Quaternion{}, Quaternion(1.0)},
                                   std::vector<Quaternion>{Quaternion(-3.0), Quaternion(1.0)});
    const QPolynomial f({c[0], c[1], c[2]});
    const auto zs = qzero::find_zeros(f);
    ASSERT_EQ(zs.spherical.size(), 1u);
    const qzero::Region split({{Quaternion{0, 0.6, 0, 0}, 1.3, false}, {Quaternion{0, -0.6, 0, 0}, 1.3, false},
                               {Quaternion(3.0), 0.1, false}});
    EXPECT_TRUE(qzero::verify_containment(zs, split, 1e-9).pass);
    const qzero::Region gap({{Quaternion{0, 1.5, 0, 0}, 1.3, false}, {Quaternion{0, -1.5, 0, 0}, 1.3, false},
                             {Quaternion(3.0), 0.1, false}});
    EXPECT_FALSE(qzero::verify_containment(zs, gap, 1e-9).pass);
}

#include <gtest/gtest.h>

#include <complex>
#include <random>

#include "qzero/polynomial.hpp"
#include "test_support.hpp"

using qzero::ClassQuadratic;
using qzero::QPolynomial;
using qzero::Quaternion;

namespace {

const Quaternion I = Quaternion::i(), J = Quaternion::j(), K = Quaternion::k();

// q^2 + q i + j
QPolynomial worked() { return QPolynomial({J, I}); }

// Lifts a real polynomial to quaternion coefficients for right evaluation.
std::vector<Quaternion> lift(const qzero::RealPolynomial& F) {
    std::vector<Quaternion> c;
    for (double v : F.c) c.emplace_back(v);
    return c;
}

}  // namespace

TEST(QPolynomial, Construction) {
    EXPECT_THROW(QPolynomial(std::vector<Quaternion>{}), std::invalid_argument);
    EXPECT_THROW(QPolynomial({Quaternion{std::nan(""), 0, 0, 0}}), std::invalid_argument);
    const QPolynomial f({J, I});
    EXPECT_EQ(f.degree(), 2);
    EXPECT_EQ(f.lacunary_index(), 1);
    EXPECT_EQ(QPolynomial({Quaternion(1.0), Quaternion{}, Quaternion{}}).lacunary_index(), 0);
    EXPECT_EQ(QPolynomial({Quaternion{}, Quaternion{}, Quaternion{}}).lacunary_index(), -1);
}

TEST(QPolynomial, FromLeadingKeepsZeros) {
    std::mt19937_64 gen(5);
    const auto f = qzero::testing::random_polynomial(gen, 3, 2.0);
    const Quaternion lead{0.3, -1.2, 0.7, 2.0};
    std::vector<Quaternion> all;
    for (const auto& a : f.coeffs()) all.push_back(a * lead);
    all.push_back(lead);
    const auto g = QPolynomial::from_leading(all);
    for (int k = 0; k < 3; ++k) EXPECT_LE((g[static_cast<std::size_t>(k)] - f[static_cast<std::size_t>(k)]).norm(), 1e-14);
    EXPECT_THROW(QPolynomial::from_leading(std::vector<Quaternion>{Quaternion(1.0), Quaternion{}}), std::domain_error);
}

TEST(EvalRight, Examples) {
    EXPECT_EQ(qzero::eval_right(QPolynomial({Quaternion(1.0), Quaternion{}}), I), Quaternion{});
    const Quaternion q0{0.5, -0.5, -0.5, -0.5};
    EXPECT_LE(qzero::eval_right(worked(), q0).norm(), 1e-15);
    EXPECT_LE(qzero::testing::eval_by_powers({J, I, Quaternion(1.0)}, q0).norm(), 1e-15);
    const Quaternion q{0.3, 1.1, -0.4, 2.0};
    const QPolynomial cube({Quaternion{}, Quaternion{}, Quaternion{}});
    EXPECT_LE((qzero::eval_right(cube, q) - q * q * q).norm(), 1e-13);
}

TEST(EvalRight, MatchesExplicitPowers) {
    std::mt19937_64 gen(21);
    for (int it = 0; it < 500; ++it) {
        const auto f = qzero::testing::random_polynomial(gen, 1 + it % 6, 2.0);
        const auto q = qzero::testing::random_quaternion(gen, 2.0);
        const auto a = qzero::eval_right(f, q);
        const auto b = qzero::testing::eval_by_powers(f.full_coeffs(), q);
        EXPECT_LE((a - b).norm(), 1e-12 * (1.0 + b.norm()) * 64.0);
    }
}

TEST(EvalRight, ProductVanishesAtLeftFactorRoot) {
    // (g h)(q) = sum_j q^j g(q) h_j, so g's zero is a zero of g h
    std::mt19937_64 gen(22);
    for (int it = 0; it < 200; ++it) {
        const auto r = qzero::testing::random_quaternion(gen, 2.0);
        const std::vector<Quaternion> g{-r, Quaternion(1.0)};
        const std::vector<Quaternion> h{qzero::testing::random_quaternion(gen, 2.0), qzero::testing::random_quaternion(gen, 2.0),
                                        Quaternion(1.0)};
        const auto gh = qzero::multiply(g, h);
        EXPECT_LE(qzero::eval_right(gh, r).norm(), 1e-13);
    }
}

TEST(Derivative, Examples) {
    const auto d1 = qzero::derivative(QPolynomial({Quaternion(1.0), Quaternion{}}));
    EXPECT_EQ(d1.leading, 2.0);
    ASSERT_EQ(d1.degree(), 1);
    EXPECT_EQ(d1.lower[0], Quaternion{});

    const Quaternion a1{1, 2, 3, 4}, a0{-1, 0, 5, 0};
    const auto d2 = qzero::derivative(QPolynomial({a0, a1, Quaternion{}}));
    EXPECT_EQ(d2.leading, 3.0);
    ASSERT_EQ(d2.degree(), 2);
    EXPECT_EQ(d2.lower[0], a1);
    EXPECT_EQ(d2.lower[1], Quaternion{});

    const auto d3 = qzero::derivative(QPolynomial({Quaternion{}}));
    EXPECT_EQ(d3.leading, 1.0);
    EXPECT_EQ(d3.degree(), 0);
}

TEST(Derivative, HigherOrders) {
    const QPolynomial f({Quaternion(1.0), I, J, K});  // q^4 + q^3 k + q^2 j + q i + 1
    const auto d2 = qzero::nth_derivative(f, 2);
    EXPECT_EQ(d2.leading, 12.0);
    ASSERT_EQ(d2.degree(), 2);
    EXPECT_EQ(d2.lower[0], J * 2.0);
    EXPECT_EQ(d2.lower[1], K * 6.0);
    const auto d4 = qzero::nth_derivative(f, 4);
    EXPECT_EQ(d4.leading, 24.0);
    EXPECT_EQ(d4.degree(), 0);
    EXPECT_THROW(qzero::nth_derivative(f, 5), std::invalid_argument);
    EXPECT_THROW(qzero::nth_derivative(f, 0), std::invalid_argument);
}

TEST(ConjugatePoly, Examples) {
    const auto g = qzero::conjugate_poly(worked());
    EXPECT_EQ(g[0], -J);
    EXPECT_EQ(g[1], -I);
    const QPolynomial real({Quaternion(2.0), Quaternion(-1.0)});
    EXPECT_EQ(qzero::conjugate_poly(real), real);
    std::mt19937_64 gen(3);
    const auto f = qzero::testing::random_polynomial(gen, 4, 3.0);
    EXPECT_EQ(qzero::conjugate_poly(qzero::conjugate_poly(f)), f);
}

TEST(ConjugateProduct, Examples) {
    EXPECT_EQ(qzero::conjugate_product(worked()).c, (std::vector<double>{1, 0, 1, 0, 1}));
    EXPECT_EQ(qzero::conjugate_product(QPolynomial({Quaternion(1.0), Quaternion{}})).c,
              (std::vector<double>{1, 0, 2, 0, 1}));
    const Quaternion a{1.5, -2, 0.5, 3};
    const auto lin = qzero::conjugate_product(QPolynomial({-a}));
    ASSERT_EQ(lin.c.size(), 3u);
    EXPECT_NEAR(lin.c[0], a.norm2(), 1e-14);
    EXPECT_NEAR(lin.c[1], -2.0 * a.w, 1e-14);
    EXPECT_EQ(lin.c[2], 1.0);
}

TEST(ConjugateProductProperty, RightEvaluationIdentity) {
    // F(q) = sum_j q^j f(q) conj(a_j) for every quaternion q, complex or not
    std::mt19937_64 gen(31);
    for (int it = 0; it < 300; ++it) {
        const auto f = qzero::testing::random_polynomial(gen, 1 + it % 6, 2.0);
        const auto F = qzero::conjugate_product(f);
        EXPECT_EQ(F.degree(), 2 * f.degree());
        EXPECT_EQ(F.c.back(), 1.0);
        const auto q = qzero::testing::random_quaternion(gen, 1.5);
        const auto fq = qzero::eval_right(f, q);
        const auto all = f.full_coeffs();
        Quaternion rhs, power(1.0);
        for (const auto& a : all) {
            rhs += power * fq * a.conj();
            power = power * q;
        }
        const auto lhs = qzero::eval_right(lift(F), q);
        EXPECT_LE((lhs - rhs).norm(), 1e-10 * (1.0 + rhs.norm()));
    }
}

TEST(ConjugateProductProperty, ComplexSliceModulus) {
    // f = (q - r)(q - s) vanishes at r, so F vanishes on the complex representative of r's class
    std::mt19937_64 gen(32);
    for (int it = 0; it < 200; ++it) {
        const auto r = qzero::testing::random_quaternion(gen, 2.0);
        const auto s = qzero::testing::random_quaternion(gen, 2.0);
        const auto c = qzero::multiply(std::vector<Quaternion>{-r, Quaternion(1.0)}, std::vector<Quaternion>{-s, Quaternion(1.0)});
        const QPolynomial f({c[0], c[1]});
        const auto F = qzero::conjugate_product(f);
        const std::complex<double> z(r.w, r.vector_norm());
        EXPECT_LE(std::abs(F.eval(z)), 1e-11 * (1.0 + std::pow(std::abs(z), 4)));
    }
}

TEST(RemainderLinear, Examples) {
    auto [c0, d0] = qzero::remainder_linear(QPolynomial({Quaternion(1.0), Quaternion{}}), ClassQuadratic{0.0, 1.0});
    EXPECT_EQ(c0, Quaternion{});
    EXPECT_EQ(d0, Quaternion{});

    auto [c1, d1] = qzero::remainder_linear(worked(), ClassQuadratic{0.5, 1.0});
    EXPECT_EQ(c1, (Quaternion{1, 1, 0, 0}));
    EXPECT_EQ(d1, (Quaternion{-1, 0, 1, 0}));
    // the class zero -d c^{-1} is (1 - i - j - k)/2
    EXPECT_LE((-d1 * qzero::qinv(c1) - Quaternion{0.5, -0.5, -0.5, -0.5}).norm(), 1e-15);

    const Quaternion a{0.1, 0.2, 0.3, 0.4};
    auto [c2, d2] = qzero::remainder_linear(QPolynomial({-a}), ClassQuadratic{3.0, 25.0});
    EXPECT_EQ(c2, Quaternion(1.0));
    EXPECT_EQ(d2, -a);
}

TEST(RemainderLinearProperty, AgreesOnClassMembers) {
    std::mt19937_64 gen(41);
    std::uniform_real_distribution<double> u(-2.0, 2.0), s(0.0, 2.0);
    for (int it = 0; it < 200; ++it) {
        const auto f = qzero::testing::random_polynomial(gen, 1 + it % 6, 2.0);
        const double re = u(gen), rad = s(gen);
        const ClassQuadratic cq{re, re * re + rad * rad};
        const auto [c, d] = qzero::remainder_linear(f, cq);
        for (int m = 0; m < 10; ++m) {
            const auto q = qzero::testing::random_class_member(gen, cq);
            const auto lhs = qzero::eval_right(f, q);
            const auto rhs = q * c + d;
            EXPECT_LE((lhs - rhs).norm(), 1e-10 * (1.0 + lhs.norm()));
        }
    }
}

TEST(DivideByClass, QuotientReconstructs) {
    std::mt19937_64 gen(42);
    const auto f = qzero::testing::random_polynomial(gen, 5, 1.0);
    const ClassQuadratic cq{0.3, 1.7};
    const auto div = qzero::divide_by_class(f.full_coeffs(), cq);
    const std::vector<Quaternion> quad{Quaternion(cq.normsq), Quaternion(-2.0 * cq.re), Quaternion(1.0)};
    auto back = qzero::multiply(div.quotient, quad);
    back[0] += div.d;
    back[1] += div.c;
    const auto all = f.full_coeffs();
    ASSERT_EQ(back.size(), all.size());
    for (std::size_t k = 0; k < all.size(); ++k) EXPECT_LE((back[k] - all[k]).norm(), 1e-13);
}

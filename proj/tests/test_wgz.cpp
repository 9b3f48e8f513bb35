#include "doctest.h"

#include "csmcg/error.hpp"
#include "csmcg/wgz.hpp"

#include <numbers>

using namespace csmcg;

namespace {

constexpr double kPi = std::numbers::pi;

// f_c(theta) = p_c e^{-pi a |theta - x_c|^2_k}, evaluated in closed form
struct Gaussians {
    std::vector<double> a;
    std::vector<Eigen::VectorXd> centre;
    std::vector<cd> coef;
    cd operator()(const WgzContext& ctx, std::size_t c, const Eigen::VectorXd& theta) const {
        Eigen::VectorXd d = ctx.chol * (theta - centre[c]);
        return coef[c] * std::exp(-kPi * a[c] * d.squaredNorm());
    }
};

Gaussians make_gaussians(const WgzContext& ctx) {
    Gaussians g;
    int n = ctx.rs.rank;
    for (std::size_t c = 0; c < ctx.z.order(); ++c) {
        g.a.push_back(0.7 + 0.1 * static_cast<double>(c));
        Eigen::VectorXd x(n);
        for (int i = 0; i < n; ++i) x[i] = 0.05 * static_cast<double>(c + 1) * (i % 2 ? -1 : 1);
        g.centre.push_back(x);
        g.coef.push_back(cd(1.0 + 0.2 * static_cast<double>(c), 0.3 * static_cast<double>(c)));
    }
    return g;
}

GridFunction sample(const WgzContext& ctx, const Gaussians& g) {
    GridFunction f = make_family(ctx);
    for (std::size_t p = 0; p < ctx.grid.size(); ++p) {
        Eigen::VectorXd th(ctx.rs.rank);
        auto j = ctx.grid.index(p);
        for (int i = 0; i < ctx.rs.rank; ++i) th[i] = static_cast<double>(j[static_cast<size_t>(i)]) / ctx.resolution;
        for (std::size_t c = 0; c < ctx.z.order(); ++c) f.at(static_cast<int>(c), p) = g(ctx, c, th);
    }
    return f;
}

// direct lattice sum over lambda = K^{-1} m
cd direct_z(const WgzContext& ctx, const Gaussians& g, const Eigen::VectorXd& t1, const Eigen::VectorXd& t2) {
    int n = ctx.rs.rank;
    Eigen::MatrixXd K(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) K(i, j) = static_cast<double>(ctx.kg(i, j));
    Eigen::MatrixXd Kinv = K.inverse();
    cd sum = 0;
    const int B = 40;
    std::vector<int> m(static_cast<size_t>(n), -B);
    for (;;) {
        Eigen::VectorXd mv(n);
        for (int i = 0; i < n; ++i) mv[i] = m[static_cast<size_t>(i)];
        Eigen::VectorXd lam = Kinv * mv;
        for (std::size_t c = 0; c < ctx.z.order(); ++c) {
            double mg = 0;
            for (int i = 0; i < n; ++i) mg += mv[i] * to_double(ctx.z.reps[c][static_cast<size_t>(i)]);
            sum += g(ctx, c, t1 + lam) * std::polar(1.0, -2 * kPi * mg) * std::polar(1.0, -2 * kPi * mv.dot(t2));
        }
        int i = n - 1;
        while (i >= 0 && ++m[static_cast<size_t>(i)] > B) m[static_cast<size_t>(i--)] = -B;
        if (i < 0) break;
    }
    return sum * std::polar(1.0, -kPi * t1.dot(K * t2)) / std::sqrt(static_cast<double>(ctx.z.order()));
}

}  // namespace

TEST_SUITE("wgz") {

TEST_CASE("multiplier: exact and floating evaluations agree, and it is a unit") {
    RootSystem rs = build_root_system({'A', 2});
    RatVec th1{Rational(1, 3), Rational(-2, 5)}, th2{Rational(3, 7), Rational(1, 2)};
    Eigen::VectorXd d1(2), d2(2);
    d1 << 1.0 / 3, -2.0 / 5;
    d2 << 3.0 / 7, 0.5;
    for (std::int64_t a = -2; a <= 2; ++a)
        for (std::int64_t b = -2; b <= 2; ++b) {
            RatVec l1{Rational(a), Rational(b)}, l2{Rational(b), Rational(1)};
            cd x = multiplier_eval(rs, 2, l1, l2, th1, th2), y = multiplier_eval(rs, 2, l1, l2, d1, d2);
            CHECK(std::abs(x - y) < 1e-12);
            CHECK(std::abs(std::abs(x) - 1.0) < 1e-15);
        }
    CHECK_THROWS_AS(multiplier_eval(rs, 2, {Rational(1, 2), Rational(0)}, {Rational(0), Rational(0)}, th1, th2), Error);
}

TEST_CASE("sampled transform matches the direct lattice sum") {
    for (auto [t, k, N, R] : {std::tuple{LieType{'A', 1}, 1, 32, 6.0}, std::tuple{LieType{'A', 1}, 2, 32, 6.0},
                              std::tuple{LieType{'A', 2}, 1, 15, 3.6}}) {
        RootSystem rs = build_root_system(t);
        WgzContext ctx = make_wgz_context(rs, k, N, R);
        Gaussians g = make_gaussians(ctx);
        GridFunction f = sample(ctx, g);
        SectionSamples s = wgz_forward(ctx, f);
        int n = rs.rank;
        for (std::size_t a1 = 0; a1 < s.torus_size(); a1 += 5)
            for (std::size_t a2 = 0; a2 < s.torus_size(); a2 += 7) {
                Eigen::VectorXd t1(n), t2(n);
                std::size_t x = a1, y = a2;
                for (int i = n - 1; i >= 0; --i) {
                    t1[i] = static_cast<double>(x % static_cast<size_t>(N)) / N;
                    t2[i] = static_cast<double>(y % static_cast<size_t>(N)) / N;
                    x /= static_cast<size_t>(N);
                    y /= static_cast<size_t>(N);
                }
                CAPTURE(a1);
                CAPTURE(a2);
                CHECK(std::abs(s.at(a1, a2) - direct_z(ctx, g, t1, t2)) < 1e-9);
            }
    }
}

TEST_CASE("round trip, Parseval, operators and quasi-periodicity") {
    RootSystem a1 = build_root_system({'A', 1});
    WgzReport r = wgz_roundtrip(a1, 2, 64, 6.0, 4, 3, 1e-8);
    CHECK(r.roundtrip < 1e-10);
    CHECK(r.parseval < 1e-10);
    CHECK(r.s_consistency < 1e-8);
    CHECK(r.t_consistency < 1e-8);
    CHECK(r.quasi_periodicity < 1e-8);
    CHECK(r.passed);

    RootSystem a2 = build_root_system({'A', 2});
    WgzReport q = wgz_roundtrip(a2, 1, 24, 5.5, 2, 5, 1e-6, false);
    CHECK(q.roundtrip < 1e-8);
    CHECK(q.parseval < 1e-8);
}

TEST_CASE("grid constraints and truncation detection") {
    RootSystem a2 = build_root_system({'A', 2});
    CHECK_THROWS_AS(make_wgz_context(a2, 1, 10, 3.0), Error);  // 10 K^{-1} is not integral
    CHECK_THROWS_AS(make_wgz_context(build_root_system({'A', 3}), 1, 8, 2.0), Error);
    RootSystem a1 = build_root_system({'A', 1});
    WgzContext ctx = make_wgz_context(a1, 1, 16, 2.0);
    GridFunction f = make_family(ctx);
    for (auto& v : f.data) v = 1.0;
    try {
        wgz_forward(ctx, f);
        FAIL("flat input accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Truncation);
    }
    WgzContext other = make_wgz_context(a1, 1, 32, 2.0);
    CHECK_THROWS_AS(wgz_forward(other, f), Error);
    // the sampled t2-torus folds the box onto itself
    try {
        make_wgz_context(a2, 1, 12, 5.5);
        FAIL("aliasing grid accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Truncation);
    }
    CHECK_NOTHROW(make_wgz_context(a2, 1, 24, 5.5));
}

TEST_CASE("Weyl action on families is an involution for A1") {
    RootSystem a1 = build_root_system({'A', 1});
    WgzContext ctx = make_wgz_context(a1, 2, 16, 4.0);
    GridFunction f = random_family(ctx, 9);
    const IntMat& s = a1.simple_reflections[0];
    GridFunction g = weyl_apply(ctx, s, weyl_apply(ctx, s, f));
    CHECK(sup_diff(f, g) < 1e-15);
}

}

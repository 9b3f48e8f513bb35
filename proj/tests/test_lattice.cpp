#include "doctest.h"

#include "csmcg/error.hpp"
#include "csmcg/lattice.hpp"

#include <random>
#include <set>

using namespace csmcg;

namespace {

// every class K^{-1} y mod 1 with y in [0, d)^n, d = det K; period d in each coordinate
std::size_t brute_force_order(const RootSystem& rs, std::int64_t k) {
    RatMat kg = rs.gram1 * Rational(k);
    RatMat kinv = kg.inverse();
    std::int64_t d = kg.det().numerator();
    int n = rs.rank;
    std::set<RatVec> seen;
    IntVec y(n, 0);
    for (;;) {
        seen.insert(reduce_mod_one(kinv * to_rat(y)));
        int i = n - 1;
        while (i >= 0 && ++y[i] >= d) y[i--] = 0;
        if (i < 0) break;
    }
    return seen.size();
}

std::size_t count_orbits(const QuotientGroup& z, const WeylGroup& w) {
    auto act = weyl_action(z, w);
    std::vector<bool> done(z.order(), false);
    std::size_t orbits = 0;
    for (std::size_t c = 0; c < z.order(); ++c) {
        if (done[c]) continue;
        ++orbits;
        for (const auto& p : act) done[p[c]] = true;
    }
    return orbits;
}

std::size_t count_free_orbits(const QuotientGroup& z, const WeylGroup& w) {
    auto act = weyl_action(z, w);
    std::vector<bool> done(z.order(), false);
    std::size_t free = 0;
    for (std::size_t c = 0; c < z.order(); ++c) {
        if (done[c]) continue;
        std::set<std::size_t> orbit;
        for (const auto& p : act) orbit.insert(p[c]);
        for (auto o : orbit) done[o] = true;
        if (orbit.size() == w.order()) ++free;
    }
    return free;
}

}  // namespace

TEST_SUITE("lattice") {

TEST_CASE("quotient order is k^n det(gram1)") {
    for (LieType t : {LieType{'A', 1}, LieType{'A', 2}, LieType{'A', 3}, LieType{'B', 2}, LieType{'B', 3},
                      LieType{'C', 3}, LieType{'D', 4}, LieType{'G', 2}, LieType{'F', 4}}) {
        RootSystem rs = build_root_system(t);
        for (std::int64_t k = 1; k <= 8; ++k) {
            std::int64_t want = rs.gram1.det().numerator();
            for (int i = 0; i < rs.rank; ++i) want *= k;
            if (static_cast<std::size_t>(want) > kDefaultQuotientCeiling) {
                CHECK_THROWS_AS(quotient_group(rs, k), Error);
                continue;
            }
            CAPTURE(type_name(t));
            CAPTURE(k);
            CHECK(quotient_group(rs, k).order() == static_cast<std::size_t>(want));
        }
    }
}

TEST_CASE("quotient order agrees with brute-force coset enumeration") {
    for (LieType t : {LieType{'A', 1}, LieType{'A', 2}, LieType{'B', 2}, LieType{'G', 2}}) {
        RootSystem rs = build_root_system(t);
        for (std::int64_t k = 1; k <= 3; ++k) CHECK(quotient_group(rs, k).order() == brute_force_order(rs, k));
    }
}

TEST_CASE("A1 is cyclic of order 2k, A2 has order 3k^2") {
    RootSystem a1 = build_root_system({'A', 1}), a2 = build_root_system({'A', 2});
    for (std::int64_t k = 1; k <= 8; ++k) {
        QuotientGroup z = quotient_group(a1, k);
        CHECK(z.order() == static_cast<std::size_t>(2 * k));
        CHECK(z.invariant_factors == IntVec{2 * k});
        CHECK(quotient_group(a2, k).order() == static_cast<std::size_t>(3 * k * k));
    }
    CHECK(quotient_group(a2, 1).invariant_factors == IntVec{3});
    CHECK(quotient_group(a2, 3).invariant_factors == IntVec{3, 9});
}

TEST_CASE("group law on representatives") {
    RootSystem rs = build_root_system({'B', 2});
    QuotientGroup z = quotient_group(rs, 3);
    std::size_t zero = z.index_of(RatVec(2));
    for (std::size_t a = 0; a < z.order(); ++a) {
        CHECK(z.add(a, z.neg(a)) == zero);
        CHECK(z.add(a, zero) == a);
        for (std::size_t b = 0; b < z.order(); b += 3) CHECK(z.add(a, b) == z.add(b, a));
    }
    CHECK(std::is_sorted(z.reps.begin(), z.reps.end(), lex_less));
    CHECK_THROWS_AS(z.index_of(RatVec{Rational(1, 7), Rational(0)}), Error);
}

TEST_CASE("Smith normal form") {
    RootSystem rs = build_root_system({'A', 2});
    IntMat kg{2, {6, -3, -3, 6}};
    SmithForm f = smith_normal_form(kg);
    IntMat d = f.u * kg * f.v;
    CHECK(d(0, 1) == 0);
    CHECK(d(1, 0) == 0);
    CHECK(d(0, 0) == f.d[0]);
    CHECK(d(1, 1) == f.d[1]);
    CHECK(f.d[1] % f.d[0] == 0);
    CHECK(f.d[0] * f.d[1] == 27);
    CHECK(std::abs(f.u.to_rat().det().numerator()) == 1);
    CHECK(std::abs(f.v.to_rat().det().numerator()) == 1);
    (void)rs;
}

TEST_CASE("A1 alcove counts") {
    RootSystem rs = build_root_system({'A', 1});
    WeylGroup w = generate_weyl_group(rs);
    for (std::int64_t k = 1; k <= 12; ++k) {
        QuotientGroup z = quotient_group(rs, k);
        AlcoveSet a = alcove_points(rs, k, z, w);
        CHECK(a.closed_points.size() == static_cast<std::size_t>(k + 1));
        CHECK(a.open_points.size() == static_cast<std::size_t>(k - 1));
    }
}

TEST_CASE("alcove points are the W-orbits of Z_k, interior points the free orbits") {
    for (LieType t : {LieType{'A', 2}, LieType{'B', 2}, LieType{'G', 2}, LieType{'A', 3}}) {
        RootSystem rs = build_root_system(t);
        WeylGroup w = generate_weyl_group(rs);
        for (std::int64_t k = 1; k <= 4; ++k) {
            CAPTURE(type_name(t));
            CAPTURE(k);
            QuotientGroup z = quotient_group(rs, k);
            AlcoveSet a = alcove_points(rs, k, z, w);
            CHECK(a.closed_points.size() == count_orbits(z, w));
            CHECK(a.open_points.size() == count_free_orbits(z, w));
            std::size_t total = 0;
            for (const auto& p : a.closed_points) {
                total += p.orbit_size;
                CHECK(p.orbit_size * p.stabilizer == w.order());
                CHECK(p.interior == (p.stabilizer == 1));
            }
            CHECK(total == z.order());
        }
    }
    RootSystem a2 = build_root_system({'A', 2});
    WeylGroup w2 = generate_weyl_group(a2);
    for (std::int64_t k = 1; k <= 5; ++k) {
        AlcoveSet a = alcove_points(a2, k, quotient_group(a2, k), w2);
        CHECK(a.closed_points.size() == static_cast<std::size_t>((k + 1) * (k + 2) / 2));
        CHECK(a.open_points.size() == static_cast<std::size_t>((k - 1) * (k - 2) / 2));
    }
}

TEST_CASE("folding lands in the alcove with a consistent affine Weyl element") {
    std::mt19937_64 rng(11);
    for (LieType t : {LieType{'A', 2}, LieType{'B', 2}, LieType{'G', 2}}) {
        RootSystem rs = build_root_system(t);
        std::int64_t k = 3;
        RatMat kinv = (rs.gram1 * Rational(k)).inverse();
        WeylGroup w = generate_weyl_group(rs);
        std::uniform_int_distribution<int> pick(-15, 15);
        for (int trial = 0; trial < 40; ++trial) {
            IntVec y(rs.rank);
            for (auto& v : y) v = pick(rng);
            RatVec g = kinv * to_rat(y);
            FoldResult f = fold_to_alcove(rs, k, g);
            RatVec lab = rs.gram1 * Rational(k) * f.rep;
            Rational top = 0;
            for (int i = 0; i < rs.rank; ++i) {
                CHECK(lab[i] >= 0);
                top += lab[i] * rs.highest_root_coroot[i];
            }
            CHECK(top <= k);
            CHECK(is_integral(f.translation));
            RatVec img = add(f.w.apply(g), f.translation);
            CHECK(img == f.rep);
            CHECK(f.w.to_rat().det() == Rational(f.sign));
        }
        CHECK_THROWS_AS(fold_to_alcove(rs, k, RatVec(rs.rank, Rational(1, 97))), Error);
        (void)w;
    }
}

TEST_CASE("|W|^2 Vol(A)^2 = det gram1") {
    for (LieType t : {LieType{'A', 1}, LieType{'A', 2}, LieType{'A', 3}, LieType{'B', 2}, LieType{'B', 3},
                      LieType{'C', 3}, LieType{'G', 2}, LieType{'D', 4}}) {
        RootSystem rs = build_root_system(t);
        auto w = static_cast<std::int64_t>(classical_weyl_order(t));
        CHECK(alcove_volume_sq(rs) * Rational(w * w) == rs.gram1.det());
    }
}

TEST_CASE("scaled dual lattice membership") {
    RootSystem rs = build_root_system({'A', 1});
    CHECK(in_scaled_dual(rs, 2, {Rational(1, 4)}));
    CHECK_FALSE(in_scaled_dual(rs, 2, {Rational(1, 3)}));
    CHECK(scaled_dual_lattice(rs, 2).covolume_sq * coroot_lattice(rs, 2).covolume_sq == Rational(1));
    CHECK_THROWS_AS(quotient_group(rs, 0), Error);
}

}

#include "doctest.h"

#include "csmcg/error.hpp"
#include "csmcg/rootsys.hpp"

#include <numbers>
#include <set>

using namespace csmcg;

namespace {

// textbook tables, kept apart from the closure code
int positive_count(const LieType& t) {
    int n = t.rank;
    switch (t.family) {
        case 'A': return n * (n + 1) / 2;
        case 'B':
        case 'C': return n * n;
        case 'D': return n * (n - 1);
        case 'E': return n == 6 ? 36 : n == 7 ? 63 : 120;
        case 'F': return 24;
        case 'G': return 6;
    }
    return -1;
}

int dual_coxeter(const LieType& t) {
    int n = t.rank;
    switch (t.family) {
        case 'A': return n + 1;
        case 'B': return 2 * n - 1;
        case 'C': return n + 1;
        case 'D': return 2 * n - 2;
        case 'E': return n == 6 ? 12 : n == 7 ? 18 : 30;
        case 'F': return 9;
        case 'G': return 4;
    }
    return -1;
}

const std::vector<LieType> kSmall = {{'A', 1}, {'A', 2}, {'A', 3}, {'A', 4}, {'B', 2}, {'B', 3}, {'B', 4},
                                     {'C', 3}, {'C', 4}, {'D', 4}, {'D', 5}, {'F', 4}, {'G', 2}, {'E', 6}};

}  // namespace

TEST_SUITE("rootsys") {

TEST_CASE("rationals") {
    CHECK(to_string(parse_rational("-6/4")) == "-3/2");
    CHECK(to_string(parse_rational("5")) == "5");
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
    CHECK_THROWS_AS(parse_rational("x"), Error);
    CHECK(frac(Rational(-1, 3)) == Rational(2, 3));
    CHECK(floor_div(Rational(-7, 2)) == -4);
    CHECK(unit_phase(Rational(5, 4)) == std::complex<double>(0, 1));
    CHECK(unit_phase(Rational(-1, 2)) == std::complex<double>(-1, 0));
    CHECK(std::abs(unit_phase(Rational(1, 3)) - std::polar(1.0, 2 * std::numbers::pi / 3)) < 1e-15);
    RatMat m(2, 2);
    m(0, 0) = 2; m(0, 1) = -1; m(1, 0) = -1; m(1, 1) = 2;
    CHECK(m.det() == Rational(3));
    CHECK(m * m.inverse() == RatMat::identity(2));
}

TEST_CASE("positive root counts and dual Coxeter numbers match the tables") {
    for (const auto& t : kSmall) {
        CAPTURE(type_name(t));
        RootSystem rs = build_root_system(t);
        CHECK(rs.num_positive == positive_count(t));
        CHECK(rs.dual_coxeter == dual_coxeter(t));
        CHECK(rs.simply_laced == (t.family == 'A' || t.family == 'D' || t.family == 'E'));
    }
}

TEST_CASE("E7 and E8 build without enumerating W") {
    CHECK(build_root_system({'E', 7}).num_positive == 63);
    RootSystem e8 = build_root_system({'E', 8});
    CHECK(e8.num_positive == 120);
    CHECK(e8.gram1.det() == Rational(1));
    CHECK_THROWS_AS(generate_weyl_group(e8), Error);
    try {
        generate_weyl_group(e8);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Resource);
    }
}

TEST_CASE("gram1 is an even integral symmetric form") {
    for (const auto& t : kSmall) {
        RootSystem rs = build_root_system(t);
        CHECK(rs.gram1.is_integral());
        CHECK(rs.gram1 == rs.gram1.transpose());
        for (int i = 0; i < rs.rank; ++i) CHECK(rs.gram1(i, i).numerator() % 2 == 0);
        CHECK(rs.gram1.det() > 0);
    }
    // simply laced: gram1 is the Cartan matrix, det = |center|
    CHECK(build_root_system({'A', 4}).gram1.det() == Rational(5));
    CHECK(build_root_system({'D', 5}).gram1.det() == Rational(4));
    CHECK(build_root_system({'E', 6}).gram1.det() == Rational(3));
}

TEST_CASE("Weyl group order, isometry and parity") {
    for (const auto& t : kSmall) {
        CAPTURE(type_name(t));
        RootSystem rs = build_root_system(t);
        WeylGroup w = generate_weyl_group(rs);
        CHECK(w.order() == classical_weyl_order(t));
        std::set<std::vector<std::int64_t>> distinct;
        std::size_t odd = 0;
        for (const auto& e : w.elements) {
            distinct.insert(e.matrix.a);
            CHECK(e.det == ((e.length % 2) ? -1 : 1));
            if (e.det < 0) ++odd;
            RatMat m = e.matrix.to_rat();
            CHECK(m.transpose() * rs.gram1 * m == rs.gram1);
            CHECK(m.det() == Rational(e.det));
        }
        CHECK(distinct.size() == w.order());
        CHECK(2 * odd == w.order());
    }
}

TEST_CASE("simple reflections are involutions fixing the orthogonal complement") {
    RootSystem rs = build_root_system({'B', 3});
    for (int i = 0; i < rs.rank; ++i) {
        const IntMat& s = rs.simple_reflections[i];
        CHECK(s * s == IntMat::identity(rs.rank));
        RatVec a = s.apply(rs.simple_roots[i]);
        for (int j = 0; j < rs.rank; ++j) CHECK(a[j] == -rs.simple_roots[i][j]);
    }
}

TEST_CASE("rho pairs to one with every simple coroot") {
    for (const auto& t : kSmall) {
        RootSystem rs = build_root_system(t);
        for (int i = 0; i < rs.rank; ++i) {
            // <rho, alpha_i^vee> = 2 <rho, alpha_i> / |alpha_i|^2
            Rational v = Rational(2) * rs.simple_root_pairing(i, rs.rho) / rs.simple_gram(i, i);
            CHECK(v == Rational(1));
        }
    }
}

TEST_CASE("highest root is long and dominant") {
    for (const auto& t : kSmall) {
        RootSystem rs = build_root_system(t);
        CHECK(rs.root_norm2.back() == Rational(2));
        for (int i = 0; i < rs.rank; ++i) CHECK(rs.simple_root_pairing(i, rs.highest_root_coroot) >= 0);
    }
}

TEST_CASE("A1 data") {
    RootSystem rs = build_root_system({'A', 1});
    CHECK(rs.gram1(0, 0) == Rational(2));
    CHECK(rs.rho[0] == Rational(1, 2));
    CHECK(pairing(rs, rs.rho, rs.rho) == Rational(1, 2));
    CHECK(rs.dual_coxeter == 2);
}

TEST_CASE("invalid types are rejected") {
    for (LieType t : {LieType{'E', 5}, LieType{'A', 0}, LieType{'B', 1}, LieType{'C', 2}, LieType{'D', 3},
                      LieType{'F', 3}, LieType{'G', 3}, LieType{'X', 2}}) {
        CAPTURE(t.family);
        try {
            build_root_system(t);
            FAIL("accepted an invalid type");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::InvalidArgument);
        }
    }
}

}

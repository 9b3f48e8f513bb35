#include "doctest.h"

#include "csmcg/error.hpp"
#include "csmcg/finrep.hpp"

#include <numbers>

using namespace csmcg;

namespace {

struct Case {
    LieType t;
    int kmax;
};
const std::vector<Case> kSweep = {{{'A', 1}, 8}, {{'A', 2}, 5}, {{'B', 2}, 3}, {{'G', 2}, 3}};

// S and T of a sector as compressions of the full |Z_k| operators onto the (anti)symmetrized vectors
void compressed(const FiniteData& fd, int sector, const PhasePair& ph, CMat& S, CMat& T) {
    auto basis = symmetrized_basis(fd, sector);
    auto d = static_cast<Eigen::Index>(basis.size());
    auto m = static_cast<Eigen::Index>(fd.z.order());
    CMat B(m, d);
    for (Eigen::Index i = 0; i < d; ++i) B.col(i) = basis[static_cast<size_t>(i)];
    CMat F = finite_fourier(fd.rs, fd.z);
    CVec g = finite_gauss(fd.rs, fd.z);
    S = B.adjoint() * (F.adjoint() / ph.j) * B;
    T = B.adjoint() * (g.asDiagonal().toDenseMatrix() / ph.omega) * B;
}

}  // namespace

TEST_SUITE("finrep") {

TEST_CASE("phase constants") {
    RootSystem a1 = build_root_system({'A', 1});
    PhasePair p = phase_constants(a1);
    CHECK(std::abs(p.j - cd(0, -1)) < 1e-15);
    CHECK(std::abs(p.omega - std::polar(1.0, std::numbers::pi / 4)) < 1e-15);
    for (LieType t : {LieType{'A', 2}, LieType{'B', 3}, LieType{'G', 2}, LieType{'E', 8}, LieType{'F', 4}}) {
        PhasePair q = phase_constants(build_root_system(t));
        CHECK(q.constraint_residual < 1e-12);
    }
}

TEST_CASE("finite Fourier transform and Gauss multiplier") {
    RootSystem rs = build_root_system({'A', 2});
    QuotientGroup z = quotient_group(rs, 2);
    CMat F = finite_fourier(rs, z);
    auto m = static_cast<Eigen::Index>(z.order());
    CHECK(max_abs(F.adjoint() * F - CMat::Identity(m, m)) < 1e-12);
    CHECK(max_abs(F - F.transpose()) < 1e-15);
    // F^2 is gamma -> -gamma
    CMat F2 = F * F;
    for (Eigen::Index a = 0; a < m; ++a)
        CHECK(std::abs(F2(a, static_cast<Eigen::Index>(z.neg(static_cast<size_t>(a)))) - 1.0) < 1e-12);
    CVec g = finite_gauss(rs, z);
    for (Eigen::Index a = 0; a < m; ++a) CHECK(std::abs(std::abs(g[a]) - 1.0) < 1e-15);
}

TEST_CASE("symmetrized bases are orthonormal") {
    RootSystem rs = build_root_system({'B', 2});
    FiniteData fd = finite_data(rs, 3);
    for (int sector : {0, 1}) {
        auto b = symmetrized_basis(fd, sector);
        for (size_t i = 0; i < b.size(); ++i)
            for (size_t j = 0; j < b.size(); ++j)
                CHECK(std::abs(b[i].dot(b[j]) - (i == j ? 1.0 : 0.0)) < 1e-12);
    }
}

TEST_CASE("relations hold in both sectors under the default convention") {
    for (const auto& c : kSweep) {
        RootSystem rs = build_root_system(c.t);
        PhasePair ph = phase_constants(rs);
        for (int k = 1; k <= c.kmax; ++k) {
            FiniteData fd = finite_data(rs, k);
            for (int sector : {0, 1}) {
                CAPTURE(type_name(c.t));
                CAPTURE(k);
                CAPTURE(sector);
                SectorMatrices m = rep_matrices(fd, sector, ph);
                Sl2zReport r = verify_sl2z(m, 1e-10);
                CHECK(r.passed);
                CHECK(r.max_residual() < 1e-10);
                CHECK(max_abs(m.S - m.S.transpose()) == 0.0);
            }
        }
    }
}

TEST_CASE("Weyl-sum matrices equal the compressed full operators") {
    for (const auto& c : kSweep) {
        RootSystem rs = build_root_system(c.t);
        PhasePair ph = phase_constants(rs);
        for (int k = 1; k <= std::min(c.kmax, 3); ++k) {
            FiniteData fd = finite_data(rs, k);
            for (int sector : {0, 1}) {
                SectorMatrices m = rep_matrices(fd, sector, ph);
                CMat S, T;
                compressed(fd, sector, ph, S, T);
                CAPTURE(type_name(c.t));
                CAPTURE(k);
                CAPTURE(sector);
                CHECK(max_abs(m.S - S) < 1e-12);
                CHECK(max_abs(m.T - T) < 1e-12);
            }
        }
    }
}

TEST_CASE("A1 small levels") {
    RootSystem rs = build_root_system({'A', 1});
    PhasePair ph = phase_constants(rs);
    SectorMatrices a = rep_matrices(finite_data(rs, 2), 1, ph);
    CHECK(a.S.rows() == 1);
    CHECK(verify_sl2z(a, 1e-12).passed);
    SectorMatrices b = rep_matrices(finite_data(rs, 1), 1, ph);
    CHECK(b.S.rows() == 0);
    SectorMatrices c = rep_matrices(finite_data(rs, 1), 0, ph);
    CHECK(c.S.rows() == 2);
    CHECK_THROWS_AS(rep_matrices(finite_data(rs, 1), 2, ph), Error);
}

TEST_CASE("flipped conventions break the relations somewhere") {
    double det_flip = 0, t_flip = 0, s_flip = 0;
    for (const auto& c : kSweep) {
        RootSystem rs = build_root_system(c.t);
        PhasePair ph = phase_constants(rs);
        for (int k = 1; k <= c.kmax; ++k) {
            FiniteData fd = finite_data(rs, k);
            for (int sector : {0, 1}) {
                det_flip = std::max(det_flip, verify_sl2z(rep_matrices(fd, sector, ph, parse_convention("theorem")), 1).max_residual());
                t_flip = std::max(t_flip, verify_sl2z(rep_matrices(fd, sector, ph, parse_convention("lemma", "minus")), 1).max_residual());
                s_flip = std::max(s_flip, verify_sl2z(rep_matrices(fd, sector, ph, parse_convention("lemma", "plus", "direct")), 1).max_residual());
            }
        }
    }
    CHECK(det_flip >= 1e-2);
    CHECK(t_flip >= 1e-2);
    CHECK(s_flip >= 1e-2);
}

TEST_CASE("convention parsing") {
    Convention c = parse_convention("theorem", "minus", "direct");
    CHECK(to_string(c) == "theorem/t-minus/s-direct");
    CHECK_THROWS_AS(parse_convention("neither"), Error);
    CHECK_THROWS_AS(parse_convention("lemma", "up"), Error);
}

}

#include "doctest.h"

#include "csmcg/compactcheck.hpp"
#include "csmcg/error.hpp"

#include <numbers>

using namespace csmcg;

TEST_SUITE("compactcheck") {

TEST_CASE("SU(2) closed form") {
    CompactModularData d = su2_modular_data(1);
    REQUIRE(d.S.rows() == 2);
    double s = std::sqrt(2.0 / 3.0) * std::sin(std::numbers::pi / 3);
    CHECK(std::abs(d.S(0, 0) - s) < 1e-15);
    CHECK(std::abs(d.S(0, 1) - s) < 1e-15);
    CHECK(std::abs(d.S(1, 1) + s) < 1e-15);
    for (std::int64_t k = 1; k <= 8; ++k) {
        CompactModularData e = su2_modular_data(k);
        auto m = e.S.rows();
        CHECK(verify_sl2z(e.S, e.T, 1e-12).passed);
        CHECK(max_abs(e.S * e.S - CMat::Identity(m, m)) < 1e-12);
    }
    CHECK_THROWS_AS(su2_modular_data(0), Error);
}

TEST_CASE("Kac-Peterson sum: A1 agrees with SU(2) up to a global phase") {
    RootSystem rs = build_root_system({'A', 1});
    for (std::int64_t k = 1; k <= 6; ++k) {
        CompactModularData a = kac_peterson_sum(rs, k), b = su2_modular_data(k);
        REQUIRE(a.S.rows() == b.S.rows());
        CHECK(a.labels == b.labels);
        cd ph = a.S(0, 0) / b.S(0, 0);
        CHECK(std::abs(std::abs(ph) - 1.0) < 1e-12);
        CHECK(max_abs(a.S - ph * b.S) < 1e-12);
        CHECK(max_abs(a.T - b.T) < 1e-12);
    }
}

TEST_CASE("Kac-Peterson sum: A2 relations and positive quantum dimensions") {
    RootSystem rs = build_root_system({'A', 2});
    for (std::int64_t k = 1; k <= 3; ++k) {
        CompactModularData d = kac_peterson_sum(rs, k);
        CHECK(d.S.rows() == (k + 1) * (k + 2) / 2);
        CHECK(verify_sl2z(d.S, d.T, 1e-10).passed);
        // identity row, after removing the overall phase
        cd ph = d.S(0, 0) / std::abs(d.S(0, 0));
        for (Eigen::Index b = 0; b < d.S.cols(); ++b) {
            cd v = d.S(0, b) / ph;
            CHECK(v.real() > 0);
            CHECK(std::abs(v.imag()) < 1e-12);
        }
    }
    CHECK_THROWS_AS(kac_peterson_sum(build_root_system({'B', 2}), 1), Error);
}

TEST_CASE("shifted sector 1 matches the compact data") {
    RootSystem a1 = build_root_system({'A', 1});
    for (std::int64_t k = 1; k <= 6; ++k) {
        CompactReport r = compare_shifted(a1, k, phase_constants(a1), {}, 1e-10);
        CAPTURE(k);
        CHECK(r.passed);
        CHECK(r.dimension == k + 1);
        CHECK(r.shifted_level == k + 2);
        REQUIRE(r.comparisons.size() == 2);
        for (const auto& c : r.comparisons) {
            CHECK(c.t_residual < 1e-10);
            CHECK(c.t_phase_distance < 1e-10);
            CHECK(c.s_residual < 1e-10);
            CHECK(c.s_phase_root_distance < 1e-10);
        }
    }
    RootSystem a2 = build_root_system({'A', 2});
    for (std::int64_t k = 1; k <= 3; ++k) {
        CompactReport r = compare_shifted(a2, k, phase_constants(a2), {}, 1e-10);
        CAPTURE(k);
        CHECK(r.passed);
        CHECK(r.comparisons.front().labels_coincide);
    }
}

TEST_CASE("compact comparison detects flipped conventions") {
    RootSystem a1 = build_root_system({'A', 1});
    PhasePair ph = phase_constants(a1);
    CompactReport det = compare_shifted(a1, 2, ph, parse_convention("theorem"), 1e-10);
    CompactReport tm = compare_shifted(a1, 2, ph, parse_convention("lemma", "minus"), 1e-10);
    CHECK_FALSE(det.passed);
    CHECK_FALSE(tm.passed);
    CHECK(tm.comparisons.front().t_residual > 1e-2);
}

TEST_CASE("non simply laced input is unsupported") {
    RootSystem g2 = build_root_system({'G', 2});
    try {
        compare_shifted(g2, 1, phase_constants(g2), {}, 1e-10);
        FAIL("accepted G2");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Unsupported);
    }
}

}

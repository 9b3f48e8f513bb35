#include "doctest.h"

#include "csmcg/error.hpp"
#include "csmcg/grid.hpp"

#include <algorithm>
#include <numbers>
#include <string>

using namespace csmcg;

TEST_SUITE("grid") {

TEST_CASE("base64 known vectors") {
    auto enc = [](const std::string& s) { return base64_encode(std::vector<unsigned char>(s.begin(), s.end())); };
    CHECK(enc("") == "");
    CHECK(enc("f") == "Zg==");
    CHECK(enc("fo") == "Zm8=");
    CHECK(enc("foo") == "Zm9v");
    CHECK(enc("foobar") == "Zm9vYmFy");
    auto dec = base64_decode("Zm9vYmE=");
    CHECK(std::string(dec.begin(), dec.end()) == "fooba");
    CHECK_THROWS_AS(base64_decode("Zm9v!"), Error);
}

TEST_CASE("flat and index are inverse, out-of-box maps to size") {
    GridSpec g = orthonormal_grid(2, 0.5, 2.0);
    CHECK(g.axis_points() == 9);
    CHECK(g.size() == 81);
    for (std::size_t p = 0; p < g.size(); ++p) CHECK(g.flat(g.index(p)) == p);
    CHECK(g.flat({5, 0}) == g.size());
    CHECK(g.is_boundary(g.flat({4, 0})));
    CHECK_FALSE(g.is_boundary(g.flat({3, -3})));
    CHECK(g.axis_aligned());
    CHECK(g.cell_volume() == doctest::Approx(0.25));
}

TEST_CASE("JSON round trip is exact in both encodings") {
    GridSpec g = orthonormal_grid(1, 0.1, 1.0);
    GridFunction f(g, 2);
    f.component_labels = {"a", "b"};
    for (std::size_t i = 0; i < f.data.size(); ++i) f.data[i] = {0.1 * static_cast<double>(i), 1.0 / (1.0 + static_cast<double>(i))};
    for (GridEncoding e : {GridEncoding::Base64, GridEncoding::Inline}) {
        GridFunction h = grid_from_json(grid_to_json(f, e));
        CHECK(h.components == 2);
        CHECK(h.component_labels == f.component_labels);
        CHECK(h.grid.half_extent == g.half_extent);
        CHECK(h.data == f.data);
    }
    CHECK_THROWS_AS(grid_from_json("{\"format\":\"other\"}"), Error);
    CHECK_THROWS_AS(grid_from_json("not json"), Error);
}

TEST_CASE("CSV export has one row per sample") {
    GridSpec g = orthonormal_grid(1, 0.5, 1.0);
    GridFunction f(g, 1);
    std::string csv = grid_to_csv(f);
    CHECK(csv.rfind("component,j0,u0,re,im\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + static_cast<long>(g.size()));
}

TEST_CASE("inner product and sup norms") {
    GridSpec g = orthonormal_grid(1, 0.01, 6.0);
    GridFunction f(g, 1);
    for (std::size_t p = 0; p < g.size(); ++p) f.at(0, p) = std::exp(-std::numbers::pi * g.point(p).squaredNorm());
    // integral of e^{-2 pi x^2} = 1/sqrt 2
    CHECK(inner(f, f).real() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(f.sup() == doctest::Approx(1.0));
    CHECK(f.decays(1e-40));
}

}

#include "doctest.h"

#include "csmcg/csmcg.h"

#include "json.hpp"

#include <cmath>
#include <complex>
#include <cstring>
#include <string>
#include <vector>

using nlohmann::json;

namespace {

// owns a char* returned by the library
struct Str {
    char* p = nullptr;
    ~Str() { csmcg_string_free(p); }
    json parse() const { return json::parse(p); }
};

struct Roots {
    csmcg_root_system* h = nullptr;
    Roots(char f, int n) { REQUIRE(csmcg_root_system_create(f, n, &h) == CSMCG_OK); }
    ~Roots() { csmcg_root_system_destroy(h); }
};

}  // namespace

TEST_SUITE("capi") {

TEST_CASE("version, status names and defaults") {
    CHECK(std::strlen(csmcg_version()) > 0);
    CHECK(std::string(csmcg_status_name(CSMCG_OK)) == "ok");
    CHECK(std::string(csmcg_status_name(CSMCG_TRUNCATION)) == "truncation");
    csmcg_convention c = csmcg_default_convention();
    CHECK(c.det == CSMCG_DET_LEMMA);
    CHECK(c.t_phase == CSMCG_T_PLUS);
    CHECK(c.s_exponent == CSMCG_S_INVERSE);
}

TEST_CASE("invalid input maps to status codes with a message") {
    csmcg_root_system* h = reinterpret_cast<csmcg_root_system*>(0x1);
    CHECK(csmcg_root_system_create('E', 5, &h) == CSMCG_INVALID_ARGUMENT);
    CHECK(h == nullptr);
    CHECK(std::string(csmcg_last_error()).find("E5") != std::string::npos);
    CHECK(csmcg_root_system_create('A', 1, nullptr) == CSMCG_INVALID_ARGUMENT);

    Str s;
    CHECK(csmcg_root_system_info(nullptr, &s.p) == CSMCG_INVALID_ARGUMENT);
    CHECK(csmcg_root_system_rank(nullptr) == 0);
    CHECK(csmcg_sector_rep_dimension(nullptr) == 0);
    csmcg_root_system_destroy(nullptr);
    csmcg_sector_rep_destroy(nullptr);

    Roots a1('A', 1);
    csmcg_sector_rep* rep = nullptr;
    CHECK(csmcg_sector_rep_build(a1.h, 0, 0, csmcg_default_convention(), &rep) == CSMCG_INVALID_ARGUMENT);
    CHECK(csmcg_sector_rep_build(a1.h, 2, 3, csmcg_default_convention(), &rep) == CSMCG_INVALID_ARGUMENT);
    CHECK(rep == nullptr);

    Str p;
    CHECK(csmcg_kernel_params(2, 0.0, 3, &p.p) == CSMCG_INVALID_ARGUMENT);
    Str v;
    CHECK(csmcg_rep_verify_json("{not json", 1e-10, &v.p, nullptr) == CSMCG_INVALID_ARGUMENT);

    Roots g2('G', 2);
    Str c;
    CHECK(csmcg_compare_compact(g2.h, 1, csmcg_default_convention(), 1e-10, &c.p, nullptr) == CSMCG_UNSUPPORTED);

    Str w;
    CHECK(csmcg_wgz_roundtrip(a1.h, 1, 16, 1.0, 1, 1, 1e-6, 0, &w.p, nullptr) == CSMCG_TRUNCATION);
    CHECK(std::strlen(csmcg_last_error()) > 0);
}

TEST_CASE("root system and lattice documents") {
    Roots a2('A', 2);
    CHECK(csmcg_root_system_rank(a2.h) == 2);
    Str info;
    REQUIRE(csmcg_root_system_info(a2.h, &info.p) == CSMCG_OK);
    json j = info.parse();
    CHECK(j["positive_root_count"] == 3);
    CHECK(j["dual_coxeter"] == 3);
    CHECK(j["gram1"][0][1] == "-1");

    Str lat;
    REQUIRE(csmcg_lattice_enumerate(a2.h, 2, &lat.p) == CSMCG_OK);
    json l = lat.parse();
    CHECK(l["order"] == 12);
    CHECK(l["alcove"]["closed"].size() == 6);
    CHECK(l["alcove"]["open"].size() == 0);
}

TEST_CASE("sector rep: matrices, JSON round trip and re-verification") {
    Roots a1('A', 1);
    csmcg_sector_rep* rep = nullptr;
    REQUIRE(csmcg_sector_rep_build(a1.h, 3, 1, csmcg_default_convention(), &rep) == CSMCG_OK);
    size_t d = csmcg_sector_rep_dimension(rep);
    CHECK(d == 2);
    std::vector<double> S(2 * d * d), T(2 * d * d);
    REQUIRE(csmcg_sector_rep_matrices(rep, S.data(), T.data()) == CSMCG_OK);

    Str doc;
    int passed = 0;
    REQUIRE(csmcg_sector_rep_json(rep, 1e-10, &doc.p, &passed) == CSMCG_OK);
    CHECK(passed == 1);
    json j = doc.parse();
    CHECK(j["dimension"] == 2);
    for (size_t a = 0; a < d; ++a)
        for (size_t b = 0; b < d; ++b) {
            CHECK(j["S"][a][b][0].get<double>() == S[2 * (a * d + b)]);
            CHECK(j["S"][a][b][1].get<double>() == S[2 * (a * d + b) + 1]);
        }

    Str again;
    passed = 0;
    REQUIRE(csmcg_rep_verify_json(doc.p, 1e-10, &again.p, &passed) == CSMCG_OK);
    CHECK(passed == 1);
    CHECK(again.parse()["st3"].get<double>() < 1e-10);

    // a corrupted T must fail re-verification
    j["T"][0][0][0] = -j["T"][0][0][0].get<double>();
    j["T"][0][0][1] = -j["T"][0][0][1].get<double>();
    Str bad;
    REQUIRE(csmcg_rep_verify_json(j.dump().c_str(), 1e-10, &bad.p, &passed) == CSMCG_OK);
    CHECK(passed == 0);

    Str csv;
    REQUIRE(csmcg_sector_rep_csv(rep, 'T', &csv.p) == CSMCG_OK);
    CHECK(std::string(csv.p).rfind("row,col,re,im\n", 0) == 0);
    CHECK(csmcg_sector_rep_csv(rep, 'X', &csv.p) == CSMCG_INVALID_ARGUMENT);
    csmcg_sector_rep_destroy(rep);
}

TEST_CASE("outputs are deterministic") {
    Roots a1('A', 1);
    Str w1, w2;
    REQUIRE(csmcg_wgz_roundtrip(a1.h, 1, 32, 6.0, 2, 7, 1e-6, 1, &w1.p, nullptr) == CSMCG_OK);
    REQUIRE(csmcg_wgz_roundtrip(a1.h, 1, 32, 6.0, 2, 7, 1e-6, 1, &w2.p, nullptr) == CSMCG_OK);
    CHECK(std::string(w1.p) == std::string(w2.p));
    Str c1, c2;
    REQUIRE(csmcg_compare_compact(a1.h, 2, csmcg_default_convention(), 1e-10, &c1.p, nullptr) == CSMCG_OK);
    REQUIRE(csmcg_compare_compact(a1.h, 2, csmcg_default_convention(), 1e-10, &c2.p, nullptr) == CSMCG_OK);
    CHECK(std::string(c1.p) == std::string(c2.p));
}

TEST_CASE("kernel entry points") {
    Str p;
    REQUIRE(csmcg_kernel_params(2, 1.0, 1, &p.p) == CSMCG_OK);
    json params = p.parse();
    CHECK(params.contains("residuals"));

    int64_t l[1] = {2};
    Str grid;
    REQUIRE(csmcg_kernel_hermite(1, l, 0.0, 1.0, 0.05, 6.0, 1, &grid.p) == CSMCG_OK);
    Str heat;
    REQUIRE(csmcg_kernel_heat(2, 0.0, 1, 0, 0, 0, 0, 0, grid.p, &heat.p) == CSMCG_OK);
    json h = heat.parse();
    CHECK(h["provenance"]["method"] == "mehler");

    Str csv;
    REQUIRE(csmcg_grid_to_csv(heat.p, &csv.p) == CSMCG_OK);
    CHECK(std::strlen(csv.p) > 0);

    Roots a1('A', 1);
    Str eta;
    CHECK(csmcg_kernel_eta(a1.h, 2, 1.0, 1, 0, 'S', grid.p, &eta.p) == CSMCG_OK);

    Str rep;
    int passed = 0;
    REQUIRE(csmcg_kernel_verify(2, 1.0, 0.0, 1.0, 8, 0, 8.0, 0.02, 1e-5, 1e-3, &rep.p, &passed) == CSMCG_OK);
    json r = rep.parse();
    CHECK(r["conjugation_S"].get<double>() < 1e-10);
    CHECK(r["curve"].size() == 2);
}

}

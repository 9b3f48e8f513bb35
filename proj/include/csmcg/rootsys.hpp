#pragma once

#include "csmcg/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace csmcg {

struct LieType {
    char family = 'A';
    int rank = 1;
};

void validate(const LieType& t);
std::string type_name(const LieType& t);

// n x n integer matrix acting on coroot-basis coordinates
struct IntMat {
    int n = 0;
    std::vector<std::int64_t> a;

    static IntMat identity(int n);
    std::int64_t operator()(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
    std::int64_t& operator()(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
    IntMat operator*(const IntMat& o) const;
    RatVec apply(const RatVec& v) const;
    IntVec apply(const IntVec& v) const;
    bool operator==(const IntMat& o) const { return a == o.a; }
    RatMat to_rat() const;
};

struct WeylElement {
    IntMat matrix;
    int det = 1;
    int length = 0;  // word length found by the BFS, det = (-1)^length
};

struct WeylGroup {
    std::vector<WeylElement> elements;  // elements[0] is the identity
    std::size_t order() const { return elements.size(); }
};

struct RootSystem {
    LieType type;
    int rank = 0;
    RatMat simple_gram;  // <alpha_i, alpha_j>_1
    RatMat cartan;       // A_ij = <alpha_i^vee, alpha_j>
    RatMat gram1;        // <b_i, b_j>_1, b_i the simple coroots
    std::vector<RatVec> simple_roots;    // coroot coordinates
    std::vector<IntVec> positive_roots;  // simple-root coordinates
    std::vector<RatVec> positive_roots_coroot;
    std::vector<Rational> root_norm2;
    std::vector<RatVec> positive_coroots;  // h_alpha in coroot coordinates
    IntVec highest_root;                   // simple-root coordinates
    RatVec highest_root_coroot;
    RatVec rho;  // coroot coordinates
    int dual_coxeter = 0;
    int num_positive = 0;
    bool simply_laced = true;
    std::vector<IntMat> simple_reflections;

    // <alpha_i, x>_1 for x in coroot coordinates
    Rational simple_root_pairing(int i, const RatVec& x) const;
};

RootSystem build_root_system(const LieType& t);

constexpr std::size_t kDefaultWeylCeiling = 100000;
WeylGroup generate_weyl_group(const RootSystem& rs, std::size_t ceiling = kDefaultWeylCeiling);

// k <v, w>_1 in coroot coordinates
Rational pairing(const RootSystem& rs, const RatVec& v, const RatVec& w, std::int64_t k = 1);

// classical |W| table, used as an oracle in tests and for ceiling checks
std::uint64_t classical_weyl_order(const LieType& t);

}  // namespace csmcg

#pragma once

#include "csmcg/rootsys.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace csmcg {

struct Lattice {
    RatMat basis;         // columns, coroot coordinates
    Rational covolume_sq;  // squared volume of a fundamental cell under <.,.>_k
    std::int64_t level = 1;
};

Lattice coroot_lattice(const RootSystem& rs, std::int64_t k = 1);
Lattice scaled_dual_lattice(const RootSystem& rs, std::int64_t k);
bool in_scaled_dual(const RootSystem& rs, std::int64_t k, const RatVec& v);

struct SmithForm {
    IntMat u, v;  // u * m * v = diag(d)
    IntVec d;
};
SmithForm smith_normal_form(const IntMat& m);

class QuotientGroup {
public:
    std::int64_t level = 1;
    std::vector<RatVec> reps;  // sorted, coordinates in [0,1)
    IntVec invariant_factors;  // elementary divisors > 1

    std::size_t order() const { return reps.size(); }
    // index of v mod Z^n; throws Domain if v is not in the group
    std::size_t index_of(const RatVec& v) const;
    bool contains(const RatVec& v) const;
    std::size_t add(std::size_t a, std::size_t b) const;
    std::size_t neg(std::size_t a) const;

    void build_index();

private:
    std::map<RatVec, std::size_t> index_;
};

constexpr std::size_t kDefaultQuotientCeiling = 200000;
QuotientGroup quotient_group(const RootSystem& rs, std::int64_t k,
                             std::size_t ceiling = kDefaultQuotientCeiling);

// permutation of quotient indices induced by each Weyl element
std::vector<std::vector<std::size_t>> weyl_action(const QuotientGroup& z, const WeylGroup& w);

struct AlcovePoint {
    RatVec coords;           // coroot coordinates
    IntVec labels;           // <gamma, h_i>_k, integers
    std::size_t quotient_index = 0;
    std::size_t stabilizer = 1;  // |Stab_W| of the coset
    std::size_t orbit_size = 1;  // size of the W-orbit in Z_k
    bool interior = false;
};

struct AlcoveSet {
    std::int64_t level = 1;
    std::vector<AlcovePoint> closed_points;  // sorted by quotient index
    std::vector<AlcovePoint> open_points;
};

AlcoveSet alcove_points(const RootSystem& rs, std::int64_t k, const QuotientGroup& z,
                        const WeylGroup& w);

struct FoldResult {
    RatVec rep;
    IntMat w;          // linear part: rep = w(gamma) + translation
    RatVec translation;  // integral
    int sign = 1;
    bool boundary = false;
};

FoldResult fold_to_alcove(const RootSystem& rs, std::int64_t k, const RatVec& gamma);

// exact Vol_1 of the alcove squared, for the |W| Vol(A) identity
Rational alcove_volume_sq(const RootSystem& rs);

}  // namespace csmcg

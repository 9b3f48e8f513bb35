#pragma once

#include "csmcg/finrep.hpp"
#include "csmcg/grid.hpp"

#include <cstdint>
#include <vector>

namespace csmcg {

struct HWParams {
    std::int64_t k = 1;
    double s = 0;
    int branch = 1;  // +1: e^{-2kr} = ib, -1: e^{-2kr} = -ib
    cd t, b, r;
    cd heat_base;    // e^{-2kr}
    cd sigma;        // complex structure, default i b
};

HWParams solve_params(std::int64_t k, double s, int branch = 1);
HWParams with_sigma(HWParams p, cd sigma);
bool sigma_is_ib(const HWParams& p, double tol = 1e-12);

struct ParamResiduals {
    double e4kr = 0;  // |e^{-4kr} + (k - is)/(k + is)|
    double is = 0;    // |is - k(1 - b^2)/(1 + b^2)|
    double e2kr = 0;  // |e^{-2kr} - branch * i b|
};
ParamResiduals check_params(const HWParams& p);

// alpha = pi i (conj(sigma) - sigma) / |sigma|^2 = 2 pi Im(sigma) / |sigma|^2
double mehler_alpha(cd sigma);

// v_l(u, sigma) in an orthonormal frame, unnormalized; three-term recurrence
cd hermite_eval(const IntVec& l, const Eigen::VectorXd& u, cd sigma);
// same function by explicit repeated application of D_{sigma,j} to polynomial coefficients
cd hermite_eval_direct(const IntVec& l, const Eigen::VectorXd& u, cd sigma);
double hermite_norm2(const IntVec& l, cd sigma);
cd hermite_normalized(const IntVec& l, const Eigen::VectorXd& u, cd sigma);

// all l with |l| <= L, graded then lexicographic
std::vector<IntVec> multi_indices(int n, int L);

struct HermiteExpansion {
    int n = 1;
    cd sigma;
    std::vector<IntVec> index;
    CVec coeffs;  // on the normalized basis v_l / |v_l|
};

GridFunction synthesize(const HermiteExpansion& e, const GridSpec& g);
HermiteExpansion project(const GridFunction& f, cd sigma, int L);

inline double laplacian_eigenvalue(std::int64_t k, const IntVec& l) {
    double s = 0;
    for (auto v : l) s += static_cast<double>(v);
    return 2.0 * static_cast<double>(k) * (s + 0.5 * static_cast<double>(l.size()));
}

HermiteExpansion laplacian_apply(const HermiteExpansion& e, std::int64_t k);
// nk - (k/alpha) sum_j D_{sigma,j} D_{conj sigma,j}, spectral derivatives; needs an axis-aligned grid
GridFunction laplacian_apply_grid(const GridFunction& f, std::int64_t k, cd sigma);

// e^{-r Laplacian_sigma} with sigma taken from the expansion
HermiteExpansion heat_apply(const HermiteExpansion& e, const HWParams& p);
// Mehler-kernel quadrature with sigma = p.sigma
GridFunction heat_apply_grid(const GridFunction& f, const HWParams& p);

// Weyl extension of a chamber function to the whole grid, f(w x) = det(w)^sector f(x)
GridFunction chamber_extend(const GridFunction& f, const RootSystem& rs, std::int64_t k, int sector);
GridFunction chamber_restrict(const GridFunction& f, const RootSystem& rs, std::int64_t k);
cd chamber_inner(const GridFunction& f, const GridFunction& g, const RootSystem& rs, std::int64_t k, int sector);

struct EtaKernelSpec {
    int sector = 0;
    char generator = 'S';
    HWParams params;
};

// closed-form kernels at sigma = i b; output restricted to the closed chamber
GridFunction eta_apply(const GridFunction& f, const EtaKernelSpec& spec, const RootSystem& rs);

struct ConjugationCurvePoint {
    int L = 0;
    double conjugation = 0;
    double relation_core = 0;
    double relation_block = 0;
};

struct ConjugationReport {
    std::int64_t k = 1;
    double s = 0;
    cd sigma;
    int L = 0;
    int core = 0;  // relation residuals gated on l, m <= core
    double box_radius = 0;
    double step = 0;
    double conjugation_S = 0;  // route (i) vs route (ii), full (L+1)x(L+1) block
    double conjugation_T = 0;
    double identity_residual = 0;
    double mcg_invariance = 0;  // |Q Lambda Q^{-1} - Lambda| for both generators
    double relation_s4_core = 0, relation_st3_core = 0, unitary_core = 0;
    double relation_s4_block = 0, relation_st3_block = 0, unitary_block = 0;
    std::vector<ConjugationCurvePoint> curve;
    bool curve_monotone = true;
    double tol_conjugation = 0;
    double tol_relations = 0;
    bool passed = false;
};

struct QuadratureSpec {
    double box_radius = 8.0;
    double step = 0.02;
};

ConjugationReport verify_conjugation(std::int64_t k, double s, cd sigma, int L, double tol_conjugation,
                                     double tol_relations, const QuadratureSpec& q = {}, int core = 0);

}  // namespace csmcg

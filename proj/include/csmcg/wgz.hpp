#pragma once

#include "csmcg/finrep.hpp"
#include "csmcg/grid.hpp"

#include <cstdint>
#include <vector>

namespace csmcg {

// e_lambda(A), A = theta1 (+) theta2 in coroot coordinates, lambda = lambda1 (+) lambda2 in Lambda^R
cd multiplier_eval(const RootSystem& rs, std::int64_t k, const RatVec& l1, const RatVec& l2, const RatVec& th1,
                   const RatVec& th2);
cd multiplier_eval(const RootSystem& rs, std::int64_t k, const RatVec& l1, const RatVec& l2,
                   const Eigen::VectorXd& th1, const Eigen::VectorXd& th2);

// Everything the sampled transform needs. Grid points are j/N in coroot coordinates, j in [-J, J]^n.
struct WgzContext {
    RootSystem rs;
    std::int64_t level = 1;
    int resolution = 0;  // N
    QuotientGroup z;
    GridSpec grid;
    IntMat kg;                         // k gram1
    Eigen::MatrixXd chol;              // u = chol * x is orthonormal for <.,.>_k
    std::vector<IntVec> rep_offsets;   // N gamma_c
    std::vector<IntVec> shift_m;       // lambda = (kg)^{-1} m
    std::vector<IntVec> shift_offset;  // N lambda
    double volume = 0;                 // Vol_k(Lambda^R) = sqrt det(kg)
};

WgzContext make_wgz_context(const RootSystem& rs, std::int64_t k, int resolution, double box_radius);

struct SectionSamples {
    int n = 1;
    int resolution = 0;
    std::int64_t level = 1;
    std::vector<cd> data;  // (t1, t2) in [0,N)^n x [0,N)^n, t1 major
    double truncation_estimate = 0;
    std::size_t shifts = 0;

    std::size_t torus_size() const;
    cd& at(std::size_t a1, std::size_t a2) { return data[a1 * torus_size() + a2]; }
    const cd& at(std::size_t a1, std::size_t a2) const { return data[a1 * torus_size() + a2]; }
};

// family f_gamma as a GridFunction with |Z_k| components on ctx.grid
GridFunction make_family(const WgzContext& ctx);

// decay_threshold is relative to sup|f|; negative disables the check
SectionSamples wgz_forward(const WgzContext& ctx, const GridFunction& f, double decay_threshold = 1e-10);
// Z(f) at an arbitrary pair of grid points (t1, t2)/N
cd wgz_evaluate(const WgzContext& ctx, const GridFunction& f, const IntVec& t1, const IntVec& t2);
GridFunction wgz_inverse(const WgzContext& ctx, const SectionSamples& s);

cd section_inner(const WgzContext& ctx, const SectionSamples& a, const SectionSamples& b);

GridFunction apply_finite(const CMat& m, const GridFunction& f);
GridFunction prequantum_S(const WgzContext& ctx, const GridFunction& f);
GridFunction prequantum_T(const WgzContext& ctx, const GridFunction& f);
// S~ psi(t1,t2) = psi(t2,-t1) and T~ psi(t1,t2) = psi(t1,t1+t2) for psi = Z(g)
SectionSamples section_S_tilde(const WgzContext& ctx, const GridFunction& g);
SectionSamples section_T_tilde(const WgzContext& ctx, const GridFunction& g);

// (w f)(theta, gamma) = f(w^{-1} theta, w^{-1} gamma); points leaving the box read as 0
GridFunction weyl_apply(const WgzContext& ctx, const IntMat& w_inverse, const GridFunction& f);

// random Gaussian-times-polynomial families for round-trip suites
GridFunction random_family(const WgzContext& ctx, std::uint64_t seed);

struct WgzReport {
    int samples = 0;
    double roundtrip = 0;         // max relative sup-norm of Z^{-1} Z f - f
    double parseval = 0;          // max relative |<Zf,Zg> - <f,g>|
    double s_consistency = 0;     // (Z F_Z) S^ vs S~ (Z F_Z), relative sup
    double t_consistency = 0;
    double quasi_periodicity = 0;  // relative sup over sampled lattice translations
    double truncation_estimate = 0;
    std::size_t grid_points = 0;
    std::size_t shifts = 0;
    double tol = 0;
    bool passed = false;
};

WgzReport wgz_roundtrip(const RootSystem& rs, std::int64_t k, int resolution, double box_radius, int samples,
                        std::uint64_t seed, double tol, bool operator_checks = true);

}  // namespace csmcg

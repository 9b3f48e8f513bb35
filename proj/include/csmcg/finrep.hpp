#pragma once

#include "csmcg/lattice.hpp"

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <vector>

namespace csmcg {

using cd = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

struct PhasePair {
    cd j;
    cd omega;
    double constraint_residual = 0;  // |omega^3 - i^{n/2} j^{-1}|
};

PhasePair phase_constants(const RootSystem& rs);

enum class DetPlacement { Lemma, Theorem };
enum class TPhase { Plus, Minus };          // e^{+pi i<a,a>} (default) or e^{-pi i<a,a>}
enum class SExponent { Inverse, Direct };   // S'' = j^{-1} F_Z^{-1} (default) or j^{-1} F_Z

struct Convention {
    DetPlacement det = DetPlacement::Lemma;
    TPhase t = TPhase::Plus;
    SExponent s = SExponent::Inverse;
};

std::string to_string(const Convention& c);
Convention parse_convention(const std::string& det, const std::string& t_phase = "plus",
                            const std::string& s_exponent = "inverse");

struct FiniteData {
    RootSystem rs;
    std::int64_t level = 1;
    WeylGroup weyl;
    QuotientGroup z;
    AlcoveSet alcove;
};

FiniteData finite_data(const RootSystem& rs, std::int64_t k);

// unit-norm (anti-)symmetrized vectors in C^{Z_k}; sector 0 indexed by closed points, 1 by open points
std::vector<CVec> symmetrized_basis(const FiniteData& fd, int sector);

CMat finite_fourier(const RootSystem& rs, const QuotientGroup& z);
CVec finite_gauss(const RootSystem& rs, const QuotientGroup& z);

struct SectorMatrices {
    LieType type;
    std::int64_t level = 1;
    int sector = 0;
    Convention convention;
    PhasePair phases;
    std::vector<RatVec> labels;
    CMat S, T;
};

SectorMatrices rep_matrices(const FiniteData& fd, int sector, const PhasePair& phases,
                            const Convention& conv = {});

struct Sl2zReport {
    int dimension = 0;
    double s4 = 0;        // |S^4 - 1|
    double st3 = 0;       // |(ST)^3 - S^2|
    double s_unitary = 0;
    double t_unitary = 0;
    double t_offdiag = 0;
    double tol = 0;
    bool passed = true;
    double max_residual() const;
};

Sl2zReport verify_sl2z(const CMat& S, const CMat& T, double tol);
inline Sl2zReport verify_sl2z(const SectorMatrices& m, double tol) { return verify_sl2z(m.S, m.T, tol); }

double max_abs(const CMat& m);

}  // namespace csmcg

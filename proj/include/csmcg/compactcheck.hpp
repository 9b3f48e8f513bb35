#pragma once

#include "csmcg/finrep.hpp"

#include <string>
#include <vector>

namespace csmcg {

struct CompactModularData {
    std::string source;
    std::int64_t level = 1;
    std::vector<IntVec> labels;  // Dynkin labels of the (unshifted) integrable weights
    CMat S, T;
};

CompactModularData su2_modular_data(std::int64_t k);
// simply laced only, Weyl sum in fundamental-weight coordinates
CompactModularData kac_peterson_sum(const RootSystem& rs, std::int64_t k);

struct OracleComparison {
    std::string oracle;
    int oracle_dimension = 0;
    bool labels_coincide = false;
    cd s_phase;
    double s_phase_root_distance = 0;  // distance of s_phase to the nearest 4th root of unity
    double s_residual = 0;             // max |S_ours - s_phase S_oracle|
    cd t_phase;
    double t_phase_distance = 0;       // |t_phase - 1|
    double t_residual = 0;             // max |T_ours - T_oracle|
    double oracle_relations = 0;       // SL(2,Z) residual of the oracle itself
    bool passed = false;
};

struct CompactReport {
    LieType type;
    std::int64_t k = 1;
    std::int64_t shifted_level = 1;
    Convention convention;
    int dimension = 0;
    std::vector<RatVec> our_labels;       // points of I_{k+h}, coroot coordinates
    std::vector<IntVec> our_dynkin;       // (k+h)<gamma, alpha_i>_1 - 1
    std::vector<OracleComparison> comparisons;
    Sl2zReport our_relations;
    double tol = 0;
    bool passed = false;
};

CompactReport compare_shifted(const RootSystem& rs, std::int64_t k, const PhasePair& phases,
                              const Convention& conv, double tol);

}  // namespace csmcg

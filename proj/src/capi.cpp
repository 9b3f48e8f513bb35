#include "csmcg/csmcg.h"

#include "csmcg/compactcheck.hpp"
#include "csmcg/error.hpp"
#include "csmcg/heatkernel.hpp"
#include "csmcg/wgz.hpp"

#include "json.hpp"

#include <cstring>
#include <new>
#include <sstream>

using nlohmann::json;
using namespace csmcg;

struct csmcg_root_system {
    RootSystem rs;
};

struct csmcg_sector_rep {
    SectorMatrices m;
};

namespace {

thread_local std::string g_last_error;

csmcg_status status_of(ErrorKind k) {
    switch (k) {
        case ErrorKind::InvalidArgument: return CSMCG_INVALID_ARGUMENT;
        case ErrorKind::Domain: return CSMCG_DOMAIN;
        case ErrorKind::Resource: return CSMCG_RESOURCE;
        case ErrorKind::Truncation: return CSMCG_TRUNCATION;
        case ErrorKind::Inconsistent: return CSMCG_INCONSISTENT;
        case ErrorKind::Unsupported: return CSMCG_UNSUPPORTED;
        case ErrorKind::Io: return CSMCG_IO;
    }
    return CSMCG_INTERNAL;
}

template <class F>
csmcg_status guarded(F&& f) {
    try {
        g_last_error.clear();
        f();
        return CSMCG_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return status_of(e.kind());
    } catch (const json::exception& e) {
        g_last_error = std::string("json: ") + e.what();
        return CSMCG_INVALID_ARGUMENT;
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return CSMCG_RESOURCE;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return CSMCG_INTERNAL;
    }
}

void need(const void* p, const char* what) {
    if (!p) fail(ErrorKind::InvalidArgument, std::string("null ") + what);
}

char* dup(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

Convention from_c(csmcg_convention c) {
    Convention out;
    out.det = c.det == CSMCG_DET_THEOREM ? DetPlacement::Theorem : DetPlacement::Lemma;
    out.t = c.t_phase == CSMCG_T_MINUS ? TPhase::Minus : TPhase::Plus;
    out.s = c.s_exponent == CSMCG_S_DIRECT ? SExponent::Direct : SExponent::Inverse;
    return out;
}

json cnum(cd z) { return json::array({z.real(), z.imag()}); }

json rat_vec(const RatVec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(to_string(x));
    return a;
}

json rat_mat(const RatMat& m) {
    json a = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
        a.push_back(row);
    }
    return a;
}

json cmat(const CMat& m) {
    json a = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(cnum(m(i, j)));
        a.push_back(row);
    }
    return a;
}

CMat cmat_from(const json& a) {
    auto n = static_cast<Eigen::Index>(a.size());
    CMat m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& row = a.at(static_cast<size_t>(i));
        if (static_cast<Eigen::Index>(row.size()) != n) fail(ErrorKind::InvalidArgument, "matrix is not square");
        for (Eigen::Index j = 0; j < n; ++j)
            m(i, j) = {row.at(static_cast<size_t>(j)).at(0).get<double>(), row.at(static_cast<size_t>(j)).at(1).get<double>()};
    }
    return m;
}

json sl2z_json(const Sl2zReport& r) {
    return {{"dimension", r.dimension},  {"s4", r.s4},         {"st3", r.st3},
            {"s_unitary", r.s_unitary},  {"t_unitary", r.t_unitary}, {"t_offdiag", r.t_offdiag},
            {"max_residual", r.max_residual()}, {"tol", r.tol}, {"passed", r.passed}};
}

json alcove_json(const std::vector<AlcovePoint>& pts) {
    json a = json::array();
    for (const auto& p : pts)
        a.push_back({{"coords", rat_vec(p.coords)},
                     {"labels", p.labels},
                     {"quotient_index", p.quotient_index},
                     {"stabilizer", p.stabilizer},
                     {"orbit_size", p.orbit_size},
                     {"interior", p.interior}});
    return a;
}

json params_json(const HWParams& p) {
    ParamResiduals r = check_params(p);
    return {{"k", p.k},
            {"s", p.s},
            {"branch", p.branch},
            {"t", cnum(p.t)},
            {"b", cnum(p.b)},
            {"r", cnum(p.r)},
            {"heat_base", cnum(p.heat_base)},
            {"sigma", cnum(p.sigma)},
            {"residuals", {{"e4kr", r.e4kr}, {"is", r.is}, {"e2kr", r.e2kr}}}};
}

std::string grid_with_meta(const GridFunction& f, const json& meta) {
    json j = json::parse(grid_to_json(f));
    j["provenance"] = meta;
    return j.dump();
}

}  // namespace

extern "C" {

const char* csmcg_version(void) { return CSMCG_VERSION_STRING; }

const char* csmcg_last_error(void) { return g_last_error.c_str(); }

void csmcg_string_free(char* s) { std::free(s); }

const char* csmcg_status_name(csmcg_status s) {
    switch (s) {
        case CSMCG_OK: return "ok";
        case CSMCG_INVALID_ARGUMENT: return "invalid_argument";
        case CSMCG_DOMAIN: return "domain";
        case CSMCG_RESOURCE: return "resource";
        case CSMCG_TRUNCATION: return "truncation";
        case CSMCG_INCONSISTENT: return "inconsistent";
        case CSMCG_IO: return "io";
        case CSMCG_UNSUPPORTED: return "unsupported";
        case CSMCG_INTERNAL: return "internal";
    }
    return "unknown";
}

csmcg_convention csmcg_default_convention(void) { return {CSMCG_DET_LEMMA, CSMCG_T_PLUS, CSMCG_S_INVERSE}; }

csmcg_status csmcg_root_system_create(char family, int rank, csmcg_root_system** out) {
    return guarded([&] {
        need(out, "output handle");
        *out = nullptr;
        auto h = std::make_unique<csmcg_root_system>();
        h->rs = build_root_system({family, rank});
        *out = h.release();
    });
}

void csmcg_root_system_destroy(csmcg_root_system* rs) { delete rs; }

int csmcg_root_system_rank(const csmcg_root_system* rs) { return rs ? rs->rs.rank : 0; }

csmcg_status csmcg_root_system_info(const csmcg_root_system* h, char** out) {
    return guarded([&] {
        need(h, "root system");
        need(out, "output string");
        const RootSystem& rs = h->rs;
        json roots = json::array();
        for (size_t i = 0; i < rs.positive_roots.size(); ++i)
            roots.push_back({{"simple", rs.positive_roots[i]},
                             {"coroot_coords", rat_vec(rs.positive_roots_coroot[i])},
                             {"norm2", to_string(rs.root_norm2[i])}});
        json j = {{"family", std::string(1, rs.type.family)},
                  {"rank", rs.rank},
                  {"gram1", rat_mat(rs.gram1)},
                  {"cartan", rat_mat(rs.cartan)},
                  {"simple_gram", rat_mat(rs.simple_gram)},
                  {"positive_root_count", rs.num_positive},
                  {"positive_roots", roots},
                  {"highest_root", rs.highest_root},
                  {"rho", rat_vec(rs.rho)},
                  {"weyl_order", classical_weyl_order(rs.type)},
                  {"dual_coxeter", rs.dual_coxeter},
                  {"simply_laced", rs.simply_laced}};
        *out = dup(j.dump());
    });
}

csmcg_status csmcg_lattice_enumerate(const csmcg_root_system* h, int64_t k, char** out) {
    return guarded([&] {
        need(h, "root system");
        need(out, "output string");
        FiniteData fd = finite_data(h->rs, k);
        json reps = json::array();
        for (const auto& r : fd.z.reps) reps.push_back(rat_vec(r));
        Lattice dual = scaled_dual_lattice(h->rs, k);
        json j = {{"level", k},
                  {"order", fd.z.order()},
                  {"invariant_factors", fd.z.invariant_factors},
                  {"reps", reps},
                  {"dual_basis", rat_mat(dual.basis)},
                  {"alcove", {{"closed", alcove_json(fd.alcove.closed_points)}, {"open", alcove_json(fd.alcove.open_points)}}},
                  {"alcove_volume_sq", to_string(alcove_volume_sq(h->rs))}};
        *out = dup(j.dump());
    });
}

csmcg_status csmcg_sector_rep_build(const csmcg_root_system* h, int64_t k, int sector, csmcg_convention conv,
                                    csmcg_sector_rep** out) {
    return guarded([&] {
        need(h, "root system");
        need(out, "output handle");
        *out = nullptr;
        if (sector != 0 && sector != 1) fail(ErrorKind::InvalidArgument, "sector must be 0 or 1");
        FiniteData fd = finite_data(h->rs, k);
        auto rep = std::make_unique<csmcg_sector_rep>();
        rep->m = rep_matrices(fd, sector, phase_constants(h->rs), from_c(conv));
        *out = rep.release();
    });
}

void csmcg_sector_rep_destroy(csmcg_sector_rep* rep) { delete rep; }

size_t csmcg_sector_rep_dimension(const csmcg_sector_rep* rep) {
    return rep ? static_cast<size_t>(rep->m.S.rows()) : 0;
}

csmcg_status csmcg_sector_rep_matrices(const csmcg_sector_rep* rep, double* s_out, double* t_out) {
    return guarded([&] {
        need(rep, "rep");
        const CMat& S = rep->m.S;
        const CMat& T = rep->m.T;
        for (Eigen::Index i = 0; i < S.rows(); ++i)
            for (Eigen::Index j = 0; j < S.cols(); ++j) {
                auto at = static_cast<size_t>(2 * (i * S.cols() + j));
                if (s_out) {
                    s_out[at] = S(i, j).real();
                    s_out[at + 1] = S(i, j).imag();
                }
                if (t_out) {
                    t_out[at] = T(i, j).real();
                    t_out[at + 1] = T(i, j).imag();
                }
            }
    });
}

csmcg_status csmcg_sector_rep_json(const csmcg_sector_rep* rep, double tol, char** out, int* passed) {
    return guarded([&] {
        need(rep, "rep");
        need(out, "output string");
        const SectorMatrices& m = rep->m;
        Sl2zReport r = verify_sl2z(m, tol);
        json labels = json::array();
        for (const auto& l : m.labels) labels.push_back(rat_vec(l));
        json j = {{"type", std::string(1, m.type.family) + std::to_string(m.type.rank)},
                  {"level", m.level},
                  {"sector", m.sector},
                  {"convention", to_string(m.convention)},
                  {"phases", {{"j", cnum(m.phases.j)}, {"omega", cnum(m.phases.omega)}, {"constraint_residual", m.phases.constraint_residual}}},
                  {"dimension", m.S.rows()},
                  {"labels", labels},
                  {"S", cmat(m.S)},
                  {"T", cmat(m.T)},
                  {"verification", sl2z_json(r)}};
        *out = dup(j.dump());
        if (passed) *passed = r.passed ? 1 : 0;
    });
}

csmcg_status csmcg_sector_rep_csv(const csmcg_sector_rep* rep, char generator, char** out) {
    return guarded([&] {
        need(rep, "rep");
        need(out, "output string");
        if (generator != 'S' && generator != 'T') fail(ErrorKind::InvalidArgument, "generator must be S or T");
        const CMat& m = generator == 'S' ? rep->m.S : rep->m.T;
        std::ostringstream os;
        os.precision(17);
        os << "row,col,re,im\n";
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index j = 0; j < m.cols(); ++j) os << i << ',' << j << ',' << m(i, j).real() << ',' << m(i, j).imag() << '\n';
        *out = dup(os.str());
    });
}

csmcg_status csmcg_rep_verify_json(const char* rep_json, double tol, char** out, int* passed) {
    return guarded([&] {
        need(rep_json, "rep JSON");
        need(out, "output string");
        json in = json::parse(rep_json);
        const json& body = in.contains("result") ? in.at("result") : in;
        CMat S = cmat_from(body.at("S")), T = cmat_from(body.at("T"));
        if (S.rows() != T.rows()) fail(ErrorKind::InvalidArgument, "S and T differ in dimension");
        Sl2zReport r = verify_sl2z(S, T, tol);
        json j = sl2z_json(r);
        if (body.contains("convention")) j["convention"] = body.at("convention");
        *out = dup(j.dump());
        if (passed) *passed = r.passed ? 1 : 0;
    });
}

csmcg_status csmcg_wgz_roundtrip(const csmcg_root_system* h, int64_t k, int resolution, double box, int samples,
                                 uint64_t seed, double tol, int operator_checks, char** out, int* passed) {
    return guarded([&] {
        need(h, "root system");
        need(out, "output string");
        WgzReport r = wgz_roundtrip(h->rs, k, resolution, box, samples, seed, tol, operator_checks != 0);
        json j = {{"samples", r.samples},
                  {"roundtrip", r.roundtrip},
                  {"parseval", r.parseval},
                  {"s_consistency", r.s_consistency},
                  {"t_consistency", r.t_consistency},
                  {"quasi_periodicity", r.quasi_periodicity},
                  {"operator_checks", operator_checks != 0},
                  {"truncation_estimate", r.truncation_estimate},
                  {"grid_points", r.grid_points},
                  {"shifts", r.shifts},
                  {"resolution", resolution},
                  {"box", box},
                  {"tol", r.tol},
                  {"passed", r.passed}};
        *out = dup(j.dump());
        if (passed) *passed = r.passed ? 1 : 0;
    });
}

csmcg_status csmcg_kernel_params(int64_t k, double s, int branch, char** out) {
    return guarded([&] {
        need(out, "output string");
        *out = dup(params_json(solve_params(k, s, branch)).dump());
    });
}

csmcg_status csmcg_kernel_hermite(int n, const int64_t* l, double sigma_re, double sigma_im, double step, double box,
                                  int normalized, char** out) {
    return guarded([&] {
        need(l, "multi-index");
        need(out, "output string");
        if (n < 1 || n > 2) fail(ErrorKind::InvalidArgument, "gridded Hermite functions need rank 1 or 2");
        IntVec idx(l, l + n);
        cd sigma(sigma_re, sigma_im);
        GridSpec g = orthonormal_grid(n, step, box);
        GridFunction f(g, 1);
        for (std::size_t p = 0; p < g.size(); ++p)
            f.at(0, p) = normalized ? hermite_normalized(idx, g.point(p), sigma) : hermite_eval(idx, g.point(p), sigma);
        *out = dup(grid_with_meta(f, {{"hermite_index", idx}, {"sigma", cnum(sigma)}, {"normalized", normalized != 0}}));
    });
}

csmcg_status csmcg_kernel_heat(int64_t k, double s, int branch, int has_sigma, double sigma_re, double sigma_im,
                               int method, int L, const char* grid_json, char** out) {
    return guarded([&] {
        need(grid_json, "grid JSON");
        need(out, "output string");
        HWParams p = solve_params(k, s, branch);
        if (has_sigma) p = with_sigma(p, {sigma_re, sigma_im});
        GridFunction f = grid_from_json(grid_json);
        GridFunction g;
        if (method == 0) {
            if (f.grid.size() > 40000) fail(ErrorKind::Resource, "Mehler quadrature limited to 40000 grid points");
            g = heat_apply_grid(f, p);
        } else if (method == 1) {
            if (f.components != 1) fail(ErrorKind::InvalidArgument, "Hermite path expects a scalar grid function");
            g = synthesize(heat_apply(project(f, p.sigma, L), p), f.grid);
        } else {
            fail(ErrorKind::InvalidArgument, "method must be 0 (mehler) or 1 (hermite)");
        }
        g.domain = f.domain;
        *out = dup(grid_with_meta(g, {{"params", params_json(p)}, {"method", method == 0 ? "mehler" : "hermite"}, {"L", L},
                                      {"input_boundary_sup", f.boundary_sup()}}));
    });
}

csmcg_status csmcg_kernel_eta(const csmcg_root_system* h, int64_t k, double s, int branch, int sector, char generator,
                              const char* grid_json, char** out) {
    return guarded([&] {
        need(h, "root system");
        need(grid_json, "grid JSON");
        need(out, "output string");
        EtaKernelSpec spec;
        spec.sector = sector;
        spec.generator = generator;
        spec.params = solve_params(k, s, branch);
        GridFunction f = grid_from_json(grid_json);
        if (f.grid.size() > 40000) fail(ErrorKind::Resource, "eta quadrature limited to 40000 grid points");
        GridFunction g = eta_apply(f, spec, h->rs);
        *out = dup(grid_with_meta(g, {{"params", params_json(spec.params)},
                                      {"sector", sector},
                                      {"generator", std::string(1, generator)},
                                      {"truncation_estimate", f.boundary_sup()}}));
    });
}

csmcg_status csmcg_kernel_verify(int64_t k, double s, double sigma_re, double sigma_im, int L, int core, double box,
                                 double step, double tol_conjugation, double tol_relations, char** out, int* passed) {
    return guarded([&] {
        need(out, "output string");
        QuadratureSpec q{box, step};
        ConjugationReport r = verify_conjugation(k, s, {sigma_re, sigma_im}, L, tol_conjugation, tol_relations, q, core);
        json curve = json::array();
        for (const auto& c : r.curve)
            curve.push_back({{"L", c.L}, {"conjugation", c.conjugation}, {"relation_core", c.relation_core}, {"relation_block", c.relation_block}});
        json j = {{"k", r.k},
                  {"s", r.s},
                  {"sigma", cnum(r.sigma)},
                  {"sigma_is_ib", sigma_is_ib(with_sigma(solve_params(k, s), r.sigma), 1e-12)},
                  {"L", r.L},
                  {"core", r.core},
                  {"box", r.box_radius},
                  {"step", r.step},
                  {"conjugation_S", r.conjugation_S},
                  {"conjugation_T", r.conjugation_T},
                  {"identity_residual", r.identity_residual},
                  {"mcg_invariance", r.mcg_invariance},
                  {"relations_core", {{"s4", r.relation_s4_core}, {"st3", r.relation_st3_core}, {"unitary", r.unitary_core}}},
                  {"relations_block", {{"s4", r.relation_s4_block}, {"st3", r.relation_st3_block}, {"unitary", r.unitary_block}}},
                  {"curve", curve},
                  {"curve_monotone", r.curve_monotone},
                  {"tol_conjugation", r.tol_conjugation},
                  {"tol_relations", r.tol_relations},
                  {"passed", r.passed}};
        *out = dup(j.dump());
        if (passed) *passed = r.passed ? 1 : 0;
    });
}

csmcg_status csmcg_compare_compact(const csmcg_root_system* h, int64_t k, csmcg_convention conv, double tol, char** out,
                                   int* passed) {
    return guarded([&] {
        need(h, "root system");
        need(out, "output string");
        CompactReport r = compare_shifted(h->rs, k, phase_constants(h->rs), from_c(conv), tol);
        json comps = json::array();
        for (const auto& c : r.comparisons)
            comps.push_back({{"oracle", c.oracle},
                             {"oracle_dimension", c.oracle_dimension},
                             {"labels_coincide", c.labels_coincide},
                             {"s_phase", cnum(c.s_phase)},
                             {"s_phase_root_distance", c.s_phase_root_distance},
                             {"s_residual", c.s_residual},
                             {"t_phase", cnum(c.t_phase)},
                             {"t_phase_distance", c.t_phase_distance},
                             {"t_residual", c.t_residual},
                             {"oracle_relations", c.oracle_relations},
                             {"passed", c.passed}});
        json labels = json::array();
        for (const auto& l : r.our_labels) labels.push_back(rat_vec(l));
        json j = {{"type", std::string(1, r.type.family) + std::to_string(r.type.rank)},
                  {"k", r.k},
                  {"shifted_level", r.shifted_level},
                  {"convention", to_string(r.convention)},
                  {"dimension", r.dimension},
                  {"labels", labels},
                  {"dynkin_labels", r.our_dynkin},
                  {"comparisons", comps},
                  {"relations", sl2z_json(r.our_relations)},
                  {"tol", r.tol},
                  {"passed", r.passed}};
        *out = dup(j.dump());
        if (passed) *passed = r.passed ? 1 : 0;
    });
}

csmcg_status csmcg_grid_to_csv(const char* grid_json, char** out) {
    return guarded([&] {
        need(grid_json, "grid JSON");
        need(out, "output string");
        *out = dup(grid_to_csv(grid_from_json(grid_json)));
    });
}

}  // extern "C"

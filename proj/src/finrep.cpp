#include "csmcg/finrep.hpp"
#include "csmcg/error.hpp"

#include <cmath>
#include <numbers>

namespace csmcg {

namespace {

cd i_pow(const Rational& e) {  // i^e = e^{2 pi i e/4}
    return unit_phase(e / 4);
}

}  // namespace

PhasePair phase_constants(const RootSystem& rs) {
    PhasePair p;
    p.j = i_pow(Rational(-rs.num_positive));
    Rational rr = pairing(rs, rs.rho, rs.rho);
    p.omega = unit_phase(rr / (2 * rs.dual_coxeter));
    cd lhs = p.omega * p.omega * p.omega;
    cd rhs = i_pow(Rational(rs.rank, 2)) / p.j;
    p.constraint_residual = std::abs(lhs - rhs);
    if (p.constraint_residual > 1e-12)
        fail(ErrorKind::Inconsistent, "phase constraint omega^3 = i^{n/2} j^{-1} violated by " +
                                          std::to_string(p.constraint_residual));
    return p;
}

std::string to_string(const Convention& c) {
    std::string s = c.det == DetPlacement::Lemma ? "lemma" : "theorem";
    s += c.t == TPhase::Plus ? "/t-plus" : "/t-minus";
    s += c.s == SExponent::Inverse ? "/s-inverse" : "/s-direct";
    return s;
}

Convention parse_convention(const std::string& det, const std::string& t_phase, const std::string& s_exponent) {
    Convention c;
    if (det == "lemma") c.det = DetPlacement::Lemma;
    else if (det == "theorem") c.det = DetPlacement::Theorem;
    else fail(ErrorKind::InvalidArgument, "convention must be 'lemma' or 'theorem', got '" + det + "'");
    if (t_phase == "plus") c.t = TPhase::Plus;
    else if (t_phase == "minus") c.t = TPhase::Minus;
    else fail(ErrorKind::InvalidArgument, "t-phase must be 'plus' or 'minus', got '" + t_phase + "'");
    if (s_exponent == "inverse") c.s = SExponent::Inverse;
    else if (s_exponent == "direct") c.s = SExponent::Direct;
    else fail(ErrorKind::InvalidArgument, "s-exponent must be 'inverse' or 'direct', got '" + s_exponent + "'");
    return c;
}

FiniteData finite_data(const RootSystem& rs, std::int64_t k) {
    FiniteData fd{rs, k, generate_weyl_group(rs), quotient_group(rs, k), {}};
    fd.alcove = alcove_points(rs, k, fd.z, fd.weyl);
    return fd;
}

std::vector<CVec> symmetrized_basis(const FiniteData& fd, int sector) {
    if (sector != 0 && sector != 1) fail(ErrorKind::InvalidArgument, "sector must be 0 or 1");
    const auto& pts = sector == 0 ? fd.alcove.closed_points : fd.alcove.open_points;
    std::vector<CVec> out;
    for (const auto& p : pts) {
        CVec v = CVec::Zero(static_cast<Eigen::Index>(fd.z.order()));
        for (const auto& w : fd.weyl.elements) {
            std::size_t c = fd.z.index_of(w.matrix.apply(p.coords));
            v[static_cast<Eigen::Index>(c)] += sector == 0 ? 1.0 : static_cast<double>(w.det);
        }
        // the 1/sqrt|W| of the textbook form is not unit norm on boundary orbits
        v /= v.norm();
        out.push_back(v);
    }
    return out;
}

CMat finite_fourier(const RootSystem& rs, const QuotientGroup& z) {
    auto m = static_cast<Eigen::Index>(z.order());
    CMat f(m, m);
    double norm = 1.0 / std::sqrt(static_cast<double>(m));
    for (Eigen::Index a = 0; a < m; ++a)
        for (Eigen::Index b = 0; b < m; ++b)
            f(a, b) = unit_phase(pairing(rs, z.reps[a], z.reps[b], z.level)) * norm;
    return f;
}

CVec finite_gauss(const RootSystem& rs, const QuotientGroup& z) {
    auto m = static_cast<Eigen::Index>(z.order());
    CVec g(m);
    for (Eigen::Index a = 0; a < m; ++a) g[a] = unit_phase(pairing(rs, z.reps[a], z.reps[a], z.level) / 2);
    return g;
}

SectorMatrices rep_matrices(const FiniteData& fd, int sector, const PhasePair& phases, const Convention& conv) {
    if (sector != 0 && sector != 1) fail(ErrorKind::InvalidArgument, "sector must be 0 or 1");
    const auto& pts = sector == 0 ? fd.alcove.closed_points : fd.alcove.open_points;
    SectorMatrices m;
    m.type = fd.rs.type;
    m.level = fd.level;
    m.sector = sector;
    m.convention = conv;
    m.phases = phases;
    auto d = static_cast<Eigen::Index>(pts.size());
    m.S = CMat::Zero(d, d);
    m.T = CMat::Zero(d, d);
    for (const auto& p : pts) m.labels.push_back(p.coords);
    if (d == 0) return m;

    // default: det(w) only in the anti-invariant sector; the other placement swaps it
    bool with_det = (sector == 1) == (conv.det == DetPlacement::Lemma);
    int s_sign = conv.s == SExponent::Inverse ? -1 : 1;
    double zn = static_cast<double>(fd.z.order());
    cd pref = 1.0 / (phases.j * std::sqrt(zn));

    for (Eigen::Index a = 0; a < d; ++a) {
        for (Eigen::Index b = a; b < d; ++b) {
            cd sum = 0;
            for (const auto& w : fd.weyl.elements) {
                Rational q = pairing(fd.rs, w.matrix.apply(pts[a].coords), pts[b].coords, fd.level);
                cd e = unit_phase(q * s_sign);
                sum += with_det ? e * static_cast<double>(w.det) : e;
            }
            double stab = std::sqrt(static_cast<double>(pts[a].stabilizer * pts[b].stabilizer));
            m.S(a, b) = pref * sum / stab;
            m.S(b, a) = m.S(a, b);
        }
        Rational q = pairing(fd.rs, pts[a].coords, pts[a].coords, fd.level) / 2;
        m.T(a, a) = unit_phase(conv.t == TPhase::Plus ? q : -q) / phases.omega;
    }
    return m;
}

double max_abs(const CMat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double Sl2zReport::max_residual() const {
    return std::max({s4, st3, s_unitary, t_unitary, t_offdiag});
}

Sl2zReport verify_sl2z(const CMat& S, const CMat& T, double tol) {
    if (S.rows() != S.cols() || T.rows() != T.cols() || S.rows() != T.rows())
        fail(ErrorKind::InvalidArgument, "verify_sl2z: matrices must be square and of equal size");
    Sl2zReport r;
    r.dimension = static_cast<int>(S.rows());
    r.tol = tol;
    if (r.dimension == 0) return r;
    CMat id = CMat::Identity(S.rows(), S.cols());
    CMat s2 = S * S;
    CMat st = S * T;
    r.s4 = max_abs(s2 * s2 - id);
    r.st3 = max_abs(st * st * st - s2);
    r.s_unitary = max_abs(S.adjoint() * S - id);
    r.t_unitary = max_abs(T.adjoint() * T - id);
    CMat off = T;
    off.diagonal().setZero();
    r.t_offdiag = max_abs(off);
    r.passed = r.max_residual() < tol;
    return r;
}

}  // namespace csmcg

#include "csmcg/compactcheck.hpp"
#include "csmcg/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>

namespace csmcg {

CompactModularData su2_modular_data(std::int64_t k) {
    if (k < 1) fail(ErrorKind::InvalidArgument, "level must be >= 1");
    CompactModularData d;
    d.source = "su2-closed-form";
    d.level = k;
    auto m = static_cast<Eigen::Index>(k + 1);
    double kk = static_cast<double>(k + 2);
    d.S = CMat::Zero(m, m);
    d.T = CMat::Zero(m, m);
    const double pi = std::numbers::pi;
    for (Eigen::Index a = 1; a <= m; ++a) {
        d.labels.push_back({a - 1});
        for (Eigen::Index b = 1; b <= m; ++b)
            d.S(a - 1, b - 1) = std::sqrt(2.0 / kk) * std::sin(pi * static_cast<double>(a * b) / kk);
        d.T(a - 1, a - 1) = std::polar(1.0, -pi / 4) * std::polar(1.0, pi * static_cast<double>(a * a) / (2 * kk));
    }
    return d;
}

CompactModularData kac_peterson_sum(const RootSystem& rs, std::int64_t k) {
    if (!rs.simply_laced)
        fail(ErrorKind::Unsupported, "Kac-Peterson comparison is only set up for simply laced types, got " +
                                         type_name(rs.type));
    if (k < 1) fail(ErrorKind::InvalidArgument, "level must be >= 1");
    int n = rs.rank;
    // symmetric Cartan matrix; <omega_i, omega_j> = (A^{-1})_ij
    RatMat a = rs.cartan;
    RatMat ainv = a.inverse();
    auto ip = [&](const IntVec& x, const IntVec& y) {
        Rational s = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) s += ainv(i, j) * (x[i] * y[j]);
        return s;
    };

    // Weyl group on Dynkin labels: s_i(l) = l - l_i * (row i of A)
    std::vector<IntMat> gens;
    for (int i = 0; i < n; ++i) {
        IntMat s = IntMat::identity(n);
        for (int j = 0; j < n; ++j) s(j, i) -= a(i, j).numerator();
        gens.push_back(s);
    }
    std::vector<std::pair<IntMat, int>> group{{IntMat::identity(n), 1}};
    std::map<std::vector<std::int64_t>, int> seen{{group[0].first.a, 0}};
    for (std::size_t h = 0; h < group.size(); ++h)
        for (const auto& g : gens) {
            IntMat m = g * group[h].first;
            if (seen.emplace(m.a, 1).second) group.push_back({m, -group[h].second});
        }

    IntVec marks(n);
    for (int i = 0; i < n; ++i) marks[i] = rs.highest_root[i];
    std::int64_t h = 1 + std::accumulate(marks.begin(), marks.end(), std::int64_t{0});
    std::int64_t big = k + h;

    CompactModularData d;
    d.source = "kac-peterson-sum";
    d.level = k;
    IntVec l(n, 0);
    // integrable weights: l_i >= 0, sum marks_i l_i <= k
    for (;;) {
        std::int64_t tot = 0;
        for (int i = 0; i < n; ++i) tot += marks[i] * l[i];
        if (tot <= k) d.labels.push_back(l);
        int i = n - 1;
        while (i >= 0 && ++l[i] > k) l[i--] = 0;
        if (i < 0) break;
    }
    IntVec rho(n, 1);
    auto shifted = [&](const IntVec& x) {
        IntVec y = x;
        for (auto& v : y) ++v;
        return y;
    };
    std::sort(d.labels.begin(), d.labels.end(), [&](const IntVec& x, const IntVec& y) {
        Rational px = ip(shifted(x), rho), py = ip(shifted(y), rho);
        if (px != py) return px < py;
        return x < y;
    });

    auto m = static_cast<Eigen::Index>(d.labels.size());
    d.S = CMat::Zero(m, m);
    d.T = CMat::Zero(m, m);
    double detp = to_double(a.det());
    cd pref = std::pow(cd(0, 1), rs.num_positive) / std::sqrt(detp * std::pow(static_cast<double>(big), n));
    std::int64_t dim = n + 2 * rs.num_positive;
    for (Eigen::Index x = 0; x < m; ++x) {
        IntVec lx = shifted(d.labels[x]);
        for (Eigen::Index y = 0; y < m; ++y) {
            IntVec ly = shifted(d.labels[y]);
            cd sum = 0;
            for (const auto& [w, sign] : group) sum += static_cast<double>(sign) * unit_phase(-ip(w.apply(lx), ly) / big);
            d.S(x, y) = pref * sum;
        }
        const IntVec& lam = d.labels[x];
        IntVec l2r = lam;
        for (auto& v : l2r) v += 2;
        Rational e = ip(lam, l2r) / (2 * big) - Rational(k * dim, 24 * big);
        d.T(x, x) = unit_phase(e);
    }
    return d;
}

namespace {

OracleComparison compare_with(const SectorMatrices& ours, const std::vector<IntVec>& our_dynkin,
                              const CompactModularData& orc, double tol) {
    OracleComparison c;
    c.oracle = orc.source;
    c.oracle_dimension = static_cast<int>(orc.S.rows());
    c.oracle_relations = verify_sl2z(orc.S, orc.T, tol).max_residual();
    if (orc.S.rows() != ours.S.rows())
        fail(ErrorKind::Inconsistent, "dimension mismatch between sector 1 at level k+h (" +
                                          std::to_string(ours.S.rows()) + ") and " + orc.source + " (" +
                                          std::to_string(orc.S.rows()) + ")");
    c.labels_coincide = our_dynkin == orc.labels;
    if (orc.S.rows() == 0) {
        c.s_phase = c.t_phase = 1.0;
        c.passed = true;
        return c;
    }
    auto fit = [](const CMat& x, const CMat& y) {
        cd num = (x.array() * y.array().conjugate()).sum();
        return num / std::abs(num);
    };
    c.s_phase = fit(ours.S, orc.S);
    c.s_residual = max_abs(ours.S - c.s_phase * orc.S);
    c.s_phase_root_distance = 1e300;
    for (cd r : {cd(1, 0), cd(0, 1), cd(-1, 0), cd(0, -1)})
        c.s_phase_root_distance = std::min(c.s_phase_root_distance, std::abs(c.s_phase - r));
    c.t_phase = fit(ours.T, orc.T);
    c.t_phase_distance = std::abs(c.t_phase - 1.0);
    c.t_residual = max_abs(ours.T - orc.T);
    c.passed = c.s_residual < tol && c.s_phase_root_distance < tol && c.t_residual < tol &&
               c.t_phase_distance < tol && c.oracle_relations < tol;
    return c;
}

}  // namespace

CompactReport compare_shifted(const RootSystem& rs, std::int64_t k, const PhasePair& phases,
                              const Convention& conv, double tol) {
    if (!rs.simply_laced)
        fail(ErrorKind::Unsupported, "compact comparison needs a simply laced type, got " + type_name(rs.type));
    CompactReport r;
    r.type = rs.type;
    r.k = k;
    r.shifted_level = k + rs.dual_coxeter;
    r.convention = conv;
    r.tol = tol;

    FiniteData fd = finite_data(rs, r.shifted_level);
    SectorMatrices m = rep_matrices(fd, 1, phases, conv);

    // order I_{k+h} by (<gamma, rho>, Dynkin labels), the same key the oracle uses
    std::vector<std::size_t> perm(m.labels.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<IntVec> dyn(m.labels.size());
    std::vector<Rational> key(m.labels.size());
    for (std::size_t a = 0; a < m.labels.size(); ++a) {
        IntVec l(rs.rank);
        for (int i = 0; i < rs.rank; ++i) {
            Rational v = rs.simple_root_pairing(i, m.labels[a]) * r.shifted_level - 1;
            if (v.denominator() != 1) fail(ErrorKind::Inconsistent, "non-integral shifted label");
            l[i] = v.numerator();
        }
        dyn[a] = l;
        key[a] = pairing(rs, m.labels[a], rs.rho);
    }
    std::sort(perm.begin(), perm.end(), [&](std::size_t x, std::size_t y) {
        if (key[x] != key[y]) return key[x] < key[y];
        return dyn[x] < dyn[y];
    });
    SectorMatrices sorted = m;
    auto d = static_cast<Eigen::Index>(perm.size());
    for (Eigen::Index x = 0; x < d; ++x) {
        sorted.labels[x] = m.labels[perm[x]];
        for (Eigen::Index y = 0; y < d; ++y) {
            sorted.S(x, y) = m.S(perm[x], perm[y]);
            sorted.T(x, y) = m.T(perm[x], perm[y]);
        }
        r.our_dynkin.push_back(dyn[perm[x]]);
    }
    r.our_labels = sorted.labels;
    r.dimension = static_cast<int>(d);
    r.our_relations = verify_sl2z(sorted.S, sorted.T, tol);

    if (rs.type.family == 'A' && rs.rank == 1) r.comparisons.push_back(compare_with(sorted, r.our_dynkin, su2_modular_data(k), tol));
    r.comparisons.push_back(compare_with(sorted, r.our_dynkin, kac_peterson_sum(rs, k), tol));
    r.passed = r.our_relations.passed;
    for (const auto& c : r.comparisons) r.passed = r.passed && c.passed && c.labels_coincide;
    return r;
}

}  // namespace csmcg

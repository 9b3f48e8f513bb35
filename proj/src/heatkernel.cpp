#include "csmcg/heatkernel.hpp"
#include "csmcg/error.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

namespace csmcg {

namespace {

constexpr double kPi = std::numbers::pi;
const cd kI(0.0, 1.0);

void require_upper(cd sigma) {
    if (!(sigma.imag() > 0)) fail(ErrorKind::Domain, "sigma must lie in the upper half plane");
}

}  // namespace

HWParams solve_params(std::int64_t k, double s, int branch) {
    if (k < 1) fail(ErrorKind::InvalidArgument, "level k must be >= 1");
    if (branch != 1 && branch != -1) fail(ErrorKind::InvalidArgument, "branch must be +1 or -1");
    if (!std::isfinite(s)) fail(ErrorKind::Domain, "s must be finite");
    HWParams p;
    p.k = k;
    p.s = s;
    p.branch = branch;
    double kk = static_cast<double>(k);
    p.t = cd(kk, s);
    cd z = cd(kk, -s) / cd(kk, s);
    p.b = std::sqrt(z);
    if (std::abs(std::abs(p.b) - 1.0) > 1e-12 || !(p.b.real() > 0))
        fail(ErrorKind::Domain, "no b with |b| = 1 and Re b > 0 for s = " + std::to_string(s));
    p.heat_base = static_cast<double>(branch) * kI * p.b;
    p.r = -std::log(p.heat_base) / (2.0 * kk);
    p.sigma = kI * p.b;
    return p;
}

HWParams with_sigma(HWParams p, cd sigma) {
    require_upper(sigma);
    p.sigma = sigma;
    return p;
}

bool sigma_is_ib(const HWParams& p, double tol) { return std::abs(p.sigma - kI * p.b) <= tol; }

ParamResiduals check_params(const HWParams& p) {
    ParamResiduals r;
    double kk = static_cast<double>(p.k);
    cd is = kI * p.s;
    r.e4kr = std::abs(std::exp(-4.0 * kk * p.r) + (kk - is) / (kk + is));
    r.is = std::abs(is - kk * (1.0 - p.b * p.b) / (1.0 + p.b * p.b));
    r.e2kr = std::abs(std::exp(-2.0 * kk * p.r) - static_cast<double>(p.branch) * kI * p.b);
    return r;
}

double mehler_alpha(cd sigma) {
    require_upper(sigma);
    return 2.0 * kPi * sigma.imag() / std::norm(sigma);
}

namespace {

// normalized 1-d Hermite function with weight e^{-alpha x^2}, without the (-1)^l
double hermite_h(int l, double x, double alpha) {
    double h0 = std::pow(alpha / kPi, 0.25);
    if (l == 0) return h0;
    double h1 = x * std::sqrt(2.0 * alpha) * h0;
    for (int m = 1; m < l; ++m) {
        double h2 = x * std::sqrt(2.0 * alpha / (m + 1)) * h1 - std::sqrt(static_cast<double>(m) / (m + 1)) * h0;
        h0 = h1;
        h1 = h2;
    }
    return h1;
}

cd ground(const Eigen::VectorXd& u, cd sigma) { return std::exp(-kPi * kI * u.squaredNorm() / sigma); }

}  // namespace

double hermite_norm2(const IntVec& l, cd sigma) {
    double a = mehler_alpha(sigma), n2 = 1;
    for (auto li : l) {
        if (li < 0) fail(ErrorKind::InvalidArgument, "multi-index entries must be >= 0");
        n2 *= std::pow(a, static_cast<double>(li) - 0.5) * std::pow(2.0, static_cast<double>(li)) *
              std::tgamma(static_cast<double>(li) + 1) * std::sqrt(kPi);
    }
    return n2;
}

cd hermite_normalized(const IntVec& l, const Eigen::VectorXd& u, cd sigma) {
    if (static_cast<Eigen::Index>(l.size()) != u.size()) fail(ErrorKind::InvalidArgument, "multi-index and point differ in rank");
    double a = mehler_alpha(sigma), h = 1;
    for (size_t j = 0; j < l.size(); ++j) {
        if (l[j] < 0) fail(ErrorKind::InvalidArgument, "multi-index entries must be >= 0");
        h *= ((l[j] % 2) ? -1.0 : 1.0) * hermite_h(static_cast<int>(l[j]), u[static_cast<Eigen::Index>(j)], a);
    }
    return h * ground(u, sigma);
}

cd hermite_eval(const IntVec& l, const Eigen::VectorXd& u, cd sigma) {
    return hermite_normalized(l, u, sigma) * std::sqrt(hermite_norm2(l, sigma));
}

cd hermite_eval_direct(const IntVec& l, const Eigen::VectorXd& u, cd sigma) {
    if (static_cast<Eigen::Index>(l.size()) != u.size()) fail(ErrorKind::InvalidArgument, "multi-index and point differ in rank");
    double a = mehler_alpha(sigma);
    // D_{sigma,j}(p v) = (p' + 2 pi i (1/conj(sigma) - 1/sigma) x p) v = (p' - 2 alpha x p) v
    double prod = 1;
    for (size_t j = 0; j < l.size(); ++j) {
        std::vector<double> p{1.0};
        for (std::int64_t step = 0; step < l[j]; ++step) {
            std::vector<double> q(p.size() + 1, 0.0);
            for (size_t d = 1; d < p.size(); ++d) q[d - 1] += static_cast<double>(d) * p[d];
            for (size_t d = 0; d < p.size(); ++d) q[d + 1] -= 2.0 * a * p[d];
            p = std::move(q);
        }
        double x = u[static_cast<Eigen::Index>(j)], acc = 0;
        for (size_t d = p.size(); d-- > 0;) acc = acc * x + p[d];
        prod *= acc;
    }
    return prod * ground(u, sigma);
}

std::vector<IntVec> multi_indices(int n, int L) {
    std::vector<IntVec> out;
    IntVec l(n, 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == n - 1) {
            l[i] = left;
            out.push_back(l);
            return;
        }
        for (int v = left; v >= 0; --v) {
            l[i] = v;
            rec(i + 1, left - v);
        }
    };
    for (int d = 0; d <= L; ++d) rec(0, d);
    return out;
}

GridFunction synthesize(const HermiteExpansion& e, const GridSpec& g) {
    if (g.n != e.n) fail(ErrorKind::InvalidArgument, "expansion and grid differ in rank");
    GridFunction f(g, 1);
    for (std::size_t p = 0; p < g.size(); ++p) {
        Eigen::VectorXd u = g.point(p);
        cd v = 0;
        for (size_t i = 0; i < e.index.size(); ++i)
            if (e.coeffs[static_cast<Eigen::Index>(i)] != cd(0))
                v += e.coeffs[static_cast<Eigen::Index>(i)] * hermite_normalized(e.index[i], u, e.sigma);
        f.at(0, p) = v;
    }
    return f;
}

HermiteExpansion project(const GridFunction& f, cd sigma, int L) {
    if (f.components != 1) fail(ErrorKind::InvalidArgument, "project expects a scalar grid function");
    HermiteExpansion e;
    e.n = f.grid.n;
    e.sigma = sigma;
    e.index = multi_indices(e.n, L);
    e.coeffs = CVec::Zero(static_cast<Eigen::Index>(e.index.size()));
    double cell = f.grid.cell_volume();
    for (std::size_t p = 0; p < f.grid.size(); ++p) {
        Eigen::VectorXd u = f.grid.point(p);
        for (size_t i = 0; i < e.index.size(); ++i)
            e.coeffs[static_cast<Eigen::Index>(i)] += f.at(0, p) * std::conj(hermite_normalized(e.index[i], u, sigma)) * cell;
    }
    return e;
}

HermiteExpansion laplacian_apply(const HermiteExpansion& e, std::int64_t k) {
    HermiteExpansion out = e;
    for (size_t i = 0; i < e.index.size(); ++i) out.coeffs[static_cast<Eigen::Index>(i)] *= laplacian_eigenvalue(k, e.index[i]);
    return out;
}

namespace {

// periodic spectral derivative along one axis of an axis-aligned grid
void derivative_axis(const GridSpec& g, const std::vector<cd>& in, std::vector<cd>& out, int axis) {
    int m = g.axis_points();
    double h = g.frame(axis, axis);
    std::size_t stride = 1;
    for (int i = axis + 1; i < g.n; ++i) stride *= static_cast<std::size_t>(m);
    std::vector<cd> buf(static_cast<size_t>(m)), spec(static_cast<size_t>(m));
    auto* bp = reinterpret_cast<fftw_complex*>(buf.data());
    auto* sp = reinterpret_cast<fftw_complex*>(spec.data());
    fftw_plan fwd = fftw_plan_dft_1d(m, bp, sp, FFTW_FORWARD, FFTW_ESTIMATE);
    fftw_plan bwd = fftw_plan_dft_1d(m, sp, bp, FFTW_BACKWARD, FFTW_ESTIMATE);
    double period = m * h;
    out.assign(in.size(), 0.0);
    std::size_t lines = g.size() / static_cast<std::size_t>(m);
    for (std::size_t line = 0; line < lines; ++line) {
        std::size_t outer = line / stride, inner = line % stride;
        std::size_t base = outer * stride * static_cast<std::size_t>(m) + inner;
        for (int i = 0; i < m; ++i) buf[static_cast<size_t>(i)] = in[base + static_cast<size_t>(i) * stride];
        fftw_execute(fwd);
        for (int q = 0; q < m; ++q) {
            int kappa = q <= (m - 1) / 2 ? q : q - m;
            if (m % 2 == 0 && q == m / 2) kappa = 0;
            spec[static_cast<size_t>(q)] *= kI * (2.0 * kPi * kappa / period) / static_cast<double>(m);
        }
        fftw_execute(bwd);
        for (int i = 0; i < m; ++i) out[base + static_cast<size_t>(i) * stride] = buf[static_cast<size_t>(i)];
    }
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
}

}  // namespace

GridFunction laplacian_apply_grid(const GridFunction& f, std::int64_t k, cd sigma) {
    if (!f.grid.axis_aligned()) fail(ErrorKind::Unsupported, "grid Laplacian needs an axis-aligned orthonormal grid");
    double a = mehler_alpha(sigma);
    const GridSpec& g = f.grid;
    GridFunction out(g, f.components);
    out.domain = f.domain;
    out.component_labels = f.component_labels;
    std::size_t sz = g.size();
    cd c_lower = 2.0 * kPi * kI / sigma;             // D_{conj sigma}
    cd c_raise = 2.0 * kPi * kI / std::conj(sigma);  // D_sigma
    std::vector<cd> comp(sz), tmp(sz), d(sz);
    for (int c = 0; c < f.components; ++c) {
        for (std::size_t p = 0; p < sz; ++p) comp[p] = f.at(c, p);
        std::vector<cd> acc(sz, 0.0);
        for (int j = 0; j < g.n; ++j) {
            derivative_axis(g, comp, d, j);
            for (std::size_t p = 0; p < sz; ++p) tmp[p] = d[p] + c_lower * g.point(p)[j] * comp[p];
            derivative_axis(g, tmp, d, j);
            for (std::size_t p = 0; p < sz; ++p) acc[p] += d[p] + c_raise * g.point(p)[j] * tmp[p];
        }
        double kk = static_cast<double>(k);
        for (std::size_t p = 0; p < sz; ++p) out.at(c, p) = g.n * kk * comp[p] - (kk / a) * acc[p];
    }
    return out;
}

HermiteExpansion heat_apply(const HermiteExpansion& e, const HWParams& p) {
    if (!(p.b.real() > 0)) fail(ErrorKind::Domain, "heat kernel diverges for Re b <= 0");
    HermiteExpansion out = e;
    for (size_t i = 0; i < e.index.size(); ++i)
        out.coeffs[static_cast<Eigen::Index>(i)] *= std::exp(-p.r * laplacian_eigenvalue(p.k, e.index[i]));
    return out;
}

GridFunction heat_apply_grid(const GridFunction& f, const HWParams& p) {
    if (!(p.b.real() > 0)) fail(ErrorKind::Domain, "heat kernel diverges for Re b <= 0");
    const GridSpec& g = f.grid;
    int n = g.n;
    double a = mehler_alpha(p.sigma);
    cd w = p.heat_base;
    cd den = 1.0 - w * w;
    cd c = a / den;
    // w^{n/2} (alpha / (pi (1 - w^2)))^{n/2}, with w^{n/2} = e^{-k n r} on the chosen branch
    cd pref = std::exp(-static_cast<double>(p.k) * n * p.r) * std::pow(std::sqrt(a / (kPi * den)), n);
    std::size_t sz = g.size();
    std::vector<Eigen::VectorXd> pts(sz);
    std::vector<double> q(sz);
    for (std::size_t i = 0; i < sz; ++i) {
        pts[i] = g.point(i);
        q[i] = pts[i].squaredNorm();
    }
    cd vs = -kPi * kI / p.sigma, vt = kPi * kI / std::conj(p.sigma);
    GridFunction out(g, f.components);
    out.component_labels = f.component_labels;
    double cell = g.cell_volume();
    for (std::size_t x = 0; x < sz; ++x) {
        for (int comp = 0; comp < f.components; ++comp) {
            cd acc = 0;
            for (std::size_t y = 0; y < sz; ++y) {
                cd fy = f.at(comp, y);
                if (fy == cd(0)) continue;
                // exponents combined before exp: separately they overflow for s != 0
                cd e = c * (2.0 * w * pts[x].dot(pts[y]) - w * w * (q[x] + q[y])) + vs * q[x] + vt * q[y];
                acc += std::exp(e) * fy;
            }
            out.at(comp, x) = pref * acc * cell;
        }
    }
    return out;
}

namespace {

struct ChamberGeometry {
    std::vector<IntMat> grid_maps;  // Weyl elements as maps of grid indices
    std::vector<int> dets;
    std::vector<bool> in_chamber;
};

ChamberGeometry chamber_geometry(const GridSpec& g, const RootSystem& rs, std::int64_t k) {
    if (g.n != rs.rank) fail(ErrorKind::InvalidArgument, "grid rank differs from the root system rank");
    int n = g.n;
    WeylGroup wg = generate_weyl_group(rs);
    Eigen::MatrixXd kd(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) kd(i, j) = to_double(rs.gram1(i, j)) * static_cast<double>(k);
    Eigen::MatrixXd chol = Eigen::LLT<Eigen::MatrixXd>(kd).matrixL().transpose();
    Eigen::MatrixXd cinv = chol.inverse(), finv = g.frame.inverse();
    ChamberGeometry geo;
    for (const auto& w : wg.elements) {
        Eigen::MatrixXd wm(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) wm(i, j) = static_cast<double>(w.matrix(i, j));
        Eigen::MatrixXd m = finv * chol * wm * cinv * g.frame;
        IntMat im{n, std::vector<std::int64_t>(static_cast<size_t>(n) * n)};
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double r = std::round(m(i, j));
                if (std::abs(m(i, j) - r) > 1e-8)
                    fail(ErrorKind::InvalidArgument, "grid is not preserved by the Weyl group");
                im(i, j) = static_cast<std::int64_t>(r);
            }
        geo.grid_maps.push_back(im);
        geo.dets.push_back(w.det);
    }
    geo.in_chamber.resize(g.size());
    for (std::size_t p = 0; p < g.size(); ++p) {
        Eigen::VectorXd x = cinv * g.point(p);
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
            double v = 0;
            for (int j = 0; j < n; ++j) v += to_double(rs.cartan(j, i)) * x[j];
            ok = v >= -1e-9;
        }
        geo.in_chamber[p] = ok;
    }
    return geo;
}

std::size_t map_point(const GridSpec& g, const IntMat& m, std::size_t p) {
    auto j = g.index(p);
    IntVec v = m.apply(IntVec(j.begin(), j.end()));
    for (auto x : v)
        if (x < -g.half_extent || x > g.half_extent) return g.size();
    return g.flat(std::vector<int>(v.begin(), v.end()));
}

}  // namespace

GridFunction chamber_extend(const GridFunction& f, const RootSystem& rs, std::int64_t k, int sector) {
    if (sector != 0 && sector != 1) fail(ErrorKind::InvalidArgument, "sector must be 0 or 1");
    ChamberGeometry geo = chamber_geometry(f.grid, rs, k);
    GridFunction out(f.grid, f.components);
    out.component_labels = f.component_labels;
    for (std::size_t p = 0; p < f.grid.size(); ++p) {
        if (!geo.in_chamber[p]) continue;
        for (size_t w = 0; w < geo.grid_maps.size(); ++w) {
            std::size_t q = map_point(f.grid, geo.grid_maps[w], p);
            if (q == f.grid.size()) continue;
            double sgn = sector == 1 ? geo.dets[w] : 1.0;
            for (int c = 0; c < f.components; ++c) out.at(c, q) = sgn * f.at(c, p);
        }
    }
    return out;
}

GridFunction chamber_restrict(const GridFunction& f, const RootSystem& rs, std::int64_t k) {
    ChamberGeometry geo = chamber_geometry(f.grid, rs, k);
    GridFunction out = f;
    out.domain = GridFunction::Domain::Chamber;
    for (std::size_t p = 0; p < f.grid.size(); ++p)
        if (!geo.in_chamber[p])
            for (int c = 0; c < f.components; ++c) out.at(c, p) = 0;
    return out;
}

cd chamber_inner(const GridFunction& f, const GridFunction& g, const RootSystem& rs, std::int64_t k, int sector) {
    // integral over F_0 = (1/|W|) integral over t of the extended integrand
    GridFunction fe = chamber_extend(f, rs, k, sector), ge = chamber_extend(g, rs, k, sector);
    return inner(fe, ge) / static_cast<double>(generate_weyl_group(rs).order());
}

GridFunction eta_apply(const GridFunction& f, const EtaKernelSpec& spec, const RootSystem& rs) {
    const HWParams& p = spec.params;
    if (!sigma_is_ib(p))
        fail(ErrorKind::Unsupported, "closed-form eta kernels exist only at sigma = i b; use verify_conjugation for generic sigma");
    if (spec.generator != 'S' && spec.generator != 'T') fail(ErrorKind::InvalidArgument, "generator must be S or T");
    if (f.grid.n != rs.rank) fail(ErrorKind::InvalidArgument, "grid rank differs from the root system rank");
    PhasePair ph = phase_constants(rs);
    int n = rs.rank;
    // integral over F_0 of f times the Weyl-summed kernel = integral over t of the extension of f
    GridFunction ext = chamber_extend(f, rs, p.k, spec.sector);
    ChamberGeometry geo = chamber_geometry(f.grid, rs, p.k);
    const GridSpec& g = f.grid;
    std::size_t sz = g.size();
    std::vector<Eigen::VectorXd> pts(sz);
    for (std::size_t i = 0; i < sz; ++i) pts[i] = g.point(i);
    cd chirp = kPi * (p.b - std::conj(p.b));  // purely imaginary
    cd pref = spec.generator == 'S' ? ph.j : ph.omega * std::pow(kI, -0.5 * n);
    GridFunction out(g, f.components);
    out.domain = GridFunction::Domain::Chamber;
    out.component_labels = f.component_labels;
    double cell = g.cell_volume();
    for (std::size_t x = 0; x < sz; ++x) {
        if (!geo.in_chamber[x]) continue;
        for (int c = 0; c < f.components; ++c) {
            cd acc = 0;
            for (std::size_t y = 0; y < sz; ++y) {
                cd fy = ext.at(c, y);
                if (fy == cd(0)) continue;
                cd e = spec.generator == 'S' ? 2.0 * kPi * kI * pts[x].dot(pts[y])
                                             : kPi * kI * (pts[x] - pts[y]).squaredNorm();
                acc += std::exp(e - chirp * pts[y].squaredNorm()) * fy;
            }
            out.at(c, x) = pref * std::exp(chirp * pts[x].squaredNorm()) * acc * cell;
        }
    }
    return out;
}

namespace {

// n = 1 quadrature helpers for the conjugation check
struct Line {
    std::vector<double> u;
    double h;
};

std::vector<cd> sample_basis(const Line& ln, int l, cd sigma) {
    std::vector<cd> v(ln.u.size());
    Eigen::VectorXd x(1);
    for (size_t i = 0; i < ln.u.size(); ++i) {
        x[0] = ln.u[i];
        v[i] = hermite_normalized({l}, x, sigma);
    }
    return v;
}

cd line_inner(const Line& ln, const std::vector<cd>& a, const std::vector<cd>& b) {
    cd s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * std::conj(b[i]);
    return s * ln.h;
}

}  // namespace

ConjugationReport verify_conjugation(std::int64_t k, double s, cd sigma, int L, double tol_conjugation,
                                     double tol_relations, const QuadratureSpec& q, int core) {
    if (L < 0) fail(ErrorKind::InvalidArgument, "truncation L must be >= 0");
    if (core < 0 || core > L) fail(ErrorKind::InvalidArgument, "core block must satisfy 0 <= core <= L");
    require_upper(sigma);
    HWParams p = with_sigma(solve_params(k, s), sigma);
    PhasePair ph = phase_constants(build_root_system({'A', 1}));

    ConjugationReport rep;
    rep.k = k;
    rep.s = s;
    rep.sigma = sigma;
    rep.L = L;
    rep.core = core;
    rep.box_radius = q.box_radius;
    rep.step = q.step;
    rep.tol_conjugation = tol_conjugation;
    rep.tol_relations = tol_relations;

    Line ln;
    ln.h = q.step;
    int half = static_cast<int>(std::ceil(q.box_radius / q.step - 1e-9));
    for (int i = -half; i <= half; ++i) ln.u.push_back(i * q.step);
    std::size_t m = ln.u.size();
    if (m > 20001) fail(ErrorKind::Resource, "quadrature line too long");

    auto rho_S = [&](const std::vector<cd>& f) {
        std::vector<cd> out(m);
        for (size_t i = 0; i < m; ++i) {
            cd acc = 0;
            for (size_t j = 0; j < m; ++j) acc += f[j] * std::polar(1.0, 2.0 * kPi * ln.u[i] * ln.u[j]);
            out[i] = ph.j * acc * ln.h;
        }
        return out;
    };
    auto rho_T = [&](const std::vector<cd>& f) {
        std::vector<cd> out(m);
        for (size_t i = 0; i < m; ++i) out[i] = ph.omega * std::polar(1.0, -kPi * ln.u[i] * ln.u[i]) * f[i];
        return out;
    };

    auto d = static_cast<Eigen::Index>(L + 1);
    std::vector<std::vector<cd>> base(static_cast<size_t>(L + 1));
    for (int l = 0; l <= L; ++l) base[static_cast<size_t>(l)] = sample_basis(ln, l, sigma);
    CVec heat(d);
    for (int l = 0; l <= L; ++l) heat[l] = std::exp(-p.r * laplacian_eigenvalue(k, {l}));

    struct Gen {
        cd moved;
        CMat eta_i, eta_ii;
    };
    auto build = [&](char gen) {
        Gen out;
        out.moved = gen == 'S' ? -1.0 / sigma : sigma / (1.0 + sigma);
        std::vector<std::vector<cd>> moved(static_cast<size_t>(L + 1)), image(static_cast<size_t>(L + 1));
        for (int l = 0; l <= L; ++l) {
            moved[static_cast<size_t>(l)] = sample_basis(ln, l, out.moved);
            image[static_cast<size_t>(l)] = gen == 'S' ? rho_S(base[static_cast<size_t>(l)]) : rho_T(base[static_cast<size_t>(l)]);
        }
        CMat P(d, d), Q(d, d), O(d, d);
        for (int a = 0; a <= L; ++a)
            for (int b = 0; b <= L; ++b) {
                P(a, b) = line_inner(ln, image[static_cast<size_t>(b)], base[static_cast<size_t>(a)]);
                Q(a, b) = line_inner(ln, image[static_cast<size_t>(b)], moved[static_cast<size_t>(a)]);
                O(a, b) = line_inner(ln, moved[static_cast<size_t>(b)], base[static_cast<size_t>(a)]);
            }
        // (ii) e^{-r D_sigma} rho e^{r D_sigma}
        out.eta_ii = heat.asDiagonal() * P * heat.cwiseInverse().asDiagonal();
        // (i) e^{-r D_sigma} e^{r D_{phi* sigma}} rho, the middle factor diagonal in the moved basis
        out.eta_i = heat.asDiagonal() * O * heat.cwiseInverse().asDiagonal() * Q;
        CMat lam = CMat::Zero(d, d);
        for (int l = 0; l <= L; ++l) lam(l, l) = laplacian_eigenvalue(k, {l});
        rep.mcg_invariance = std::max(rep.mcg_invariance, max_abs(Q * lam * Q.inverse() - lam));
        return out;
    };
    Gen gs = build('S'), gt = build('T');
    rep.conjugation_S = max_abs(gs.eta_i - gs.eta_ii);
    rep.conjugation_T = max_abs(gt.eta_i - gt.eta_ii);
    {
        CMat id = CMat::Identity(d, d);
        rep.identity_residual = max_abs(heat.asDiagonal() * id * heat.cwiseInverse().asDiagonal() - id);
    }

    auto relations = [&](int lt, int blk, double& s4, double& st3, double& un) {
        auto dl = static_cast<Eigen::Index>(lt + 1), db = static_cast<Eigen::Index>(blk + 1);
        CMat S = gs.eta_ii.topLeftCorner(dl, dl), T = gt.eta_ii.topLeftCorner(dl, dl);
        CMat id = CMat::Identity(dl, dl);
        CMat s2 = S * S, st = S * T;
        s4 = max_abs((s2 * s2 - id).topLeftCorner(db, db));
        st3 = max_abs((st * st * st - s2).topLeftCorner(db, db));
        un = max_abs((S.adjoint() * S - id).topLeftCorner(db, db));
    };
    relations(L, core, rep.relation_s4_core, rep.relation_st3_core, rep.unitary_core);
    relations(L, L, rep.relation_s4_block, rep.relation_st3_block, rep.unitary_block);

    int start = L >= 6 ? 6 : L;
    double prev = 1e300;
    for (int lt = start; lt <= L; lt += 2) {
        ConjugationCurvePoint cp;
        cp.L = lt;
        auto dl = static_cast<Eigen::Index>(lt + 1);
        cp.conjugation = std::max(max_abs((gs.eta_i - gs.eta_ii).topLeftCorner(dl, dl)),
                                  max_abs((gt.eta_i - gt.eta_ii).topLeftCorner(dl, dl)));
        double a, b, c, a2, b2, c2;
        relations(lt, std::min(core, lt), a, b, c);
        relations(lt, lt, a2, b2, c2);
        cp.relation_core = std::max({a, b, c});
        cp.relation_block = std::max({a2, b2, c2});
        if (!(cp.relation_core < prev)) rep.curve_monotone = false;
        prev = cp.relation_core;
        rep.curve.push_back(cp);
    }
    double rel = std::max({rep.relation_s4_core, rep.relation_st3_core, rep.unitary_core});
    rep.passed = rep.conjugation_S < tol_conjugation && rep.conjugation_T < tol_conjugation &&
                 rep.identity_residual < tol_conjugation && rel < tol_relations && rep.curve_monotone;
    return rep;
}

}  // namespace csmcg

#include "csmcg/wgz.hpp"
#include "csmcg/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <cstdio>
#include <random>
#include <string>

namespace csmcg {

namespace {

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

std::int64_t pmod(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

std::int64_t idot(const IntVec& a, const IntVec& b) {
    std::int64_t s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// e^{i pi r / N^2} for r in [0, 2N^2)
struct HalfTurnTable {
    std::int64_t period;
    std::vector<cd> v;
    explicit HalfTurnTable(int n) : period(2LL * n * n), v(static_cast<size_t>(period)) {
        double nn = static_cast<double>(n) * n;
        for (std::int64_t r = 0; r < period; ++r) v[static_cast<size_t>(r)] = std::polar(1.0, std::numbers::pi * r / nn);
    }
    cd operator()(std::int64_t r) const { return v[static_cast<size_t>(pmod(r, period))]; }
};

IntVec torus_vec(std::size_t flat, int n, int N) {
    IntVec t(n);
    for (int i = n - 1; i >= 0; --i) {
        t[i] = static_cast<std::int64_t>(flat % static_cast<std::size_t>(N));
        flat /= static_cast<std::size_t>(N);
    }
    return t;
}

std::size_t torus_flat(const IntVec& t, int N) {
    std::size_t f = 0;
    for (auto v : t) f = f * static_cast<std::size_t>(N) + static_cast<std::size_t>(v);
    return f;
}

void for_each_in_box(const IntVec& lo, const IntVec& hi, const std::function<void(const IntVec&)>& fn) {
    IntVec c = lo;
    int n = static_cast<int>(lo.size());
    for (int i = 0; i < n; ++i)
        if (lo[i] > hi[i]) return;
    for (;;) {
        fn(c);
        int i = n - 1;
        while (i >= 0 && ++c[i] > hi[i]) {
            c[i] = lo[i];
            --i;
        }
        if (i < 0) return;
    }
}

// all m with N (kg)^{-1} m inside [lo, hi] componentwise
void dual_shifts(const WgzContext& ctx, const IntVec& lo, const IntVec& hi, std::vector<IntVec>& ms,
                 std::vector<IntVec>& offs) {
    int n = ctx.rs.rank;
    RatMat kinv = ctx.kg.to_rat().inverse() * Rational(ctx.resolution);
    IntVec blo(n), bhi(n);
    std::int64_t reach = 0;
    for (int i = 0; i < n; ++i) reach = std::max({reach, std::abs(lo[i]), std::abs(hi[i])});
    for (int i = 0; i < n; ++i) {
        std::int64_t b = 0;
        for (int j = 0; j < n; ++j) b += std::abs(ctx.kg(i, j));
        b = b * reach / ctx.resolution + 1;
        blo[i] = -b;
        bhi[i] = b;
    }
    for_each_in_box(blo, bhi, [&](const IntVec& m) {
        RatVec o = kinv * to_rat(m);
        IntVec oi(n);
        for (int i = 0; i < n; ++i) {
            oi[i] = o[i].numerator();
            if (oi[i] < lo[i] || oi[i] > hi[i]) return;
        }
        ms.push_back(m);
        offs.push_back(oi);
    });
}

std::size_t grid_flat(const GridSpec& g, const IntVec& j) {
    std::vector<int> v(j.begin(), j.end());
    for (auto x : j)
        if (x < -g.half_extent || x > g.half_extent) return g.size();
    return g.flat(v);
}

void check_family(const WgzContext& ctx, const GridFunction& f) {
    if (f.components != static_cast<int>(ctx.z.order()) || f.grid.n != ctx.rs.rank ||
        f.grid.half_extent != ctx.grid.half_extent || f.grid.resolution != ctx.resolution ||
        f.grid.level != ctx.level)
        fail(ErrorKind::InvalidArgument, "grid function does not match the WGZ grid (resolution mismatch)");
}

}  // namespace

cd multiplier_eval(const RootSystem& rs, std::int64_t k, const RatVec& l1, const RatVec& l2, const RatVec& th1,
                   const RatVec& th2) {
    if (!is_integral(l1) || !is_integral(l2)) fail(ErrorKind::Domain, "multiplier: lambda must lie in the coroot lattice");
    Rational parity = pairing(rs, l1, l2, k);
    Rational e = parity / 2 - (pairing(rs, th1, l2, k) - pairing(rs, l1, th2, k)) / 2;
    return unit_phase(e);
}

cd multiplier_eval(const RootSystem& rs, std::int64_t k, const RatVec& l1, const RatVec& l2,
                   const Eigen::VectorXd& th1, const Eigen::VectorXd& th2) {
    if (!is_integral(l1) || !is_integral(l2)) fail(ErrorKind::Domain, "multiplier: lambda must lie in the coroot lattice");
    int n = rs.rank;
    Rational parity = pairing(rs, l1, l2, k);
    double a = 0, b = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double g = to_double(rs.gram1(i, j)) * static_cast<double>(k);
            a += th1[i] * g * to_double(l2[j]);
            b += to_double(l1[i]) * g * th2[j];
        }
    double sign = parity.numerator() % 2 == 0 ? 1.0 : -1.0;
    return sign * std::polar(1.0, -std::numbers::pi * (a - b));
}

WgzContext make_wgz_context(const RootSystem& rs, std::int64_t k, int resolution, double box_radius) {
    if (k < 1) fail(ErrorKind::InvalidArgument, "level must be >= 1");
    if (resolution < 1 || resolution > 512) fail(ErrorKind::InvalidArgument, "resolution must be in [1, 512]");
    if (!(box_radius > 0)) fail(ErrorKind::InvalidArgument, "box radius must be positive");
    if (rs.rank > 2) fail(ErrorKind::Unsupported, "gridded WGZ transforms support rank <= 2");
    WgzContext c;
    c.rs = rs;
    c.level = k;
    c.resolution = resolution;
    int n = rs.rank;
    c.kg = IntMat{n, std::vector<std::int64_t>(static_cast<size_t>(n) * n)};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) c.kg(i, j) = k * rs.gram1(i, j).numerator();
    RatMat kinv = c.kg.to_rat().inverse();
    if (!(kinv * Rational(resolution)).is_integral()) {
        std::int64_t l = 1;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) l = std::lcm(l, kinv(i, j).denominator());
        fail(ErrorKind::InvalidArgument, "resolution " + std::to_string(resolution) + " must be a multiple of " +
                                             std::to_string(l) + " for this type and level");
    }
    c.z = quotient_group(rs, k);
    for (const auto& g : c.z.reps) {
        IntVec o(n);
        for (int i = 0; i < n; ++i) o[i] = (g[i] * resolution).numerator();
        c.rep_offsets.push_back(o);
    }
    Eigen::MatrixXd kd(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) kd(i, j) = static_cast<double>(c.kg(i, j));
    Eigen::LLT<Eigen::MatrixXd> llt(kd);
    c.chol = llt.matrixL().transpose();
    c.volume = std::sqrt(kd.determinant());

    int J = 0;
    for (int i = 0; i < n; ++i)
        J = std::max(J, static_cast<int>(std::ceil(resolution * box_radius * std::sqrt(to_double(kinv(i, i))) - 1e-9)));
    c.grid.n = n;
    c.grid.frame = c.chol / static_cast<double>(resolution);
    c.grid.half_extent = J;
    c.grid.box_radius = box_radius;
    c.grid.resolution = resolution;
    c.grid.level = k;

    // sampling t2 at step 1/N folds f(theta) onto f(theta + N K^{-1} q): every box point must fold outside the ball |u| <= R
    double corner = 0;
    for (int sgn = 0; sgn < (1 << n); ++sgn) {
        Eigen::VectorXd jv(n);
        for (int i = 0; i < n; ++i) jv[i] = (sgn >> i & 1) ? J : -J;
        corner = std::max(corner, (c.chol * jv).norm() / resolution);
    }
    Eigen::MatrixXd kdinv = kd.inverse();
    double lmin = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(kdinv).eigenvalues().minCoeff();
    auto qb = static_cast<std::int64_t>(std::ceil((box_radius + corner) / (resolution * std::sqrt(lmin))));
    for_each_in_box(IntVec(n, -qb), IntVec(n, qb), [&](const IntVec& q) {
        Eigen::VectorXd qv(n);
        for (int i = 0; i < n; ++i) qv[i] = static_cast<double>(q[i]);
        double len = resolution * std::sqrt(qv.dot(kdinv * qv));
        if (len == 0 || len >= box_radius + corner - 1e-9) return;
        fail(ErrorKind::Truncation, "resolution " + std::to_string(resolution) + " aliases a box of radius " +
                                        sci(box_radius) + "; raise the resolution or shrink the box");
    });

    IntVec lo(n, -J - resolution + 1), hi(n, J);
    dual_shifts(c, lo, hi, c.shift_m, c.shift_offset);
    return c;
}

std::size_t SectionSamples::torus_size() const {
    std::size_t s = 1;
    for (int i = 0; i < n; ++i) s *= static_cast<std::size_t>(resolution);
    return s;
}

GridFunction make_family(const WgzContext& ctx) {
    GridFunction f(ctx.grid, static_cast<int>(ctx.z.order()));
    for (const auto& g : ctx.z.reps) {
        std::string s = "(";
        for (size_t i = 0; i < g.size(); ++i) s += (i ? "," : "") + to_string(g[i]);
        f.component_labels.push_back(s + ")");
    }
    return f;
}

SectionSamples wgz_forward(const WgzContext& ctx, const GridFunction& f, double decay_threshold) {
    check_family(ctx, f);
    int n = ctx.rs.rank, N = ctx.resolution;
    SectionSamples s;
    s.n = n;
    s.resolution = N;
    s.level = ctx.level;
    s.truncation_estimate = f.boundary_sup();
    s.shifts = ctx.shift_m.size();
    double sup = f.sup();
    if (decay_threshold >= 0 && s.truncation_estimate > decay_threshold * std::max(sup, 1e-300))
        fail(ErrorKind::Truncation, "input does not decay inside the box: boundary sup " + sci(s.truncation_estimate) +
                                        " vs sup " + sci(sup));
    std::size_t tn = s.torus_size();
    s.data.assign(tn * tn, 0.0);
    std::size_t zc = ctx.z.order();

    std::vector<std::vector<cd>> ph(ctx.shift_m.size(), std::vector<cd>(zc));
    for (size_t m = 0; m < ctx.shift_m.size(); ++m)
        for (size_t c = 0; c < zc; ++c) ph[m][c] = unit_phase(-dot(to_rat(ctx.shift_m[m]), ctx.z.reps[c]));
    std::vector<cd> e(static_cast<size_t>(N));
    for (int q = 0; q < N; ++q) e[static_cast<size_t>(q)] = std::polar(1.0, -2.0 * std::numbers::pi * q / N);
    std::vector<IntVec> t2s(tn), kt2(tn);
    for (std::size_t a = 0; a < tn; ++a) {
        t2s[a] = torus_vec(a, n, N);
        kt2[a] = ctx.kg.apply(t2s[a]);
    }
    std::vector<std::vector<std::int32_t>> mt(ctx.shift_m.size(), std::vector<std::int32_t>(tn));
    for (size_t m = 0; m < ctx.shift_m.size(); ++m)
        for (std::size_t a = 0; a < tn; ++a) mt[m][a] = static_cast<std::int32_t>(pmod(idot(ctx.shift_m[m], t2s[a]), N));

    HalfTurnTable tab(N);
    double pref = 1.0 / std::sqrt(static_cast<double>(zc));
    std::vector<cd> row(tn);
    for (std::size_t a1 = 0; a1 < tn; ++a1) {
        const IntVec& t1 = t2s[a1];
        std::fill(row.begin(), row.end(), cd(0));
        for (size_t m = 0; m < ctx.shift_m.size(); ++m) {
            IntVec idx(n);
            for (int i = 0; i < n; ++i) idx[i] = t1[i] + ctx.shift_offset[m][i];
            std::size_t p = grid_flat(ctx.grid, idx);
            if (p == ctx.grid.size()) continue;
            cd cl = 0;
            for (size_t c = 0; c < zc; ++c) cl += f.at(static_cast<int>(c), p) * ph[m][c];
            if (cl == cd(0)) continue;
            for (std::size_t a2 = 0; a2 < tn; ++a2) row[a2] += cl * e[static_cast<size_t>(mt[m][a2])];
        }
        for (std::size_t a2 = 0; a2 < tn; ++a2) s.at(a1, a2) = row[a2] * pref * tab(-idot(t1, kt2[a2]));
    }
    return s;
}

cd wgz_evaluate(const WgzContext& ctx, const GridFunction& f, const IntVec& t1, const IntVec& t2) {
    check_family(ctx, f);
    int n = ctx.rs.rank, N = ctx.resolution, J = ctx.grid.half_extent;
    IntVec lo(n), hi(n);
    for (int i = 0; i < n; ++i) {
        lo[i] = -J - t1[i];
        hi[i] = J - t1[i];
    }
    std::vector<IntVec> ms, offs;
    dual_shifts(ctx, lo, hi, ms, offs);
    std::size_t zc = ctx.z.order();
    HalfTurnTable tab(N);
    cd sum = 0;
    for (size_t m = 0; m < ms.size(); ++m) {
        IntVec idx(n);
        for (int i = 0; i < n; ++i) idx[i] = t1[i] + offs[m][i];
        std::size_t p = grid_flat(ctx.grid, idx);
        if (p == ctx.grid.size()) continue;
        cd cl = 0;
        for (size_t c = 0; c < zc; ++c)
            cl += f.at(static_cast<int>(c), p) * unit_phase(-dot(to_rat(ms[m]), ctx.z.reps[c]));
        // e^{-2 pi i m.t2/N} = e^{i pi (-2 N m.t2)/N^2}
        sum += cl * tab(-2LL * N * idot(ms[m], t2));
    }
    return sum * tab(-idot(t1, ctx.kg.apply(t2))) / std::sqrt(static_cast<double>(zc));
}

GridFunction wgz_inverse(const WgzContext& ctx, const SectionSamples& s) {
    int n = ctx.rs.rank, N = ctx.resolution;
    if (s.n != n || s.resolution != N || s.level != ctx.level)
        fail(ErrorKind::InvalidArgument, "section samples do not match the WGZ grid (resolution mismatch)");
    std::size_t tn = s.torus_size(), zc = ctx.z.order();
    if (s.data.size() != tn * tn) fail(ErrorKind::InvalidArgument, "section sample array has the wrong size");
    GridFunction out = make_family(ctx);
    HalfTurnTable tab(N);
    std::vector<IntVec> ts(tn);
    for (std::size_t a = 0; a < tn; ++a) ts[a] = torus_vec(a, n, N);
    CMat fz = finite_fourier(ctx.rs, ctx.z);
    std::vector<cd> integ(zc);
    const double inv_tn = 1.0 / static_cast<double>(tn);
    for (std::size_t p = 0; p < ctx.grid.size(); ++p) {
        auto jv = ctx.grid.index(p);
        for (size_t ch = 0; ch < zc; ++ch) {
            IntVec base(n), w(n);
            for (int i = 0; i < n; ++i) {
                std::int64_t a = jv[i] - ctx.rep_offsets[ch][i];
                base[i] = pmod(a, N);
                std::int64_t mu = (a - base[i]) / N;
                w[i] = N * mu + jv[i] + ctx.rep_offsets[ch][i];
            }
            IntVec v = ctx.kg.apply(w);
            std::size_t b = torus_flat(base, N);
            cd acc = 0;
            for (std::size_t a2 = 0; a2 < tn; ++a2) acc += s.at(b, a2) * tab(idot(v, ts[a2]));
            integ[ch] = acc * inv_tn;
        }
        for (size_t c = 0; c < zc; ++c) {
            cd v = 0;
            for (size_t ch = 0; ch < zc; ++ch) v += fz(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(ch)) * integ[ch];
            out.at(static_cast<int>(c), p) = v;
        }
    }
    return out;
}

cd section_inner(const WgzContext& ctx, const SectionSamples& a, const SectionSamples& b) {
    if (a.data.size() != b.data.size()) fail(ErrorKind::InvalidArgument, "section_inner: shape mismatch");
    cd s = 0;
    for (std::size_t i = 0; i < a.data.size(); ++i) s += a.data[i] * std::conj(b.data[i]);
    // (1/Vol) (Vol/N^n)^2 per sample pair
    return s * ctx.volume / static_cast<double>(a.data.size());
}

GridFunction apply_finite(const CMat& m, const GridFunction& f) {
    if (m.cols() != f.components || m.rows() != f.components)
        fail(ErrorKind::InvalidArgument, "finite operator size does not match the number of components");
    GridFunction out = f;
    for (std::size_t p = 0; p < f.grid.size(); ++p)
        for (int r = 0; r < f.components; ++r) {
            cd v = 0;
            for (int c = 0; c < f.components; ++c) v += m(r, c) * f.at(c, p);
            out.at(r, p) = v;
        }
    return out;
}

GridFunction prequantum_S(const WgzContext& ctx, const GridFunction& f) {
    check_family(ctx, f);
    const GridSpec& g = ctx.grid;
    std::size_t gp = g.size();
    if (gp > 40000) fail(ErrorKind::Resource, "quadrature Fourier transform limited to 40000 grid points");
    HalfTurnTable tab(ctx.resolution);
    std::vector<IntVec> js(gp), kjs(gp);
    for (std::size_t p = 0; p < gp; ++p) {
        auto v = g.index(p);
        js[p] = IntVec(v.begin(), v.end());
        kjs[p] = ctx.kg.apply(js[p]);
    }
    GridFunction fe = f;
    double cell = g.cell_volume();
    for (int c = 0; c < f.components; ++c)
        for (std::size_t p = 0; p < gp; ++p) {
            cd acc = 0;
            for (std::size_t q = 0; q < gp; ++q) {
                cd v = f.at(c, q);
                if (v != cd(0)) acc += v * tab(2 * idot(js[p], kjs[q]));
            }
            fe.at(c, p) = acc * cell;
        }
    CMat fz = finite_fourier(ctx.rs, ctx.z);
    return apply_finite(fz.adjoint(), fe);
}

GridFunction prequantum_T(const WgzContext& ctx, const GridFunction& f) {
    check_family(ctx, f);
    HalfTurnTable tab(ctx.resolution);
    GridFunction out = f;
    for (std::size_t p = 0; p < ctx.grid.size(); ++p) {
        auto v = ctx.grid.index(p);
        IntVec j(v.begin(), v.end());
        cd ge = tab(-idot(j, ctx.kg.apply(j)));
        for (int c = 0; c < f.components; ++c) {
            cd gz = unit_phase(pairing(ctx.rs, ctx.z.reps[c], ctx.z.reps[c], ctx.level) / 2);
            out.at(c, p) = gz * ge * f.at(c, p);
        }
    }
    return out;
}

SectionSamples section_S_tilde(const WgzContext& ctx, const GridFunction& g) {
    int n = ctx.rs.rank, N = ctx.resolution;
    SectionSamples s;
    s.n = n;
    s.resolution = N;
    s.level = ctx.level;
    std::size_t tn = s.torus_size();
    s.data.resize(tn * tn);
    for (std::size_t a1 = 0; a1 < tn; ++a1) {
        IntVec t1 = torus_vec(a1, n, N), m1 = t1;
        for (auto& x : m1) x = -x;
        for (std::size_t a2 = 0; a2 < tn; ++a2) s.at(a1, a2) = wgz_evaluate(ctx, g, torus_vec(a2, n, N), m1);
    }
    return s;
}

SectionSamples section_T_tilde(const WgzContext& ctx, const GridFunction& g) {
    int n = ctx.rs.rank, N = ctx.resolution;
    SectionSamples s;
    s.n = n;
    s.resolution = N;
    s.level = ctx.level;
    std::size_t tn = s.torus_size();
    s.data.resize(tn * tn);
    for (std::size_t a1 = 0; a1 < tn; ++a1) {
        IntVec t1 = torus_vec(a1, n, N);
        for (std::size_t a2 = 0; a2 < tn; ++a2) {
            IntVec t2 = torus_vec(a2, n, N);
            for (int i = 0; i < n; ++i) t2[i] += t1[i];
            s.at(a1, a2) = wgz_evaluate(ctx, g, t1, t2);
        }
    }
    return s;
}

GridFunction weyl_apply(const WgzContext& ctx, const IntMat& w_inverse, const GridFunction& f) {
    check_family(ctx, f);
    GridFunction out = make_family(ctx);
    std::vector<std::size_t> src(ctx.z.order());
    for (size_t c = 0; c < ctx.z.order(); ++c) src[c] = ctx.z.index_of(w_inverse.apply(ctx.z.reps[c]));
    for (std::size_t p = 0; p < ctx.grid.size(); ++p) {
        auto v = ctx.grid.index(p);
        std::size_t q = grid_flat(ctx.grid, w_inverse.apply(IntVec(v.begin(), v.end())));
        if (q == ctx.grid.size()) continue;
        for (size_t c = 0; c < ctx.z.order(); ++c) out.at(static_cast<int>(c), p) = f.at(static_cast<int>(src[c]), q);
    }
    return out;
}

GridFunction random_family(const WgzContext& ctx, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    int n = ctx.rs.rank;
    GridFunction f = make_family(ctx);
    for (int c = 0; c < f.components; ++c) {
        double a = 0.5 + 1.5 * uni(rng);
        Eigen::VectorXd shift(n), dir(n);
        for (int i = 0; i < n; ++i) shift[i] = 2 * uni(rng) - 1;
        for (int i = 0; i < n; ++i) dir[i] = gauss(rng);
        dir.normalize();
        cd coef[4];
        for (auto& x : coef) x = cd(gauss(rng), gauss(rng));
        for (std::size_t p = 0; p < ctx.grid.size(); ++p) {
            Eigen::VectorXd d = ctx.grid.point(p) - shift;
            double x = dir.dot(d);
            cd poly = ((coef[3] * x + coef[2]) * x + coef[1]) * x + coef[0];
            f.at(c, p) = poly * std::exp(-std::numbers::pi * a * d.squaredNorm());
        }
    }
    return f;
}

namespace {

double rel_sup(const SectionSamples& a, const SectionSamples& b) {
    double m = 0, s = 0;
    for (std::size_t i = 0; i < a.data.size(); ++i) {
        m = std::max(m, std::abs(a.data[i] - b.data[i]));
        s = std::max(s, std::abs(b.data[i]));
    }
    return m / std::max(s, 1e-300);
}

}  // namespace

WgzReport wgz_roundtrip(const RootSystem& rs, std::int64_t k, int resolution, double box_radius, int samples,
                        std::uint64_t seed, double tol, bool operator_checks) {
    if (samples < 1) fail(ErrorKind::InvalidArgument, "need at least one sample");
    WgzContext ctx = make_wgz_context(rs, k, resolution, box_radius);
    WgzReport r;
    r.samples = samples;
    r.tol = tol;
    r.grid_points = ctx.grid.size();
    r.shifts = ctx.shift_m.size();
    for (int t = 0; t < samples; ++t) {
        GridFunction f = random_family(ctx, seed + 2 * static_cast<std::uint64_t>(t));
        GridFunction g = random_family(ctx, seed + 2 * static_cast<std::uint64_t>(t) + 1);
        SectionSamples sf = wgz_forward(ctx, f), sg = wgz_forward(ctx, g);
        r.truncation_estimate = std::max({r.truncation_estimate, sf.truncation_estimate, sg.truncation_estimate});
        GridFunction back = wgz_inverse(ctx, sf);
        r.roundtrip = std::max(r.roundtrip, sup_diff(back, f) / f.sup());
        double nf = std::sqrt(inner(f, f).real()), ng = std::sqrt(inner(g, g).real());
        r.parseval = std::max(r.parseval, std::abs(section_inner(ctx, sf, sg) - inner(f, g)) / (nf * ng));
        r.parseval = std::max(r.parseval, std::abs(section_inner(ctx, sf, sf).real() - nf * nf) / (nf * nf));
        if (operator_checks && t == 0) {
            CMat fz = finite_fourier(rs, ctx.z);
            GridFunction zf = apply_finite(fz, f);
            r.s_consistency = rel_sup(wgz_forward(ctx, apply_finite(fz, prequantum_S(ctx, f)), -1), section_S_tilde(ctx, zf));
            r.t_consistency = rel_sup(wgz_forward(ctx, apply_finite(fz, prequantum_T(ctx, f)), -1), section_T_tilde(ctx, zf));
            // quasi-periodicity on a sparse sample of points
            int n = rs.rank, N = resolution;
            std::size_t tn = sf.torus_size();
            std::size_t stride = std::max<std::size_t>(1, tn / 16);
            double num = 0, den = 0;
            IntVec lo(2 * n, -1), hi(2 * n, 1);
            for (std::size_t a1 = 0; a1 < tn; a1 += stride)
                for (std::size_t a2 = 0; a2 < tn; a2 += stride) {
                    IntVec t1 = torus_vec(a1, n, N), t2 = torus_vec(a2, n, N);
                    cd base = sf.at(a1, a2);
                    den = std::max(den, std::abs(base));
                    for_each_in_box(lo, hi, [&](const IntVec& lam) {
                        IntVec l1(lam.begin(), lam.begin() + n), l2(lam.begin() + n, lam.end());
                        IntVec s1 = t1, s2 = t2;
                        RatVec th1(n), th2(n);
                        for (int i = 0; i < n; ++i) {
                            s1[i] += N * l1[i];
                            s2[i] += N * l2[i];
                            th1[i] = Rational(t1[i], N);
                            th2[i] = Rational(t2[i], N);
                        }
                        cd mult = multiplier_eval(rs, k, to_rat(l1), to_rat(l2), th1, th2);
                        num = std::max(num, std::abs(wgz_evaluate(ctx, f, s1, s2) - mult * base));
                    });
                }
            r.quasi_periodicity = num / std::max(den, 1e-300);
        }
    }
    r.passed = r.roundtrip < tol && r.parseval < tol && r.s_consistency < tol && r.t_consistency < tol &&
               r.quasi_periodicity < tol;
    return r;
}

}  // namespace csmcg

#include "csmcg/lattice.hpp"
#include "csmcg/error.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>

namespace csmcg {

namespace {

IntMat scaled_gram(const RootSystem& rs, std::int64_t k) {
    IntMat m{rs.rank, std::vector<std::int64_t>(static_cast<size_t>(rs.rank) * rs.rank)};
    for (int i = 0; i < rs.rank; ++i)
        for (int j = 0; j < rs.rank; ++j) m(i, j) = k * rs.gram1(i, j).numerator();
    return m;
}

void require_level(std::int64_t k) {
    if (k < 1) fail(ErrorKind::InvalidArgument, "level k must be >= 1, got " + std::to_string(k));
}

}  // namespace

Lattice coroot_lattice(const RootSystem& rs, std::int64_t k) {
    require_level(k);
    Lattice l;
    l.level = k;
    l.basis = RatMat::identity(rs.rank);
    Rational kn = 1;
    for (int i = 0; i < rs.rank; ++i) kn *= k;
    l.covolume_sq = rs.gram1.det() * kn;
    return l;
}

Lattice scaled_dual_lattice(const RootSystem& rs, std::int64_t k) {
    require_level(k);
    Lattice l;
    l.level = k;
    RatMat kg = rs.gram1 * Rational(k);
    l.basis = kg.inverse();
    // Gram of the basis under <.,.>_k is (kg)^{-1}
    l.covolume_sq = l.basis.det();
    // the coroot basis must lie in the lattice: columns of kg are its coordinates
    if (!kg.is_integral()) fail(ErrorKind::Inconsistent, "coroot lattice not contained in the scaled dual");
    return l;
}

bool in_scaled_dual(const RootSystem& rs, std::int64_t k, const RatVec& v) {
    return is_integral((rs.gram1 * Rational(k)) * v);
}

SmithForm smith_normal_form(const IntMat& m0) {
    int n = m0.n;
    IntMat a = m0, u = IntMat::identity(n), v = IntMat::identity(n);
    auto swap_rows = [&](IntMat& x, int i, int j) {
        for (int c = 0; c < n; ++c) std::swap(x(i, c), x(j, c));
    };
    auto swap_cols = [&](IntMat& x, int i, int j) {
        for (int r = 0; r < n; ++r) std::swap(x(r, i), x(r, j));
    };
    auto add_row = [&](IntMat& x, int dst, int src, std::int64_t f) {
        for (int c = 0; c < n; ++c) x(dst, c) += f * x(src, c);
    };
    auto add_col = [&](IntMat& x, int dst, int src, std::int64_t f) {
        for (int r = 0; r < n; ++r) x(r, dst) += f * x(r, src);
    };

    for (int t = 0; t < n; ++t) {
        for (;;) {
            int pr = -1, pc = -1;
            for (int i = t; i < n; ++i)
                for (int j = t; j < n; ++j)
                    if (a(i, j) != 0 && (pr < 0 || std::llabs(a(i, j)) < std::llabs(a(pr, pc)))) {
                        pr = i;
                        pc = j;
                    }
            if (pr < 0) break;
            if (pr != t) { swap_rows(a, pr, t); swap_rows(u, pr, t); }
            if (pc != t) { swap_cols(a, pc, t); swap_cols(v, pc, t); }
            bool dirty = false;
            for (int i = t + 1; i < n; ++i) {
                std::int64_t q = a(i, t) / a(t, t);
                if (q) { add_row(a, i, t, -q); add_row(u, i, t, -q); }
                if (a(i, t)) dirty = true;
            }
            for (int j = t + 1; j < n; ++j) {
                std::int64_t q = a(t, j) / a(t, t);
                if (q) { add_col(a, j, t, -q); add_col(v, j, t, -q); }
                if (a(t, j)) dirty = true;
            }
            if (dirty) continue;
            int bad = -1;
            for (int i = t + 1; i < n && bad < 0; ++i)
                for (int j = t + 1; j < n; ++j)
                    if (a(i, j) % a(t, t) != 0) { bad = i; break; }
            if (bad < 0) break;
            add_row(a, t, bad, 1);
            add_row(u, t, bad, 1);
        }
        if (a(t, t) < 0) {
            for (int c = 0; c < n; ++c) { a(t, c) = -a(t, c); u(t, c) = -u(t, c); }
        }
    }
    SmithForm s{u, v, IntVec(n)};
    for (int i = 0; i < n; ++i) s.d[i] = a(i, i);
    return s;
}

void QuotientGroup::build_index() {
    index_.clear();
    for (std::size_t i = 0; i < reps.size(); ++i) index_.emplace(reps[i], i);
}

bool QuotientGroup::contains(const RatVec& v) const { return index_.count(reduce_mod_one(v)) > 0; }

std::size_t QuotientGroup::index_of(const RatVec& v) const {
    auto it = index_.find(reduce_mod_one(v));
    if (it == index_.end()) fail(ErrorKind::Domain, "vector is not in the scaled dual lattice");
    return it->second;
}

std::size_t QuotientGroup::add(std::size_t a, std::size_t b) const {
    return index_of(csmcg::add(reps.at(a), reps.at(b)));
}

std::size_t QuotientGroup::neg(std::size_t a) const { return index_of(scale(reps.at(a), -1)); }

QuotientGroup quotient_group(const RootSystem& rs, std::int64_t k, std::size_t ceiling) {
    require_level(k);
    int n = rs.rank;
    IntMat m = scaled_gram(rs, k);
    Rational order = m.to_rat().det();
    if (order.denominator() != 1 || order <= 0) fail(ErrorKind::Inconsistent, "k*gram1 has non-positive determinant");
    if (order.numerator() > static_cast<std::int64_t>(ceiling))
        fail(ErrorKind::Resource, "|Z_k| = " + to_string(order) + " exceeds ceiling " + std::to_string(ceiling));

    SmithForm snf = smith_normal_form(m);
    RatMat uinv = snf.u.to_rat().inverse();
    RatMat minv = m.to_rat().inverse();
    RatMat gen = minv * uinv;  // y -> gamma

    QuotientGroup z;
    z.level = k;
    for (auto d : snf.d)
        if (d > 1) z.invariant_factors.push_back(d);

    IntVec y(n, 0);
    for (;;) {
        z.reps.push_back(reduce_mod_one(gen * to_rat(y)));
        int i = n - 1;
        while (i >= 0 && ++y[i] >= snf.d[i]) y[i--] = 0;
        if (i < 0) break;
    }
    std::sort(z.reps.begin(), z.reps.end(), lex_less);
    if (std::adjacent_find(z.reps.begin(), z.reps.end()) != z.reps.end())
        fail(ErrorKind::Inconsistent, "duplicate coset representatives");
    if (static_cast<std::int64_t>(z.reps.size()) != order.numerator())
        fail(ErrorKind::Inconsistent, "quotient size differs from det(k gram1)");
    z.build_index();
    return z;
}

std::vector<std::vector<std::size_t>> weyl_action(const QuotientGroup& z, const WeylGroup& w) {
    std::vector<std::vector<std::size_t>> act;
    act.reserve(w.order());
    for (const auto& e : w.elements) {
        std::vector<std::size_t> p(z.order());
        for (std::size_t c = 0; c < z.order(); ++c) p[c] = z.index_of(e.matrix.apply(z.reps[c]));
        act.push_back(std::move(p));
    }
    return act;
}

AlcoveSet alcove_points(const RootSystem& rs, std::int64_t k, const QuotientGroup& z, const WeylGroup& w) {
    require_level(k);
    int n = rs.rank;
    RatMat kinv = (rs.gram1 * Rational(k)).inverse();
    IntVec comarks(n);
    for (int i = 0; i < n; ++i) comarks[i] = rs.highest_root_coroot[i].numerator();

    auto act = weyl_action(z, w);
    AlcoveSet out;
    out.level = k;
    IntVec c(n, 0);
    std::function<void(int, std::int64_t)> scan = [&](int i, std::int64_t budget) {
        if (i == n) {
            AlcovePoint p;
            p.labels = c;
            p.coords = kinv * to_rat(c);
            bool interior = true;
            for (size_t r = 0; r < rs.positive_roots_coroot.size(); ++r) {
                Rational x = pairing(rs, p.coords, rs.positive_roots_coroot[r]);
                if (x < 0 || x > 1) fail(ErrorKind::Inconsistent, "label scan left the closed alcove");
                if (x == Rational(0) || x == Rational(1)) interior = false;
            }
            p.interior = interior;
            p.quotient_index = z.index_of(p.coords);
            std::vector<bool> hit(z.order(), false);
            for (const auto& perm : act) {
                hit[perm[p.quotient_index]] = true;
                if (perm[p.quotient_index] == p.quotient_index) ++p.stabilizer;
            }
            --p.stabilizer;  // counted from 1
            p.orbit_size = static_cast<std::size_t>(std::count(hit.begin(), hit.end(), true));
            out.closed_points.push_back(p);
            return;
        }
        for (std::int64_t v = 0; v * comarks[i] <= budget; ++v) {
            c[i] = v;
            scan(i + 1, budget - v * comarks[i]);
        }
        c[i] = 0;
    };
    scan(0, k);
    std::sort(out.closed_points.begin(), out.closed_points.end(),
              [](const AlcovePoint& a, const AlcovePoint& b) { return a.quotient_index < b.quotient_index; });
    for (const auto& p : out.closed_points)
        if (p.interior) out.open_points.push_back(p);
    return out;
}

FoldResult fold_to_alcove(const RootSystem& rs, std::int64_t k, const RatVec& gamma) {
    require_level(k);
    int n = rs.rank;
    if (!in_scaled_dual(rs, k, gamma)) fail(ErrorKind::Domain, "fold_to_alcove: point is not in the scaled dual lattice");
    const RatVec& theta = rs.highest_root_coroot;
    IntVec a(n);
    for (int i = 0; i < n; ++i) a[i] = theta[i].numerator();
    RatVec gtheta = rs.gram1 * theta;
    IntMat s0 = IntMat::identity(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s0(i, j) -= a[i] * gtheta[j].numerator();

    FoldResult f{gamma, IntMat::identity(n), RatVec(n), 1, false};
    RatMat kg = rs.gram1 * Rational(k);
    for (int iter = 0;; ++iter) {
        if (iter > 100000) fail(ErrorKind::Inconsistent, "fold_to_alcove did not terminate");
        RatVec lab = kg * f.rep;
        int neg = -1;
        for (int i = 0; i < n; ++i)
            if (lab[i] < 0) { neg = i; break; }
        if (neg >= 0) {
            const IntMat& s = rs.simple_reflections[neg];
            f.rep = s.apply(f.rep);
            f.translation = s.apply(f.translation);
            f.w = s * f.w;
            f.sign = -f.sign;
            continue;
        }
        Rational top = dot(to_rat(a), lab);
        if (top > k) {
            f.rep = add(s0.apply(f.rep), theta);
            f.translation = add(s0.apply(f.translation), theta);
            f.w = s0 * f.w;
            f.sign = -f.sign;
            continue;
        }
        bool wall = top == Rational(k);
        for (int i = 0; i < n; ++i) wall = wall || lab[i] == Rational(0);
        f.boundary = wall;
        return f;
    }
}

Rational alcove_volume_sq(const RootSystem& rs) {
    int n = rs.rank;
    RatMat ginv = rs.gram1.inverse();
    RatMat v(n, n);
    for (int i = 0; i < n; ++i)
        for (int r = 0; r < n; ++r) v(r, i) = ginv(r, i) / rs.highest_root_coroot[i];
    Rational d = v.det();
    Rational nf = 1;
    for (int i = 2; i <= n; ++i) nf *= i;
    return d * d * rs.gram1.det() / (nf * nf);
}

}  // namespace csmcg

#include "csmcg/rootsys.hpp"
#include "csmcg/error.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace csmcg {

void validate(const LieType& t) {
    int n = t.rank;
    auto bad = [&](const std::string& rule) {
        fail(ErrorKind::InvalidArgument,
             std::string("invalid Lie type ") + t.family + std::to_string(n) + ": " + rule);
    };
    switch (t.family) {
        case 'A': if (n < 1) bad("A requires rank >= 1"); break;
        case 'B': if (n < 2) bad("B requires rank >= 2"); break;
        case 'C': if (n < 3) bad("C requires rank >= 3 (C2 is B2)"); break;
        case 'D': if (n < 4) bad("D requires rank >= 4"); break;
        case 'E': if (n < 6 || n > 8) bad("E requires rank 6, 7 or 8"); break;
        case 'F': if (n != 4) bad("F requires rank 4"); break;
        case 'G': if (n != 2) bad("G requires rank 2"); break;
        default: bad("family must be one of A,B,C,D,E,F,G");
    }
}

std::string type_name(const LieType& t) { return std::string(1, t.family) + std::to_string(t.rank); }

IntMat IntMat::identity(int n) {
    IntMat m{n, std::vector<std::int64_t>(static_cast<size_t>(n) * n, 0)};
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMat IntMat::operator*(const IntMat& o) const {
    IntMat r{n, std::vector<std::int64_t>(static_cast<size_t>(n) * n, 0)};
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            std::int64_t a = (*this)(i, k);
            if (!a) continue;
            for (int j = 0; j < n; ++j) r(i, j) += a * o(k, j);
        }
    return r;
}

RatVec IntMat::apply(const RatVec& v) const {
    RatVec r(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if ((*this)(i, j)) r[i] += v[j] * (*this)(i, j);
    return r;
}

IntVec IntMat::apply(const IntVec& v) const {
    IntVec r(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
}

RatMat IntMat::to_rat() const {
    RatMat m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = (*this)(i, j);
    return m;
}

namespace {

RatMat simple_root_gram(const LieType& t) {
    int n = t.rank;
    RatMat b(n, n);
    auto edge = [&](int i, int j, Rational v) { b(i, j) = v; b(j, i) = v; };
    for (int i = 0; i < n; ++i) b(i, i) = 2;
    switch (t.family) {
        case 'A':
            for (int i = 0; i + 1 < n; ++i) edge(i, i + 1, -1);
            break;
        case 'B':
            for (int i = 0; i + 1 < n; ++i) edge(i, i + 1, -1);
            b(n - 1, n - 1) = 1;
            break;
        case 'C':
            for (int i = 0; i + 1 < n; ++i) b(i, i) = 1;
            for (int i = 0; i + 2 < n; ++i) edge(i, i + 1, Rational(-1, 2));
            edge(n - 2, n - 1, -1);
            break;
        case 'D':
            for (int i = 0; i + 2 < n; ++i) edge(i, i + 1, -1);
            edge(n - 3, n - 1, -1);
            break;
        case 'E':
            // Bourbaki labels: 1-3-4-5-6-7-8 with 2 hanging off 4
            edge(0, 2, -1);
            edge(1, 3, -1);
            for (int i = 2; i + 1 < n; ++i) edge(i, i + 1, -1);
            break;
        case 'F':
            b(2, 2) = 1;
            b(3, 3) = 1;
            edge(0, 1, -1);
            edge(1, 2, -1);
            edge(2, 3, Rational(-1, 2));
            break;
        case 'G':
            b(0, 0) = Rational(2, 3);
            edge(0, 1, -1);
            break;
    }
    return b;
}

}  // namespace

Rational RootSystem::simple_root_pairing(int i, const RatVec& x) const {
    // <alpha_i, b_j>_1 = A_ji
    Rational s = 0;
    for (int j = 0; j < rank; ++j) s += cartan(j, i) * x[j];
    return s;
}

RootSystem build_root_system(const LieType& t) {
    validate(t);
    RootSystem rs;
    rs.type = t;
    int n = rs.rank = t.rank;
    rs.simple_gram = simple_root_gram(t);
    const RatMat& b = rs.simple_gram;

    rs.cartan = RatMat(n, n);
    rs.gram1 = RatMat(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            rs.cartan(i, j) = Rational(2) * b(i, j) / b(i, i);
            rs.gram1(i, j) = Rational(4) * b(i, j) / (b(i, i) * b(j, j));
        }
    if (!rs.cartan.is_integral() || !rs.gram1.is_integral())
        fail(ErrorKind::Inconsistent, "non-integral Cartan data for " + type_name(t));

    for (int i = 0; i < n; ++i) {
        RatVec a(n);
        a[i] = b(i, i) / 2;
        rs.simple_roots.push_back(a);
    }

    // root closure under simple reflections, simple-root coordinates
    std::set<IntVec> roots;
    std::deque<IntVec> queue;
    for (int i = 0; i < n; ++i) {
        IntVec e(n, 0);
        e[i] = 1;
        roots.insert(e);
        queue.push_back(e);
    }
    while (!queue.empty()) {
        IntVec c = queue.front();
        queue.pop_front();
        for (int i = 0; i < n; ++i) {
            std::int64_t p = 0;
            for (int j = 0; j < n; ++j) p += c[j] * rs.cartan(i, j).numerator();
            IntVec r = c;
            r[i] -= p;
            if (roots.insert(r).second) queue.push_back(r);
        }
    }

    for (const auto& c : roots) {
        if (std::all_of(c.begin(), c.end(), [](std::int64_t x) { return x >= 0; }))
            rs.positive_roots.push_back(c);
    }
    std::stable_sort(rs.positive_roots.begin(), rs.positive_roots.end(), [](const IntVec& x, const IntVec& y) {
        std::int64_t hx = 0, hy = 0;
        for (auto v : x) hx += v;
        for (auto v : y) hy += v;
        return hx < hy;
    });
    rs.num_positive = static_cast<int>(rs.positive_roots.size());
    if (2 * rs.positive_roots.size() != roots.size())
        fail(ErrorKind::Inconsistent, "root closure produced an unbalanced root set");

    RatVec two_rho(n);
    for (const auto& c : rs.positive_roots) {
        RatVec v(n);
        for (int i = 0; i < n; ++i) v[i] = b(i, i) / 2 * c[i];
        Rational norm2 = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) norm2 += b(i, j) * c[i] * c[j];
        rs.positive_roots_coroot.push_back(v);
        rs.root_norm2.push_back(norm2);
        rs.positive_coroots.push_back(scale(v, Rational(2) / norm2));
        two_rho = add(two_rho, v);
        if (norm2 != Rational(2)) rs.simply_laced = false;
    }
    rs.rho = scale(two_rho, Rational(1, 2));

    rs.highest_root = rs.positive_roots.back();
    rs.highest_root_coroot = rs.positive_roots_coroot.back();
    if (rs.root_norm2.back() != Rational(2)) fail(ErrorKind::Inconsistent, "highest root is not long");
    Rational h = pairing(rs, rs.rho, rs.highest_root_coroot) + 1;
    if (h.denominator() != 1) fail(ErrorKind::Inconsistent, "non-integral dual Coxeter number");
    rs.dual_coxeter = static_cast<int>(h.numerator());

    for (int i = 0; i < n; ++i) {
        IntMat s = IntMat::identity(n);
        for (int j = 0; j < n; ++j) s(i, j) -= rs.cartan(j, i).numerator();
        rs.simple_reflections.push_back(s);
    }
    return rs;
}

std::uint64_t classical_weyl_order(const LieType& t) {
    auto fact = [](int m) {
        std::uint64_t f = 1;
        for (int i = 2; i <= m; ++i) f *= static_cast<std::uint64_t>(i);
        return f;
    };
    int n = t.rank;
    switch (t.family) {
        case 'A': return fact(n + 1);
        case 'B':
        case 'C': return (std::uint64_t{1} << n) * fact(n);
        case 'D': return (std::uint64_t{1} << (n - 1)) * fact(n);
        case 'E': return n == 6 ? 51840ULL : n == 7 ? 2903040ULL : 696729600ULL;
        case 'F': return 1152;
        case 'G': return 12;
    }
    return 0;
}

WeylGroup generate_weyl_group(const RootSystem& rs, std::size_t ceiling) {
    if (classical_weyl_order(rs.type) > ceiling)
        fail(ErrorKind::Resource, "Weyl group of " + type_name(rs.type) + " has " +
                                      std::to_string(classical_weyl_order(rs.type)) +
                                      " elements, above the ceiling " + std::to_string(ceiling));
    int n = rs.rank;
    WeylGroup w;
    std::map<std::vector<std::int64_t>, std::size_t> seen;
    w.elements.push_back({IntMat::identity(n), 1, 0});
    seen.emplace(w.elements[0].matrix.a, 0);
    for (std::size_t head = 0; head < w.elements.size(); ++head) {
        for (const auto& s : rs.simple_reflections) {
            IntMat m = s * w.elements[head].matrix;
            if (seen.count(m.a)) continue;
            if (w.elements.size() >= ceiling)
                fail(ErrorKind::Resource, "Weyl group enumeration exceeded ceiling " + std::to_string(ceiling));
            int len = w.elements[head].length + 1;
            seen.emplace(m.a, w.elements.size());
            w.elements.push_back({m, (len % 2) ? -1 : 1, len});
        }
    }
    return w;
}

Rational pairing(const RootSystem& rs, const RatVec& v, const RatVec& w, std::int64_t k) {
    if (static_cast<int>(v.size()) != rs.rank || static_cast<int>(w.size()) != rs.rank)
        fail(ErrorKind::InvalidArgument, "pairing: vector length differs from rank");
    Rational s = 0;
    for (int i = 0; i < rs.rank; ++i) {
        if (v[i] == Rational(0)) continue;
        for (int j = 0; j < rs.rank; ++j)
            if (w[j] != Rational(0)) s += v[i] * rs.gram1(i, j) * w[j];
    }
    return s * k;
}

}  // namespace csmcg

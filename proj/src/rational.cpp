#include "csmcg/rational.hpp"
#include "csmcg/error.hpp"

#include <cmath>
#include <numbers>

namespace csmcg {

std::string to_string(const Rational& q) {
    if (q.denominator() == 1) return std::to_string(q.numerator());
    return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

Rational parse_rational(const std::string& s) {
    try {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rational(std::stoll(s));
        std::int64_t den = std::stoll(s.substr(slash + 1));
        if (den == 0) fail(ErrorKind::InvalidArgument, "zero denominator in '" + s + "'");
        return Rational(std::stoll(s.substr(0, slash)), den);
    } catch (const std::logic_error&) {
        fail(ErrorKind::InvalidArgument, "not a rational: '" + s + "'");
    }
}

std::int64_t floor_div(const Rational& q) {
    std::int64_t n = q.numerator(), d = q.denominator();  // d > 0
    std::int64_t f = n / d;
    if (n % d != 0 && n < 0) --f;
    return f;
}

Rational frac(const Rational& q) { return q - floor_div(q); }

double to_double(const Rational& q) {
    return static_cast<double>(q.numerator()) / static_cast<double>(q.denominator());
}

std::complex<double> unit_phase(const Rational& q) {
    Rational f = frac(q);
    // exact quarter turns avoid sin(pi) ~ 1e-16 noise
    if (f == Rational(0)) return {1.0, 0.0};
    if (f == Rational(1, 4)) return {0.0, 1.0};
    if (f == Rational(1, 2)) return {-1.0, 0.0};
    if (f == Rational(3, 4)) return {0.0, -1.0};
    double a = 2.0 * std::numbers::pi * to_double(f);
    return {std::cos(a), std::sin(a)};
}

RatMat RatMat::identity(int n) {
    RatMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RatMat RatMat::operator*(const RatMat& o) const {
    if (c_ != o.r_) fail(ErrorKind::InvalidArgument, "RatMat: shape mismatch");
    RatMat out(r_, o.c_);
    for (int i = 0; i < r_; ++i)
        for (int k = 0; k < c_; ++k) {
            const Rational& a = (*this)(i, k);
            if (a == Rational(0)) continue;
            for (int j = 0; j < o.c_; ++j) out(i, j) += a * o(k, j);
        }
    return out;
}

RatMat RatMat::operator*(const Rational& s) const {
    RatMat out = *this;
    for (auto& x : out.a_) x *= s;
    return out;
}

RatVec RatMat::operator*(const RatVec& v) const {
    if (static_cast<int>(v.size()) != c_) fail(ErrorKind::InvalidArgument, "RatMat: vector size mismatch");
    RatVec out(r_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
}

RatMat RatMat::transpose() const {
    RatMat t(c_, r_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Rational RatMat::det() const {
    if (r_ != c_) fail(ErrorKind::InvalidArgument, "det of non-square matrix");
    RatMat m = *this;
    Rational d = 1;
    for (int col = 0; col < r_; ++col) {
        int piv = -1;
        for (int i = col; i < r_; ++i)
            if (m(i, col) != Rational(0)) { piv = i; break; }
        if (piv < 0) return 0;
        if (piv != col) {
            for (int j = 0; j < c_; ++j) std::swap(m(piv, j), m(col, j));
            d = -d;
        }
        d *= m(col, col);
        for (int i = col + 1; i < r_; ++i) {
            Rational f = m(i, col) / m(col, col);
            if (f == Rational(0)) continue;
            for (int j = col; j < c_; ++j) m(i, j) -= f * m(col, j);
        }
    }
    return d;
}

RatMat RatMat::inverse() const {
    if (r_ != c_) fail(ErrorKind::InvalidArgument, "inverse of non-square matrix");
    int n = r_;
    RatMat m = *this, inv = identity(n);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int i = col; i < n; ++i)
            if (m(i, col) != Rational(0)) { piv = i; break; }
        if (piv < 0) fail(ErrorKind::Domain, "singular matrix");
        for (int j = 0; j < n; ++j) {
            std::swap(m(piv, j), m(col, j));
            std::swap(inv(piv, j), inv(col, j));
        }
        Rational p = m(col, col);
        for (int j = 0; j < n; ++j) {
            m(col, j) /= p;
            inv(col, j) /= p;
        }
        for (int i = 0; i < n; ++i) {
            if (i == col || m(i, col) == Rational(0)) continue;
            Rational f = m(i, col);
            for (int j = 0; j < n; ++j) {
                m(i, j) -= f * m(col, j);
                inv(i, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

bool RatMat::is_integral() const {
    for (const auto& x : a_)
        if (x.denominator() != 1) return false;
    return true;
}

Rational dot(const RatVec& a, const RatVec& b) {
    Rational s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

RatVec add(const RatVec& a, const RatVec& b) {
    RatVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

RatVec sub(const RatVec& a, const RatVec& b) {
    RatVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

RatVec scale(const RatVec& a, const Rational& s) {
    RatVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
    return r;
}

RatVec to_rat(const IntVec& v) { return RatVec(v.begin(), v.end()); }

RatVec reduce_mod_one(const RatVec& v) {
    RatVec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = frac(v[i]);
    return r;
}

bool is_integral(const RatVec& v) {
    for (const auto& x : v)
        if (x.denominator() != 1) return false;
    return true;
}

bool lex_less(const RatVec& a, const RatVec& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace csmcg

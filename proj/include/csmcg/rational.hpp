#pragma once

#include <boost/rational.hpp>

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace csmcg {

using Rational = boost::rational<std::int64_t>;
using RatVec = std::vector<Rational>;
using IntVec = std::vector<std::int64_t>;

// Under C++20 boost's mixed rational/integer operator== can select its own reversed form and
// recurse forever; these exact matches take precedence.
inline bool operator==(const Rational& a, std::int64_t b) { return a.denominator() == 1 && a.numerator() == b; }
inline bool operator==(const Rational& a, int b) { return a == static_cast<std::int64_t>(b); }

std::string to_string(const Rational& q);
Rational parse_rational(const std::string& s);

// fractional part in [0,1)
Rational frac(const Rational& q);
std::int64_t floor_div(const Rational& q);

// e^{2 pi i q}, q reduced mod 1 first so large exponents stay accurate
std::complex<double> unit_phase(const Rational& q);

double to_double(const Rational& q);

// dense square/rectangular exact matrix, row-major
class RatMat {
public:
    RatMat() = default;
    RatMat(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<size_t>(rows) * cols) {}
    static RatMat identity(int n);

    int rows() const { return r_; }
    int cols() const { return c_; }
    Rational& operator()(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
    const Rational& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

    RatMat operator*(const RatMat& o) const;
    RatMat operator*(const Rational& s) const;
    RatVec operator*(const RatVec& v) const;
    bool operator==(const RatMat& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }

    RatMat transpose() const;
    Rational det() const;
    RatMat inverse() const;
    bool is_integral() const;

private:
    int r_ = 0, c_ = 0;
    std::vector<Rational> a_;
};

Rational dot(const RatVec& a, const RatVec& b);
RatVec add(const RatVec& a, const RatVec& b);
RatVec sub(const RatVec& a, const RatVec& b);
RatVec scale(const RatVec& a, const Rational& s);
RatVec to_rat(const IntVec& v);
// coordinatewise fractional part: canonical rep of v mod Z^n
RatVec reduce_mod_one(const RatVec& v);
bool is_integral(const RatVec& v);
bool lex_less(const RatVec& a, const RatVec& b);

}  // namespace csmcg

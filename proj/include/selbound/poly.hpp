#pragma once

#include <vector>

#include "selbound/ints.hpp"

namespace selbound::arith {

// Dense univariate polynomials, coefficients ascending by degree.
// Invariant: no trailing zero coefficient (the zero polynomial is {}).
struct zpoly {
    std::vector<zint> c;

    zpoly() = default;
    explicit zpoly(std::vector<zint> v) : c(std::move(v)) { trim(); }
    zpoly(std::initializer_list<long> v) {
        for (long x : v) c.emplace_back(x);
        trim();
    }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int deg() const { return static_cast<int>(c.size()) - 1; }
    const zint& lc() const { return c.back(); }
    zint coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(c.size())) return 0;
        return c[static_cast<size_t>(i)];
    }
    bool is_monic() const { return !c.empty() && c.back() == 1; }
    bool operator==(const zpoly& o) const { return c == o.c; }
};

struct qpoly {
    std::vector<qrat> c;

    qpoly() = default;
    explicit qpoly(std::vector<qrat> v) : c(std::move(v)) { trim(); }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int deg() const { return static_cast<int>(c.size()) - 1; }
    const qrat& lc() const { return c.back(); }
    qrat coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(c.size())) return 0;
        return c[static_cast<size_t>(i)];
    }
    bool is_monic() const { return !c.empty() && c.back() == 1; }
    bool operator==(const qpoly& o) const { return c == o.c; }
};

zpoly operator+(const zpoly& a, const zpoly& b);
zpoly operator-(const zpoly& a, const zpoly& b);
zpoly operator*(const zpoly& a, const zpoly& b);
zpoly operator*(const zint& a, const zpoly& b);
zpoly operator-(const zpoly& a);

qpoly operator+(const qpoly& a, const qpoly& b);
qpoly operator-(const qpoly& a, const qpoly& b);
qpoly operator*(const qpoly& a, const qpoly& b);
qpoly operator*(const qrat& a, const qpoly& b);

zpoly zx_power(int n);  // x^n
zpoly derivative(const zpoly& f);
qpoly derivative(const qpoly& f);
zint eval(const zpoly& f, const zint& x);
qrat eval(const zpoly& f, const qrat& x);
qrat eval(const qpoly& f, const qrat& x);

// p(x + t)
zpoly translate(const zpoly& f, const zint& t);
// p(a*x)
zpoly scale_arg(const zpoly& f, const zint& a);
// x^deg * p(1/x)
zpoly reverse(const zpoly& f);

zint content(const zpoly& f);
zpoly primitive_part(const zpoly& f);  // sign of lc preserved

// Division with remainder over Q; divisor must be nonzero.
void qdivrem(const qpoly& a, const qpoly& b, qpoly& q, qpoly& r);
// Euclidean division by a monic integer polynomial (stays integral).
void zdivrem_monic(const zpoly& a, const zpoly& b, zpoly& q, zpoly& r);
bool divides(const zpoly& d, const zpoly& f);  // exact trial division over Z

// prem(a, b): remainder of lc(b)^(deg a - deg b + 1) * a divided by b.
zpoly pseudo_rem(const zpoly& a, const zpoly& b);

// Monic gcd over Q of the primitive parts; returned as a primitive
// integer polynomial with positive leading coefficient.
zpoly zgcd_poly(const zpoly& a, const zpoly& b);

// Sylvester resultant with the convention
//   Res(f, g) = lc(f)^deg(g) * prod g(alpha_i) over the roots of f,
// so Res(x-1, x+1) = +2. Computed by the subresultant PRS.
zint resultant(const zpoly& f, const zpoly& g);
qrat resultant(const qpoly& f, const qpoly& g);

// (-1)^(d(d-1)/2) Res(f, f') / lc(f); zero iff f has repeated roots.
qrat discriminant(const qpoly& f);
zint discriminant_z(const zpoly& f);  // same, for integral f (result integral when f monic)

zpoly squarefree_part(const zpoly& f);
bool is_squarefree(const zpoly& f);

// f = prod part[k]^(k+1); parts primitive, pairwise coprime (content dropped).
std::vector<zpoly> squarefree_decomposition(const zpoly& f);

qpoly to_qpoly(const zpoly& f);
// f = (num/den) * primitive(f); returns primitive integer poly, den > 0.
zpoly to_zpoly_primitive(const qpoly& f, zint& num, zint& den);
zpoly to_zpoly(const qpoly& f);  // requires integral coefficients

std::string to_string(const zpoly& f, const std::string& var = "x");
std::string to_string(const qpoly& f, const std::string& var = "x");

}  // namespace selbound::arith

#include "selbound/poly.hpp"

#include <sstream>

namespace selbound::arith {

zpoly operator+(const zpoly& a, const zpoly& b) {
    std::vector<zint> c(std::max(a.c.size(), b.c.size()));
    for (size_t i = 0; i < c.size(); i++) c[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
    return zpoly(std::move(c));
}

zpoly operator-(const zpoly& a, const zpoly& b) {
    std::vector<zint> c(std::max(a.c.size(), b.c.size()));
    for (size_t i = 0; i < c.size(); i++) c[i] = a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i));
    return zpoly(std::move(c));
}

zpoly operator*(const zpoly& a, const zpoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<zint> c(a.c.size() + b.c.size() - 1);
    for (size_t i = 0; i < a.c.size(); i++)
        for (size_t j = 0; j < b.c.size(); j++) c[i + j] += a.c[i] * b.c[j];
    return zpoly(std::move(c));
}

zpoly operator*(const zint& a, const zpoly& b) {
    if (a == 0) return {};
    std::vector<zint> c(b.c.size());
    for (size_t i = 0; i < c.size(); i++) c[i] = a * b.c[i];
    return zpoly(std::move(c));
}

zpoly operator-(const zpoly& a) { return zint(-1) * a; }

qpoly operator+(const qpoly& a, const qpoly& b) {
    std::vector<qrat> c(std::max(a.c.size(), b.c.size()));
    for (size_t i = 0; i < c.size(); i++) c[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
    return qpoly(std::move(c));
}

qpoly operator-(const qpoly& a, const qpoly& b) {
    std::vector<qrat> c(std::max(a.c.size(), b.c.size()));
    for (size_t i = 0; i < c.size(); i++) c[i] = a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i));
    return qpoly(std::move(c));
}

qpoly operator*(const qpoly& a, const qpoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<qrat> c(a.c.size() + b.c.size() - 1);
    for (size_t i = 0; i < a.c.size(); i++)
        for (size_t j = 0; j < b.c.size(); j++) c[i + j] += a.c[i] * b.c[j];
    return qpoly(std::move(c));
}

qpoly operator*(const qrat& a, const qpoly& b) {
    if (a == 0) return {};
    std::vector<qrat> c(b.c.size());
    for (size_t i = 0; i < c.size(); i++) c[i] = a * b.c[i];
    return qpoly(std::move(c));
}

zpoly zx_power(int n) {
    std::vector<zint> c(static_cast<size_t>(n) + 1);
    c.back() = 1;
    return zpoly(std::move(c));
}

zpoly derivative(const zpoly& f) {
    if (f.deg() <= 0) return {};
    std::vector<zint> c(f.c.size() - 1);
    for (size_t i = 1; i < f.c.size(); i++) c[i - 1] = zint(static_cast<long>(i)) * f.c[i];
    return zpoly(std::move(c));
}

qpoly derivative(const qpoly& f) {
    if (f.deg() <= 0) return {};
    std::vector<qrat> c(f.c.size() - 1);
    for (size_t i = 1; i < f.c.size(); i++) c[i - 1] = qrat(static_cast<long>(i)) * f.c[i];
    return qpoly(std::move(c));
}

zint eval(const zpoly& f, const zint& x) {
    zint r = 0;
    for (size_t i = f.c.size(); i-- > 0;) r = r * x + f.c[i];
    return r;
}

qrat eval(const zpoly& f, const qrat& x) {
    qrat r = 0;
    for (size_t i = f.c.size(); i-- > 0;) r = r * x + qrat(f.c[i]);
    return r;
}

qrat eval(const qpoly& f, const qrat& x) {
    qrat r = 0;
    for (size_t i = f.c.size(); i-- > 0;) r = r * x + f.c[i];
    return r;
}

zpoly translate(const zpoly& f, const zint& t) {
    // Horner: p(x+t) built from the top coefficient down
    zpoly r;
    zpoly xt({t, zint(1)});
    for (size_t i = f.c.size(); i-- > 0;) {
        r = r * xt;
        if (r.c.empty()) r.c.resize(1);
        r.c[0] += f.c[i];
        r.trim();
    }
    return r;
}

zpoly scale_arg(const zpoly& f, const zint& a) {
    std::vector<zint> c(f.c.size());
    zint pw = 1;
    for (size_t i = 0; i < f.c.size(); i++) {
        c[i] = f.c[i] * pw;
        pw *= a;
    }
    return zpoly(std::move(c));
}

zpoly reverse(const zpoly& f) {
    std::vector<zint> c(f.c.rbegin(), f.c.rend());
    return zpoly(std::move(c));
}

zint content(const zpoly& f) {
    zint g = 0;
    for (const auto& x : f.c) g = zgcd(g, x);
    return g;
}

zpoly primitive_part(const zpoly& f) {
    if (f.is_zero()) return f;
    zint ct = content(f);
    if (f.lc() < 0) ct = -ct;
    std::vector<zint> c(f.c.size());
    for (size_t i = 0; i < c.size(); i++) c[i] = zdivexact(f.c[i], ct);
    return zpoly(std::move(c));
}

void qdivrem(const qpoly& a, const qpoly& b, qpoly& q, qpoly& r) {
    if (b.is_zero()) throw invalid_input_error("qdivrem: division by zero polynomial");
    q = qpoly{};
    r = a;
    while (!r.is_zero() && r.deg() >= b.deg()) {
        int k = r.deg() - b.deg();
        qrat f = r.lc() / b.lc();
        std::vector<qrat> qc(static_cast<size_t>(k) + 1);
        qc[static_cast<size_t>(k)] = f;
        qpoly mono(std::move(qc));
        q = q + mono;
        r = r - mono * b;
    }
}

void zdivrem_monic(const zpoly& a, const zpoly& b, zpoly& q, zpoly& r) {
    if (!b.is_monic()) throw invalid_input_error("zdivrem_monic: divisor not monic");
    q = zpoly{};
    r = a;
    while (!r.is_zero() && r.deg() >= b.deg()) {
        int k = r.deg() - b.deg();
        zint f = r.lc();
        std::vector<zint> qc(static_cast<size_t>(k) + 1);
        qc[static_cast<size_t>(k)] = f;
        zpoly mono(std::move(qc));
        q = q + mono;
        r = r - mono * b;
    }
}

bool divides(const zpoly& d, const zpoly& f) {
    if (d.is_zero()) return f.is_zero();
    if (f.is_zero()) return true;
    if (f.deg() < d.deg()) return false;
    zpoly r = f;
    for (int k = f.deg() - d.deg(); k >= 0; k--) {
        zint top = r.coeff(d.deg() + k);
        if (top == 0) continue;
        zint c, rem;
        mpz_tdiv_qr(c.get_mpz_t(), rem.get_mpz_t(), top.get_mpz_t(), d.lc().get_mpz_t());
        if (rem != 0) return false;
        std::vector<zint> mc(static_cast<size_t>(k) + 1);
        mc[static_cast<size_t>(k)] = c;
        r = r - zpoly(std::move(mc)) * d;
    }
    return r.is_zero();
}

// Exact quotient of integer polynomials; throws if not divisible over Q
// or quotient not integral.
static zpoly exact_div(const zpoly& f, const zpoly& d) {
    qpoly q, r;
    qdivrem(to_qpoly(f), to_qpoly(d), q, r);
    if (!r.is_zero()) throw internal_inconsistency_error("exact_div: remainder nonzero");
    return to_zpoly(q);
}

zpoly pseudo_rem(const zpoly& a, const zpoly& b) {
    if (b.is_zero()) throw invalid_input_error("pseudo_rem: zero divisor");
    int da = a.deg(), db = b.deg();
    if (da < db) return a;
    zpoly r = a;
    zint d = b.lc();
    for (int k = da - db; k >= 0; k--) {
        if (r.deg() < db + k) {
            r = d * r;
            continue;
        }
        zint top = r.coeff(db + k);
        std::vector<zint> mc(static_cast<size_t>(k) + 1);
        mc[static_cast<size_t>(k)] = top;
        r = d * r - zpoly(std::move(mc)) * b;
    }
    return r;
}

zpoly zgcd_poly(const zpoly& a, const zpoly& b) {
    zpoly f = primitive_part(a), g = primitive_part(b);
    if (f.is_zero()) return g;
    if (g.is_zero()) return f;
    if (f.deg() < g.deg()) std::swap(f, g);
    while (!g.is_zero()) {
        zpoly r = pseudo_rem(f, g);
        f = g;
        g = r.is_zero() ? zpoly{} : primitive_part(r);
    }
    if (f.lc() < 0) f = -f;
    return f;
}

namespace {

// Subresultant PRS (Cohen, Alg. 3.3.7) for primitive A, B, deg A >= deg B >= 1.
zint subres_core(zpoly A, zpoly B) {
    zint s = 1, g = 1, h = 1;
    while (true) {
        int delta = A.deg() - B.deg();
        if ((A.deg() % 2 == 1) && (B.deg() % 2 == 1)) s = -s;
        zpoly R = pseudo_rem(A, B);
        if (R.is_zero()) return 0;  // deg B >= 1 here, so a common root exists
        A = B;
        zint denom = g * zpow(h, static_cast<unsigned long>(delta));
        std::vector<zint> nc(R.c.size());
        for (size_t i = 0; i < R.c.size(); i++) nc[i] = zdivexact(R.c[i], denom);
        B = zpoly(std::move(nc));
        g = A.lc();
        if (delta > 0) h = zdivexact(zpow(g, static_cast<unsigned long>(delta)), zpow(h, static_cast<unsigned long>(delta - 1)));
        if (B.deg() == 0) break;
    }
    int dA = A.deg();
    zint res = zpow(B.lc(), static_cast<unsigned long>(dA));
    if (dA > 1) res = zdivexact(res, zpow(h, static_cast<unsigned long>(dA - 1)));
    return s * res;
}

}  // namespace

zint resultant(const zpoly& f, const zpoly& g) {
    if (f.is_zero() && g.is_zero()) throw invalid_input_error("resultant: both inputs zero");
    if (f.is_zero() || g.is_zero()) {
        const zpoly& nz = f.is_zero() ? g : f;
        return nz.deg() == 0 ? zint(1) : zint(0);
    }
    if (f.deg() == 0) return zpow(f.lc(), static_cast<unsigned long>(g.deg()));
    if (g.deg() == 0) return zpow(g.lc(), static_cast<unsigned long>(f.deg()));
    if (f.deg() < g.deg()) {
        zint r = resultant(g, f);
        if ((f.deg() % 2 == 1) && (g.deg() % 2 == 1)) r = -r;
        return r;
    }
    // split off contents (sign carried by lc)
    zint cf = content(f), cg = content(g);
    if (f.lc() < 0) cf = -cf;
    if (g.lc() < 0) cg = -cg;
    zpoly A = primitive_part(f), B = primitive_part(g);
    zint scale = 1;
    {
        zint a = zpow(abs(cf), static_cast<unsigned long>(g.deg()));
        zint b = zpow(abs(cg), static_cast<unsigned long>(f.deg()));
        scale = a * b;
        if (cf < 0 && g.deg() % 2 == 1) scale = -scale;
        if (cg < 0 && f.deg() % 2 == 1) scale = -scale;
    }
    return scale * subres_core(A, B);
}

qrat resultant(const qpoly& f, const qpoly& g) {
    if (f.is_zero() && g.is_zero()) throw invalid_input_error("resultant: both inputs zero");
    if (f.is_zero() || g.is_zero()) {
        const qpoly& nz = f.is_zero() ? g : f;
        return nz.deg() == 0 ? qrat(1) : qrat(0);
    }
    zint fn, fd, gn, gd;
    zpoly F = to_zpoly_primitive(f, fn, fd);
    zpoly G = to_zpoly_primitive(g, gn, gd);
    qrat r(resultant(F, G));
    qrat cf(fn, fd), cg(gn, gd);
    cf.canonicalize();
    cg.canonicalize();
    qrat scale = 1;
    for (int i = 0; i < g.deg(); i++) scale *= cf;
    for (int i = 0; i < f.deg(); i++) scale *= cg;
    return scale * r;
}

qrat discriminant(const qpoly& f) {
    if (f.deg() < 1) throw invalid_input_error("discriminant: constant polynomial");
    qrat r = resultant(f, derivative(f));
    long d = f.deg();
    long e = (d * (d - 1)) / 2;
    qrat s = (e % 2 == 0) ? qrat(1) : qrat(-1);
    return s * r / f.lc();
}

zint discriminant_z(const zpoly& f) {
    if (f.deg() < 1) throw invalid_input_error("discriminant: constant polynomial");
    zint r = resultant(f, derivative(f));
    long d = f.deg();
    long e = (d * (d - 1)) / 2;
    zint num = (e % 2 == 0) ? r : -r;
    return zdivexact(num, f.lc());
}

zpoly squarefree_part(const zpoly& f) {
    if (f.deg() <= 0) return f.is_zero() ? f : zpoly({zint(1)});
    zpoly g = zgcd_poly(f, derivative(f));
    zpoly fp = primitive_part(f);
    if (g.deg() == 0) return fp;
    return exact_div(fp, g);
}

bool is_squarefree(const zpoly& f) {
    if (f.deg() <= 0) return !f.is_zero();
    return zgcd_poly(f, derivative(f)).deg() == 0;
}

std::vector<zpoly> squarefree_decomposition(const zpoly& f) {
    // Yun's algorithm on the primitive part
    std::vector<zpoly> out;
    zpoly p = primitive_part(f);
    if (p.deg() <= 0) return out;
    zpoly dp = derivative(p);
    zpoly a = zgcd_poly(p, dp);
    if (a.deg() == 0) {
        out.push_back(p);
        return out;
    }
    zpoly b = exact_div(p, a);
    zpoly c = exact_div(dp, a);
    zpoly d = c - derivative(b);
    while (b.deg() > 0) {
        zpoly g = zgcd_poly(b, d);
        out.push_back(g);
        b = exact_div(b, g);
        c = exact_div(d, g);
        d = c - derivative(b);
    }
    return out;
}

qpoly to_qpoly(const zpoly& f) {
    std::vector<qrat> c(f.c.size());
    for (size_t i = 0; i < c.size(); i++) c[i] = qrat(f.c[i]);
    return qpoly(std::move(c));
}

zpoly to_zpoly_primitive(const qpoly& f, zint& num, zint& den) {
    if (f.is_zero()) {
        num = 0;
        den = 1;
        return {};
    }
    zint l = 1;
    for (const auto& x : f.c) l = zlcm(l, x.get_den());
    std::vector<zint> c(f.c.size());
    for (size_t i = 0; i < c.size(); i++) c[i] = f.c[i].get_num() * zdivexact(l, f.c[i].get_den());
    zpoly F(std::move(c));
    zint ct = content(F);
    if (F.lc() < 0) ct = -ct;
    for (auto& x : F.c) x = zdivexact(x, ct);
    num = ct;
    den = l;
    return F;
}

zpoly to_zpoly(const qpoly& f) {
    std::vector<zint> c(f.c.size());
    for (size_t i = 0; i < c.size(); i++) {
        if (f.c[i].get_den() != 1) throw invalid_input_error("to_zpoly: non-integral coefficient");
        c[i] = f.c[i].get_num();
    }
    return zpoly(std::move(c));
}

std::string to_string(const zpoly& f, const std::string& var) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = f.deg(); i >= 0; i--) {
        zint a = f.coeff(i);
        if (a == 0) continue;
        if (!first) os << (a > 0 ? " + " : " - ");
        else if (a < 0)
            os << "-";
        zint m = abs(a);
        if (i == 0 || m != 1) os << m.get_str();
        if (i > 0) {
            if (m != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

std::string to_string(const qpoly& f, const std::string& var) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = f.deg(); i >= 0; i--) {
        qrat a = f.coeff(i);
        if (a == 0) continue;
        if (!first) os << (a > 0 ? " + " : " - ");
        else if (a < 0)
            os << "-";
        qrat m = abs(a);
        if (i == 0 || m != 1) os << m.get_str();
        if (i > 0) {
            if (m != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

}  // namespace selbound::arith

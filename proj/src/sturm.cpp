#include "selbound/sturm.hpp"

namespace selbound::arith {

int sign_at(const zpoly& f, const qrat& x) {
    qrat v = eval(f, x);
    return sgn(v);
}

std::vector<zpoly> sturm_chain(const zpoly& f) {
    std::vector<zpoly> chain;
    zpoly a = primitive_part(f);
    chain.push_back(a);
    zpoly b = primitive_part(derivative(a));
    if (b.is_zero()) return chain;
    chain.push_back(b);
    zpoly prev = a, cur = b;
    while (true) {
        int delta = prev.deg() - cur.deg() + 1;
        zpoly r = pseudo_rem(prev, cur);
        if (r.is_zero()) break;
        // pseudo_rem scales by lc(cur)^delta; flip back when that scale is negative
        if (cur.lc() < 0 && delta % 2 == 1) r = -r;
        zpoly next = -r;
        // primitive normalization, sign preserved
        zint ct = content(next);
        for (auto& x : next.c) x = zdivexact(x, ct);
        chain.push_back(next);
        prev = cur;
        cur = next;
        if (cur.deg() == 0) break;
    }
    return chain;
}

namespace {

int variations(const std::vector<int>& signs) {
    int v = 0, last = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (last != 0 && s != last) v++;
        last = s;
    }
    return v;
}

int var_at(const std::vector<zpoly>& chain, const qrat& x) {
    std::vector<int> signs;
    signs.reserve(chain.size());
    for (const auto& g : chain) signs.push_back(sign_at(g, x));
    return variations(signs);
}

int var_at_inf(const std::vector<zpoly>& chain, int dir) {
    // sign at +inf = sign(lc); at -inf = sign(lc) * (-1)^deg
    std::vector<int> signs;
    signs.reserve(chain.size());
    for (const auto& g : chain) {
        int s = sgn(g.lc());
        if (dir < 0 && g.deg() % 2 == 1) s = -s;
        signs.push_back(s);
    }
    return variations(signs);
}

}  // namespace

int sturm_count(const std::vector<zpoly>& chain, const qrat& a, const qrat& b) {
    return var_at(chain, a) - var_at(chain, b);
}

int real_root_count(const zpoly& f) {
    if (f.deg() <= 0) return 0;
    if (!is_squarefree(f)) throw invalid_input_error("real_root_count: input not squarefree");
    auto chain = sturm_chain(f);
    return var_at_inf(chain, -1) - var_at_inf(chain, +1);
}

qrat root_bound(const zpoly& f) {
    if (f.deg() <= 0) return 1;
    zint m = 0;
    for (int i = 0; i < f.deg(); i++) {
        zint a = abs(f.coeff(i));
        if (a > m) m = a;
    }
    qrat b = qrat(m) / qrat(abs(f.lc()));
    return b + 2;
}

namespace {

// A split point of (lo, hi) where f does not vanish. At most deg f roots,
// so one of deg+2 equally spaced candidates works.
qrat split_point(const zpoly& f, const qrat& lo, const qrat& hi) {
    int n = f.deg() + 2;
    for (int j = 1; j <= n; j++) {
        qrat step(j, n + 1);
        step.canonicalize();
        qrat m = lo + (hi - lo) * step;
        if (sign_at(f, m) != 0) return m;
    }
    throw internal_inconsistency_error("split_point: no root-free point found");
}

}  // namespace

std::vector<root_interval> isolate_real_roots(const zpoly& f) {
    if (f.is_zero()) throw invalid_input_error("isolate_real_roots: zero polynomial");
    if (!is_squarefree(f)) throw invalid_input_error("isolate_real_roots: input not squarefree");
    std::vector<root_interval> out;
    if (f.deg() <= 0) return out;
    auto chain = sturm_chain(f);
    qrat B = root_bound(f);
    // endpoints of (-B, B) are root-free by the Cauchy bound
    struct seg {
        qrat lo, hi;
        int count;
    };
    std::vector<seg> stack;
    int total = sturm_count(chain, -B, B);
    if (total > 0) stack.push_back({-B, B, total});
    while (!stack.empty()) {
        seg s = stack.back();
        stack.pop_back();
        if (s.count == 1) {
            out.push_back({s.lo, s.hi});
            continue;
        }
        qrat m = split_point(f, s.lo, s.hi);
        int left = sturm_count(chain, s.lo, m);
        int right = s.count - left;
        if (right > 0) stack.push_back({m, s.hi, right});
        if (left > 0) stack.push_back({s.lo, m, left});
    }
    std::sort(out.begin(), out.end(), [](const root_interval& a, const root_interval& b) { return a.lo < b.lo; });
    return out;
}

std::vector<root_interval> isolate_real_roots(const qpoly& f) {
    zint n, d;
    zpoly F = to_zpoly_primitive(f, n, d);
    return isolate_real_roots(F);
}

void refine_root(const zpoly& f, root_interval& iv, const qrat& target) {
    if (iv.exact()) return;
    // ensure endpoints are not roots (they are not, by construction of isolation)
    while (iv.width() > target) {
        qrat m = split_point(f, iv.lo, iv.hi);
        if (sign_at(f, iv.lo) * sign_at(f, m) < 0) iv.hi = m;
        else iv.lo = m;
    }
}

}  // namespace selbound::arith

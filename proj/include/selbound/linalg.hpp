#pragma once

#include "selbound/ints.hpp"

namespace selbound::arith {

struct zmat {
    int rows = 0, cols = 0;
    std::vector<zint> a;

    zmat() = default;
    zmat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * static_cast<size_t>(c)) {}
    zint& at(int i, int j) { return a[static_cast<size_t>(i) * static_cast<size_t>(cols) + static_cast<size_t>(j)]; }
    const zint& at(int i, int j) const {
        return a[static_cast<size_t>(i) * static_cast<size_t>(cols) + static_cast<size_t>(j)];
    }
    static zmat identity(int n);
    bool operator==(const zmat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

zmat mul(const zmat& A, const zmat& B);
zmat transpose(const zmat& A);

// Row Hermite normal form of the lattice spanned by the rows.
// Returns the echelon basis (rank rows, pivots positive, entries above
// pivots reduced). If U is non-null it receives a unimodular matrix with
// U*A = [H; 0], so the last rows of U span the integer row kernel.
zmat hnf(const zmat& A, zmat* U = nullptr);

// Integer row kernel basis (rows spanning {x : x*A = 0}).
zmat zkernel(const zmat& A);

// Smith normal form invariant factors d1 | d2 | ... (nonnegative, zeros for
// the free part), padded to min(rows, cols).
std::vector<zint> snf(const zmat& A);

zint det_bareiss(const zmat& A);

// characteristic polynomial of A, coefficients ascending, monic of degree n
std::vector<zint> charpoly(const zmat& A);

// Gaussian elimination helpers over Z/p (p prime, entries any integers).
int rank_mod_p(const zmat& A, const zint& p);
// Basis of {x : x*A == 0 mod p}, rows reduced into [0,p).
zmat kernel_mod_p(const zmat& A, const zint& p);
// Solve x*A == b mod p; returns false if inconsistent.
bool solve_left_mod_p(const zmat& A, const std::vector<zint>& b, const zint& p, std::vector<zint>& x);

// Exact rational solve A*x = b (A square nonsingular).
std::vector<qrat> solve_q(const zmat& A, const std::vector<qrat>& b);

}  // namespace selbound::arith

#include "selbound/linalg.hpp"

namespace selbound::arith {

zmat zmat::identity(int n) {
    zmat I(n, n);
    for (int i = 0; i < n; i++) I.at(i, i) = 1;
    return I;
}

zmat mul(const zmat& A, const zmat& B) {
    if (A.cols != B.rows) throw invalid_input_error("zmat mul: shape mismatch");
    zmat C(A.rows, B.cols);
    for (int i = 0; i < A.rows; i++)
        for (int k = 0; k < A.cols; k++) {
            if (A.at(i, k) == 0) continue;
            for (int j = 0; j < B.cols; j++) C.at(i, j) += A.at(i, k) * B.at(k, j);
        }
    return C;
}

zmat transpose(const zmat& A) {
    zmat T(A.cols, A.rows);
    for (int i = 0; i < A.rows; i++)
        for (int j = 0; j < A.cols; j++) T.at(j, i) = A.at(i, j);
    return T;
}

zmat hnf(const zmat& A, zmat* U) {
    zmat H = A;
    zmat T = zmat::identity(A.rows);
    int r = 0;  // current pivot row
    for (int col = 0; col < H.cols && r < H.rows; col++) {
        // gcd-reduce rows r..end on this column
        while (true) {
            int piv = -1;
            for (int i = r; i < H.rows; i++)
                if (H.at(i, col) != 0) {
                    if (piv < 0 || abs(H.at(i, col)) < abs(H.at(piv, col))) piv = i;
                }
            if (piv < 0) break;
            if (piv != r) {
                for (int j = 0; j < H.cols; j++) std::swap(H.at(piv, j), H.at(r, j));
                for (int j = 0; j < T.cols; j++) std::swap(T.at(piv, j), T.at(r, j));
            }
            bool cleared = true;
            for (int i = r + 1; i < H.rows; i++) {
                if (H.at(i, col) == 0) continue;
                zint q = H.at(i, col) / H.at(r, col);  // truncated division is fine here
                if (q != 0) {
                    for (int j = 0; j < H.cols; j++) H.at(i, j) -= q * H.at(r, j);
                    for (int j = 0; j < T.cols; j++) T.at(i, j) -= q * T.at(r, j);
                }
                if (H.at(i, col) != 0) cleared = false;
            }
            if (cleared) break;
        }
        if (H.at(r, col) == 0) continue;
        if (H.at(r, col) < 0) {
            for (int j = 0; j < H.cols; j++) H.at(r, j) = -H.at(r, j);
            for (int j = 0; j < T.cols; j++) T.at(r, j) = -T.at(r, j);
        }
        // reduce entries above the pivot
        for (int i = 0; i < r; i++) {
            zint q;
            mpz_fdiv_q(q.get_mpz_t(), H.at(i, col).get_mpz_t(), H.at(r, col).get_mpz_t());
            if (q != 0) {
                for (int j = 0; j < H.cols; j++) H.at(i, j) -= q * H.at(r, j);
                for (int j = 0; j < T.cols; j++) T.at(i, j) -= q * T.at(r, j);
            }
        }
        r++;
    }
    if (U) *U = T;
    zmat out(r, H.cols);
    for (int i = 0; i < r; i++)
        for (int j = 0; j < H.cols; j++) out.at(i, j) = H.at(i, j);
    return out;
}

zmat zkernel(const zmat& A) {
    zmat U;
    zmat H = hnf(A, &U);
    int r = H.rows;
    zmat K(A.rows - r, A.rows);
    for (int i = r; i < A.rows; i++)
        for (int j = 0; j < A.rows; j++) K.at(i - r, j) = U.at(i, j);
    return K;
}

std::vector<zint> snf(const zmat& A0) {
    zmat A = A0;
    int n = std::min(A.rows, A.cols);
    std::vector<zint> d(static_cast<size_t>(n));
    int t = 0;
    while (t < n) {
        // find smallest nonzero entry in the remaining block
        int pi = -1, pj = -1;
        for (int i = t; i < A.rows; i++)
            for (int j = t; j < A.cols; j++)
                if (A.at(i, j) != 0 && (pi < 0 || abs(A.at(i, j)) < abs(A.at(pi, pj)))) {
                    pi = i;
                    pj = j;
                }
        if (pi < 0) break;  // all remaining zero
        for (int j = 0; j < A.cols; j++) std::swap(A.at(pi, j), A.at(t, j));
        for (int i = 0; i < A.rows; i++) std::swap(A.at(i, pj), A.at(i, t));
        bool again = false;
        for (int i = t + 1; i < A.rows; i++) {
            if (A.at(i, t) == 0) continue;
            zint q = A.at(i, t) / A.at(t, t);
            for (int j = 0; j < A.cols; j++) A.at(i, j) -= q * A.at(t, j);
            if (A.at(i, t) != 0) again = true;
        }
        for (int j = t + 1; j < A.cols; j++) {
            if (A.at(t, j) == 0) continue;
            zint q = A.at(t, j) / A.at(t, t);
            for (int i = 0; i < A.rows; i++) A.at(i, j) -= q * A.at(i, t);
            if (A.at(t, j) != 0) again = true;
        }
        if (again) continue;
        // divisibility fix: pivot must divide every later entry
        bool fixed = true;
        for (int i = t + 1; i < A.rows && fixed; i++)
            for (int j = t + 1; j < A.cols && fixed; j++) {
                if (A.at(i, j) % A.at(t, t) != 0) {
                    for (int jj = 0; jj < A.cols; jj++) A.at(t, jj) += A.at(i, jj);
                    fixed = false;
                }
            }
        if (!fixed) continue;
        t++;
    }
    for (int i = 0; i < n; i++) d[static_cast<size_t>(i)] = i < t ? abs(A.at(i, i)) : zint(0);
    return d;
}

zint det_bareiss(const zmat& A0) {
    if (A0.rows != A0.cols) throw invalid_input_error("det: not square");
    int n = A0.rows;
    if (n == 0) return 1;
    zmat A = A0;
    zint prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; k++) {
        if (A.at(k, k) == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; i++)
                if (A.at(i, k) != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) return 0;
            for (int j = 0; j < n; j++) std::swap(A.at(piv, j), A.at(k, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; i++)
            for (int j = k + 1; j < n; j++) {
                zint num = A.at(i, j) * A.at(k, k) - A.at(i, k) * A.at(k, j);
                A.at(i, j) = zdivexact(num, prev);
            }
        prev = A.at(k, k);
    }
    return sign > 0 ? A.at(n - 1, n - 1) : -A.at(n - 1, n - 1);
}

std::vector<zint> charpoly(const zmat& A) {
    if (A.rows != A.cols) throw invalid_input_error("charpoly: not square");
    int n = A.rows;
    // Samuelson-Berkowitz, division-free. Vectors hold descending coefficients.
    std::vector<zint> p{1};
    for (int k = 1; k <= n; k++) {
        // q[0]=1, q[1]=-a_kk, q[j] = -(R M^(j-2) C) for j=2..k
        std::vector<zint> q(static_cast<size_t>(k) + 1);
        q[0] = 1;
        q[1] = -A.at(k - 1, k - 1);
        if (k >= 2) {
            int m = k - 1;
            std::vector<zint> v(static_cast<size_t>(m));  // M^j * C
            for (int i = 0; i < m; i++) v[static_cast<size_t>(i)] = A.at(i, k - 1);
            for (int j = 2; j <= k; j++) {
                zint dot = 0;
                for (int i = 0; i < m; i++) dot += A.at(k - 1, i) * v[static_cast<size_t>(i)];
                q[static_cast<size_t>(j)] = -dot;
                if (j < k) {
                    std::vector<zint> nv(static_cast<size_t>(m));
                    for (int i = 0; i < m; i++) {
                        zint s = 0;
                        for (int l = 0; l < m; l++) s += A.at(i, l) * v[static_cast<size_t>(l)];
                        nv[static_cast<size_t>(i)] = s;
                    }
                    v = std::move(nv);
                }
            }
        }
        // p_new = conv(q, p) truncated to length k+1
        std::vector<zint> np(static_cast<size_t>(k) + 1);
        for (size_t i = 0; i < np.size(); i++) {
            zint s = 0;
            for (size_t j = 0; j <= i && j < q.size(); j++)
                if (i - j < p.size()) s += q[j] * p[i - j];
            np[i] = s;
        }
        p = std::move(np);
    }
    // p is descending: p[0] = 1 (x^n), ...; return ascending
    std::vector<zint> out(p.rbegin(), p.rend());
    return out;
}

namespace {

struct gauss_mod_p {
    zmat R;              // reduced copy, entries in [0,p)
    std::vector<int> pivot_of_row;
    int rank = 0;
    zint p;
};

// row-reduce A mod p (rows act on the left)
gauss_mod_p reduce_mod_p(const zmat& A, const zint& p, zmat* left = nullptr) {
    gauss_mod_p G;
    G.p = p;
    G.R = A;
    for (auto& x : G.R.a) x = zmod(x, p);
    if (left) *left = zmat::identity(A.rows);
    int r = 0;
    for (int col = 0; col < A.cols && r < A.rows; col++) {
        int piv = -1;
        for (int i = r; i < A.rows; i++)
            if (G.R.at(i, col) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != r) {
            for (int j = 0; j < A.cols; j++) std::swap(G.R.at(piv, j), G.R.at(r, j));
            if (left)
                for (int j = 0; j < A.rows; j++) std::swap(left->at(piv, j), left->at(r, j));
        }
        zint inv = zinvmod(G.R.at(r, col), p);
        for (int j = 0; j < A.cols; j++) G.R.at(r, j) = zmod(G.R.at(r, j) * inv, p);
        if (left)
            for (int j = 0; j < A.rows; j++) left->at(r, j) = zmod(left->at(r, j) * inv, p);
        for (int i = 0; i < A.rows; i++) {
            if (i == r || G.R.at(i, col) == 0) continue;
            zint f = G.R.at(i, col);
            for (int j = 0; j < A.cols; j++) G.R.at(i, j) = zmod(G.R.at(i, j) - f * G.R.at(r, j), p);
            if (left)
                for (int j = 0; j < A.rows; j++) left->at(i, j) = zmod(left->at(i, j) - f * left->at(r, j), p);
        }
        G.pivot_of_row.push_back(col);
        r++;
    }
    G.rank = r;
    return G;
}

}  // namespace

int rank_mod_p(const zmat& A, const zint& p) { return reduce_mod_p(A, p).rank; }

zmat kernel_mod_p(const zmat& A, const zint& p) {
    //left kernel: {x : xA = 0}; reduce transpose and read free rows
    zmat L;
    gauss_mod_p G = reduce_mod_p(A, p, &L);
    // rows r..end of L, applied to A, give zero rows
    zmat K(A.rows - G.rank, A.rows);
    for (int i = G.rank; i < A.rows; i++)
        for (int j = 0; j < A.rows; j++) K.at(i - G.rank, j) = L.at(i, j);
    return K;
}

bool solve_left_mod_p(const zmat& A, const std::vector<zint>& b, const zint& p, std::vector<zint>& x) {
    // solve x*A == b: transpose to A^T x^T = b^T and do standard Gauss
    zmat T = transpose(A);  // cols(A) x rows(A)
    int m = T.rows, n = T.cols;
    zmat Aug(m, n + 1);
    for (int i = 0; i < m; i++) {
        for (int j = 0; j < n; j++) Aug.at(i, j) = zmod(T.at(i, j), p);
        Aug.at(i, n) = zmod(b[static_cast<size_t>(i)], p);
    }
    std::vector<int> pivcol;
    int r = 0;
    for (int col = 0; col < n && r < m; col++) {
        int piv = -1;
        for (int i = r; i < m; i++)
            if (Aug.at(i, col) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j <= n; j++) std::swap(Aug.at(piv, j), Aug.at(r, j));
        zint inv = zinvmod(Aug.at(r, col), p);
        for (int j = 0; j <= n; j++) Aug.at(r, j) = zmod(Aug.at(r, j) * inv, p);
        for (int i = 0; i < m; i++) {
            if (i == r || Aug.at(i, col) == 0) continue;
            zint f = Aug.at(i, col);
            for (int j = 0; j <= n; j++) Aug.at(i, j) = zmod(Aug.at(i, j) - f * Aug.at(r, j), p);
        }
        pivcol.push_back(col);
        r++;
    }
    for (int i = r; i < m; i++)
        if (Aug.at(i, n) != 0) return false;
    x.assign(static_cast<size_t>(n), 0);
    for (int i = 0; i < r; i++) x[static_cast<size_t>(pivcol[static_cast<size_t>(i)])] = Aug.at(i, n);
    return true;
}

std::vector<qrat> solve_q(const zmat& A, const std::vector<qrat>& b) {
    if (A.rows != A.cols) throw invalid_input_error("solve_q: not square");
    int n = A.rows;
    std::vector<std::vector<qrat>> M(static_cast<size_t>(n), std::vector<qrat>(static_cast<size_t>(n) + 1));
    for (int i = 0; i < n; i++) {
        for (int j = 0; j < n; j++) M[static_cast<size_t>(i)][static_cast<size_t>(j)] = qrat(A.at(i, j));
        M[static_cast<size_t>(i)][static_cast<size_t>(n)] = b[static_cast<size_t>(i)];
    }
    for (int col = 0; col < n; col++) {
        int piv = -1;
        for (int i = col; i < n; i++)
            if (M[static_cast<size_t>(i)][static_cast<size_t>(col)] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) throw invalid_input_error("solve_q: singular matrix");
        std::swap(M[static_cast<size_t>(piv)], M[static_cast<size_t>(col)]);
        qrat inv = 1 / M[static_cast<size_t>(col)][static_cast<size_t>(col)];
        for (int j = col; j <= n; j++) M[static_cast<size_t>(col)][static_cast<size_t>(j)] *= inv;
        for (int i = 0; i < n; i++) {
            if (i == col) continue;
            qrat f = M[static_cast<size_t>(i)][static_cast<size_t>(col)];
            if (f == 0) continue;
            for (int j = col; j <= n; j++)
                M[static_cast<size_t>(i)][static_cast<size_t>(j)] -= f * M[static_cast<size_t>(col)][static_cast<size_t>(j)];
        }
    }
    std::vector<qrat> x(static_cast<size_t>(n));
    for (int i = 0; i < n; i++) x[static_cast<size_t>(i)] = M[static_cast<size_t>(i)][static_cast<size_t>(n)];
    return x;
}

}  // namespace selbound::arith

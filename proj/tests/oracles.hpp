#pragma once

// Brute-force reference implementations used only by the tests. They work
// on explicit index lists and permutations, never on the mask kernels.

#include "e8/exterior.hpp"
#include "e8/graded_algebra.hpp"
#include "e8/rank.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace oracle {

using e8::Mask;
using e8::MultiVector;
using e8::Scalar;
using e8::SlElement;

inline std::vector<int> indices(Mask m) {
    std::vector<int> out;
    for (int b = 0; b < 16; ++b)
        if (m & (1u << b)) out.push_back(b + 1);
    return out;
}

inline std::vector<Mask> blades(int n, int k) {
    std::vector<Mask> out;
    for (unsigned m = 0; m < (1u << n); ++m)
        if (__builtin_popcount(m) == k) out.push_back(static_cast<Mask>(m));
    return out;
}

// Sign of a sequence of distinct values by counting inversions pairwise; 0
// when a value repeats.
inline int seq_sign(const std::vector<int>& s) {
    int inv = 0;
    for (size_t a = 0; a < s.size(); ++a)
        for (size_t b = a + 1; b < s.size(); ++b) {
            if (s[a] == s[b]) return 0;
            if (s[a] > s[b]) ++inv;
        }
    return inv % 2 ? -1 : 1;
}

// phi of e_{s_1} ^ ... ^ e_{s_n}.
inline int phi(int n, const std::vector<int>& s) {
    if (static_cast<int>(s.size()) != n) return 0;
    return seq_sign(s);
}

inline std::vector<int> concat(std::vector<int> a, const std::vector<int>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

// det(e^{j_a}(e_{i_b})) expanded over all permutations.
inline int det_pairing(const std::vector<int>& I, const std::vector<int>& J) {
    if (I.size() != J.size()) return 0;
    std::vector<int> p(I.size());
    std::iota(p.begin(), p.end(), 0);
    int total = 0;
    do {
        int term = seq_sign(p);
        for (size_t a = 0; a < p.size() && term; ++a)
            if (J[a] != I[static_cast<size_t>(p[a])]) term = 0;
        total += term;
    } while (std::next_permutation(p.begin(), p.end()));
    return total;
}

// Builds a multivector from an index list, in whatever order it comes.
inline MultiVector mv(int n, const std::vector<int>& s, bool dual = false, Scalar c = 1) {
    MultiVector out(n, static_cast<int>(s.size()), dual);
    int sg = seq_sign(s);
    if (sg == 0) return out;
    std::vector<int> sorted = s;
    std::sort(sorted.begin(), sorted.end());
    Mask m = 0;
    for (int i : sorted) m = static_cast<Mask>(m | (1u << (i - 1)));
    out.add_term(m, c * sg);
    return out;
}

inline Scalar pairing(const MultiVector& x, const MultiVector& a) {
    Scalar s = 0;
    for (const auto& [mx, cx] : x.terms())
        for (const auto& [ma, ca] : a.terms()) s += cx * ca * det_pairing(indices(mx), indices(ma));
    return s;
}

inline MultiVector wedge(const MultiVector& x, const MultiVector& y) {
    int n = x.n();
    MultiVector out(n, x.degree() + y.degree(), x.dual());
    if (x.degree() + y.degree() > n) return out;
    for (const auto& [mx, cx] : x.terms())
        for (const auto& [my, cy] : y.terms()) out += mv(n, concat(indices(mx), indices(my)), x.dual(), cx * cy);
    return out;
}

// The defining identity <y, x~> = phi(x ^ y), solved coordinate by
// coordinate over the dual basis.
inline MultiVector tilde(const MultiVector& x) {
    int n = x.n(), r = n - x.degree();
    MultiVector out(n, r, true);
    for (Mask b : blades(n, r)) {
        Scalar v = 0;
        for (const auto& [mx, cx] : x.terms()) v += cx * phi(n, concat(indices(mx), indices(b)));
        out.add_term(b, v);
    }
    return out;
}

// Shuffle sum: choose which positions of I are paired against J, move them
// to the front, and pair them by determinant.
inline MultiVector contract(const MultiVector& x, const MultiVector& a) {
    int n = x.n(), p = a.degree(), q = x.degree() - p;
    MultiVector out(n, q);
    for (const auto& [mx, cx] : x.terms()) {
        auto I = indices(mx);
        int total = static_cast<int>(I.size());
        for (unsigned pick = 0; pick < (1u << total); ++pick) {
            if (__builtin_popcount(pick) != p) continue;
            std::vector<int> front, back, pos_front, pos_back;
            for (int t = 0; t < total; ++t) {
                if (pick & (1u << t)) {
                    front.push_back(I[static_cast<size_t>(t)]);
                    pos_front.push_back(t);
                } else {
                    back.push_back(I[static_cast<size_t>(t)]);
                    pos_back.push_back(t);
                }
            }
            int sg = seq_sign(concat(pos_front, pos_back));
            for (const auto& [ma, ca] : a.terms()) {
                int d = det_pairing(front, indices(ma));
                if (d) out += mv(n, back, false, cx * ca * sg * d);
            }
        }
    }
    return out;
}

inline MultiVector star(const MultiVector& x, const MultiVector& y) {
    int n = x.n();
    if (x.degree() + y.degree() < n) return oracle::wedge(x, y);
    return oracle::contract(x, oracle::tilde(y));
}

// (x, y) = phi(y ^ x).
inline Scalar form(const MultiVector& x, const MultiVector& y) {
    int n = x.n();
    Scalar s = 0;
    for (const auto& [mx, cx] : x.terms())
        for (const auto& [my, cy] : y.terms()) s += cx * cy * phi(n, concat(indices(my), indices(mx)));
    return s;
}

// Leibniz sum over the positions of each blade, with f(e_b) = sum_a f_ab e_a.
inline MultiVector act(const SlElement& f, const MultiVector& x) {
    int n = x.n();
    MultiVector out(n, x.degree(), x.dual());
    for (const auto& [mx, cx] : x.terms()) {
        auto I = indices(mx);
        for (size_t pos = 0; pos < I.size(); ++pos)
            for (int row = 1; row <= n; ++row) {
                Scalar c = x.dual() ? Scalar(-f.at(I[pos], row)) : f.at(row, I[pos]);
                if (e8::is_zero(c)) continue;
                auto J = I;
                J[pos] = row;
                out += mv(n, J, x.dual(), cx * c);
            }
    }
    return out;
}

inline Scalar trace_of_product(const SlElement& f, const SlElement& g) {
    Scalar t = 0;
    for (int i = 1; i <= f.n(); ++i)
        for (int j = 1; j <= f.n(); ++j) t += f.at(i, j) * g.at(j, i);
    return t;
}

// Solves A c = b exactly by Gauss-Jordan; A is square and invertible.
inline std::vector<Scalar> solve(std::vector<std::vector<Scalar>> A, std::vector<Scalar> b) {
    size_t m = b.size();
    for (size_t col = 0; col < m; ++col) {
        size_t piv = col;
        while (e8::is_zero(A[piv][col])) ++piv;
        std::swap(A[piv], A[col]);
        std::swap(b[piv], b[col]);
        for (size_t r = 0; r < m; ++r) {
            if (r == col || e8::is_zero(A[r][col])) continue;
            Scalar k = A[r][col] / A[col][col];
            for (size_t c = col; c < m; ++c) A[r][c] -= k * A[col][c];
            b[r] -= k * b[col];
        }
    }
    for (size_t r = 0; r < m; ++r) b[r] /= A[r][r];
    return b;
}

// The unique traceless X with tr(f X) = (f.x, y) for every f in sl(n).
inline SlElement dual_bracket(const MultiVector& x, const MultiVector& y) {
    int n = x.n();
    auto basis = SlElement::basis(n);
    size_t m = basis.size();
    std::vector<std::vector<Scalar>> A(m, std::vector<Scalar>(m));
    std::vector<Scalar> b(m);
    for (size_t r = 0; r < m; ++r) {
        for (size_t c = 0; c < m; ++c) A[r][c] = trace_of_product(basis[r], basis[c]);
        b[r] = oracle::form(oracle::act(basis[r], x), y);
    }
    auto c = solve(A, b);
    SlElement X(n);
    for (size_t k = 0; k < m; ++k) X += c[k] * basis[k];
    return X;
}

// Dense structure constants, straight from the table.
inline std::vector<Scalar> dense_bracket(const e8::GradedAlgebra& a, int i, int j) {
    std::vector<Scalar> v(static_cast<size_t>(a.dim()));
    for (const auto& [k, c] : a.row(i, j)) v[static_cast<size_t>(k)] = c;
    return v;
}

// Killing form by the textbook double sum over the full dense tensor.
inline Scalar killing(const e8::GradedAlgebra& a, int x, int y) {
    int n = a.dim();
    Scalar t = 0;
    for (int k = 0; k < n; ++k)
        for (const auto& [l, c1] : a.row(x, k))
            for (const auto& [m, c2] : a.row(y, l))
                if (m == k) t += c1 * c2;
    return t;
}

}  // namespace oracle

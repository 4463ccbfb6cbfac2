#pragma once

#include "e8/scalar.hpp"

#include <cstdint>
#include <initializer_list>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace e8 {

constexpr int kMaxDim = 9;

// Bit b of a mask stands for the basis vector e_{b+1}.
using Mask = std::uint16_t;

class ExteriorError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline int degree_of(Mask m) { return __builtin_popcount(m); }
inline Mask full_mask(int n) { return static_cast<Mask>((1u << n) - 1u); }

// Parity of #{(a, b) : a in A, b in B, a > b}, returned as +1 / -1.
int inversion_sign(Mask a, Mask b);

struct Blade {
    int n = 0;
    Mask mask = 0;
    bool dual = false;

    int degree() const { return degree_of(mask); }
    std::vector<int> indices() const;  // 1-based, increasing
    bool operator==(const Blade&) const = default;
};

// Sorts the indices and reports the sign of the sorting permutation; sign 0
// when an index repeats.
struct SignedBlade {
    int sign = 0;
    Blade blade;
};
SignedBlade make_blade(int n, const std::vector<int>& indices, bool dual = false);

// Blade-level kernels. Each returns a sign in {-1, 0, +1} and, where relevant,
// the resulting mask; sign 0 means the product vanishes.
int wedge_sign(Mask a, Mask b);
int tilde_sign(int n, Mask a);
int contract_sign(Mask x, Mask a);
std::pair<int, Mask> star_blade(int n, Mask x, Mask y);
int form_blade(int n, Mask x, Mask y);
// e_a^b acting on e_I, with 0-based a, b.
std::pair<int, Mask> unit_action(int a, int b, Mask x);

class MultiVector {
public:
    MultiVector() = default;
    MultiVector(int n, int degree, bool dual = false);
    explicit MultiVector(const Blade& b, Scalar coeff = 1);

    static MultiVector scalar(int n, Scalar value, bool dual = false);
    // e(5, {1, 3}) is e_{13}; unordered indices pick up the permutation sign.
    static MultiVector e(int n, std::initializer_list<int> indices, bool dual = false);
    static MultiVector e(int n, const std::vector<int>& indices, bool dual = false);

    int n() const { return n_; }
    int degree() const { return degree_; }
    bool dual() const { return dual_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Mask, Scalar>& terms() const { return terms_; }
    Scalar coeff(Mask m) const;

    void add_term(Mask m, const Scalar& c);
    MultiVector& operator+=(const MultiVector& o);
    MultiVector& operator-=(const MultiVector& o);
    MultiVector& operator*=(const Scalar& c);
    friend MultiVector operator+(MultiVector a, const MultiVector& b) { return a += b; }
    friend MultiVector operator-(MultiVector a, const MultiVector& b) { return a -= b; }
    friend MultiVector operator*(const Scalar& c, MultiVector a) { return a *= c; }
    MultiVector operator-() const { return Scalar(-1) * *this; }
    bool operator==(const MultiVector& o) const;

    // "+1/1 e_{12} + -2/3 e_{34}"; terms ordered lexicographically by index list.
    std::string dump() const;

private:
    void check_compatible(const MultiVector& o) const;

    int n_ = 0;
    int degree_ = 0;
    bool dual_ = false;
    std::map<Mask, Scalar> terms_;
};

class SlElement {
public:
    SlElement() = default;
    explicit SlElement(int n);

    // Matrix units, 1-based. unit(n, i, j) maps e_j to e_i.
    static SlElement unit(int n, int i, int j);
    static SlElement identity(int n);
    // The canonical sl(n) basis: e_i^j for i != j in lexicographic order, then
    // e_i^i - e_{i+1}^{i+1}.
    static std::vector<SlElement> basis(int n);
    static int basis_size(int n) { return n * n - 1; }
    // Position of e_i^j (1-based, i != j) or of h_i inside basis(n).
    static int offdiag_index(int n, int i, int j);
    static int diag_index(int n, int i);

    int n() const { return n_; }
    const Scalar& at(int i, int j) const { return m_[static_cast<size_t>((i - 1) * n_ + (j - 1))]; }
    Scalar& at(int i, int j) { return m_[static_cast<size_t>((i - 1) * n_ + (j - 1))]; }
    Scalar trace() const;
    bool is_zero() const;

    // Coordinates in basis(n); requires a traceless matrix.
    std::vector<Scalar> coords() const;

    SlElement transpose() const;
    SlElement& operator+=(const SlElement& o);
    SlElement& operator-=(const SlElement& o);
    SlElement& operator*=(const Scalar& c);
    friend SlElement operator+(SlElement a, const SlElement& b) { return a += b; }
    friend SlElement operator-(SlElement a, const SlElement& b) { return a -= b; }
    friend SlElement operator*(const Scalar& c, SlElement a) { return a *= c; }
    friend SlElement operator*(const SlElement& a, const SlElement& b);
    bool operator==(const SlElement& o) const = default;

    std::string dump() const;

private:
    int n_ = 0;
    std::vector<Scalar> m_;
};

SlElement commutator(const SlElement& a, const SlElement& b);

// phi(e_{1..n}) is fixed to 1 in every slot.
struct VolumeForm {
    int n = 0;
    Scalar normalization = 1;
    Scalar operator()(const MultiVector& top) const;
};

MultiVector wedge(const MultiVector& x, const MultiVector& y);
Scalar pairing(const MultiVector& x, const MultiVector& a);
MultiVector tilde(const MultiVector& x);
MultiVector contract(const MultiVector& x, const MultiVector& a);
MultiVector star(const MultiVector& x, const MultiVector& y);
Scalar form(const MultiVector& x, const MultiVector& y);
SlElement dual_bracket(const MultiVector& x, const MultiVector& y);
// Leibniz action; dual multivectors are acted on by -f^T.
MultiVector sl_action(const SlElement& f, const MultiVector& x);

// Same as dual_bracket on single blades, skipping the multivector plumbing.
SlElement dual_bracket_blade(int n, Mask x, Mask y);

}  // namespace e8

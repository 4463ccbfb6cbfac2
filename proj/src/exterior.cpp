#include "e8/exterior.hpp"

#include <algorithm>
#include <sstream>

namespace e8 {

int inversion_sign(Mask a, Mask b) {
    int count = 0;
    for (Mask rest = b; rest; rest &= static_cast<Mask>(rest - 1)) {
        int bit = __builtin_ctz(rest);
        count += degree_of(static_cast<Mask>(a >> (bit + 1)));
    }
    return (count & 1) ? -1 : 1;
}

std::vector<int> Blade::indices() const {
    std::vector<int> out;
    for (int b = 0; b < n; ++b)
        if (mask & (1u << b)) out.push_back(b + 1);
    return out;
}

SignedBlade make_blade(int n, const std::vector<int>& indices, bool dual) {
    if (n < 1 || n > kMaxDim) throw ExteriorError("ambient dimension out of range");
    int sign = 1;
    Mask mask = 0;
    for (int idx : indices) {
        if (idx < 1 || idx > n) throw ExteriorError("blade index out of range");
        Mask bit = static_cast<Mask>(1u << (idx - 1));
        if (mask & bit) return {0, Blade{n, 0, dual}};
        // Appending e_idx after the current word: move it past larger indices.
        if (degree_of(static_cast<Mask>(mask >> idx)) & 1) sign = -sign;
        mask |= bit;
    }
    return {sign, Blade{n, mask, dual}};
}

int wedge_sign(Mask a, Mask b) {
    if (a & b) return 0;
    return inversion_sign(a, b);
}

int tilde_sign(int n, Mask a) {
    return inversion_sign(a, static_cast<Mask>(full_mask(n) & ~a));
}

int contract_sign(Mask x, Mask a) {
    if ((a & x) != a) return 0;
    return inversion_sign(a, static_cast<Mask>(x & ~a));
}

std::pair<int, Mask> star_blade(int n, Mask x, Mask y) {
    if (degree_of(x) + degree_of(y) < n) return {wedge_sign(x, y), static_cast<Mask>(x | y)};
    Mask comp = static_cast<Mask>(full_mask(n) & ~y);
    int s = contract_sign(x, comp);
    if (s == 0) return {0, 0};
    return {s * tilde_sign(n, y), static_cast<Mask>(x & ~comp)};
}

int form_blade(int n, Mask x, Mask y) {
    if (degree_of(x) + degree_of(y) != n) throw ExteriorError("form: degrees must sum to n");
    return wedge_sign(y, x);
}

std::pair<int, Mask> unit_action(int a, int b, Mask x) {
    Mask bb = static_cast<Mask>(1u << b), ba = static_cast<Mask>(1u << a);
    if (!(x & bb)) return {0, 0};
    if (a == b) return {1, x};
    if (x & ba) return {0, 0};
    int lo = std::min(a, b), hi = std::max(a, b);
    Mask between = static_cast<Mask>(x & ~((1u << (lo + 1)) - 1u) & ((1u << hi) - 1u));
    int sign = (degree_of(between) & 1) ? -1 : 1;
    return {sign, static_cast<Mask>((x & ~bb) | ba)};
}

// ---------------------------------------------------------------- MultiVector

MultiVector::MultiVector(int n, int degree, bool dual) : n_(n), degree_(degree), dual_(dual) {
    if (n < 1 || n > kMaxDim) throw ExteriorError("ambient dimension out of range");
    if (degree < 0) throw ExteriorError("negative degree");
}

MultiVector::MultiVector(const Blade& b, Scalar coeff) : MultiVector(b.n, b.degree(), b.dual) {
    add_term(b.mask, coeff);
}

MultiVector MultiVector::scalar(int n, Scalar value, bool dual) {
    MultiVector v(n, 0, dual);
    v.add_term(0, value);
    return v;
}

MultiVector MultiVector::e(int n, std::initializer_list<int> indices, bool dual) {
    return e(n, std::vector<int>(indices), dual);
}

MultiVector MultiVector::e(int n, const std::vector<int>& indices, bool dual) {
    SignedBlade sb = make_blade(n, indices, dual);
    MultiVector v(n, static_cast<int>(indices.size()), dual);
    if (sb.sign != 0) v.add_term(sb.blade.mask, sb.sign);
    return v;
}

Scalar MultiVector::coeff(Mask m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar(0) : it->second;
}

void MultiVector::add_term(Mask m, const Scalar& c) {
    if (degree_of(m) != degree_) throw ExteriorError("term degree does not match multivector degree");
    if (m & ~full_mask(n_)) throw ExteriorError("blade outside ambient dimension");
    if (e8::is_zero(c)) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (e8::is_zero(it->second)) terms_.erase(it);
    }
}

void MultiVector::check_compatible(const MultiVector& o) const {
    if (n_ != o.n_ || degree_ != o.degree_ || dual_ != o.dual_)
        throw ExteriorError("multivectors live in different spaces");
}

MultiVector& MultiVector::operator+=(const MultiVector& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

MultiVector& MultiVector::operator-=(const MultiVector& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

MultiVector& MultiVector::operator*=(const Scalar& c) {
    if (e8::is_zero(c)) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

bool MultiVector::operator==(const MultiVector& o) const {
    return n_ == o.n_ && degree_ == o.degree_ && dual_ == o.dual_ && terms_ == o.terms_;
}

std::string MultiVector::dump() const {
    if (terms_.empty()) return "0";
    std::vector<std::pair<std::vector<int>, Scalar>> rows;
    for (const auto& [m, c] : terms_) rows.emplace_back(Blade{n_, m, dual_}.indices(), c);
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::ostringstream os;
    bool first = true;
    for (const auto& [idx, c] : rows) {
        if (!first) os << " + ";
        first = false;
        os << (sgn(c) < 0 ? "" : "+") << to_string(c) << (dual_ ? " e^{" : " e_{");
        for (int i : idx) os << i;
        os << "}";
    }
    return os.str();
}

// ------------------------------------------------------------------ SlElement

SlElement::SlElement(int n) : n_(n), m_(static_cast<size_t>(n * n)) {
    if (n < 1 || n > kMaxDim) throw ExteriorError("ambient dimension out of range");
}

SlElement SlElement::unit(int n, int i, int j) {
    SlElement f(n);
    f.at(i, j) = 1;
    return f;
}

SlElement SlElement::identity(int n) {
    SlElement f(n);
    for (int i = 1; i <= n; ++i) f.at(i, i) = 1;
    return f;
}

std::vector<SlElement> SlElement::basis(int n) {
    std::vector<SlElement> out;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (i != j) out.push_back(unit(n, i, j));
    for (int i = 1; i < n; ++i) out.push_back(unit(n, i, i) - unit(n, i + 1, i + 1));
    return out;
}

int SlElement::offdiag_index(int n, int i, int j) {
    return (i - 1) * (n - 1) + (j - 1) - (j > i ? 1 : 0);
}

int SlElement::diag_index(int n, int i) { return n * (n - 1) + i - 1; }

Scalar SlElement::trace() const {
    Scalar t = 0;
    for (int i = 1; i <= n_; ++i) t += at(i, i);
    return t;
}

bool SlElement::is_zero() const {
    return std::all_of(m_.begin(), m_.end(), [](const Scalar& s) { return e8::is_zero(s); });
}

std::vector<Scalar> SlElement::coords() const {
    if (!e8::is_zero(trace())) throw ExteriorError("coordinates requested for a matrix with nonzero trace");
    std::vector<Scalar> c(static_cast<size_t>(basis_size(n_)));
    for (int i = 1; i <= n_; ++i)
        for (int j = 1; j <= n_; ++j)
            if (i != j) c[static_cast<size_t>(offdiag_index(n_, i, j))] = at(i, j);
    Scalar partial = 0;
    for (int i = 1; i < n_; ++i) {
        partial += at(i, i);
        c[static_cast<size_t>(diag_index(n_, i))] = partial;
    }
    return c;
}

SlElement SlElement::transpose() const {
    SlElement t(n_);
    for (int i = 1; i <= n_; ++i)
        for (int j = 1; j <= n_; ++j) t.at(j, i) = at(i, j);
    return t;
}

SlElement& SlElement::operator+=(const SlElement& o) {
    if (o.n_ != n_) throw ExteriorError("sl dimension mismatch");
    for (size_t k = 0; k < m_.size(); ++k) m_[k] += o.m_[k];
    return *this;
}

SlElement& SlElement::operator-=(const SlElement& o) {
    if (o.n_ != n_) throw ExteriorError("sl dimension mismatch");
    for (size_t k = 0; k < m_.size(); ++k) m_[k] -= o.m_[k];
    return *this;
}

SlElement& SlElement::operator*=(const Scalar& c) {
    for (auto& v : m_) v *= c;
    return *this;
}

SlElement operator*(const SlElement& a, const SlElement& b) {
    if (a.n_ != b.n_) throw ExteriorError("sl dimension mismatch");
    SlElement p(a.n_);
    for (int i = 1; i <= a.n_; ++i)
        for (int k = 1; k <= a.n_; ++k) {
            if (is_zero(a.at(i, k))) continue;
            for (int j = 1; j <= a.n_; ++j) p.at(i, j) += a.at(i, k) * b.at(k, j);
        }
    return p;
}

SlElement commutator(const SlElement& a, const SlElement& b) { return a * b - b * a; }

std::string SlElement::dump() const {
    std::ostringstream os;
    bool first = true;
    for (int i = 1; i <= n_; ++i)
        for (int j = 1; j <= n_; ++j) {
            const Scalar& c = at(i, j);
            if (e8::is_zero(c)) continue;
            if (!first) os << " + ";
            first = false;
            os << (sgn(c) < 0 ? "" : "+") << to_string(c) << " e_" << i << "^" << j;
        }
    return first ? "0" : os.str();
}

// ----------------------------------------------------------------- operations

Scalar VolumeForm::operator()(const MultiVector& top) const {
    if (top.n() != n || top.degree() != n || top.dual()) throw ExteriorError("volume form expects a primal top-degree vector");
    return normalization * top.coeff(full_mask(n));
}

namespace {

void require_same_n(const MultiVector& x, const MultiVector& y) {
    if (x.n() != y.n()) throw ExteriorError("ambient dimensions differ");
}

void require_primal(const MultiVector& x) {
    if (x.dual()) throw ExteriorError("expected a primal multivector");
}

}  // namespace

MultiVector wedge(const MultiVector& x, const MultiVector& y) {
    require_same_n(x, y);
    if (x.dual() != y.dual()) throw ExteriorError("wedge of primal and dual multivectors");
    int k = x.degree() + y.degree();
    MultiVector out(x.n(), k, x.dual());
    if (k > x.n()) return out;
    for (const auto& [a, ca] : x.terms())
        for (const auto& [b, cb] : y.terms()) {
            int s = wedge_sign(a, b);
            if (s) out.add_term(static_cast<Mask>(a | b), s * ca * cb);
        }
    return out;
}

Scalar pairing(const MultiVector& x, const MultiVector& a) {
    require_same_n(x, a);
    if (x.dual() || !a.dual()) throw ExteriorError("pairing expects (primal, dual)");
    if (x.degree() != a.degree()) throw ExteriorError("pairing degree mismatch");
    Scalar s = 0;
    for (const auto& [m, c] : x.terms()) s += c * a.coeff(m);
    return s;
}

MultiVector tilde(const MultiVector& x) {
    require_primal(x);
    int n = x.n();
    MultiVector out(n, n - x.degree(), true);
    for (const auto& [m, c] : x.terms())
        out.add_term(static_cast<Mask>(full_mask(n) & ~m), tilde_sign(n, m) * c);
    return out;
}

MultiVector contract(const MultiVector& x, const MultiVector& a) {
    require_same_n(x, a);
    if (x.dual() || !a.dual()) throw ExteriorError("contraction expects (primal, dual)");
    if (a.degree() > x.degree()) throw ExteriorError("contraction: dual degree exceeds primal degree");
    MultiVector out(x.n(), x.degree() - a.degree(), false);
    for (const auto& [mx, cx] : x.terms())
        for (const auto& [ma, ca] : a.terms()) {
            int s = contract_sign(mx, ma);
            if (s) out.add_term(static_cast<Mask>(mx & ~ma), s * cx * ca);
        }
    return out;
}

MultiVector star(const MultiVector& x, const MultiVector& y) {
    require_same_n(x, y);
    require_primal(x);
    require_primal(y);
    int n = x.n();
    if (x.degree() + y.degree() < n) return wedge(x, y);
    return contract(x, tilde(y));
}

Scalar form(const MultiVector& x, const MultiVector& y) {
    require_same_n(x, y);
    require_primal(x);
    require_primal(y);
    if (x.degree() + y.degree() != x.n()) throw ExteriorError("form: degrees must sum to n");
    return VolumeForm{x.n()}(wedge(y, x));
}

SlElement dual_bracket_blade(int n, Mask x, Mask y) {
    if (degree_of(x) + degree_of(y) != n) throw ExteriorError("dual bracket: degrees must sum to n");
    SlElement out(n);
    // tr(E_ab o X) = X_ba, so X_ba is read off from (E_ab . x, y); the
    // identity component is then removed, which f traceless cannot see.
    Scalar tr = 0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            auto [s, m] = unit_action(a, b, x);
            if (!s) continue;
            int v = s * form_blade(n, m, y);
            out.at(b + 1, a + 1) = v;
            if (a == b) tr += v;
        }
    if (!is_zero(tr)) {
        Scalar shift = tr / n;
        for (int i = 1; i <= n; ++i) out.at(i, i) -= shift;
    }
    return out;
}

SlElement dual_bracket(const MultiVector& x, const MultiVector& y) {
    require_same_n(x, y);
    require_primal(x);
    require_primal(y);
    int n = x.n();
    if (x.degree() + y.degree() != n) throw ExteriorError("dual bracket: degrees must sum to n");
    SlElement out(n);
    for (const auto& [mx, cx] : x.terms())
        for (const auto& [my, cy] : y.terms()) out += (cx * cy) * dual_bracket_blade(n, mx, my);
    return out;
}

MultiVector sl_action(const SlElement& f, const MultiVector& x) {
    if (f.n() != x.n()) throw ExteriorError("sl_action dimension mismatch");
    const SlElement g = x.dual() ? Scalar(-1) * f.transpose() : f;
    int n = x.n();
    MultiVector out(n, x.degree(), x.dual());
    for (const auto& [m, c] : x.terms())
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                const Scalar& gab = g.at(a + 1, b + 1);
                if (is_zero(gab)) continue;
                auto [s, r] = unit_action(a, b, m);
                if (s) out.add_term(r, s * gab * c);
            }
    return out;
}

}  // namespace e8

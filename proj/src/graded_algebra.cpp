#include "e8/graded_algebra.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace e8 {

// ------------------------------------------------------------------ group

bool GroupElement::is_zero() const {
    return std::all_of(residues.begin(), residues.end(), [](int r) { return r == 0; });
}

std::string GroupElement::str() const {
    std::string s = "(";
    for (size_t k = 0; k < residues.size(); ++k) {
        if (k) s += ",";
        s += std::to_string(residues[k]);
    }
    return s + ")";
}

GroupElement Group::zero() const { return GroupElement{std::vector<int>(moduli.size(), 0)}; }

GroupElement Group::make(std::vector<int> r) const {
    if (r.size() != moduli.size()) throw AlgebraError("group element has the wrong number of residues");
    for (size_t k = 0; k < r.size(); ++k) r[k] = ((r[k] % moduli[k]) + moduli[k]) % moduli[k];
    return GroupElement{std::move(r)};
}

GroupElement Group::add(const GroupElement& a, const GroupElement& b) const {
    std::vector<int> r(moduli.size());
    for (size_t k = 0; k < r.size(); ++k) r[k] = a.residues[k] + b.residues[k];
    return make(std::move(r));
}

GroupElement Group::neg(const GroupElement& a) const {
    std::vector<int> r(moduli.size());
    for (size_t k = 0; k < r.size(); ++k) r[k] = -a.residues[k];
    return make(std::move(r));
}

std::vector<GroupElement> Group::elements() const {
    std::vector<GroupElement> out{zero()};
    for (;;) {
        GroupElement g = out.back();
        int k = static_cast<int>(moduli.size()) - 1;
        while (k >= 0 && g.residues[static_cast<size_t>(k)] == moduli[static_cast<size_t>(k)] - 1) {
            g.residues[static_cast<size_t>(k)] = 0;
            --k;
        }
        if (k < 0) return out;
        ++g.residues[static_cast<size_t>(k)];
        out.push_back(g);
    }
}

// ---------------------------------------------------------------- elements

void add_to(Element& e, int index, const Scalar& c) {
    if (is_zero(c)) return;
    auto [it, inserted] = e.emplace(index, c);
    if (!inserted) {
        it->second += c;
        if (is_zero(it->second)) e.erase(it);
    }
}

Element basis_element(int index, const Scalar& c) {
    Element e;
    add_to(e, index, c);
    return e;
}

Element operator+(const Element& a, const Element& b) {
    Element out = a;
    for (const auto& [k, c] : b) add_to(out, k, c);
    return out;
}

Element scaled(const Element& a, const Scalar& c) {
    Element out;
    if (is_zero(c)) return out;
    for (const auto& [k, v] : a) out.emplace(k, v * c);
    return out;
}

// ----------------------------------------------------------------- algebra

int GradedAlgebra::component_index(const GroupElement& g) const {
    for (size_t k = 0; k < components.size(); ++k)
        if (components[k].degree == g) return static_cast<int>(k);
    return -1;
}

void GradedAlgebra::resize_table() {
    table_.assign(static_cast<size_t>(dim()) * static_cast<size_t>(dim()), {});
}

const std::vector<Term>& GradedAlgebra::row(int i, int j) const {
    if (i < 0 || j < 0 || i >= dim() || j >= dim()) throw AlgebraError("basis index out of range");
    return table_[static_cast<size_t>(i) * static_cast<size_t>(dim()) + static_cast<size_t>(j)];
}

void GradedAlgebra::set_row(int i, int j, std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
    std::vector<Term> neg;
    neg.reserve(terms.size());
    for (const auto& [k, c] : terms) neg.emplace_back(k, -c);
    size_t n = static_cast<size_t>(dim());
    table_[static_cast<size_t>(i) * n + static_cast<size_t>(j)] = std::move(terms);
    table_[static_cast<size_t>(j) * n + static_cast<size_t>(i)] = std::move(neg);
}

Element bracket(const GradedAlgebra& a, const Element& x, const Element& y) {
    Element out;
    for (const auto& [i, ci] : x)
        for (const auto& [j, cj] : y)
            for (const auto& [k, c] : a.row(i, j)) add_to(out, k, ci * cj * c);
    return out;
}

// ---------------------------------------------------------------- assembly

namespace {

std::string blade_label(int n, Mask m) {
    if (m == 0) return "1";
    std::string s = "e_";
    for (int b = 0; b < n; ++b)
        if (m & (1u << b)) s += std::to_string(b + 1);
    return s;
}

std::uint64_t pack(const std::vector<Mask>& blades) {
    std::uint64_t key = 0;
    for (Mask m : blades) key = (key << 10) | m;
    return key;
}

// Nonzero entries of an sl basis matrix, as (row, col, value) 0-based.
struct MatrixEntry {
    int a, b, v;
};

class Assembler {
public:
    explicit Assembler(const ModelSpec& spec) : spec_(spec), group_(spec.group) { build_basis(); }

    GradedAlgebra take() {
        out_.resize_table();
        int n = out_.dim();
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                Element e = product(i, j);
                out_.set_row(i, j, std::vector<Term>(e.begin(), e.end()));
            }
        return std::move(out_);
    }

    int dim() const { return out_.dim(); }
    int component_of(int i) const { return out_.component_of[static_cast<size_t>(i)]; }

    // The bracket of basis vectors i and j computed straight from the rule
    // table, with the rule for the component pair read in the given order.
    Element product(int i, int j) const {
        const BasisVectorId& x = out_.ids[static_cast<size_t>(i)];
        const BasisVectorId& y = out_.ids[static_cast<size_t>(j)];
        bool xn = x.component == 0, yn = y.component == 0;
        if (xn && yn) return neutral_commutator(x, y);
        if (xn) return neutral_action(x, y);
        if (yn) return scaled(neutral_action(y, x), -1);
        const GroupElement& ga = out_.components[static_cast<size_t>(x.component)].degree;
        const GroupElement& gb = out_.components[static_cast<size_t>(y.component)].degree;
        if (gb < ga) return scaled(apply_rule(rule(gb, ga), y, x), -1);
        return apply_rule(rule(ga, gb), x, y);
    }

    Element product_in_rule_order(int i, int j) const {
        const BasisVectorId& x = out_.ids[static_cast<size_t>(i)];
        const BasisVectorId& y = out_.ids[static_cast<size_t>(j)];
        const GroupElement& ga = out_.components[static_cast<size_t>(x.component)].degree;
        return apply_rule(rule(ga, ga), x, y);
    }

private:
    void build_basis() {
        const auto& dims = spec_.slot_dims;
        if (dims.empty()) throw AlgebraError("model has no slots");
        for (int n : dims)
            if (n < 1 || n > kMaxDim) throw AlgebraError("slot dimension out of range");
        out_.model = spec_.name;
        out_.moduli = spec_.group.moduli;
        out_.slot_dims = dims;

        for (int n : dims) {
            std::vector<std::vector<MatrixEntry>> entries;
            for (const SlElement& f : SlElement::basis(n)) {
                std::vector<MatrixEntry> es;
                for (int a = 1; a <= n; ++a)
                    for (int b = 1; b <= n; ++b)
                        if (!is_zero(f.at(a, b))) es.push_back({a - 1, b - 1, static_cast<int>(f.at(a, b).get_num().get_si())});
                entries.push_back(std::move(es));
            }
            sl_entries_.push_back(std::move(entries));
        }

        auto elements = group_.elements();
        lookup_.resize(elements.size());
        for (const GroupElement& g : elements) {
            Component c;
            c.degree = g;
            c.start = out_.dim();
            int ci = static_cast<int>(out_.components.size());
            if (g.is_zero()) {
                for (size_t s = 0; s < dims.size(); ++s)
                    for (int t = 0; t < SlElement::basis_size(dims[s]); ++t) {
                        BasisVectorId id;
                        id.component = ci;
                        id.slot = static_cast<int>(s);
                        id.sl_index = t;
                        out_.labels.push_back(neutral_label(static_cast<int>(s), t));
                        out_.ids.push_back(std::move(id));
                        out_.component_of.push_back(ci);
                    }
            } else {
                auto it = spec_.shape.find(g);
                if (it == spec_.shape.end()) throw AlgebraError("shape map has no entry for " + g.str());
                c.slot_degrees = it->second;
                if (c.slot_degrees.size() != dims.size()) throw AlgebraError("shape of " + g.str() + " has the wrong number of slots");
                std::vector<std::vector<Mask>> per_slot;
                for (size_t s = 0; s < dims.size(); ++s) {
                    int d = c.slot_degrees[s];
                    if (d < 0 || d > dims[s]) throw AlgebraError("slot degree out of range in shape of " + g.str());
                    std::vector<Mask> ms;
                    for (unsigned m = 0; m < (1u << dims[s]); ++m)
                        if (degree_of(static_cast<Mask>(m)) == d) ms.push_back(static_cast<Mask>(m));
                    per_slot.push_back(std::move(ms));
                }
                std::vector<size_t> pos(dims.size(), 0);
                for (;;) {
                    BasisVectorId id;
                    id.component = ci;
                    std::string label = g.str();
                    for (size_t s = 0; s < dims.size(); ++s) {
                        id.blades.push_back(per_slot[s][pos[s]]);
                        label += "|" + blade_label(dims[s], per_slot[s][pos[s]]);
                    }
                    lookup_[static_cast<size_t>(ci)].emplace(pack(id.blades), out_.dim());
                    out_.labels.push_back(std::move(label));
                    out_.ids.push_back(std::move(id));
                    out_.component_of.push_back(ci);
                    size_t s = dims.size();
                    while (s > 0 && ++pos[s - 1] == per_slot[s - 1].size()) pos[--s] = 0;
                    if (s == 0) break;
                }
            }
            c.end = out_.dim();
            out_.components.push_back(std::move(c));
        }
    }

    std::string neutral_label(int s, int t) const {
        int n = spec_.slot_dims[static_cast<size_t>(s)];
        std::string head = "sl[" + std::to_string(s + 1) + "].";
        if (t < n * (n - 1)) {
            int i = t / (n - 1) + 1, r = t % (n - 1) + 1;
            int j = r >= i ? r + 1 : r;
            return head + "E_" + std::to_string(i) + "_" + std::to_string(j);
        }
        return head + "H_" + std::to_string(t - n * (n - 1) + 1);
    }

    int slot_offset(int s) const {
        int off = 0;
        for (int r = 0; r < s; ++r) off += SlElement::basis_size(spec_.slot_dims[static_cast<size_t>(r)]);
        return off;
    }

    void add_sl(Element& out, int s, const SlElement& m, const Scalar& c) const {
        if (is_zero(c)) return;
        auto co = m.coords();
        int off = slot_offset(s);
        for (size_t t = 0; t < co.size(); ++t) add_to(out, off + static_cast<int>(t), c * co[t]);
    }

    Element neutral_commutator(const BasisVectorId& x, const BasisVectorId& y) const {
        Element out;
        if (x.slot != y.slot) return out;
        int n = spec_.slot_dims[static_cast<size_t>(x.slot)];
        auto basis = SlElement::basis(n);
        add_sl(out, x.slot, commutator(basis[static_cast<size_t>(x.sl_index)], basis[static_cast<size_t>(y.sl_index)]), 1);
        return out;
    }

    Element neutral_action(const BasisVectorId& f, const BasisVectorId& x) const {
        Element out;
        size_t s = static_cast<size_t>(f.slot);
        for (const MatrixEntry& e : sl_entries_[s][static_cast<size_t>(f.sl_index)]) {
            auto [sign, m] = unit_action(e.a, e.b, x.blades[s]);
            if (!sign) continue;
            std::vector<Mask> blades = x.blades;
            blades[s] = m;
            add_to(out, index_of(x.component, blades), sign * e.v);
        }
        return out;
    }

    int index_of(int component, const std::vector<Mask>& blades) const {
        const auto& table = lookup_[static_cast<size_t>(component)];
        auto it = table.find(pack(blades));
        if (it == table.end()) throw AlgebraError("rule produced a tensor outside the target component's shape");
        return it->second;
    }

    const BracketRule& rule(const GroupElement& a, const GroupElement& b) const {
        auto it = spec_.rules.find({a, b});
        if (it == spec_.rules.end()) throw AlgebraError("no bracket rule for " + a.str() + " x " + b.str());
        return it->second;
    }

    const Scalar& scalar(const std::string& name) const {
        auto it = spec_.scalars.find(name);
        if (it == spec_.scalars.end()) throw AlgebraError("unbound scalar '" + name + "'");
        return it->second;
    }

    Element apply_rule(const BracketRule& r, const BasisVectorId& x, const BasisVectorId& y) const {
        const auto& dims = spec_.slot_dims;
        const GroupElement& ga = out_.components[static_cast<size_t>(x.component)].degree;
        const GroupElement& gb = out_.components[static_cast<size_t>(y.component)].degree;
        GroupElement target = group_.add(ga, gb);
        Element out;
        if (const auto* st = std::get_if<StarRule>(&r)) {
            if (target.is_zero()) throw AlgebraError("star rule used for a pair summing to zero");
            int tc = out_.component_index(target);
            const auto& tdeg = out_.components[static_cast<size_t>(tc)].slot_degrees;
            const Scalar& a = scalar(st->scalar);
            int sign = 1;
            std::vector<Mask> blades(dims.size());
            for (size_t s = 0; s < dims.size(); ++s) {
                auto [sg, m] = star_blade(dims[s], x.blades[s], y.blades[s]);
                if (degree_of(m) != tdeg[s] && sg != 0) throw AlgebraError("rule produces the wrong degree in slot " + std::to_string(s + 1));
                if (!sg) return out;
                sign *= sg;
                blades[s] = m;
            }
            add_to(out, index_of(tc, blades), sign * a);
            return out;
        }
        const auto& ds = std::get<DualSumRule>(r);
        if (!target.is_zero()) throw AlgebraError("dual-sum rule used for a pair not summing to zero");
        if (ds.slot_scalars.size() != dims.size()) throw AlgebraError("dual-sum rule has the wrong number of slots");
        std::vector<int> pair_sign(dims.size());
        for (size_t s = 0; s < dims.size(); ++s) {
            auto [sg, m] = star_blade(dims[s], x.blades[s], y.blades[s]);
            if (sg != 0 && m != 0) throw AlgebraError("dual-sum pairing does not land in degree 0");
            pair_sign[s] = sg;
        }
        for (size_t s = 0; s < dims.size(); ++s) {
            int d = degree_of(x.blades[s]);
            if (d == 0 || d == dims[s]) continue;
            int factor = 1;
            for (size_t t = 0; t < dims.size(); ++t)
                if (t != s) factor *= pair_sign[t];
            if (!factor) continue;
            if (ds.slot_scalars[s].empty()) throw AlgebraError("dual-sum rule lacks a scalar for slot " + std::to_string(s + 1));
            const Scalar& b = scalar(ds.slot_scalars[s]);
            add_sl(out, static_cast<int>(s), dual_bracket_blade(dims[s], x.blades[s], y.blades[s]), factor * b);
        }
        return out;
    }

    const ModelSpec& spec_;
    Group group_;
    GradedAlgebra out_;
    std::vector<std::vector<std::vector<MatrixEntry>>> sl_entries_;
    std::vector<std::unordered_map<std::uint64_t, int>> lookup_;
};

}  // namespace

GradedAlgebra assemble(const ModelSpec& spec, bool allow_zero_scalars) {
    for (const auto& [name, v] : spec.scalars)
        if (!allow_zero_scalars && is_zero(v)) throw AlgebraError("scalar '" + name + "' is zero");
    return Assembler(spec).take();
}

std::vector<std::pair<int, int>> diagonal_skew_violations(const ModelSpec& spec) {
    Assembler as(spec);
    std::vector<std::pair<int, int>> bad;
    for (int i = 0; i < as.dim(); ++i) {
        int ci = as.component_of(i);
        if (ci == 0) continue;
        for (int j = i; j < as.dim() && as.component_of(j) == ci; ++j) {
            Element sum = as.product_in_rule_order(i, j) + as.product_in_rule_order(j, i);
            if (!sum.empty()) bad.emplace_back(i, j);
        }
    }
    return bad;
}

}  // namespace e8

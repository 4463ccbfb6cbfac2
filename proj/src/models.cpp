#include "e8/models.hpp"

#include <algorithm>

namespace e8 {

const std::vector<ModelId>& all_models() {
    static const std::vector<ModelId> ids{ModelId::Z3_A8,     ModelId::Z5_2A4,   ModelId::Z4_A7A1,
                                          ModelId::Z6_A5A2A1, ModelId::Z3SQ_4A2, ModelId::Z2Z4_2A32A1};
    return ids;
}

std::string model_key(ModelId id) {
    switch (id) {
        case ModelId::Z3_A8: return "z3";
        case ModelId::Z5_2A4: return "z5";
        case ModelId::Z4_A7A1: return "z4";
        case ModelId::Z6_A5A2A1: return "z6";
        case ModelId::Z3SQ_4A2: return "z3sq";
        case ModelId::Z2Z4_2A32A1: return "z2z4";
    }
    throw ModelError("unknown model id");
}

ModelId parse_model(const std::string& key) {
    for (ModelId id : all_models())
        if (model_key(id) == key) return id;
    throw ModelError("unknown model '" + key + "'");
}

namespace {

std::string digits(const GroupElement& g) {
    std::string s;
    for (int r : g.residues) s += std::to_string(r);
    return s;
}

std::string num(int i) { return std::to_string(i); }

// Cyclic models: group Z_m, slot degrees given by multipliers mod n_s.
ModelSpec cyclic(const std::string& name, int m, std::vector<int> slots, std::vector<int> mult) {
    ModelSpec spec;
    spec.name = name;
    spec.group = Group{{m}};
    spec.slot_dims = slots;
    for (int i = 1; i < m; ++i) {
        std::vector<int> d;
        for (size_t s = 0; s < slots.size(); ++s) d.push_back((mult[s] * i) % slots[s]);
        spec.shape[GroupElement{{i}}] = d;
    }
    for (int i = 1; i < m; ++i)
        for (int j = i; j < m; ++j) {
            std::pair key{GroupElement{{i}}, GroupElement{{j}}};
            if ((i + j) % m != 0) {
                spec.rules[key] = StarRule{"a_" + num(i) + num(j)};
                continue;
            }
            DualSumRule r;
            const auto& d = spec.shape[key.first];
            for (size_t s = 0; s < slots.size(); ++s)
                r.slot_scalars.push_back(d[s] == 0 ? "" : "b" + num(i) + "_" + num(static_cast<int>(s) + 1));
            spec.rules[key] = r;
        }
    return spec;
}

ModelSpec z3sq() {
    ModelSpec spec;
    spec.name = "z3sq";
    spec.group = Group{{3, 3}};
    spec.slot_dims = {3, 3, 3, 3};
    const Group& g = spec.group;
    auto els = g.elements();
    for (const auto& e : els) {
        if (e.is_zero()) continue;
        int i = e.residues[0], j = e.residues[1];
        spec.shape[e] = {i % 3, (i + j) % 3, (i + 2 * j) % 3, j % 3};
    }
    for (const auto& a : els)
        for (const auto& b : els) {
            if (a.is_zero() || b.is_zero() || b < a) continue;
            if (!g.add(a, b).is_zero()) {
                spec.rules[{a, b}] = StarRule{"a_" + digits(a) + "_" + digits(b)};
                continue;
            }
            DualSumRule r;
            const auto& d = spec.shape[a];
            for (size_t s = 0; s < 4; ++s)
                r.slot_scalars.push_back(d[s] == 0 ? "" : "b" + digits(a) + "_" + num(static_cast<int>(s) + 1));
            spec.rules[{a, b}] = r;
        }
    return spec;
}

ModelSpec z2z4() {
    ModelSpec spec;
    spec.name = "z2z4";
    spec.group = Group{{2, 4}};
    spec.slot_dims = {2, 2, 4, 4};
    const Group& g = spec.group;
    auto els = g.elements();
    for (const auto& e : els) {
        if (e.is_zero()) continue;
        int i = e.residues[0], j = e.residues[1];
        spec.shape[e] = {i % 2, (i + j) % 2, (2 * i + j) % 4, j % 4};
    }
    for (const auto& a : els)
        for (const auto& b : els) {
            if (a.is_zero() || b.is_zero() || b < a) continue;
            int ai = a.residues[0], aj = a.residues[1], bi = b.residues[0], bj = b.residues[1];
            if (!g.add(a, b).is_zero()) {
                std::string prefix = ai == 0 ? (bi == 0 ? "a_" : "ap_") : "app_";
                spec.rules[{a, b}] = StarRule{prefix + num(aj) + num(bj)};
                continue;
            }
            DualSumRule r;
            const auto& d = spec.shape[a];
            std::string prefix = (ai == 0 ? "b" : "bp") + num(aj) + "_";
            for (size_t s = 0; s < 4; ++s)
                r.slot_scalars.push_back(d[s] == 0 ? "" : prefix + num(static_cast<int>(s) + 1));
            spec.rules[{a, b}] = r;
        }
    return spec;
}

Monomial mono(int sign, std::vector<std::string> f) { return Monomial{sign, std::move(f)}; }

// a = b = c = ... becomes a=b, b=c, ...
void chain(std::vector<Constraint>& out, const std::vector<Monomial>& ms) {
    for (size_t k = 0; k + 1 < ms.size(); ++k) {
        Constraint c{"", ms[k], ms[k + 1]};
        c.id = c.lhs.str() + "=" + c.rhs.str();
        out.push_back(std::move(c));
    }
}

const Scalar& get(const std::map<std::string, Scalar>& m, const std::string& name) {
    auto it = m.find(name);
    if (it == m.end()) throw ModelError("scalar '" + name + "' is not bound");
    return it->second;
}

}  // namespace

ModelSpec model_skeleton(ModelId id) {
    switch (id) {
        case ModelId::Z3_A8: {
            ModelSpec s = cyclic("z3", 3, {9}, {3});
            // A single slot: the dual-sum scalar is simply b_1.
            s.rules[{GroupElement{{1}}, GroupElement{{2}}}] = DualSumRule{{"b_1"}};
            return s;
        }
        case ModelId::Z5_2A4: return cyclic("z5", 5, {5, 5}, {1, 2});
        case ModelId::Z4_A7A1: return cyclic("z4", 4, {2, 8}, {1, 2});
        case ModelId::Z6_A5A2A1: return cyclic("z6", 6, {2, 3, 6}, {1, 1, 1});
        case ModelId::Z3SQ_4A2: return z3sq();
        case ModelId::Z2Z4_2A32A1: return z2z4();
    }
    throw ModelError("unknown model id");
}

std::vector<std::string> scalar_names(ModelId id) {
    std::set<std::string> names;
    for (const auto& [key, rule] : model_skeleton(id).rules) {
        if (const auto* st = std::get_if<StarRule>(&rule)) {
            names.insert(st->scalar);
        } else {
            for (const auto& n : std::get<DualSumRule>(rule).slot_scalars)
                if (!n.empty()) names.insert(n);
        }
    }
    return {names.begin(), names.end()};
}

ModelSpec model_spec(ModelId id, const ScalarAssignment& scalars) {
    ModelSpec spec = model_skeleton(id);
    for (const auto& name : scalar_names(id)) {
        auto it = scalars.find(name);
        if (it == scalars.end()) throw ModelError("scalar '" + name + "' is missing");
        if (is_zero(it->second)) throw ModelError("scalar '" + name + "' is zero");
        spec.scalars.emplace(name, it->second);
    }
    return spec;
}

ScalarAssignment canonical_scalars(ModelId id) {
    ScalarAssignment s;
    auto names = scalar_names(id);
    auto set_all = [&](int v) {
        for (const auto& n : names) s[n] = v;
    };
    switch (id) {
        case ModelId::Z3_A8:
        case ModelId::Z5_2A4:
        case ModelId::Z4_A7A1:
            // Every a equal to 1, every b equal to -1.
            for (const auto& n : names) s[n] = n[0] == 'a' ? 1 : -1;
            break;
        case ModelId::Z6_A5A2A1:
            set_all(1);
            for (const char* n : {"a_12", "a_14", "a_35", "a_55", "b1_1", "b1_2", "b1_3", "b2_2", "b2_3"}) s[n] = -1;
            break;
        case ModelId::Z3SQ_4A2:
            for (const auto& n : names) {
                if (n[0] == 'b') {
                    s[n] = -1;
                } else {
                    // a_ij_kl: diagonal when both group elements agree.
                    s[n] = n.substr(2, 2) == n.substr(5, 2) ? -1 : 1;
                }
            }
            break;
        case ModelId::Z2Z4_2A32A1:
            set_all(1);
            for (const char* n : {"a_23", "ap_21", "ap_23", "a_33", "app_02", "app_03", "app_11", "app_23", "bp1_1", "bp1_3",
                                  "bp1_4", "bp2_1", "bp2_2", "bp2_4"})
                s[n] = -1;
            break;
    }
    return s;
}

// --------------------------------------------------------------- constraints

Scalar Monomial::eval(const ScalarAssignment& s) const {
    Scalar v = sign;
    for (const auto& f : factors) v *= get(s, f);
    return v;
}

std::string Monomial::str() const {
    std::string out = sign < 0 ? "-" : "";
    for (size_t k = 0; k < factors.size(); ++k) out += (k ? "*" : "") + factors[k];
    return out;
}

std::set<std::string> Constraint::names() const {
    std::set<std::string> n(lhs.factors.begin(), lhs.factors.end());
    n.insert(rhs.factors.begin(), rhs.factors.end());
    return n;
}

namespace {

std::vector<Constraint> z3sq_constraints() {
    Group g{{3, 3}};
    ModelSpec skel = z3sq();
    auto a = [&](const GroupElement& x, const GroupElement& y) {
        const auto& r = skel.rules.at(y < x ? std::pair{y, x} : std::pair{x, y});
        return std::get<StarRule>(r).scalar;
    };
    auto b = [&](const GroupElement& x, int slot) {
        GroupElement y = g.neg(x);
        GroupElement lo = std::min(x, y), hi = std::max(x, y);
        return std::get<DualSumRule>(skel.rules.at({lo, hi})).slot_scalars[static_cast<size_t>(slot)];
    };
    std::vector<Constraint> out;
    std::set<std::string> seen;
    auto push = [&](Monomial l, Monomial r) {
        Constraint c{l.str() + "=" + r.str(), std::move(l), std::move(r)};
        if (seen.insert(c.id).second) out.push_back(std::move(c));
    };
    auto els = g.elements();
    for (const auto& al : els) {
        if (al.is_zero()) continue;
        GroupElement a2 = g.add(al, al);
        const auto& shape = skel.shape.at(al);
        for (int i = 0; i < 4; ++i)
            if (shape[static_cast<size_t>(i)] != 0) push(mono(-1, {b(al, i)}), mono(1, {a(al, al), a(a2, a2)}));
        for (const auto& be : els) {
            if (be.is_zero() || be == al || be == a2) continue;
            GroupElement ab = g.add(al, be);
            GroupElement a2b = g.add(ab, be);
            push(mono(-1, {a(al, al), a(a2, be)}), mono(1, {a(al, be), a(al, ab)}));
            push(mono(-1, {a(al, be), a(ab, ab)}), mono(1, {a(be, ab), a(a2b, al)}));
            for (int i = 0; i < 4; ++i)
                if (shape[static_cast<size_t>(i)] != 0) push(mono(-1, {b(al, i)}), mono(1, {a(al, be), a(ab, a2)}));
        }
    }
    return out;
}

}  // namespace

std::vector<Constraint> constraints(ModelId id) {
    std::vector<Constraint> c;
    using V = std::vector<Monomial>;
    switch (id) {
        case ModelId::Z3_A8:
            c.push_back(Constraint{"a11*a22+b1=0", mono(1, {"a_11", "a_22"}), mono(-1, {"b_1"})});
            break;
        case ModelId::Z5_2A4:
            chain(c, V{mono(1, {"b1_1"}), mono(1, {"b1_2"}), mono(-1, {"a_11", "a_24"}), mono(-1, {"a_12", "a_34"}),
                       mono(-1, {"a_13", "a_44"})});
            chain(c, V{mono(1, {"b2_1"}), mono(1, {"b2_2"}), mono(-1, {"a_12", "a_33"}), mono(-1, {"a_22", "a_34"}),
                       mono(-1, {"a_13", "a_24"})});
            break;
        case ModelId::Z4_A7A1:
            chain(c, V{mono(1, {"b1_1"}), mono(1, {"b1_2"}), mono(-1, {"a_11", "a_23"}), mono(-1, {"a_12", "a_33"})});
            chain(c, V{mono(1, {"b2_2"}), mono(-1, {"a_12", "a_23"})});
            break;
        case ModelId::Z6_A5A2A1:
            chain(c, V{mono(1, {"b1_1"}), mono(1, {"b1_2"}), mono(1, {"b1_3"}), mono(-1, {"a_11", "a_25"}),
                       mono(-1, {"a_12", "a_35"}), mono(-1, {"a_13", "a_45"}), mono(-1, {"a_14", "a_55"})});
            chain(c, V{mono(1, {"b2_2"}), mono(1, {"b2_3"}), mono(1, {"a_12", "a_34"}), mono(1, {"a_14", "a_25"}),
                       mono(-1, {"a_22", "a_44"}), mono(-1, {"a_23", "a_45"})});
            chain(c, V{mono(1, {"b3_1"}), mono(1, {"b3_3"}), mono(1, {"a_13", "a_34"})});
            chain(c, V{mono(1, {"a_11", "a_22"}), mono(-1, {"a_12", "a_13"})});
            break;
        case ModelId::Z3SQ_4A2:
            return z3sq_constraints();
        case ModelId::Z2Z4_2A32A1:
            chain(c, V{mono(1, {"b1_2"}), mono(1, {"b1_3"}), mono(1, {"b1_4"}), mono(-1, {"a_11", "a_23"}),
                       mono(1, {"ap_10", "ap_31"})});
            chain(c, V{mono(1, {"b2_3"}), mono(1, {"b2_4"}), mono(-1, {"a_12", "a_23"})});
            chain(c, V{mono(1, {"a_11", "ap_20"}), mono(1, {"ap_10", "ap_11"})});
            chain(c, V{mono(1, {"a_11", "ap_21"}), mono(-1, {"ap_11", "ap_12"})});
            chain(c, V{mono(1, {"a_11", "ap_22"}), mono(1, {"ap_12", "ap_13"})});
            chain(c, V{mono(1, {"a_11", "ap_23"}), mono(-1, {"ap_10", "ap_13"})});
            chain(c, V{mono(1, {"a_12", "a_33"}), mono(1, {"a_11", "a_23"})});
            chain(c, V{mono(1, {"a_12", "ap_30"}), mono(1, {"ap_12", "ap_20"})});
            chain(c, V{mono(1, {"a_12", "ap_31"}), mono(-1, {"ap_13", "ap_21"})});
            chain(c, V{mono(1, {"a_12", "ap_32"}), mono(1, {"ap_10", "ap_22"})});
            chain(c, V{mono(1, {"a_12", "ap_33"}), mono(-1, {"ap_11", "ap_23"})});
            chain(c, V{mono(1, {"ap_10", "app_11"}), mono(1, {"ap_11", "app_02"}), mono(-1, {"a_11", "app_01"})});
            chain(c, V{mono(1, {"ap_10", "app_12"}), mono(-1, {"a_12", "app_02"}), mono(-1, {"ap_12", "app_03"})});
            chain(c, V{mono(1, {"bp0_1"}), mono(1, {"bp0_2"}), mono(1, {"bp0_3"}), mono(1, {"ap_10", "app_01"})});
            chain(c, V{mono(1, {"bp1_1"}), mono(1, {"bp1_3"}), mono(1, {"bp1_4"}), mono(1, {"ap_31", "app_03"}),
                       mono(1, {"ap_11", "app_23"})});
            chain(c, V{mono(1, {"bp2_1"}), mono(1, {"bp2_2"}), mono(1, {"bp2_4"}), mono(-1, {"app_12", "ap_32"})});
            chain(c, V{mono(1, {"ap_12", "app_33"}), mono(-1, {"app_23", "a_11"})});
            break;
    }
    return c;
}

std::vector<ConstraintValue> check(ModelId id, const ScalarAssignment& s) {
    std::vector<ConstraintValue> bad;
    for (const Constraint& c : constraints(id)) {
        Scalar l = c.lhs.eval(s), r = c.rhs.eval(s);
        if (l != r) bad.push_back({c, l, r});
    }
    return bad;
}

// ---------------------------------------------------------------- families

std::vector<std::string> free_names(ModelId id) {
    switch (id) {
        case ModelId::Z3_A8: return {"a_11", "a_22"};
        case ModelId::Z5_2A4: return {"a_11", "a_12", "a_13", "a_24"};
        case ModelId::Z4_A7A1: return {"a_11", "a_12", "a_23"};
        case ModelId::Z6_A5A2A1: return {"a_11", "a_12", "a_13", "a_14", "a_25"};
        case ModelId::Z3SQ_4A2: {
            std::vector<std::string> out;
            for (const auto& g : Group{{3, 3}}.elements())
                if (!g.is_zero()) out.push_back("t_" + digits(g));
            return out;
        }
        case ModelId::Z2Z4_2A32A1: return {"a_11", "a_12", "ap_10", "ap_11", "ap_12", "ap_13", "app_01"};
    }
    throw ModelError("unknown model id");
}

ScalarAssignment parametric_assignment(ModelId id, const std::map<std::string, Scalar>& free) {
    auto names = free_names(id);
    for (const auto& n : names) {
        auto it = free.find(n);
        if (it == free.end()) throw ModelError("free parameter '" + n + "' is missing");
        if (is_zero(it->second)) throw ModelError("free parameter '" + n + "' is zero");
    }
    for (const auto& [n, v] : free)
        if (std::find(names.begin(), names.end(), n) == names.end()) throw ModelError("'" + n + "' is not a free parameter of this model");

    auto f = [&](const char* n) { return free.at(n); };
    ScalarAssignment s;
    switch (id) {
        case ModelId::Z3_A8:
            s = {{"a_11", f("a_11")}, {"a_22", f("a_22")}, {"b_1", -f("a_11") * f("a_22")}};
            break;
        case ModelId::Z5_2A4: {
            Scalar a11 = f("a_11"), a12 = f("a_12"), a13 = f("a_13"), a24 = f("a_24");
            Scalar b1 = -a11 * a24, b2 = -a13 * a24;
            s = {{"a_11", a11}, {"a_12", a12}, {"a_13", a13}, {"a_24", a24},
                 {"a_22", a12 * a13 / a11}, {"a_33", a13 * a24 / a12}, {"a_34", a11 * a24 / a12}, {"a_44", a11 * a24 / a13},
                 {"b1_1", b1}, {"b1_2", b1}, {"b2_1", b2}, {"b2_2", b2}};
            break;
        }
        case ModelId::Z4_A7A1: {
            Scalar a11 = f("a_11"), a12 = f("a_12"), a23 = f("a_23");
            Scalar b1 = -a11 * a23;
            s = {{"a_11", a11}, {"a_12", a12}, {"a_23", a23}, {"a_33", a11 * a23 / a12},
                 {"b1_1", b1}, {"b1_2", b1}, {"b2_2", -a12 * a23}};
            break;
        }
        case ModelId::Z6_A5A2A1: {
            Scalar a11 = f("a_11"), a12 = f("a_12"), a13 = f("a_13"), a14 = f("a_14"), a25 = f("a_25");
            Scalar b1 = -a11 * a25, b2 = a14 * a25, a34 = a14 * a25 / a12;
            Scalar b3 = a13 * a34;
            s = {{"a_11", a11}, {"a_12", a12}, {"a_13", a13}, {"a_14", a14}, {"a_25", a25},
                 {"a_22", -a12 * a13 / a11}, {"a_23", -a13 * a14 / a11}, {"a_34", a34}, {"a_35", a11 * a25 / a12},
                 {"a_44", a11 * a14 * a25 / (a12 * a13)}, {"a_45", a11 * a25 / a13}, {"a_55", a11 * a25 / a14},
                 {"b1_1", b1}, {"b1_2", b1}, {"b1_3", b1}, {"b2_2", b2}, {"b2_3", b2}, {"b3_1", b3}, {"b3_3", b3}};
            break;
        }
        case ModelId::Z3SQ_4A2: {
            RescalingMap t;
            for (const auto& g : Group{{3, 3}}.elements())
                if (!g.is_zero()) t[g] = free.at("t_" + digits(g));
            return rescaling_map(id, canonical_scalars(id), t);
        }
        case ModelId::Z2Z4_2A32A1: {
            Scalar a11 = f("a_11"), a12 = f("a_12"), p10 = f("ap_10"), p11 = f("ap_11"), p12 = f("ap_12"),
                   p13 = f("ap_13"), q01 = f("app_01");
            Scalar P = p10 * p11 * p12 * p13;
            Scalar b1 = P / (a11 * a12), b2 = P / (a11 * a11), bp0 = p10 * q01, bp1 = -p13 * q01,
                   bp2 = -p12 * p13 * q01 / p11;
            s = {{"a_11", a11}, {"a_12", a12}, {"ap_10", p10}, {"ap_11", p11}, {"ap_12", p12}, {"ap_13", p13},
                 {"app_01", q01},
                 {"a_23", -P / (a11 * a11 * a12)}, {"a_33", -P / (a11 * a12 * a12)},
                 {"ap_20", p10 * p11 / a11}, {"ap_21", -p11 * p12 / a11}, {"ap_22", p12 * p13 / a11},
                 {"ap_23", -p10 * p13 / a11},
                 {"ap_30", p10 * p11 * p12 / (a11 * a12)}, {"ap_31", p11 * p12 * p13 / (a11 * a12)},
                 {"ap_32", p10 * p12 * p13 / (a11 * a12)}, {"ap_33", p10 * p11 * p13 / (a11 * a12)},
                 {"app_02", -a11 * q01 / p11}, {"app_03", -a11 * a12 * q01 / (p11 * p12)},
                 {"app_11", -a11 * q01 / p10}, {"app_12", a11 * a12 * q01 / (p10 * p11)},
                 {"app_23", -p13 * q01 / p11}, {"app_33", a11 * p13 * q01 / (p11 * p12)},
                 {"b1_2", b1}, {"b1_3", b1}, {"b1_4", b1}, {"b2_3", b2}, {"b2_4", b2},
                 {"bp0_1", bp0}, {"bp0_2", bp0}, {"bp0_3", bp0}, {"bp1_1", bp1}, {"bp1_3", bp1}, {"bp1_4", bp1},
                 {"bp2_1", bp2}, {"bp2_2", bp2}, {"bp2_4", bp2}};
            break;
        }
    }
    for (auto& [n, v] : s) v.canonicalize();
    return s;
}

// --------------------------------------------------------------- rescaling

namespace {

Scalar alpha_of(const RescalingMap& alphas, const GroupElement& g) {
    if (g.is_zero()) {
        auto it = alphas.find(g);
        if (it != alphas.end() && it->second != 1) throw ModelError("the multiplier at the identity must be 1");
        return 1;
    }
    auto it = alphas.find(g);
    if (it == alphas.end()) throw ModelError("no multiplier for " + g.str());
    if (is_zero(it->second)) throw ModelError("multiplier for " + g.str() + " is zero");
    return it->second;
}

}  // namespace

ScalarAssignment rescaling_map(ModelId id, const ScalarAssignment& src, const RescalingMap& alphas) {
    ModelSpec skel = model_skeleton(id);
    for (const auto& [g, v] : alphas) alpha_of(alphas, g);
    ScalarAssignment dst;
    for (const auto& [key, rule] : skel.rules) {
        const auto& [a, b] = key;
        Scalar factor = alpha_of(alphas, a) * alpha_of(alphas, b) / alpha_of(alphas, skel.group.add(a, b));
        if (const auto* st = std::get_if<StarRule>(&rule)) {
            dst[st->scalar] = get(src, st->scalar) * factor;
        } else {
            for (const auto& n : std::get<DualSumRule>(rule).slot_scalars)
                if (!n.empty()) dst[n] = get(src, n) * factor;
        }
    }
    return dst;
}

IsomorphismReport verify_isomorphism(ModelId id, const ScalarAssignment& src, const ScalarAssignment& dst,
                                     const RescalingMap& alphas) {
    GradedAlgebra as = assemble(model_spec(id, src));
    GradedAlgebra ad = assemble(model_spec(id, dst));
    int n = as.dim();
    std::vector<Scalar> f(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        f[static_cast<size_t>(i)] = alpha_of(alphas, as.components[static_cast<size_t>(as.component_of[static_cast<size_t>(i)])].degree);
    IsomorphismReport rep;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            ++rep.pairs_checked;
            Element lhs, rhs;
            for (const auto& [k, c] : ad.row(i, j)) add_to(lhs, k, c * f[static_cast<size_t>(k)]);
            for (const auto& [k, c] : as.row(i, j)) add_to(rhs, k, c * f[static_cast<size_t>(i)] * f[static_cast<size_t>(j)]);
            if (lhs != rhs) {
                rep.passed = false;
                if (rep.failures.size() < 8) rep.failures.emplace_back(i, j);
            }
        }
    return rep;
}

std::vector<std::pair<int, int>> focus_pairs(const ModelSpec& spec, const GradedAlgebra& a,
                                             const std::set<std::string>& names) {
    std::set<std::pair<int, int>> out;
    for (const auto& [key, rule] : spec.rules) {
        bool uses = false;
        if (const auto* st = std::get_if<StarRule>(&rule)) {
            uses = names.count(st->scalar) > 0;
        } else {
            for (const auto& n : std::get<DualSumRule>(rule).slot_scalars) uses = uses || (!n.empty() && names.count(n));
        }
        if (!uses) continue;
        int p = a.component_index(key.first), q = a.component_index(key.second);
        out.emplace(p, q);
        out.emplace(q, p);
    }
    return {out.begin(), out.end()};
}

}  // namespace e8

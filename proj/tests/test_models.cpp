#include "doctest.h"

#include "e8/models.hpp"

#include <algorithm>
#include <random>

using namespace e8;

namespace {

ScalarAssignment with(ScalarAssignment s, const std::string& name, const Scalar& v) {
    REQUIRE(s.count(name));
    s[name] = v;
    return s;
}

Scalar random_nonzero(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-6, 6), den(1, 5);
    int n = 0;
    while (n == 0) n = num(rng);
    Scalar s(n, den(rng));
    s.canonicalize();
    return s;
}

std::map<std::string, Scalar> random_free(ModelId id, std::mt19937_64& rng) {
    std::map<std::string, Scalar> f;
    for (const auto& n : free_names(id)) f[n] = random_nonzero(rng);
    return f;
}

RescalingMap random_alphas(ModelId id, std::mt19937_64& rng) {
    RescalingMap al;
    for (const auto& g : model_skeleton(id).group.elements())
        al[g] = g.is_zero() ? Scalar(1) : random_nonzero(rng);
    return al;
}

bool sampled_jacobi(ModelId id, const ScalarAssignment& s, std::uint64_t samples, std::uint64_t seed) {
    JacobiOptions o;
    o.mode = JacobiMode::Sampled;
    o.samples = samples;
    o.seed = seed;
    return verify_jacobi(assemble(model_spec(id, s)), o).passed;
}

}  // namespace

TEST_CASE("model keys") {
    for (ModelId id : all_models()) CHECK(parse_model(model_key(id)) == id);
    CHECK_THROWS_AS(parse_model("z7"), ModelError);
    CHECK(all_models().size() == 6);
}

TEST_CASE("model specs") {
    auto z5 = model_spec(ModelId::Z5_2A4, canonical_scalars(ModelId::Z5_2A4));
    CHECK(z5.slot_dims == std::vector<int>{5, 5});
    CHECK(z5.group.moduli == std::vector<int>{5});
    CHECK(assemble(z5).components.size() == 5);

    auto z3sq = assemble(model_spec(ModelId::Z3SQ_4A2, canonical_scalars(ModelId::Z3SQ_4A2)));
    CHECK(z3sq.slot_dims == std::vector<int>{3, 3, 3, 3});
    CHECK(z3sq.components.size() == 9);
    for (size_t c = 1; c < 9; ++c) CHECK(z3sq.components[c].dim() == 27);

    // Every nonzero element of Z3 x Z3 has exactly one slot of degree 0.
    for (const auto& [g, d] : model_skeleton(ModelId::Z3SQ_4A2).shape) {
        if (g.is_zero()) continue;
        CHECK(std::count(d.begin(), d.end(), 0) == 1);
    }

    CHECK_THROWS_AS(model_spec(ModelId::Z5_2A4, {}), ModelError);
    CHECK_THROWS_AS(model_spec(ModelId::Z5_2A4, with(canonical_scalars(ModelId::Z5_2A4), "a_13", 0)), ModelError);

    // Z6: the dual brackets of slots with degree 0 carry no scalar.
    auto names = scalar_names(ModelId::Z6_A5A2A1);
    CHECK(std::count(names.begin(), names.end(), "b2_1") == 0);
    CHECK(std::count(names.begin(), names.end(), "b3_2") == 0);
    CHECK(names.size() == 19);
    CHECK(scalar_names(ModelId::Z2Z4_2A32A1).size() == 23 + 14);
    CHECK(scalar_names(ModelId::Z3_A8) == std::vector<std::string>{"a_11", "a_22", "b_1"});
}

TEST_CASE("canonical solutions as printed") {
    ScalarAssignment z5;
    for (const char* n : {"a_11", "a_22", "a_33", "a_34", "a_44", "a_12", "a_13", "a_24"}) z5[n] = 1;
    for (const char* n : {"b1_1", "b1_2", "b2_1", "b2_2"}) z5[n] = -1;
    CHECK(canonical_scalars(ModelId::Z5_2A4) == z5);

    ScalarAssignment z4;
    for (const char* n : {"a_11", "a_12", "a_23", "a_33"}) z4[n] = 1;
    for (const char* n : {"b2_2", "b1_1", "b1_2"}) z4[n] = -1;
    CHECK(canonical_scalars(ModelId::Z4_A7A1) == z4);

    ScalarAssignment z6;
    for (const char* n : {"a_11", "a_13", "a_22", "a_23", "a_25", "a_34", "a_44", "a_45", "b3_1", "b3_3"}) z6[n] = 1;
    for (const char* n : {"a_12", "a_14", "a_35", "a_55", "b1_1", "b1_2", "b1_3", "b2_2", "b2_3"}) z6[n] = -1;
    CHECK(canonical_scalars(ModelId::Z6_A5A2A1) == z6);

    ScalarAssignment z2z4;
    for (const char* n : {"a_11", "a_12", "ap_10", "ap_11", "ap_12", "ap_13", "ap_20", "ap_22", "ap_30", "ap_31", "ap_32",
                          "ap_33", "app_01", "app_12", "app_33", "b1_2", "b1_3", "b1_4", "b2_3", "b2_4", "bp0_1", "bp0_2",
                          "bp0_3"})
        z2z4[n] = 1;
    for (const char* n : {"a_23", "ap_21", "ap_23", "a_33", "app_02", "app_03", "app_11", "app_23", "bp1_1", "bp1_3",
                          "bp1_4", "bp2_1", "bp2_2", "bp2_4"})
        z2z4[n] = -1;
    CHECK(canonical_scalars(ModelId::Z2Z4_2A32A1) == z2z4);

    auto z3 = canonical_scalars(ModelId::Z3_A8);
    CHECK(z3.at("a_11") == 1);
    CHECK(z3.at("a_22") == 1);
    CHECK(z3.at("b_1") == -1);

    for (const auto& [name, v] : canonical_scalars(ModelId::Z3SQ_4A2)) {
        if (name[0] == 'b') {
            CHECK(v == -1);
        } else {
            bool diagonal = name.substr(2, 2) == name.substr(5, 2);
            CHECK(v == (diagonal ? -1 : 1));
        }
    }
}

TEST_CASE("constraint systems") {
    for (ModelId id : all_models()) {
        auto cs = constraints(id);
        CHECK_FALSE(cs.empty());
        std::set<std::string> ids;
        auto names = scalar_names(id);
        for (const auto& c : cs) {
            CHECK(ids.insert(c.id).second);
            CHECK_FALSE(c.lhs.factors.empty());
            CHECK_FALSE(c.rhs.factors.empty());
            for (const auto& n : c.names()) CHECK(std::count(names.begin(), names.end(), n) == 1);
        }
        CHECK(check(id, canonical_scalars(id)).empty());
    }
    CHECK(constraints(ModelId::Z3_A8).size() == 1);
    CHECK(constraints(ModelId::Z3_A8)[0].id == "a11*a22+b1=0");
    CHECK(constraints(ModelId::Z5_2A4).size() == 8);
}

TEST_CASE("check examples") {
    auto bad = check(ModelId::Z3_A8, {{"a_11", 1}, {"a_22", 1}, {"b_1", 1}});
    REQUIRE(bad.size() == 1);
    CHECK(bad[0].constraint.id == "a11*a22+b1=0");
    CHECK(bad[0].lhs_value == 1);
    CHECK(bad[0].rhs_value == -1);

    // Perturbing a_11 breaks exactly the equations that mention it.
    auto s = with(canonical_scalars(ModelId::Z5_2A4), "a_11", 2);
    std::set<std::string> violated, expected;
    for (const auto& v : check(ModelId::Z5_2A4, s)) violated.insert(v.constraint.id);
    for (const auto& c : constraints(ModelId::Z5_2A4))
        if (c.names().count("a_11")) expected.insert(c.id);
    CHECK(violated == expected);
    CHECK(violated.size() == 2);

    CHECK_THROWS_AS(check(ModelId::Z5_2A4, {{"a_11", 1}}), ModelError);
}

TEST_CASE("every single-scalar perturbation breaks only equations sharing that scalar") {
    for (ModelId id : all_models()) {
        auto base = canonical_scalars(id);
        for (const auto& [name, v] : base) {
            auto s = with(base, name, v * 3);
            for (const auto& bad : check(id, s)) CHECK(bad.constraint.names().count(name));
        }
    }
}

TEST_CASE("parametric families") {
    auto z3 = parametric_assignment(ModelId::Z3_A8, {{"a_11", 5}, {"a_22", 5}});
    CHECK(z3.at("b_1") == -25);

    std::map<std::string, Scalar> ones;
    for (const auto& n : free_names(ModelId::Z2Z4_2A32A1)) ones[n] = 1;
    CHECK(parametric_assignment(ModelId::Z2Z4_2A32A1, ones) == canonical_scalars(ModelId::Z2Z4_2A32A1));

    std::vector<int> tuple{1, 2, 1, 1, 3, 1, 1};
    std::map<std::string, Scalar> f;
    auto names = free_names(ModelId::Z2Z4_2A32A1);
    CHECK(names.size() == 7);
    for (size_t k = 0; k < names.size(); ++k) f[names[k]] = tuple[k];
    auto s = parametric_assignment(ModelId::Z2Z4_2A32A1, f);
    CHECK(check(ModelId::Z2Z4_2A32A1, s).empty());
    CHECK(s.at("a_12") == 2);
    CHECK(s.at("ap_12") == 3);
    CHECK(s.at("b1_2") == Scalar(3, 2));
    CHECK(s.at("a_33") == Scalar(-3, 4));

    CHECK_THROWS_AS(parametric_assignment(ModelId::Z3_A8, {{"a_11", 1}}), ModelError);
    CHECK_THROWS_AS(parametric_assignment(ModelId::Z3_A8, {{"a_11", 1}, {"a_22", 0}}), ModelError);
    CHECK_THROWS_AS(parametric_assignment(ModelId::Z3_A8, {{"a_11", 1}, {"a_22", 1}, {"b_1", 1}}), ModelError);

    std::mt19937_64 rng(2024);
    for (ModelId id : all_models())
        for (int t = 0; t < 25; ++t) {
            auto p = parametric_assignment(id, random_free(id, rng));
            auto want = scalar_names(id);
            CHECK(p.size() == want.size());
            for (const auto& [n, v] : p) CHECK_FALSE(is_zero(v));
            CHECK(check(id, p).empty());
        }
}

TEST_CASE("parametric members are Lie algebras") {
    std::mt19937_64 rng(77);
    for (ModelId id : all_models()) {
        auto p = parametric_assignment(id, random_free(id, rng));
        CHECK(sampled_jacobi(id, p, 4000, 3));
    }
}

TEST_CASE("rescaling") {
    for (ModelId id : all_models()) {
        RescalingMap ones;
        for (const auto& g : model_skeleton(id).group.elements()) ones[g] = 1;
        auto src = canonical_scalars(id);
        CHECK(rescaling_map(id, src, ones) == src);
        CHECK(verify_isomorphism(id, src, src, ones).passed);
    }

    RescalingMap al = {{GroupElement{{0}}, 1}, {GroupElement{{1}}, 2}, {GroupElement{{2}}, 4}, {GroupElement{{3}}, 8}, {GroupElement{{4}}, 16}};
    auto src = canonical_scalars(ModelId::Z5_2A4);
    auto dst = rescaling_map(ModelId::Z5_2A4, src, al);
    CHECK(dst.at("a_11") == 1);
    CHECK(dst.at("b1_1") == -32);  // alpha_1 alpha_4 / alpha_0
    CHECK(check(ModelId::Z5_2A4, dst).empty());
    CHECK(verify_isomorphism(ModelId::Z5_2A4, src, dst, al).passed);
    CHECK(sampled_jacobi(ModelId::Z5_2A4, dst, 5000, 8));

    auto off = with(dst, "a_24", dst.at("a_24") * 2);
    auto rep = verify_isomorphism(ModelId::Z5_2A4, src, off, al);
    CHECK_FALSE(rep.passed);
    CHECK_FALSE(rep.failures.empty());

    RescalingMap zero = al;
    zero[GroupElement{{3}}] = 0;
    CHECK_THROWS_AS(rescaling_map(ModelId::Z5_2A4, src, zero), ModelError);
    RescalingMap moved = al;
    moved[GroupElement{{0}}] = 2;
    CHECK_THROWS_AS(rescaling_map(ModelId::Z5_2A4, src, moved), ModelError);
}

TEST_CASE("rescaling preserves the constraint systems") {
    std::mt19937_64 rng(5);
    for (ModelId id : all_models())
        for (int t = 0; t < 10; ++t) {
            auto src = parametric_assignment(id, random_free(id, rng));
            auto al = random_alphas(id, rng);
            auto dst = rescaling_map(id, src, al);
            CHECK(check(id, dst).empty());
            if (t == 0) CHECK(verify_isomorphism(id, src, dst, al).passed);
        }
}

TEST_CASE("focus pairs name the components a scalar touches") {
    auto spec = model_spec(ModelId::Z5_2A4, canonical_scalars(ModelId::Z5_2A4));
    auto a = assemble(spec);
    auto f = focus_pairs(spec, a, {"a_12"});
    CHECK(f == std::vector<std::pair<int, int>>{{1, 2}, {2, 1}});
    auto g = focus_pairs(spec, a, {"b2_2", "a_11"});
    CHECK(g == std::vector<std::pair<int, int>>{{1, 1}, {2, 3}, {3, 2}});
    CHECK(focus_pairs(spec, a, {"nothing"}).empty());
}

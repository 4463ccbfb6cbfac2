#pragma once

#include "e8/graded_algebra.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace e8 {

// The six graded models of e8, named by grading group and the type of the
// neutral component.
enum class ModelId { Z3_A8, Z5_2A4, Z4_A7A1, Z6_A5A2A1, Z3SQ_4A2, Z2Z4_2A32A1 };

const std::vector<ModelId>& all_models();
std::string model_key(ModelId id);  // "z3", "z5", "z4", "z6", "z3sq", "z2z4"
ModelId parse_model(const std::string& key);

class ModelError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Scalar names are ASCII spellings of the usual notation:
//
//   a_{ij}            a_ij          (Z3, Z5, Z4, Z6, and Z2xZ4 pairs (0,i),(0,j))
//   a'_{ij}           ap_ij         (Z2xZ4 pair (0,i),(1,j))
//   a''_{ij}          app_ij        (Z2xZ4 pair (1,i),(1,j))
//   b_i^{(s)}         bi_s          (slot s of the dual-sum rule at (i, -i))
//   b'_i^{(s)}        bpi_s         (Z2xZ4, element (1,i))
//   b_1 (Z3 only)     b_1           (single slot)
//   a_{(i,j),(k,l)}   a_ij_kl       (Z3xZ3)
//   b_{(i,j)}^{(s)}   bij_s         (Z3xZ3, named by the smaller of (i,j), -(i,j))
//   t_{(i,j)}         t_ij          (Z3xZ3 rescaling parameters, see free_names)
//
// Each name is bound to exactly one rule; dual-sum slots whose degree is 0
// carry no name at all.
ModelSpec model_skeleton(ModelId id);
ModelSpec model_spec(ModelId id, const ScalarAssignment& scalars);
std::vector<std::string> scalar_names(ModelId id);
ScalarAssignment canonical_scalars(ModelId id);

struct Monomial {
    int sign = 1;
    std::vector<std::string> factors;

    Scalar eval(const ScalarAssignment& s) const;
    std::string str() const;
};

struct Constraint {
    std::string id;
    Monomial lhs, rhs;

    std::set<std::string> names() const;
};

struct ConstraintValue {
    Constraint constraint;
    Scalar lhs_value, rhs_value;
};

std::vector<Constraint> constraints(ModelId id);
// Violated constraints only, in system order.
std::vector<ConstraintValue> check(ModelId id, const ScalarAssignment& s);

// Parameters of parametric_assignment. For Z3xZ3 these are the rescaling
// multipliers t_g applied to the canonical solution; elsewhere they are
// scalar names from which the rest of the system is solved rationally.
std::vector<std::string> free_names(ModelId id);
ScalarAssignment parametric_assignment(ModelId id, const std::map<std::string, Scalar>& free);

using RescalingMap = std::map<GroupElement, Scalar>;

// dst = src * alpha_a * alpha_b / alpha_{a+b} for the rule at (a, b).
ScalarAssignment rescaling_map(ModelId id, const ScalarAssignment& src, const RescalingMap& alphas);

struct IsomorphismReport {
    bool passed = true;
    std::uint64_t pairs_checked = 0;
    std::vector<std::pair<int, int>> failures;  // first few failing basis pairs
};

// Checks f([x, y]_dst) = [f x, f y]_src for f(x) = alpha_{deg x} x on all
// basis pairs.
IsomorphismReport verify_isomorphism(ModelId id, const ScalarAssignment& src, const ScalarAssignment& dst,
                                     const RescalingMap& alphas);

// Component-index pairs whose rules read any of the given scalar names.
std::vector<std::pair<int, int>> focus_pairs(const ModelSpec& spec, const GradedAlgebra& a,
                                             const std::set<std::string>& names);

}  // namespace e8

#pragma once

#include "e8/exterior.hpp"
#include "e8/scalar.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace e8 {

class AlgebraError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GroupElement {
    std::vector<int> residues;

    auto operator<=>(const GroupElement&) const = default;
    bool is_zero() const;
    std::string str() const;  // "(1,2)"
};

struct Group {
    std::vector<int> moduli;

    GroupElement zero() const;
    GroupElement add(const GroupElement& a, const GroupElement& b) const;
    GroupElement neg(const GroupElement& a) const;
    GroupElement make(std::vector<int> residues) const;  // reduces each residue
    std::vector<GroupElement> elements() const;         // lexicographic, zero first
};

struct StarRule {
    std::string scalar;
};

// One scalar name per slot; an empty name marks a slot that takes no part.
struct DualSumRule {
    std::vector<std::string> slot_scalars;
};

using BracketRule = std::variant<StarRule, DualSumRule>;
using ScalarAssignment = std::map<std::string, Scalar>;

struct ModelSpec {
    std::string name;
    Group group;
    std::vector<int> slot_dims;
    // Exterior degree carried by each slot; the zero element's entry is unused.
    std::map<GroupElement, std::vector<int>> shape;
    // Keyed by (alpha, beta) with alpha <= beta; the swapped order is the negative.
    std::map<std::pair<GroupElement, GroupElement>, BracketRule> rules;
    ScalarAssignment scalars;
};

struct Component {
    GroupElement degree;
    int start = 0;
    int end = 0;
    std::vector<int> slot_degrees;  // empty for the neutral component

    int dim() const { return end - start; }
};

struct BasisVectorId {
    int component = 0;
    int slot = -1;      // neutral only: 0-based slot
    int sl_index = -1;  // neutral only: position in SlElement::basis
    std::vector<Mask> blades;  // non-neutral only: one blade per slot
};

using Term = std::pair<int, Scalar>;
// Sparse vector over the basis; zero coefficients are never stored.
using Element = std::map<int, Scalar>;

void add_to(Element& e, int index, const Scalar& c);
Element basis_element(int index, const Scalar& c = 1);
Element operator+(const Element& a, const Element& b);
Element scaled(const Element& a, const Scalar& c);

class GradedAlgebra {
public:
    std::string model;
    std::vector<int> moduli;
    std::vector<int> slot_dims;  // empty when imported from a constants file
    std::vector<Component> components;
    std::vector<std::string> labels;
    std::vector<BasisVectorId> ids;  // empty when imported
    std::vector<int> component_of;

    int dim() const { return static_cast<int>(labels.size()); }
    int component_index(const GroupElement& g) const;  // -1 if absent
    Group group() const { return Group{moduli}; }

    // Sorted by target index. row(i, j) == -row(j, i).
    const std::vector<Term>& row(int i, int j) const;
    void set_row(int i, int j, std::vector<Term> terms);  // also sets (j, i)
    void resize_table();

private:
    std::vector<std::vector<Term>> table_;
};

// Zero scalars are rejected unless explicitly allowed (degenerate models are
// only built on purpose, as negative controls).
GradedAlgebra assemble(const ModelSpec& spec, bool allow_zero_scalars = false);

// Pairs (i, j) inside one component where the stored rule applied in the two
// orders is not skew; empty for every consistent rule table.
std::vector<std::pair<int, int>> diagonal_skew_violations(const ModelSpec& spec);

Element bracket(const GradedAlgebra& a, const Element& x, const Element& y);

// ------------------------------------------------------------------ verifiers

enum class JacobiMode { Exhaustive, Sampled };

struct JacobiOptions {
    JacobiMode mode = JacobiMode::Exhaustive;
    std::uint64_t samples = 10000;
    std::uint64_t seed = 1;
    std::size_t max_failures = 8;
    // Sampled mode only: when nonempty, draws are steered towards triples in
    // which these component pairs get bracketed.
    std::vector<std::pair<int, int>> focus;
};

struct JacobiFailure {
    int i = 0, j = 0, k = 0;
    Element residual;
};

struct JacobiReport {
    bool passed = true;
    std::uint64_t triples_checked = 0;
    std::uint64_t failure_count = 0;
    std::vector<JacobiFailure> failures;  // sorted by (i, j, k), at most max_failures
};

// OpenMP kernel over integer-scaled constants.
JacobiReport verify_jacobi(const GradedAlgebra& a, const JacobiOptions& opt = {});
// Single-threaded rational-arithmetic reference; same triples, same report.
JacobiReport verify_jacobi_reference(const GradedAlgebra& a, const JacobiOptions& opt = {});
// The triples a given option set visits, in order (sampled mode only).
std::vector<std::array<int, 3>> sample_triples(const GradedAlgebra& a, const JacobiOptions& opt);
Element jacobi(const GradedAlgebra& a, int i, int j, int k);

struct PairReport {
    int left = 0, right = 0, target = 0;  // component indices
    bool closed = true;
    int rank = 0;
    int target_dim = 0;
    // Fullness is only claimed when the degrees do not sum to zero.
    bool required = true;
    bool full() const { return rank == target_dim; }
};

struct GradingReport {
    bool closure = true;
    bool fullness = true;  // over the required pairs
    std::vector<PairReport> pairs;  // every ordered component pair
    bool passed() const { return closure && fullness; }
};

GradingReport verify_grading(const GradedAlgebra& a);

Scalar killing(const GradedAlgebra& a, const Element& x, const Element& y);
// Dense row-major N x N matrix of kappa(b_i, b_j).
std::vector<Scalar> killing_matrix(const GradedAlgebra& a);
std::vector<Scalar> killing_matrix_reference(const GradedAlgebra& a);
int killing_rank(const GradedAlgebra& a);

struct KillingReport {
    bool symmetric = true;
    bool invariant = true;
    std::uint64_t triples_checked = 0;
    int rank = 0;
    bool passed(int dim) const { return symmetric && invariant && rank == dim; }
};

// Symmetry over the whole matrix, invariance kappa([x,y],z) = kappa(x,[y,z])
// on seeded random basis triples, and the exact rank.
KillingReport check_killing(const GradedAlgebra& a, std::uint64_t samples, std::uint64_t seed);

int ideal_closure(const GradedAlgebra& a, const Element& seed);
int ideal_closure(const GradedAlgebra& a, const std::vector<Element>& seeds);
// ideal_closure of every single basis vector, in basis order.
std::vector<int> ideal_closure_of_basis(const GradedAlgebra& a);

// Integer image of the constant table: value = scaled / denominator.
struct ScaledTensor {
    int dim = 0;
    std::int64_t denominator = 1;
    std::vector<std::uint32_t> offset;  // dim * dim + 1 entries
    std::vector<std::int32_t> index;
    std::vector<std::int64_t> value;
};
// Throws AlgebraError when the scaled entries do not fit in 64 bits.
ScaledTensor scale_to_integers(const GradedAlgebra& a);

// Threads used by the OpenMP kernels; 0 leaves the runtime default.
void set_threads(int n);
int max_threads();

// ----------------------------------------------------------- constants file

std::string export_constants(const GradedAlgebra& a);
void export_constants(const GradedAlgebra& a, const std::string& path);
GradedAlgebra import_constants(const std::string& json_text);
GradedAlgebra import_constants_file(const std::string& path);

}  // namespace e8

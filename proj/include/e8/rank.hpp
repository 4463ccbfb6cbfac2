#pragma once

#include "e8/scalar.hpp"

#include <map>
#include <utility>
#include <vector>

namespace e8 {

using IntRow = std::vector<std::pair<int, mpz_class>>;  // sorted by column

// Incremental row echelon form over the integers. Rational input is cleared
// of denominators, and every stored row is kept primitive (content 1), which
// keeps entry growth in check without any division of the Bareiss kind.
class Echelon {
public:
    // Returns true when v was independent of the rows already present.
    bool insert(const std::map<int, Scalar>& v);
    bool insert_integer(IntRow v);
    int rank() const { return static_cast<int>(rows_.size()); }

private:
    std::map<int, IntRow> rows_;  // keyed by pivot column
};

int rank_of(const std::vector<std::map<int, Scalar>>& rows);

}  // namespace e8

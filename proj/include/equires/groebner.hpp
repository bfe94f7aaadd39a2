// Deterministic Buchberger Groebner bases over Q (Polys with m = 1).
// Default order is graded reverse lexicographic; a block-elimination order on
// the first k variables is available for image/elimination computations.
#pragma once

#include <vector>

#include "equires/poly.hpp"

namespace equires {

// Term comparison: with elim_block = 0 this is plain grevlex; otherwise the
// first elim_block variables form a dominant grevlex block (an elimination
// order for those variables).
bool term_less(const Exponents& a, const Exponents& b, int elim_block);

// Leading exponent vector of a nonzero polynomial under the order.
Exponents leading_exponents(const Poly& f, int elim_block);

// Full normal form of f modulo the (not necessarily reduced) basis.
Poly normal_form(const Poly& f, const std::vector<Poly>& basis, int elim_block = 0);

// Reduced Groebner basis, monic, sorted by increasing leading term.
// The zero ideal yields an empty basis.
std::vector<Poly> groebner_basis(const std::vector<Poly>& gens, int elim_block = 0);

bool basis_contains_one(const std::vector<Poly>& basis);

// Krull dimension of V(basis) inside affine space on the given variables,
// via maximal independent variable sets modulo leading terms.  Returns -1 for
// the empty variety (basis contains 1).
int variety_dimension(const std::vector<Poly>& basis);

// Intersection with the subring dropping the first elim_block variables:
// keeps basis elements not involving them, rewritten over the remaining vars.
std::vector<Poly> eliminate(const std::vector<Poly>& basis, int elim_block);

}  // namespace equires

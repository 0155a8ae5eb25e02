#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "sptorsion/bigint.hpp"
#include "sptorsion/matrix.hpp"

namespace sptorsion::lattice {

/// Sparse linear form: variable index -> nonzero coefficient.
using SparseRow = std::map<std::size_t, BigInt>;

/// Z-basis of { x in Z^n : row . x = 0 for every row }, one basis vector per
/// column of the result (n x rank).
///
/// Variables with a unit coefficient are eliminated first by exact
/// substitution; the residual dense system is reduced by unimodular column
/// operations (column echelon form), whose trailing transform columns span
/// the kernel.
IntMatrix integer_kernel(const std::vector<SparseRow>& rows, std::size_t n);
IntMatrix integer_kernel(const IntMatrix& a);

/// Antisymmetric Gram matrix together with its determinant.
struct AlternatingForm {
  IntMatrix gram;
  BigInt determinant;

  bool unimodular() const { return determinant == 1 || determinant == -1; }
};

/// Validates antisymmetry and computes the determinant.
AlternatingForm make_alternating_form(IntMatrix gram);

/// Z-basis of { B : B^T = -B, C^T B C = B }.
///
/// Throws InternalError when the lattice is empty, since a finite-order
/// block with reciprocal characteristic polynomial always carries a nonzero
/// invariant alternating form.
std::vector<AlternatingForm> invariant_alternating_lattice(const IntMatrix& c);

struct SearchOptions {
  int radius_cap = 32;
};

/// Integer combination of the basis with determinant +-1.
///
/// Candidates are visited by increasing max-norm radius r; within a radius,
/// by increasing support size, then lexicographically over the coefficient
/// ordering 0, 1, -1, 2, -2, ..., r, -r. The first hit is returned. Throws
/// SearchExhausted once the radius cap is passed.
AlternatingForm find_unimodular_form(std::span<const AlternatingForm> basis,
                                     const SearchOptions& options = {});

/// Unimodular U with U^T B U = J (block standard form), built by integral
/// symplectic Gram-Schmidt. Throws DomainError if B is not unimodular.
IntMatrix symplectic_basis(const AlternatingForm& form);

}  // namespace sptorsion::lattice

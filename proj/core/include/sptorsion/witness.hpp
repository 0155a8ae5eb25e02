#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sptorsion/bigint.hpp"
#include "sptorsion/criterion.hpp"
#include "sptorsion/errors.hpp"
#include "sptorsion/lattice.hpp"
#include "sptorsion/matrix.hpp"

namespace sptorsion::witness {

/// The fixed form J = [[0, I_g], [-I_g, 0]] defining Sp(2g, Z).
struct StandardForm {
  int g = 0;
  IntMatrix j;

  static StandardForm of(Genus genus) {
    return {genus.value(), standard_form(static_cast<std::size_t>(genus.value()))};
  }
};

/// A^(m/q) for one prime q | m; `pass` means it is not the identity.
struct ProperPowerCheck {
  std::uint64_t prime = 0;
  BigInt exponent;
  bool pass = false;

  friend bool operator==(const ProperPowerCheck&, const ProperPowerCheck&) = default;
};

/// Outcome of the three exact witness checks.
struct Certificate {
  bool symplectic = false;       // A^T J A = J
  bool annihilated = false;      // A^m = I
  std::vector<ProperPowerCheck> proper_powers;

  bool passed() const;
  /// Name of the first failing check ("symplectic", "order",
  /// "exact-order(q=3)"), or empty when everything passes.
  std::string first_failure() const;

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

struct SymplecticWitness {
  IntMatrix matrix;
  BigInt claimed_order;
  Certificate certificate;
};

/// Raised when a witness is requested for an order outside S(g).
class NotAMember : public DomainError {
 public:
  explicit NotAMember(criterion::Membership membership);
  const criterion::Membership& membership() const { return membership_; }

 private:
  criterion::Membership membership_;
};

/// Symplectic block (block-J convention) of size phi(p^a) and exact order
/// p^a, for p odd or p = 2 with a >= 2: companion of the cyclotomic
/// polynomial, conjugated into standard form through an invariant
/// unimodular alternating form. Results are cached per prime power.
IntMatrix prime_power_block(std::uint64_t p, unsigned exponent,
                            const lattice::SearchOptions& search = {});

/// Explicit A in Sp(2g, Z) of exact order m. Throws NotAMember when m is not
/// in S(g), and InternalError if the assembled matrix fails its own checks.
SymplecticWitness build_witness(const BigInt& m, Genus g,
                                const lattice::SearchOptions& search = {});

/// Re-runs every check from scratch. Throws DomainError on a size mismatch
/// or a claimed order below 2.
Certificate verify_witness(const IntMatrix& a, const BigInt& claimed_order, Genus g);
Certificate verify_witness(const SymplecticWitness& w, Genus g);

/// JSON document: format tag, genus, size, claimed order, row-major entries
/// and certificate. Every number is written as a decimal string.
std::string serialize(const SymplecticWitness& w, Genus g);

struct ParsedWitness {
  Genus genus;
  SymplecticWitness witness;
};

/// Inverse of serialize. Throws DomainError on malformed input; the stored
/// certificate is loaded as-is and is never trusted by verification.
ParsedWitness parse_witness(const std::string& text);

}  // namespace sptorsion::witness

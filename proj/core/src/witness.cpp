#include "sptorsion/witness.hpp"

#include <map>
#include <mutex>
#include <utility>

#include <json.hpp>

#include "sptorsion/numtheory.hpp"
#include "sptorsion/polynomial.hpp"

namespace sptorsion::witness {

namespace {

std::string deficit_message(const criterion::Membership& m) {
  return m.report.m.str() + " is not an order in Sp(" +
         std::to_string(2 * m.genus.value()) + ", Z): degree cost " +
         m.report.total.str() + " exceeds 2g = " + std::to_string(m.genus.budget());
}

}  // namespace

NotAMember::NotAMember(criterion::Membership membership)
    : DomainError(deficit_message(membership)), membership_(std::move(membership)) {}

bool Certificate::passed() const { return first_failure().empty(); }

std::string Certificate::first_failure() const {
  if (!symplectic) return "symplectic";
  if (!annihilated) return "order";
  for (const auto& c : proper_powers) {
    if (!c.pass) return "exact-order(q=" + std::to_string(c.prime) + ")";
  }
  return {};
}

IntMatrix prime_power_block(std::uint64_t p, unsigned exponent,
                            const lattice::SearchOptions& search) {
  if (!numtheory::is_prime(p) || exponent == 0 || (p == 2 && exponent < 2)) {
    throw DomainError("blocks exist for odd prime powers and 2^a with a >= 2");
  }
  static std::mutex mutex;
  static std::map<std::pair<std::uint64_t, unsigned>, IntMatrix> cache;
  const auto key = std::make_pair(p, exponent);
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }

  const BigInt q = pow_u64(p, exponent);
  const IntMatrix c = companion(cyclotomic(q.convert_to<std::uint64_t>()));
  const auto basis = lattice::invariant_alternating_lattice(c);
  const auto form = lattice::find_unimodular_form(basis, search);
  const IntMatrix u = lattice::symplectic_basis(form);
  // U^T B U = J gives U^{-1} = -J U^T B, so the conjugate stays integral.
  const IntMatrix j = standard_form(c.rows() / 2);
  const IntMatrix u_inverse = -(j * u.transpose() * form.gram);
  IntMatrix block = u_inverse * c * u;

  std::lock_guard lock(mutex);
  cache.emplace(key, block);
  return block;
}

SymplecticWitness build_witness(const BigInt& m, Genus g,
                                const lattice::SearchOptions& search) {
  auto membership = criterion::is_member(m, g);
  if (!membership.member) throw NotAMember(std::move(membership));

  const auto size = static_cast<std::size_t>(2 * g.value());
  const auto half = static_cast<std::size_t>(g.value());
  IntMatrix a = IntMatrix::identity(size);

  // Symplectic direct sum: a block's first half lands in the global first
  // half, its second half in the global second half.
  std::size_t offset = 0;
  for (const auto& term : membership.report.terms) {
    if (term.cost == 0) continue;
    const IntMatrix block = prime_power_block(term.prime, term.exponent, search);
    const std::size_t block_half = block.rows() / 2;
    auto place = [&](std::size_t local) {
      return local < block_half ? offset + local : half + offset + (local - block_half);
    };
    for (std::size_t r = 0; r < block.rows(); ++r) {
      for (std::size_t c = 0; c < block.cols(); ++c) a(place(r), place(c)) = block(r, c);
    }
    offset += block_half;
  }
  // m = 2 (mod 4): every block has odd order, and -I doubles the lcm.
  if (membership.report.exemption_applied) a = -a;

  SymplecticWitness w{std::move(a), m, {}};
  w.certificate = verify_witness(w.matrix, m, g);
  if (!w.certificate.passed()) {
    throw InternalError("assembled witness for m = " + m.str() + " fails check " +
                        w.certificate.first_failure());
  }
  return w;
}

Certificate verify_witness(const IntMatrix& a, const BigInt& claimed_order, Genus g) {
  const auto size = static_cast<std::size_t>(2 * g.value());
  if (a.rows() != size || a.cols() != size) {
    throw DomainError("witness must be " + std::to_string(size) + "x" +
                      std::to_string(size) + " for genus " + std::to_string(g.value()));
  }
  if (claimed_order < 2) throw DomainError("claimed order must be at least 2");

  Certificate cert;
  const IntMatrix j = standard_form(static_cast<std::size_t>(g.value()));
  cert.symplectic = (a.transpose() * j * a) == j;
  cert.annihilated = power(a, claimed_order).is_identity();
  const auto factorization = numtheory::factor(claimed_order);
  for (const auto& e : factorization.entries()) {
    const BigInt cofactor = claimed_order / e.prime;
    cert.proper_powers.push_back({e.prime, cofactor, !power(a, cofactor).is_identity()});
  }
  return cert;
}

Certificate verify_witness(const SymplecticWitness& w, Genus g) {
  return verify_witness(w.matrix, w.claimed_order, g);
}

namespace {

using nlohmann::json;

constexpr const char* kFormat = "sptorsion-witness";

json certificate_json(const Certificate& c) {
  json checks = json::array();
  for (const auto& p : c.proper_powers) {
    checks.push_back({{"prime", std::to_string(p.prime)},
                      {"exponent", p.exponent.str()},
                      {"is_identity", !p.pass},
                      {"pass", p.pass}});
  }
  return {{"symplectic", c.symplectic},
          {"annihilated", c.annihilated},
          {"proper_powers", checks},
          {"passed", c.passed()}};
}

const json& field(const json& doc, const char* name) {
  if (!doc.is_object() || !doc.contains(name)) {
    throw DomainError(std::string("witness document lacks field '") + name + "'");
  }
  return doc.at(name);
}

BigInt number_field(const json& doc, const char* name) {
  const json& v = field(doc, name);
  if (!v.is_string()) {
    throw DomainError(std::string("field '") + name + "' must be a decimal string");
  }
  return parse_decimal(v.get<std::string>());
}

bool flag_field(const json& doc, const char* name) {
  const json& v = field(doc, name);
  if (!v.is_boolean()) throw DomainError(std::string("field '") + name + "' must be boolean");
  return v.get<bool>();
}

}  // namespace

std::string serialize(const SymplecticWitness& w, Genus g) {
  json entries = json::array();
  for (const auto& v : w.matrix.entries()) entries.push_back(v.str());
  json doc = {{"format", kFormat},
              {"version", "1"},
              {"genus", std::to_string(g.value())},
              {"size", std::to_string(w.matrix.rows())},
              {"claimed_order", w.claimed_order.str()},
              {"entries", entries},
              {"certificate", certificate_json(w.certificate)}};
  return doc.dump(2) + "\n";
}

ParsedWitness parse_witness(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw DomainError(std::string("witness is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || doc.value("format", "") != kFormat) {
    throw DomainError("not a witness document (format tag missing or wrong)");
  }
  const BigInt genus_value = number_field(doc, "genus");
  const BigInt size_value = number_field(doc, "size");
  if (genus_value < 1 || genus_value > 100000) throw DomainError("genus out of range");
  const Genus genus(genus_value.convert_to<long long>());
  if (size_value != 2 * genus_value) throw DomainError("size must equal 2 * genus");
  const auto size = size_value.convert_to<std::size_t>();

  const json& raw = field(doc, "entries");
  if (!raw.is_array() || raw.size() != size * size) {
    throw DomainError("entries must be an array of size^2 decimal strings");
  }
  std::vector<BigInt> entries;
  entries.reserve(raw.size());
  for (const auto& v : raw) {
    if (!v.is_string()) throw DomainError("matrix entries must be decimal strings");
    entries.push_back(parse_decimal(v.get<std::string>()));
  }

  SymplecticWitness w{IntMatrix(size, size, std::move(entries)),
                      number_field(doc, "claimed_order"), {}};
  if (w.claimed_order < 2) throw DomainError("claimed order must be at least 2");
  if (doc.contains("certificate")) {
    const json& c = doc.at("certificate");
    w.certificate.symplectic = flag_field(c, "symplectic");
    w.certificate.annihilated = flag_field(c, "annihilated");
    const json& checks = field(c, "proper_powers");
    if (!checks.is_array()) throw DomainError("proper_powers must be an array");
    for (const auto& check : checks) {
      const BigInt prime = number_field(check, "prime");
      if (prime < 2 || boost::multiprecision::msb(prime) >= 64) {
        throw DomainError("certificate prime out of range");
      }
      w.certificate.proper_powers.push_back({prime.convert_to<std::uint64_t>(),
                                             number_field(check, "exponent"),
                                             flag_field(check, "pass")});
    }
  }
  return {genus, std::move(w)};
}

}  // namespace sptorsion::witness

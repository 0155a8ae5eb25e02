#include "sptorsion/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>

#include "sptorsion/errors.hpp"

namespace sptorsion::lattice {

namespace {

bool is_unit(const BigInt& v) { return v == 1 || v == -1; }

void add_scaled(SparseRow& target, const SparseRow& source, const BigInt& scale) {
  for (const auto& [var, coef] : source) {
    auto [it, inserted] = target.try_emplace(var, 0);
    it->second += scale * coef;
    if (it->second == 0) target.erase(it);
  }
}

// Integer kernel of a small dense system via unimodular column operations.
// Returns basis vectors as columns of an n x rank matrix.
IntMatrix dense_kernel(IntMatrix a) {
  const std::size_t rows = a.rows();
  const std::size_t n = a.cols();
  IntMatrix t = IntMatrix::identity(n);
  auto column_axpy = [&](std::size_t dst, std::size_t src, const BigInt& q) {
    // column dst -= q * column src, on both a and t
    for (std::size_t r = 0; r < rows; ++r) {
      if (a(r, src) != 0) a(r, dst) -= q * a(r, src);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (t(r, src) != 0) t(r, dst) -= q * t(r, src);
    }
  };
  auto column_swap = [&](std::size_t x, std::size_t y) {
    if (x == y) return;
    for (std::size_t r = 0; r < rows; ++r) std::swap(a(r, x), a(r, y));
    for (std::size_t r = 0; r < n; ++r) std::swap(t(r, x), t(r, y));
  };

  std::size_t pivot = 0;
  for (std::size_t r = 0; r < rows && pivot < n; ++r) {
    while (true) {
      std::optional<std::size_t> smallest;
      for (std::size_t c = pivot; c < n; ++c) {
        if (a(r, c) == 0) continue;
        if (!smallest || abs(a(r, c)) < abs(a(r, *smallest))) smallest = c;
      }
      if (!smallest) break;
      column_swap(pivot, *smallest);
      bool reduced = true;
      for (std::size_t c = pivot + 1; c < n; ++c) {
        if (a(r, c) == 0) continue;
        const BigInt q = a(r, c) / a(r, pivot);
        column_axpy(c, pivot, q);
        if (a(r, c) != 0) reduced = false;
      }
      if (reduced) {
        ++pivot;
        break;
      }
    }
  }
  IntMatrix kernel(n, n - pivot);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = pivot; c < n; ++c) kernel(r, c - pivot) = t(r, c);
  }
  return kernel;
}

}  // namespace

IntMatrix integer_kernel(const std::vector<SparseRow>& input, std::size_t n) {
  std::vector<SparseRow> rows;
  for (const auto& row : input) {
    SparseRow clean;
    for (const auto& [var, coef] : row) {
      if (var >= n) throw DomainError("kernel row references a variable out of range");
      if (coef != 0) clean.emplace(var, coef);
    }
    if (!clean.empty()) rows.push_back(std::move(clean));
  }

  // Unit-pivot substitution: x_v = expr(x). Each expression only mentions
  // variables still live when v was eliminated.
  struct Substitution {
    std::size_t var;
    SparseRow expr;
  };
  std::vector<Substitution> substitutions;
  std::vector<bool> eliminated(n, false);
  while (true) {
    std::optional<std::size_t> best_row;
    std::size_t best_var = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (best_row && rows[i].size() >= rows[*best_row].size()) continue;
      for (const auto& [var, coef] : rows[i]) {
        if (is_unit(coef)) {
          best_row = i;
          best_var = var;
          break;
        }
      }
    }
    if (!best_row) break;
    SparseRow pivot_row = std::move(rows[*best_row]);
    rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(*best_row));
    const BigInt unit = pivot_row.at(best_var);
    pivot_row.erase(best_var);
    SparseRow expr;
    for (const auto& [var, coef] : pivot_row) expr.emplace(var, -unit * coef);

    for (auto& row : rows) {
      auto it = row.find(best_var);
      if (it == row.end()) continue;
      const BigInt scale = it->second;
      row.erase(it);
      add_scaled(row, expr, scale);
    }
    std::erase_if(rows, [](const SparseRow& r) { return r.empty(); });
    eliminated[best_var] = true;
    substitutions.push_back({best_var, std::move(expr)});
  }

  std::vector<std::size_t> free_vars;
  std::vector<std::size_t> position(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    if (!eliminated[v]) {
      position[v] = free_vars.size();
      free_vars.push_back(v);
    }
  }
  IntMatrix residual(rows.size(), free_vars.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (const auto& [var, coef] : rows[r]) residual(r, position[var]) = coef;
  }
  const IntMatrix free_kernel = dense_kernel(std::move(residual));

  IntMatrix kernel(n, free_kernel.cols());
  std::vector<BigInt> x(n);
  for (std::size_t k = 0; k < free_kernel.cols(); ++k) {
    std::fill(x.begin(), x.end(), BigInt(0));
    for (std::size_t i = 0; i < free_vars.size(); ++i) x[free_vars[i]] = free_kernel(i, k);
    for (auto it = substitutions.rbegin(); it != substitutions.rend(); ++it) {
      BigInt value = 0;
      for (const auto& [var, coef] : it->expr) value += coef * x[var];
      x[it->var] = std::move(value);
    }
    for (std::size_t v = 0; v < n; ++v) kernel(v, k) = x[v];
  }
  return kernel;
}

IntMatrix integer_kernel(const IntMatrix& a) {
  std::vector<SparseRow> rows(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      if (a(r, c) != 0) rows[r].emplace(c, a(r, c));
    }
  }
  return integer_kernel(rows, a.cols());
}

AlternatingForm make_alternating_form(IntMatrix gram) {
  if (!gram.is_square()) throw DomainError("alternating form must be square");
  if (!(gram.transpose() == -gram)) {
    throw DomainError("alternating form must be antisymmetric");
  }
  BigInt det = determinant(gram);
  return {std::move(gram), std::move(det)};
}

std::vector<AlternatingForm> invariant_alternating_lattice(const IntMatrix& c) {
  if (!c.is_square() || c.rows() == 0) {
    throw DomainError("invariant lattice needs a nonempty square matrix");
  }
  const std::size_t d = c.rows();
  // Unknowns: strictly upper-triangular entries of B, row by row.
  std::vector<std::size_t> row_offset(d, 0);
  for (std::size_t i = 1; i < d; ++i) row_offset[i] = row_offset[i - 1] + (d - i);
  const std::size_t unknowns = d * (d - 1) / 2;
  auto index = [&](std::size_t i, std::size_t j) { return row_offset[i] + (j - i - 1); };

  std::vector<std::vector<std::pair<std::size_t, BigInt>>> column(d);
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t i = 0; i < d; ++i) {
      if (c(k, i) != 0) column[i].emplace_back(k, c(k, i));
    }
  }

  // (C^T B C - B)_{ij} = sum_{k,l} C_{ki} B_{kl} C_{lj} - B_{ij}, for i < j.
  std::vector<SparseRow> equations;
  equations.reserve(unknowns);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      SparseRow eq;
      auto add = [&eq](std::size_t var, const BigInt& v) {
        auto [it, inserted] = eq.try_emplace(var, 0);
        it->second += v;
        if (it->second == 0) eq.erase(it);
      };
      for (const auto& [k, cki] : column[i]) {
        for (const auto& [l, clj] : column[j]) {
          if (k == l) continue;
          const BigInt w = cki * clj;
          if (k < l) {
            add(index(k, l), w);
          } else {
            add(index(l, k), -w);
          }
        }
      }
      add(index(i, j), BigInt(-1));
      equations.push_back(std::move(eq));
    }
  }

  const IntMatrix kernel = integer_kernel(equations, unknowns);
  if (kernel.cols() == 0) {
    throw InternalError("no invariant alternating form exists for this block");
  }
  std::vector<AlternatingForm> basis;
  for (std::size_t k = 0; k < kernel.cols(); ++k) {
    IntMatrix gram(d, d);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = i + 1; j < d; ++j) {
        gram(i, j) = kernel(index(i, j), k);
        gram(j, i) = -gram(i, j);
      }
    }
    basis.push_back(make_alternating_form(std::move(gram)));
  }
  return basis;
}

namespace {

// Position t in the ordering 1, -1, 2, -2, ... of nonzero coefficients.
long long coefficient_at(std::size_t t) {
  const auto magnitude = static_cast<long long>(t / 2 + 1);
  return (t % 2 == 0) ? magnitude : -magnitude;
}

// Cheap rejection: an integer with |det| = 1 reduces to +-1 modulo every prime.
bool may_be_unimodular(const IntMatrix& gram) {
  for (std::uint64_t p : {4611686018427387847ULL, 4611686018427387817ULL}) {
    const std::uint64_t r = determinant_mod(gram, p);
    if (r != 1 && r != p - 1) return false;
  }
  return true;
}

}  // namespace

AlternatingForm find_unimodular_form(std::span<const AlternatingForm> basis,
                                     const SearchOptions& options) {
  if (basis.empty()) throw DomainError("unimodular search needs a nonempty basis");
  const std::size_t rank = basis.size();
  const std::size_t size = basis.front().gram.rows();
  for (const auto& b : basis) {
    if (b.gram.rows() != size || !b.gram.is_square()) {
      throw DomainError("basis forms must share one square shape");
    }
  }

  for (int radius = 1; radius <= options.radius_cap; ++radius) {
    const std::size_t values = 2 * static_cast<std::size_t>(radius);
    for (std::size_t support = 1; support <= rank; ++support) {
      // Subsets in lexicographic order.
      std::vector<std::size_t> subset(support);
      std::iota(subset.begin(), subset.end(), 0);
      while (true) {
        // Coefficient tuples in lexicographic order over 1, -1, 2, -2, ...
        std::vector<std::size_t> digits(support, 0);
        while (true) {
          const bool on_shell = std::any_of(digits.begin(), digits.end(), [&](std::size_t t) {
            return t / 2 + 1 == static_cast<std::size_t>(radius);
          });
          if (on_shell) {
            IntMatrix gram(size, size);
            for (std::size_t s = 0; s < support; ++s) {
              IntMatrix term = basis[subset[s]].gram;
              term *= BigInt(coefficient_at(digits[s]));
              gram += term;
            }
            if (may_be_unimodular(gram)) {
              AlternatingForm form = make_alternating_form(std::move(gram));
              if (form.unimodular()) return form;
            }
          }
          std::size_t pos = support;
          while (pos > 0 && digits[pos - 1] + 1 == values) digits[--pos] = 0;
          if (pos == 0) break;
          ++digits[pos - 1];
        }
        std::size_t pos = support;
        while (pos > 0 && subset[pos - 1] == rank - support + pos - 1) --pos;
        if (pos == 0) break;
        ++subset[pos - 1];
        for (std::size_t s = pos; s < support; ++s) subset[s] = subset[s - 1] + 1;
      }
    }
  }
  throw SearchExhausted("no unimodular form found within search bound (radius " +
                        std::to_string(options.radius_cap) + ")");
}

IntMatrix symplectic_basis(const AlternatingForm& form) {
  const IntMatrix& b = form.gram;
  if (!b.is_square() || b.rows() % 2 != 0) {
    throw DomainError("symplectic basis needs an even-sized square form");
  }
  if (!(b.transpose() == -b)) throw DomainError("form is not antisymmetric");
  if (!form.unimodular()) throw DomainError("form is not unimodular");
  const std::size_t n = b.rows();
  const std::size_t half = n / 2;

  auto pairing = [&](const std::vector<BigInt>& x, const std::vector<BigInt>& y) {
    BigInt acc = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] == 0) continue;
      BigInt row = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (y[j] != 0 && b(i, j) != 0) row += b(i, j) * y[j];
      }
      acc += x[i] * row;
    }
    return acc;
  };
  auto axpy = [n](std::vector<BigInt>& x, const std::vector<BigInt>& y, const BigInt& q) {
    for (std::size_t i = 0; i < n; ++i) {
      if (y[i] != 0) x[i] -= q * y[i];
    }
  };

  std::vector<std::vector<BigInt>> remaining(n, std::vector<BigInt>(n, BigInt(0)));
  for (std::size_t i = 0; i < n; ++i) remaining[i][i] = 1;
  std::vector<std::vector<BigInt>> es;
  std::vector<std::vector<BigInt>> fs;

  while (!remaining.empty()) {
    std::vector<BigInt> e = std::move(remaining.front());
    remaining.erase(remaining.begin());
    // Euclid on the pairing row <e, v_i> by unimodular moves among the v_i.
    std::vector<BigInt> row(remaining.size());
    for (std::size_t i = 0; i < remaining.size(); ++i) row[i] = pairing(e, remaining[i]);
    while (true) {
      std::optional<std::size_t> smallest;
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (row[i] != 0 && (!smallest || abs(row[i]) < abs(row[*smallest]))) smallest = i;
      }
      if (!smallest) throw DomainError("form is degenerate on the remaining lattice");
      bool done = true;
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i == *smallest || row[i] == 0) continue;
        const BigInt q = row[i] / row[*smallest];
        axpy(remaining[i], remaining[*smallest], q);
        row[i] -= q * row[*smallest];
        if (row[i] != 0) done = false;
      }
      if (done) {
        if (!is_unit(row[*smallest])) {
          throw DomainError("form is not unimodular on the remaining lattice");
        }
        std::vector<BigInt> f = std::move(remaining[*smallest]);
        if (row[*smallest] == -1) {
          for (auto& v : f) v = -v;
        }
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(*smallest));
        // Now <e, v> = 0 for all remaining v; clear <v, f> by adding multiples of e.
        for (auto& v : remaining) {
          const BigInt coef = pairing(v, f);
          if (coef != 0) axpy(v, e, coef);
        }
        es.push_back(std::move(e));
        fs.push_back(std::move(f));
        break;
      }
    }
  }

  IntMatrix u(n, n);
  for (std::size_t k = 0; k < half; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      u(i, k) = es[k][i];
      u(i, half + k) = fs[k][i];
    }
  }
  return u;
}

}  // namespace sptorsion::lattice

#pragma once

#include <string>
#include <variant>
#include <vector>

#include "m7inv/int_matrix.hpp"
#include "m7inv/normal_form.hpp"
#include "m7inv/residue.hpp"

namespace m7inv {

enum class Category { smooth, topological };

/// Bordism basis for 2-connected targets: d = divisibility of the spin
/// Pontrjagin class (even, >= 0), m = number of degree-4 polarization
/// factors (>= 1).
struct TwoConnectedContext {
  mpz_class d;
  std::size_t m = 1;
};

/// Bordism basis for the S2xS5 # S3xS4 cohomology type, parameterized by
/// s >= 0 (so d = 2s).
struct S2S5Context {
  mpz_class s;
};

using TableContext = std::variant<TwoConnectedContext, S2S5Context>;

/// Integer values of the invariant functionals (rows) on the signature-0
/// bordism basis (columns). Invariants of a manifold-with-boundary are well
/// defined exactly modulo the column lattice of this table.
struct GeneratorTable {
  TableContext context;
  Category category = Category::smooth;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  IntMatrix entries;  // row_labels.size() x col_labels.size()
};

GeneratorTable generator_table(const TableContext& ctx, Category cat);

/// Modulus of the generalized Eells-Kuiper invariant for divisibility d:
/// the gcd of the first table row, i.e. gcd(4d, |d^2-2d|, 224) in the smooth
/// category and gcd(4d, |d^2-2d|, 8) in the topological one.
mpz_class gek_modulus(const mpz_class& d, Category cat);

struct SModuli {
  mpz_class m1, m2, m3;
};

/// Moduli of the s-invariants, derived as the gcds of the three table rows:
/// m1 = gcd(224, |4s^2-4s|, 8s^2) (8 replacing 224 topologically),
/// m2 = gcd(24, 2s), m3 = 2.
SModuli s_moduli(const mpz_class& s, Category cat);

/// Canonical residues of a raw invariant vector modulo the column lattice of
/// the table. Coordinate i carries the Hermite pivot at row i as its modulus
/// (0 when the lattice misses that row); adding any integer combination of
/// table columns to `raw` leaves the output unchanged.
std::vector<ResidueClass> reduce_invariant_vector(const std::vector<mpz_class>& raw,
                                                  const GeneratorTable& table);

}  // namespace m7inv

#include "m7inv/generator_table.hpp"

#include <stdexcept>

namespace m7inv {

namespace {

void require_even_nonneg(const mpz_class& d, const char* who) {
  if (d < 0) throw std::domain_error(std::string(who) + ": d must be >= 0");
  if (!mpz_divisible_ui_p(d.get_mpz_t(), 2))
    throw std::domain_error(std::string(who) + ": d must be even");
}

GeneratorTable two_connected_table(const TwoConnectedContext& ctx, Category cat) {
  require_even_nonneg(ctx.d, "generator_table");
  if (ctx.m < 1) throw std::invalid_argument("generator_table: m must be >= 1");
  const std::size_t m = ctx.m;
  const mpz_class& d = ctx.d;

  GeneratorTable t;
  t.context = ctx;
  t.category = cat;

  // columns: alpha_1..alpha_m, beta_1..beta_m, gamma_{i,j} (i<j), delta
  std::vector<std::pair<std::size_t, std::size_t>> gamma_cols;
  for (std::size_t i = 1; i <= m; ++i) t.col_labels.push_back("alpha" + std::to_string(i));
  for (std::size_t i = 1; i <= m; ++i) t.col_labels.push_back("beta" + std::to_string(i));
  for (std::size_t i = 1; i <= m; ++i)
    for (std::size_t j = i + 1; j <= m; ++j) {
      gamma_cols.emplace_back(i, j);
      t.col_labels.push_back("gamma_" + std::to_string(i) + "_" + std::to_string(j));
    }
  t.col_labels.push_back("delta");
  const std::size_t alpha0 = 0, beta0 = m, gamma0 = 2 * m;
  const std::size_t delta_col = t.col_labels.size() - 1;

  // rows: (pbar1-d*e1)^2, (pbar1-d*e1)*ej-ej^2 (j>=2), ei*ej (i<j), ei^2
  t.row_labels.push_back("(pbar1-d*e1)^2");
  for (std::size_t j = 2; j <= m; ++j)
    t.row_labels.push_back("(pbar1-d*e1)*e" + std::to_string(j) + "-e" + std::to_string(j) + "^2");
  for (const auto& [i, j] : gamma_cols)
    t.row_labels.push_back("e" + std::to_string(i) + "*e" + std::to_string(j));
  for (std::size_t i = 1; i <= m; ++i)
    t.row_labels.push_back("e" + std::to_string(i) + "^2");

  t.entries = IntMatrix(t.row_labels.size(), t.col_labels.size());
  t.entries(0, alpha0) = -4 * d;
  t.entries(0, beta0) = d * d - 2 * d;
  t.entries(0, delta_col) = (cat == Category::smooth) ? 8 * 28 : 8;
  for (std::size_t j = 2; j <= m; ++j) t.entries(j - 1, alpha0 + j - 1) = 2;
  const std::size_t gamma_row0 = m;  // 1 + (m-1)
  for (std::size_t g = 0; g < gamma_cols.size(); ++g)
    t.entries(gamma_row0 + g, gamma0 + g) = 1;
  const std::size_t square_row0 = gamma_row0 + gamma_cols.size();
  for (std::size_t i = 1; i <= m; ++i) t.entries(square_row0 + i - 1, beta0 + i - 1) = 1;
  return t;
}

GeneratorTable s2s5_table(const S2S5Context& ctx, Category cat) {
  if (ctx.s < 0) throw std::domain_error("generator_table: s must be >= 0");
  const mpz_class& s = ctx.s;

  GeneratorTable t;
  t.context = ctx;
  t.category = cat;
  t.col_labels = {"V1", "V2", "V3", "V4", "V5", "V6"};
  t.row_labels = {"(pbar1-2s*y)^2", "(x^2)^2-x^2*(pbar1-2s*y)", "x^2*(pbar1-2s*y)"};
  t.entries = IntMatrix(3, 6);
  t.entries(0, 0) = (cat == Category::smooth) ? -(32 * 7) : -8;
  t.entries(0, 3) = 4 * s * s - 4 * s;
  t.entries(0, 4) = 8 * s * s;
  t.entries(1, 2) = 24;
  t.entries(1, 5) = -2 * s;
  t.entries(2, 1) = 2;
  return t;
}

mpz_class row_gcd(const GeneratorTable& t, std::size_t row) {
  std::vector<mpz_class> entries;
  entries.reserve(t.entries.cols());
  for (std::size_t j = 0; j < t.entries.cols(); ++j) entries.push_back(t.entries(row, j));
  return gcd_nonneg(entries);
}

}  // namespace

GeneratorTable generator_table(const TableContext& ctx, Category cat) {
  return std::visit(
      [&](const auto& c) -> GeneratorTable {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, TwoConnectedContext>) return two_connected_table(c, cat);
        else return s2s5_table(c, cat);
      },
      ctx);
}

mpz_class gek_modulus(const mpz_class& d, Category cat) {
  const GeneratorTable t = generator_table(TwoConnectedContext{d, 1}, cat);
  return row_gcd(t, 0);
}

SModuli s_moduli(const mpz_class& s, Category cat) {
  const GeneratorTable t = generator_table(S2S5Context{s}, cat);
  return SModuli{row_gcd(t, 0), row_gcd(t, 1), row_gcd(t, 2)};
}

std::vector<ResidueClass> reduce_invariant_vector(const std::vector<mpz_class>& raw,
                                                  const GeneratorTable& table) {
  if (raw.size() != table.entries.rows())
    throw std::invalid_argument("reduce_invariant_vector: dimension mismatch");
  const HermiteBasis h = hermite_normal_form(table.entries);
  const std::vector<mpz_class> reduced = hermite_reduce(raw, h);
  std::vector<ResidueClass> out;
  out.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i)
    out.emplace_back(Rational(reduced[i]), Rational(h.pivot_at_row(i)));
  return out;
}

}  // namespace m7inv

#include "m7inv/normal_form.hpp"

#include <algorithm>
#include <stdexcept>

namespace m7inv {

namespace {

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// row a -= q * row b
void add_row_multiple(IntMatrix& m, std::size_t a, std::size_t b, const mpz_class& q) {
  if (q == 0) return;
  for (std::size_t j = 0; j < m.cols(); ++j) m(a, j) -= q * m(b, j);
}

// col a -= q * col b
void add_col_multiple(IntMatrix& m, std::size_t a, std::size_t b, const mpz_class& q) {
  if (q == 0) return;
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, a) -= q * m(i, b);
}

void negate_row(IntMatrix& m, std::size_t a) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(a, j) = -m(a, j);
}

// Smallest-magnitude nonzero entry of the trailing submatrix, row-major
// tie-break. Returns false when the submatrix is zero.
bool find_pivot(const IntMatrix& d, std::size_t t, std::size_t& pr, std::size_t& pc) {
  bool found = false;
  mpz_class best;
  for (std::size_t i = t; i < d.rows(); ++i)
    for (std::size_t j = t; j < d.cols(); ++j) {
      if (d(i, j) == 0) continue;
      mpz_class mag = abs(d(i, j));
      if (!found || mag < best) {
        found = true;
        best = mag;
        pr = i;
        pc = j;
      }
    }
  return found;
}

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  SmithDecomposition s{IntMatrix::identity(m), a, IntMatrix::identity(n)};
  IntMatrix& d = s.d;
  const std::size_t steps = std::min(m, n);

  for (std::size_t t = 0; t < steps; ++t) {
    std::size_t pr = t, pc = t;
    if (!find_pivot(d, t, pr, pc)) break;  // trailing block is zero
    for (;;) {
      swap_rows(d, t, pr);
      swap_rows(s.u, t, pr);
      swap_cols(d, t, pc);
      swap_cols(s.v, t, pc);

      bool dirty = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d(i, t) == 0) continue;
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), d(i, t).get_mpz_t(), d(t, t).get_mpz_t());
        add_row_multiple(d, i, t, q);
        add_row_multiple(s.u, i, t, q);
        if (d(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d(t, j) == 0) continue;
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), d(t, j).get_mpz_t(), d(t, t).get_mpz_t());
        add_col_multiple(d, j, t, q);
        add_col_multiple(s.v, j, t, q);
        if (d(t, j) != 0) dirty = true;
      }
      if (dirty) {
        if (!find_pivot(d, t, pr, pc)) break;
        continue;
      }

      // divisibility: the pivot must divide the whole trailing block
      bool fixed = true;
      for (std::size_t i = t + 1; i < m && fixed; ++i)
        for (std::size_t j = t + 1; j < n && fixed; ++j)
          if (!mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t())) {
            add_row_multiple(d, t, i, mpz_class(-1));
            add_row_multiple(s.u, t, i, mpz_class(-1));
            fixed = false;
          }
      if (fixed) break;
      if (!find_pivot(d, t, pr, pc)) break;
    }
    if (d(t, t) < 0) {
      negate_row(d, t);
      negate_row(s.u, t);
    }
  }
  return s;
}

mpz_class HermiteBasis::pivot_at_row(std::size_t row) const {
  for (const auto& [r, c] : pivots)
    if (r == row) return basis(r, c);
  return 0;
}

HermiteBasis hermite_normal_form(const IntMatrix& lattice) {
  const std::size_t m = lattice.rows(), n = lattice.cols();
  IntMatrix h = lattice;
  HermiteBasis out;
  std::size_t pc = 0;
  for (std::size_t row = 0; row < m && pc < n; ++row) {
    // fold the gcd of h(row, pc..) into column pc
    for (std::size_t j = pc + 1; j < n; ++j) {
      if (h(row, j) == 0) continue;
      if (h(row, pc) == 0) {
        swap_cols(h, pc, j);
        continue;
      }
      mpz_class g, p, q;
      mpz_gcdext(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t(), h(row, pc).get_mpz_t(),
                 h(row, j).get_mpz_t());
      const mpz_class adg = h(row, pc) / g, bdg = h(row, j) / g;
      for (std::size_t i = 0; i < m; ++i) {
        const mpz_class ci = h(i, pc), cj = h(i, j);
        h(i, pc) = p * ci + q * cj;
        h(i, j) = adg * cj - bdg * ci;
      }
    }
    if (h(row, pc) == 0) continue;  // lattice misses this row
    if (h(row, pc) < 0)
      for (std::size_t i = 0; i < m; ++i) h(i, pc) = -h(i, pc);
    // normalize entries of earlier columns in this pivot row into [0, pivot)
    for (std::size_t j = 0; j < pc; ++j) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), h(row, j).get_mpz_t(), h(row, pc).get_mpz_t());
      add_col_multiple(h, j, pc, q);
    }
    out.pivots.emplace_back(row, pc);
    ++pc;
  }
  // columns >= pc are zero; keep only the basis columns
  out.basis = IntMatrix(m, pc);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < pc; ++j) out.basis(i, j) = h(i, j);
  return out;
}

std::vector<mpz_class> hermite_reduce(const std::vector<mpz_class>& v, const HermiteBasis& h) {
  if (v.size() != h.basis.rows())
    throw std::invalid_argument("hermite_reduce: dimension mismatch");
  std::vector<mpz_class> w = v;
  for (const auto& [r, c] : h.pivots) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), w[r].get_mpz_t(), h.basis(r, c).get_mpz_t());
    if (q == 0) continue;
    for (std::size_t i = 0; i < w.size(); ++i) w[i] -= q * h.basis(i, c);
  }
  return w;
}

std::vector<mpz_class> hermite_reduce(const std::vector<mpz_class>& v, const IntMatrix& lattice) {
  if (v.size() != lattice.rows())
    throw std::invalid_argument("hermite_reduce: dimension mismatch");
  return hermite_reduce(v, hermite_normal_form(lattice));
}

std::optional<std::vector<mpz_class>> solve_linear(const IntMatrix& a,
                                                   const std::vector<mpz_class>& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve_linear: dimension mismatch");
  const SmithDecomposition s = smith_normal_form(a);
  const std::vector<mpz_class> y = s.u.apply(b);
  std::vector<mpz_class> x(a.cols(), mpz_class(0));
  const std::size_t rank_bound = std::min(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (i < rank_bound && s.d(i, i) != 0) {
      if (!mpz_divisible_p(y[i].get_mpz_t(), s.d(i, i).get_mpz_t())) return std::nullopt;
      x[i] = y[i] / s.d(i, i);
    } else if (y[i] != 0) {
      return std::nullopt;
    }
  }
  return s.v.apply(x);
}

mpz_class determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant: matrix not square");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix w = a;
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (w(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && w(r, k) == 0) ++r;
      if (r == n) return 0;
      swap_rows(w, k, r);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class num = w(i, j) * w(k, k) - w(i, k) * w(k, j);
        mpz_divexact(w(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      w(i, k) = 0;
    }
    prev = w(k, k);
  }
  return sign * w(n - 1, n - 1);
}

}  // namespace m7inv

#include "m7inv/fin_ab_group.hpp"

#include <utility>

#include "m7inv/normal_form.hpp"

namespace m7inv {

namespace {

mpz_class reduce_mod(const mpz_class& v, const mpz_class& d) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), d.get_mpz_t());
  return r;
}

void require_torsion_only(const FinAbGroup& g, const char* who) {
  if (!g.is_torsion_only())
    throw std::invalid_argument(std::string(who) + ": group must have free rank 0");
}

void check_order_bound(const FinAbGroup& g, const Limits& limits, const char* who) {
  if (g.torsion_order() > mpz_class(limits.max_enumeration_order))
    throw enumeration_limit_error(std::string(who) + ": group order exceeds enumeration bound");
}

}  // namespace

FinAbGroup::FinAbGroup(std::size_t free_rank, std::vector<mpz_class> torsion_chain)
    : free_rank_(free_rank), torsion_(std::move(torsion_chain)) {
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    if (torsion_[i] < 2)
      throw std::invalid_argument("FinAbGroup: torsion orders must be >= 2");
    if (i > 0 && !mpz_divisible_p(torsion_[i].get_mpz_t(), torsion_[i - 1].get_mpz_t()))
      throw std::invalid_argument("FinAbGroup: torsion chain must be a divisibility chain");
  }
}

FinAbGroup FinAbGroup::from_presentation(const IntMatrix& relations) {
  const SmithDecomposition s = smith_normal_form(relations);
  const std::size_t n = relations.rows();
  std::vector<mpz_class> chain;
  std::size_t nonzero = 0;
  for (std::size_t i = 0; i < std::min(n, relations.cols()); ++i) {
    if (s.d(i, i) == 0) continue;
    ++nonzero;
    if (s.d(i, i) >= 2) chain.push_back(s.d(i, i));
  }
  return FinAbGroup(n - nonzero, std::move(chain));
}

mpz_class FinAbGroup::torsion_order() const {
  mpz_class order = 1;
  for (const auto& d : torsion_) order *= d;
  return order;
}

GroupElement::GroupElement(FinAbGroup group, std::vector<mpz_class> free_coords,
                           std::vector<mpz_class> torsion_coords)
    : group_(std::move(group)), free_(std::move(free_coords)), torsion_(std::move(torsion_coords)) {
  if (free_.size() != group_.free_rank() ||
      torsion_.size() != group_.torsion_generator_count())
    throw std::invalid_argument("GroupElement: coordinate count mismatch");
  for (std::size_t i = 0; i < torsion_.size(); ++i)
    torsion_[i] = reduce_mod(torsion_[i], group_.torsion_chain()[i]);
}

GroupElement GroupElement::zero(const FinAbGroup& g) {
  return GroupElement(g, std::vector<mpz_class>(g.free_rank(), 0),
                      std::vector<mpz_class>(g.torsion_generator_count(), 0));
}

GroupElement GroupElement::torsion(const FinAbGroup& g, std::vector<mpz_class> coords) {
  return GroupElement(g, std::vector<mpz_class>(g.free_rank(), 0), std::move(coords));
}

bool GroupElement::is_zero() const {
  for (const auto& c : free_)
    if (c != 0) return false;
  for (const auto& c : torsion_)
    if (c != 0) return false;
  return true;
}

GroupElement GroupElement::scaled(const mpz_class& n) const {
  std::vector<mpz_class> f = free_, t = torsion_;
  for (auto& c : f) c *= n;
  for (auto& c : t) c *= n;
  return GroupElement(group_, std::move(f), std::move(t));
}

GroupElement operator+(const GroupElement& a, const GroupElement& b) {
  if (a.group_ != b.group_) throw std::invalid_argument("GroupElement: group mismatch");
  std::vector<mpz_class> f = a.free_, t = a.torsion_;
  for (std::size_t i = 0; i < f.size(); ++i) f[i] += b.free_[i];
  for (std::size_t i = 0; i < t.size(); ++i) t[i] += b.torsion_[i];
  return GroupElement(a.group_, std::move(f), std::move(t));
}

GroupElement operator-(const GroupElement& a, const GroupElement& b) {
  return a + b.scaled(-1);
}

GroupAuto::GroupAuto(FinAbGroup group, IntMatrix matrix)
    : group_(std::move(group)), matrix_(std::move(matrix)) {
  require_torsion_only(group_, "GroupAuto");
  const auto& chain = group_.torsion_chain();
  const std::size_t k = chain.size();
  if (matrix_.rows() != k || matrix_.cols() != k)
    throw std::invalid_argument("GroupAuto: matrix size mismatch");
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      matrix_(i, j) = reduce_mod(matrix_(i, j), chain[i]);
      if (reduce_mod(chain[j] * matrix_(i, j), chain[i]) != 0)
        throw std::invalid_argument("GroupAuto: homomorphism condition violated");
    }
  // invertibility: columns together with the relations must generate Z^k
  if (k > 0) {
    IntMatrix aug(k, 2 * k);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) aug(i, j) = matrix_(i, j);
      aug(i, k + i) = chain[i];
    }
    const SmithDecomposition s = smith_normal_form(aug);
    for (std::size_t i = 0; i < k; ++i)
      if (s.d(i, i) != 1) throw std::invalid_argument("GroupAuto: matrix is not invertible");
  }
}

GroupAuto GroupAuto::identity(const FinAbGroup& g) {
  require_torsion_only(g, "GroupAuto::identity");
  return GroupAuto(g, IntMatrix::identity(g.torsion_generator_count()), unchecked_t{});
}

bool GroupAuto::is_identity() const {
  return matrix_ == IntMatrix::identity(group_.torsion_generator_count());
}

GroupElement GroupAuto::apply(const GroupElement& e) const {
  if (e.group() != group_) throw std::invalid_argument("GroupAuto: group mismatch");
  return GroupElement::torsion(group_, matrix_.apply(e.torsion_coords()));
}

GroupAuto GroupAuto::compose(const GroupAuto& inner) const {
  if (inner.group_ != group_) throw std::invalid_argument("GroupAuto: group mismatch");
  return GroupAuto(group_, matrix_ * inner.matrix_);
}

GroupAuto GroupAuto::inverse() const {
  const auto& chain = group_.torsion_chain();
  const std::size_t k = chain.size();
  if (k == 0) return *this;
  IntMatrix aug(k, 2 * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) aug(i, j) = matrix_(i, j);
    aug(i, k + i) = chain[i];
  }
  IntMatrix inv(k, k);
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<mpz_class> e(k, 0);
    e[j] = 1;
    auto sol = solve_linear(aug, e);
    if (!sol) throw std::logic_error("GroupAuto::inverse: no preimage found");
    for (std::size_t i = 0; i < k; ++i) inv(i, j) = (*sol)[i];
  }
  GroupAuto out(group_, std::move(inv));
  if (!compose(out).is_identity() || !out.compose(*this).is_identity())
    throw std::logic_error("GroupAuto::inverse: verification failed");
  return out;
}

bool for_each_torsion_element(const FinAbGroup& g,
                              const std::function<bool(const GroupElement&)>& visit,
                              const Limits& limits) {
  check_order_bound(g, limits, "for_each_torsion_element");
  const auto& chain = g.torsion_chain();
  const std::size_t k = chain.size();
  std::vector<mpz_class> coords(k, 0);
  for (;;) {
    if (!visit(GroupElement::torsion(g, coords))) return true;
    std::size_t i = k;
    while (i > 0) {
      --i;
      coords[i] += 1;
      if (coords[i] < chain[i]) break;
      coords[i] = 0;
      if (i == 0) return false;
    }
    if (k == 0) return false;
  }
}

std::vector<GroupElement> torsion_elements(const FinAbGroup& g, const Limits& limits) {
  std::vector<GroupElement> out;
  for_each_torsion_element(
      g,
      [&](const GroupElement& e) {
        out.push_back(e);
        return true;
      },
      limits);
  return out;
}

namespace {

// The map sending the first `depth`+1 generators to the corresponding columns
// is injective iff the columns and the relations leave a cokernel of order
// |T| / (d_0 ... d_depth).
bool prefix_injective(const FinAbGroup& g, const IntMatrix& mat, std::size_t depth) {
  const auto& chain = g.torsion_chain();
  const std::size_t k = chain.size();
  IntMatrix aug(k, depth + 1 + k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j <= depth; ++j) aug(i, j) = mat(i, j);
    aug(i, depth + 1 + i) = chain[i];
  }
  const SmithDecomposition s = smith_normal_form(aug);
  mpz_class coker = 1;
  for (std::size_t i = 0; i < k; ++i) coker *= s.d(i, i);
  mpz_class expected = g.torsion_order();
  for (std::size_t j = 0; j <= depth; ++j) expected /= chain[j];
  return coker == expected;
}

}  // namespace

bool for_each_automorphism_filtered(
    const FinAbGroup& g,
    const std::function<bool(std::size_t depth, const IntMatrix& partial)>& column_ok,
    const std::function<bool(const GroupAuto&)>& visit, const Limits& limits) {
  require_torsion_only(g, "for_each_automorphism");
  check_order_bound(g, limits, "for_each_automorphism");
  const auto& chain = g.torsion_chain();
  const std::size_t k = chain.size();
  if (k == 0) return !visit(GroupAuto::identity(g));

  IntMatrix mat(k, k);
  // step[i][j]: the image coordinate i of generator j must be a multiple of
  // d_i / d_j for i > j (else the column would not have order dividing d_j)
  std::vector<std::vector<mpz_class>> step(k, std::vector<mpz_class>(k, 1));
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = j + 1; i < k; ++i) step[i][j] = chain[i] / chain[j];

  std::function<bool(std::size_t)> dfs = [&](std::size_t j) -> bool {
    std::vector<mpz_class> c(k, 0);
    for (;;) {
      for (std::size_t i = 0; i < k; ++i) mat(i, j) = c[i];
      if (prefix_injective(g, mat, j) && (!column_ok || column_ok(j, mat))) {
        if (j + 1 == k) {
          if (!visit(GroupAuto(g, mat, GroupAuto::unchecked_t{}))) return true;
        } else {
          if (dfs(j + 1)) return true;
        }
      }
      std::size_t i = k;
      bool wrapped = true;
      while (i > 0) {
        --i;
        c[i] += step[i][j];
        if (c[i] < chain[i]) {
          wrapped = false;
          break;
        }
        c[i] = 0;
      }
      if (wrapped) break;
    }
    for (std::size_t i = 0; i < k; ++i) mat(i, j) = 0;
    return false;
  };
  return dfs(0);
}

bool for_each_automorphism(const FinAbGroup& g,
                           const std::function<bool(const GroupAuto&)>& visit,
                           const Limits& limits) {
  return for_each_automorphism_filtered(g, nullptr, visit, limits);
}

std::vector<GroupAuto> enumerate_automorphisms(const FinAbGroup& g, const Limits& limits) {
  std::vector<GroupAuto> out;
  for_each_automorphism(
      g,
      [&](const GroupAuto& a) {
        out.push_back(a);
        return true;
      },
      limits);
  return out;
}

}  // namespace m7inv

#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "m7inv/int_matrix.hpp"

namespace m7inv {

/// Thrown when an exhaustive enumeration would exceed its configured bound.
class enumeration_limit_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Limits {
  // Refuse exhaustive enumeration (elements, automorphisms, refinements)
  // beyond this group order.
  unsigned long max_enumeration_order = 10000;
  // Exhaustive pairwise checks (polarization identity, nondegeneracy) only
  // run up to this order.
  unsigned long max_pair_check_order = 1000;
};

/// Finitely generated abelian group Z^r + Z/d1 + ... + Z/dk in Smith normal
/// form: each di >= 2 and d1 | d2 | ... | dk.
class FinAbGroup {
 public:
  FinAbGroup() : free_rank_(0) {}
  FinAbGroup(std::size_t free_rank, std::vector<mpz_class> torsion_chain);

  static FinAbGroup trivial() { return FinAbGroup(); }
  /// Z^n modulo the column lattice of `relations` (relations.rows() == n),
  /// canonicalized through the Smith normal form.
  static FinAbGroup from_presentation(const IntMatrix& relations);

  std::size_t free_rank() const { return free_rank_; }
  const std::vector<mpz_class>& torsion_chain() const { return torsion_; }
  std::size_t torsion_generator_count() const { return torsion_.size(); }
  mpz_class torsion_order() const;
  bool is_torsion_only() const { return free_rank_ == 0; }

  friend bool operator==(const FinAbGroup& a, const FinAbGroup& b) {
    return a.free_rank_ == b.free_rank_ && a.torsion_ == b.torsion_;
  }

 private:
  std::size_t free_rank_;
  std::vector<mpz_class> torsion_;
};

/// Element of a FinAbGroup; torsion coordinates are kept canonically reduced
/// into [0, di).
class GroupElement {
 public:
  GroupElement(FinAbGroup group, std::vector<mpz_class> free_coords,
               std::vector<mpz_class> torsion_coords);

  static GroupElement zero(const FinAbGroup& g);
  /// Torsion-coordinate constructor; the free part is zero.
  static GroupElement torsion(const FinAbGroup& g, std::vector<mpz_class> coords);

  const FinAbGroup& group() const { return group_; }
  const std::vector<mpz_class>& free_coords() const { return free_; }
  const std::vector<mpz_class>& torsion_coords() const { return torsion_; }
  bool is_zero() const;

  GroupElement operator-() const { return scaled(-1); }
  GroupElement scaled(const mpz_class& n) const;
  friend GroupElement operator+(const GroupElement& a, const GroupElement& b);
  friend GroupElement operator-(const GroupElement& a, const GroupElement& b);
  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.group_ == b.group_ && a.free_ == b.free_ && a.torsion_ == b.torsion_;
  }

 private:
  FinAbGroup group_;
  std::vector<mpz_class> free_;
  std::vector<mpz_class> torsion_;
};

/// Automorphism of the torsion part of a group, stored as the k x k integer
/// matrix whose column j gives the image of generator j. Entries are kept in
/// [0, di); construction verifies the homomorphism condition and
/// invertibility.
class GroupAuto {
 public:
  GroupAuto(FinAbGroup group, IntMatrix matrix);

  static GroupAuto identity(const FinAbGroup& g);

  const FinAbGroup& group() const { return group_; }
  const IntMatrix& matrix() const { return matrix_; }
  bool is_identity() const;

  GroupElement apply(const GroupElement& e) const;
  /// this after `inner`: (a.compose(b)).apply(x) == a.apply(b.apply(x)).
  GroupAuto compose(const GroupAuto& inner) const;
  GroupAuto inverse() const;

  friend bool operator==(const GroupAuto& a, const GroupAuto& b) {
    return a.group_ == b.group_ && a.matrix_ == b.matrix_;
  }

 private:
  struct unchecked_t {};
  GroupAuto(FinAbGroup group, IntMatrix matrix, unchecked_t)
      : group_(std::move(group)), matrix_(std::move(matrix)) {}

  FinAbGroup group_;
  IntMatrix matrix_;

  friend bool for_each_automorphism_filtered(
      const FinAbGroup&, const std::function<bool(std::size_t, const IntMatrix&)>&,
      const std::function<bool(const GroupAuto&)>&, const Limits&);
};

/// Visits every element of the torsion part once, in odometer order (first
/// coordinate slowest). The visitor returns false to stop; the function
/// returns true iff it was stopped early.
bool for_each_torsion_element(const FinAbGroup& g,
                              const std::function<bool(const GroupElement&)>& visit,
                              const Limits& limits = {});
std::vector<GroupElement> torsion_elements(const FinAbGroup& g, const Limits& limits = {});

/// Visits every automorphism of a torsion group exactly once, in a fixed
/// order (generator images searched in ascending coordinate order with
/// injectivity pruning). Returns true iff stopped early by the visitor.
bool for_each_automorphism(const FinAbGroup& g,
                           const std::function<bool(const GroupAuto&)>& visit,
                           const Limits& limits = {});
std::vector<GroupAuto> enumerate_automorphisms(const FinAbGroup& g, const Limits& limits = {});

/// Same search with an extra per-column filter: after column `depth` of the
/// candidate matrix is placed, column_ok(depth, partial) may veto the whole
/// subtree. Used for pruned orbit searches; the visit order of surviving
/// automorphisms matches for_each_automorphism.
bool for_each_automorphism_filtered(
    const FinAbGroup& g,
    const std::function<bool(std::size_t depth, const IntMatrix& partial)>& column_ok,
    const std::function<bool(const GroupAuto&)>& visit, const Limits& limits = {});

}  // namespace m7inv

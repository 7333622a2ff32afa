#pragma once

#include <vector>

#include "m7inv/fin_ab_group.hpp"
#include "m7inv/residue.hpp"

namespace m7inv {

/// Symmetric bilinear form b on a finite abelian group with values in Q/Z,
/// stored as the Gram matrix on the Smith generators. Bilinearity forces
/// di * b(gi, gj) = 0 = dj * b(gi, gj) in Q/Z; construction verifies this
/// together with symmetry. Degenerate forms are accepted.
class LinkingForm {
 public:
  LinkingForm(FinAbGroup group, std::vector<std::vector<ResidueClass>> gram);

  /// The zero form on g.
  static LinkingForm zero(const FinAbGroup& g);

  const FinAbGroup& group() const { return group_; }
  std::size_t rank() const { return group_.torsion_generator_count(); }
  const ResidueClass& gram(std::size_t i, std::size_t j) const { return gram_[i][j]; }

  /// b(y, z) in Q/Z.
  ResidueClass evaluate(const GroupElement& y, const GroupElement& z) const;

  /// True iff y -> b(y, .) has trivial kernel; exhaustive, so bounded.
  bool is_nondegenerate(const Limits& limits = {}) const;

  friend bool operator==(const LinkingForm& a, const LinkingForm& b) {
    return a.group_ == b.group_ && a.gram_ == b.gram_;
  }

 private:
  FinAbGroup group_;
  std::vector<std::vector<ResidueClass>> gram_;
};

/// Quadratic refinement q of a linking form, with values in Q/2Z, determined
/// by its generator values. Construction verifies the per-generator wrap
/// condition di*q(gi) + di(di-1)*b(gi,gi) = 0 in Q/2Z, which makes the
/// closed-form evaluation independent of coordinate lifts.
class QuadraticRefinement {
 public:
  QuadraticRefinement(LinkingForm form, std::vector<ResidueClass> gen_values);

  const LinkingForm& form() const { return form_; }
  const std::vector<ResidueClass>& generator_values() const { return values_; }

  /// q(y) in Q/2Z via the polarization expansion
  ///   q(sum ni gi) = sum_i [ni q(gi) + ni(ni-1) b(gi,gi)] + 2 sum_{i<j} ni nj b(gi,gj).
  ResidueClass evaluate(const GroupElement& y) const;

  friend bool operator==(const QuadraticRefinement& a, const QuadraticRefinement& b) {
    return a.form_ == b.form_ && a.values_ == b.values_;
  }

 private:
  LinkingForm form_;
  std::vector<ResidueClass> values_;
};

/// True iff gen_values defines a quadratic refinement of b: the wrap
/// condition holds on every generator, and (exhaustively, for group order
/// <= limits.max_pair_check_order) q(y+z) - q(y) - q(z) = 2 b(y,z) for all
/// pairs.
bool is_refinement(const std::vector<ResidueClass>& gen_values, const LinkingForm& b,
                   const Limits& limits = {});

/// All quadratic refinements of b in ascending generator-value order.
/// The count is 0 or exactly the group order (refinements form a torsor
/// over Hom(T, Q/2Z)).
std::vector<QuadraticRefinement> enumerate_refinements(const LinkingForm& b,
                                                       const Limits& limits = {});

/// Refinement after the structure change x -> x + t:
///   q'(y) = q(y) - d * b(t, y), well posed in Q/2Z because d is even.
QuadraticRefinement change_d_structure(const QuadraticRefinement& q, const mpz_class& d,
                                       const GroupElement& t);

/// Companion transformation of the residue invariant under x -> x + t:
///   gek' = gek - 2d q(t) + ((d^2+2d)/2) (q(2t) - 2 q(t)).
/// Verifies at runtime that the modulus absorbs the mod-2 lift ambiguity of
/// the q-values (modulus | 4d and modulus | d^2+2d); throws otherwise.
ResidueClass transform_gek(const ResidueClass& gek, const mpz_class& d,
                           const QuadraticRefinement& q, const GroupElement& t);

/// (b o theta)(y, z) = b(theta y, theta z).
LinkingForm pullback_form(const LinkingForm& b, const GroupAuto& theta);
/// (q o theta)(y) = q(theta y); the result refines pullback_form(q.form(), theta).
QuadraticRefinement pullback(const QuadraticRefinement& q, const GroupAuto& theta);

}  // namespace m7inv

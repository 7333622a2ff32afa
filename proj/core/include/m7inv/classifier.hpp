#pragma once

#include <optional>
#include <vector>

#include "m7inv/generator_table.hpp"
#include "m7inv/linking_form.hpp"

namespace m7inv {

/// Normal form of the classification quadruple (H^4, pbar1, q_x, GEK) of a
/// closed 2-connected spin 7-manifold with a chosen splitting
/// H^4 = Z^r + T, x = e1 + x_torsion, pbar1 = d*e1 + p1_torsion.
struct PhiTuple {
  std::size_t free_rank = 0;
  FinAbGroup torsion;
  mpz_class d;  // even, >= 0
  Category category = Category::smooth;
  GroupElement x_torsion;   // must be 0 when d = 0
  GroupElement p1_torsion;
  LinkingForm b;
  QuadraticRefinement q;
  ResidueClass gek;  // modulus gek_modulus(d, category)
};

/// Throws std::invalid_argument with a description when any invariant of the
/// tuple fails (q must refine b, gek modulus must match, d = 0 forces
/// x_torsion = 0, d > 0 requires free_rank >= 1, groups must agree).
void validate(const PhiTuple& t);

/// Isomorphism test with the d-structures held fixed. Succeeds iff free
/// ranks, d, category and gek agree and some torsion automorphism theta
/// carries p1_torsion - d*x_torsion onto its primed counterpart with
/// pullback_form(b', theta) == b and pullback(q', theta) == q. The identity
/// is tried first; otherwise the first witness in automorphism enumeration
/// order is returned.
std::optional<GroupAuto> phi_isomorphic_fixed(const PhiTuple& a, const PhiTuple& b,
                                              const Limits& limits = {});

struct PhiWitness {
  GroupAuto theta;
  GroupElement shift;  // structure change applied to the second tuple
};

/// Full isomorphism test: scans all structure shifts t of the second tuple
/// (only t = 0 when d = 0, where the structure is pinned) and runs the fixed
/// test on each. Deterministic: shifts in element order, first hit returned.
std::optional<PhiWitness> phi_isomorphic(const PhiTuple& a, const PhiTuple& b,
                                         const Limits& limits = {});

/// Member of the family built from an S^3-bundle over S^4 (parameter s >= 0),
/// a sphere bundle over CP^2 (parameter k) and the r-fold connected sum of
/// the E8-plumbing boundary sphere (r mod 28).
struct FamilyPoint {
  mpz_class s;
  mpz_class k;
  mpz_class r;  // canonically in [0, 28)
};

FamilyPoint make_family_point(const mpz_class& s, const mpz_class& k, const mpz_class& r);

struct SInvariants {
  mpz_class d;  // = 2s
  ResidueClass s1, s2, s3;
};

/// s-invariants of a family member (smooth category):
///   s1 = 8(1-r) + 6k + 4k^2   mod m1,
///   s2 = -2 - 2k              mod m2,
///   s3 = 3 + 2k = 1           mod 2.
SInvariants family_invariants(const FamilyPoint& p);

struct FamilyComparison {
  bool congruence_route;  // s = s', quadratic congruence, k-congruence
  bool invariant_route;   // d and all three s-invariants agree
  // congruence-route evidence
  mpz_class quad_lhs, quad_rhs, quad_modulus, k_modulus;
  SInvariants inv_a, inv_b;
  bool verdict() const { return congruence_route; }
};

/// Evaluates both decision routes. They provably coincide; family_diffeomorphic
/// additionally raises std::logic_error if an implementation drift ever makes
/// them disagree.
FamilyComparison compare_family(const FamilyPoint& a, const FamilyPoint& b);
bool family_diffeomorphic(const FamilyPoint& a, const FamilyPoint& b);

/// The subgroup of Z/28 of exotic spheres absorbed by connected sum with a
/// family member: multiples of gcd(28, s(s-1)/2, s^2), ascending.
std::vector<long> inertia_group(const mpz_class& s);

/// Canonical s-invariants from raw relative characteristic numbers
///   c1 = <(pbar1 - d*y)^2>, c2 = <x^2 (pbar1 - d*y)>, c3 = <(x^2)^2>
/// of a signature-0 coboundary (the caller asserts that provenance).
SInvariants reduce_char_numbers(const mpz_class& c1, const mpz_class& c2, const mpz_class& c3,
                                const mpz_class& s, Category cat);

}  // namespace m7inv

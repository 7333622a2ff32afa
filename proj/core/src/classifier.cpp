#include "m7inv/classifier.hpp"

#include <stdexcept>

namespace m7inv {

namespace {

mpz_class gcd3(const mpz_class& a, const mpz_class& b, const mpz_class& c) {
  return gcd_nonneg({a, b, c});
}

// structure-shift comparator: the torsion part of pbar1 - d*x
GroupElement torsion_comparator(const PhiTuple& t) {
  return t.p1_torsion - t.x_torsion.scaled(t.d);
}

}  // namespace

void validate(const PhiTuple& t) {
  if (!t.torsion.is_torsion_only())
    throw std::invalid_argument("PhiTuple: torsion group must have free rank 0");
  if (t.d < 0 || !mpz_divisible_ui_p(t.d.get_mpz_t(), 2))
    throw std::invalid_argument("PhiTuple: d must be even and >= 0");
  if (t.x_torsion.group() != t.torsion || t.p1_torsion.group() != t.torsion)
    throw std::invalid_argument("PhiTuple: element group mismatch");
  if (t.b.group() != t.torsion) throw std::invalid_argument("PhiTuple: linking form group mismatch");
  if (t.q.form() != t.b)
    throw std::invalid_argument("PhiTuple: quadratic refinement does not refine b");
  if (t.gek.modulus() != Rational(gek_modulus(t.d, t.category)))
    throw std::invalid_argument("PhiTuple: gek modulus does not match d and category");
  if (t.d == 0 && !t.x_torsion.is_zero())
    throw std::invalid_argument("PhiTuple: x_torsion must vanish when d = 0");
  if (t.d > 0 && t.free_rank < 1)
    throw std::invalid_argument("PhiTuple: d > 0 requires free rank >= 1");
}

std::optional<GroupAuto> phi_isomorphic_fixed(const PhiTuple& a, const PhiTuple& b,
                                              const Limits& limits) {
  validate(a);
  validate(b);
  if (a.free_rank != b.free_rank || a.d != b.d || a.category != b.category) return std::nullopt;
  if (a.torsion != b.torsion) return std::nullopt;
  if (a.gek != b.gek) return std::nullopt;

  const GroupElement u = torsion_comparator(a);
  const GroupElement v = torsion_comparator(b);

  // identity first, so comparing a tuple with itself yields the identity
  if (u == v && a.b == b.b && a.q == b.q) return GroupAuto::identity(a.torsion);

  std::optional<GroupAuto> witness;
  const std::function<bool(std::size_t, const IntMatrix&)> column_ok =
      [&](std::size_t depth, const IntMatrix& partial) {
        const GroupElement img = GroupElement::torsion(a.torsion, partial.column(depth));
        if (b.q.evaluate(img) != a.q.generator_values()[depth]) return false;
        for (std::size_t i = 0; i < depth; ++i) {
          const GroupElement prev = GroupElement::torsion(a.torsion, partial.column(i));
          if (b.b.evaluate(prev, img) != a.b.gram(i, depth)) return false;
        }
        if (b.b.evaluate(img, img) != a.b.gram(depth, depth)) return false;
        return true;
      };
  for_each_automorphism_filtered(
      a.torsion, column_ok,
      [&](const GroupAuto& theta) {
        if (theta.apply(u) == v) {
          witness = theta;
          return false;
        }
        return true;
      },
      limits);
  return witness;
}

std::optional<PhiWitness> phi_isomorphic(const PhiTuple& a, const PhiTuple& b,
                                         const Limits& limits) {
  validate(a);
  validate(b);
  if (a.free_rank != b.free_rank || a.d != b.d || a.category != b.category) return std::nullopt;
  if (a.torsion != b.torsion) return std::nullopt;

  if (a.d == 0) {
    // the structure is pinned at x = 0; no shifts to scan
    auto theta = phi_isomorphic_fixed(a, b, limits);
    if (!theta) return std::nullopt;
    return PhiWitness{*theta, GroupElement::zero(a.torsion)};
  }

  std::optional<PhiWitness> out;
  for_each_torsion_element(
      b.torsion,
      [&](const GroupElement& t) {
        PhiTuple shifted{b.free_rank, b.torsion,      b.d, b.category, b.x_torsion + t,
                         b.p1_torsion, b.b,
                         change_d_structure(b.q, b.d, t),
                         transform_gek(b.gek, b.d, b.q, t)};
        auto theta = phi_isomorphic_fixed(a, shifted, limits);
        if (theta) {
          out = PhiWitness{*theta, t};
          return false;
        }
        return true;
      },
      limits);
  return out;
}

FamilyPoint make_family_point(const mpz_class& s, const mpz_class& k, const mpz_class& r) {
  if (s < 0) throw std::domain_error("FamilyPoint: s must be >= 0");
  mpz_class rr;
  mpz_fdiv_r_ui(rr.get_mpz_t(), r.get_mpz_t(), 28);
  return FamilyPoint{s, k, rr};
}

SInvariants family_invariants(const FamilyPoint& p) {
  const FamilyPoint f = make_family_point(p.s, p.k, p.r);
  const SModuli m = s_moduli(f.s, Category::smooth);
  SInvariants out;
  out.d = 2 * f.s;
  out.s1 = reduce(Rational(mpz_class(8 * (1 - f.r) + 6 * f.k + 4 * f.k * f.k)), Rational(m.m1));
  out.s2 = reduce(Rational(mpz_class(-2 - 2 * f.k)), Rational(m.m2));
  out.s3 = reduce(Rational(mpz_class(3 + 2 * f.k)), Rational(m.m3));
  return out;
}

FamilyComparison compare_family(const FamilyPoint& pa, const FamilyPoint& pb) {
  const FamilyPoint a = make_family_point(pa.s, pa.k, pa.r);
  const FamilyPoint b = make_family_point(pb.s, pb.k, pb.r);
  FamilyComparison cmp;
  cmp.inv_a = family_invariants(a);
  cmp.inv_b = family_invariants(b);

  cmp.quad_lhs = 4 * (1 - a.r) + 3 * a.k + 2 * a.k * a.k;
  cmp.quad_rhs = 4 * (1 - b.r) + 3 * b.k + 2 * b.k * b.k;
  cmp.quad_modulus = 4 * gcd3(28, a.s * (a.s - 1) / 2, a.s * a.s);
  cmp.k_modulus = gcd_nonneg({mpz_class(12), a.s});

  bool congruent = (a.s == b.s);
  if (congruent) {
    congruent = mpz_divisible_p(mpz_class(cmp.quad_lhs - cmp.quad_rhs).get_mpz_t(),
                                cmp.quad_modulus.get_mpz_t());
    if (congruent && cmp.k_modulus != 0)
      congruent = mpz_divisible_p(mpz_class(a.k - b.k).get_mpz_t(), cmp.k_modulus.get_mpz_t());
  }
  cmp.congruence_route = congruent;

  cmp.invariant_route = cmp.inv_a.d == cmp.inv_b.d && cmp.inv_a.s1 == cmp.inv_b.s1 &&
                        cmp.inv_a.s2 == cmp.inv_b.s2 && cmp.inv_a.s3 == cmp.inv_b.s3;
  return cmp;
}

bool family_diffeomorphic(const FamilyPoint& a, const FamilyPoint& b) {
  const FamilyComparison cmp = compare_family(a, b);
  if (cmp.congruence_route != cmp.invariant_route)
    throw std::logic_error("family_diffeomorphic: decision routes disagree");
  return cmp.verdict();
}

std::vector<long> inertia_group(const mpz_class& s) {
  if (s < 0) throw std::domain_error("inertia_group: s must be >= 0");
  const mpz_class g = gcd3(28, s * (s - 1) / 2, s * s);
  const long step = mpz_get_si(g.get_mpz_t());
  std::vector<long> out;
  for (long r = 0; r < 28; r += step) out.push_back(r);
  return out;
}

SInvariants reduce_char_numbers(const mpz_class& c1, const mpz_class& c2, const mpz_class& c3,
                                const mpz_class& s, Category cat) {
  const GeneratorTable table = generator_table(S2S5Context{s}, cat);
  const std::vector<ResidueClass> reduced = reduce_invariant_vector({c1, c3 - c2, c2}, table);
  return SInvariants{2 * s, reduced[0], reduced[1], reduced[2]};
}

}  // namespace m7inv

#include "m7inv/linking_form.hpp"

#include <utility>

namespace m7inv {

namespace {

const Rational kOne(1);
const Rational kTwo(2);

GroupElement basis_element(const FinAbGroup& g, std::size_t i) {
  std::vector<mpz_class> coords(g.torsion_generator_count(), 0);
  coords[i] = 1;
  return GroupElement::torsion(g, coords);
}

// modulus == 0 encodes "no reduction", under which only 0 is divisible
bool divides(const Rational& modulus, const Rational& x) {
  if (modulus.is_zero()) return x.is_zero();
  return (x / modulus).is_integer();
}

// Exhaustive integer-scaled check of q(y+z) - q(y) - q(z) = 2 b(y,z) over all
// pairs. All values are scaled by the largest torsion order L (every
// denominator divides it once the wrap condition holds) and compared mod 2L.
bool polarization_holds_exhaustive(const LinkingForm& b,
                                   const std::vector<ResidueClass>& gen_values) {
  const auto& chain = b.group().torsion_chain();
  const std::size_t k = chain.size();
  if (k == 0) return true;
  if (!b.group().torsion_order().fits_slong_p())
    throw enumeration_limit_error("is_refinement: group too large for the exhaustive check");
  const long big = mpz_get_si(chain.back().get_mpz_t());
  const long two_big = 2 * big;

  std::vector<long> dims(k);
  for (std::size_t i = 0; i < k; ++i) dims[i] = mpz_get_si(chain[i].get_mpz_t());
  std::vector<long> stride(k, 1);
  for (std::size_t i = k - 1; i > 0; --i) stride[i - 1] = stride[i] * dims[i];
  const long total = stride[0] * dims[0];

  // scaled gram and generator values
  std::vector<std::vector<long>> gram(k, std::vector<long>(k));
  std::vector<long> gen(k);
  for (std::size_t i = 0; i < k; ++i) {
    const Rational qi = gen_values[i].value() * Rational(big);
    if (!qi.is_integer()) return false;
    gen[i] = mpz_get_si(qi.numerator().get_mpz_t());
    for (std::size_t j = 0; j < k; ++j) {
      const Rational bij = b.gram(i, j).value() * Rational(big);
      if (!bij.is_integer()) return false;
      gram[i][j] = mpz_get_si(bij.numerator().get_mpz_t());
    }
  }

  // coordinates and scaled q-value of every element
  std::vector<std::vector<long>> coords(total, std::vector<long>(k));
  std::vector<long> q(total);
  for (long idx = 0; idx < total; ++idx) {
    long rem = idx;
    auto& c = coords[idx];
    for (std::size_t i = 0; i < k; ++i) {
      c[i] = rem / stride[i];
      rem %= stride[i];
    }
    long acc = 0;
    for (std::size_t i = 0; i < k; ++i) {
      acc = (acc + c[i] * gen[i] + c[i] * (c[i] - 1) % two_big * gram[i][i]) % two_big;
      for (std::size_t j = i + 1; j < k; ++j)
        acc = (acc + 2 * c[i] * c[j] % two_big * gram[i][j]) % two_big;
    }
    q[idx] = ((acc % two_big) + two_big) % two_big;
  }

  for (long y = 0; y < total; ++y)
    for (long z = y; z < total; ++z) {
      long sum_idx = 0;
      long twob = 0;
      for (std::size_t i = 0; i < k; ++i) {
        sum_idx += (coords[y][i] + coords[z][i]) % dims[i] * stride[i];
        for (std::size_t j = 0; j < k; ++j)
          twob = (twob + 2 * coords[y][i] * coords[z][j] % two_big * gram[i][j]) % two_big;
      }
      if (((q[sum_idx] - q[y] - q[z] - twob) % two_big + two_big) % two_big != 0) return false;
    }
  return true;
}

}  // namespace

LinkingForm::LinkingForm(FinAbGroup group, std::vector<std::vector<ResidueClass>> gram)
    : group_(std::move(group)), gram_(std::move(gram)) {
  if (!group_.is_torsion_only())
    throw std::invalid_argument("LinkingForm: group must have free rank 0");
  const auto& chain = group_.torsion_chain();
  const std::size_t k = chain.size();
  if (gram_.size() != k) throw std::invalid_argument("LinkingForm: gram size mismatch");
  for (std::size_t i = 0; i < k; ++i) {
    if (gram_[i].size() != k) throw std::invalid_argument("LinkingForm: gram size mismatch");
    for (std::size_t j = 0; j < k; ++j) {
      if (gram_[i][j].modulus() != kOne)
        throw std::invalid_argument("LinkingForm: gram entries must have modulus 1");
      if (!(Rational(chain[i]) * gram_[i][j].value()).is_integer() ||
          !(Rational(chain[j]) * gram_[i][j].value()).is_integer())
        throw std::invalid_argument(
            "LinkingForm: entry denominator incompatible with generator orders");
    }
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (gram_[i][j] != gram_[j][i]) throw std::invalid_argument("LinkingForm: gram not symmetric");
}

LinkingForm LinkingForm::zero(const FinAbGroup& g) {
  const std::size_t k = g.torsion_generator_count();
  return LinkingForm(
      g, std::vector<std::vector<ResidueClass>>(
             k, std::vector<ResidueClass>(k, ResidueClass(Rational(0), kOne))));
}

ResidueClass LinkingForm::evaluate(const GroupElement& y, const GroupElement& z) const {
  if (y.group() != group_ || z.group() != group_)
    throw std::invalid_argument("LinkingForm: group mismatch");
  ResidueClass acc(Rational(0), kOne);
  const std::size_t k = rank();
  for (std::size_t i = 0; i < k; ++i) {
    if (y.torsion_coords()[i] == 0) continue;
    for (std::size_t j = 0; j < k; ++j)
      acc += gram_[i][j].scaled(y.torsion_coords()[i] * z.torsion_coords()[j]);
  }
  return acc;
}

bool LinkingForm::is_nondegenerate(const Limits& limits) const {
  if (group_.torsion_order() > mpz_class(limits.max_pair_check_order))
    throw enumeration_limit_error("LinkingForm::is_nondegenerate: order exceeds check bound");
  const std::size_t k = rank();
  bool degenerate = false;
  for_each_torsion_element(group_, [&](const GroupElement& y) {
    if (y.is_zero()) return true;
    for (std::size_t j = 0; j < k; ++j)
      if (!evaluate(y, basis_element(group_, j)).is_zero()) return true;
    degenerate = true;
    return false;
  });
  return !degenerate;
}

QuadraticRefinement::QuadraticRefinement(LinkingForm form, std::vector<ResidueClass> gen_values)
    : form_(std::move(form)), values_(std::move(gen_values)) {
  const auto& chain = form_.group().torsion_chain();
  if (values_.size() != chain.size())
    throw std::invalid_argument("QuadraticRefinement: generator value count mismatch");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i].modulus() != kTwo)
      throw std::invalid_argument("QuadraticRefinement: generator values must have modulus 2");
    // d*q(g) + d(d-1)*b(g,g) = 0 in Q/2Z, forced by q(d*g) = q(0) = 0
    const ResidueClass wrap = scale_into(values_[i], chain[i], kTwo) +
                              scale_into(form_.gram(i, i), chain[i] * (chain[i] - 1), kTwo);
    if (!wrap.is_zero())
      throw std::invalid_argument("QuadraticRefinement: wrap condition violated at generator " +
                                  std::to_string(i));
  }
}

ResidueClass QuadraticRefinement::evaluate(const GroupElement& y) const {
  if (y.group() != form_.group())
    throw std::invalid_argument("QuadraticRefinement: group mismatch");
  const std::size_t k = values_.size();
  ResidueClass acc(Rational(0), kTwo);
  for (std::size_t i = 0; i < k; ++i) {
    const mpz_class& n = y.torsion_coords()[i];
    if (n == 0) continue;
    acc += values_[i].scaled(n);
    acc += scale_into(form_.gram(i, i), n * (n - 1), kTwo);
    for (std::size_t j = i + 1; j < k; ++j)
      acc += scale_into(form_.gram(i, j), 2 * n * y.torsion_coords()[j], kTwo);
  }
  return acc;
}

bool is_refinement(const std::vector<ResidueClass>& gen_values, const LinkingForm& b,
                   const Limits& limits) {
  const auto& chain = b.group().torsion_chain();
  if (gen_values.size() != chain.size())
    throw std::invalid_argument("is_refinement: generator value count mismatch");
  for (std::size_t i = 0; i < gen_values.size(); ++i) {
    if (gen_values[i].modulus() != kTwo)
      throw std::invalid_argument("is_refinement: generator values must have modulus 2");
    const ResidueClass wrap = scale_into(gen_values[i], chain[i], kTwo) +
                              scale_into(b.gram(i, i), chain[i] * (chain[i] - 1), kTwo);
    if (!wrap.is_zero()) return false;
  }
  if (b.group().torsion_order() <= mpz_class(limits.max_pair_check_order))
    return polarization_holds_exhaustive(b, gen_values);
  return true;
}

std::vector<QuadraticRefinement> enumerate_refinements(const LinkingForm& b,
                                                       const Limits& limits) {
  const auto& chain = b.group().torsion_chain();
  const std::size_t k = chain.size();
  if (b.group().torsion_order() > mpz_class(limits.max_enumeration_order))
    throw enumeration_limit_error("enumerate_refinements: order exceeds enumeration bound");
  std::vector<QuadraticRefinement> out;
  if (k == 0) {
    out.emplace_back(b, std::vector<ResidueClass>{});
    return out;
  }

  // Candidate values for generator i solve d*q = -d(d-1)*b(g,g) in Q/2Z:
  // q = (c + 2*l)/d for l = 0..d-1, where c in {0, 1} is the canonical lift
  // of the right-hand side (an integer since d*b(g,g) is one).
  std::vector<Rational> base(k);
  for (std::size_t i = 0; i < k; ++i) {
    const ResidueClass rhs = scale_into(-b.gram(i, i), chain[i] * (chain[i] - 1), kTwo);
    if (!rhs.value().is_integer()) return out;  // no solutions at all
    base[i] = rhs.value();
  }

  std::vector<mpz_class> l(k, 0);
  for (;;) {
    std::vector<ResidueClass> cand(k);
    for (std::size_t i = 0; i < k; ++i)
      cand[i] = reduce((base[i] + Rational(mpz_class(2 * l[i]))) / Rational(chain[i]), kTwo);
    if (is_refinement(cand, b, limits)) out.emplace_back(b, std::move(cand));
    std::size_t i = k;
    bool wrapped = true;
    while (i > 0) {
      --i;
      l[i] += 1;
      if (l[i] < chain[i]) {
        wrapped = false;
        break;
      }
      l[i] = 0;
    }
    if (wrapped) break;
  }
  return out;
}

QuadraticRefinement change_d_structure(const QuadraticRefinement& q, const mpz_class& d,
                                       const GroupElement& t) {
  if (d < 0 || !mpz_divisible_ui_p(d.get_mpz_t(), 2))
    throw std::domain_error("change_d_structure: d must be even and >= 0");
  if (t.group() != q.form().group())
    throw std::invalid_argument("change_d_structure: group mismatch");
  const std::size_t k = q.generator_values().size();
  std::vector<ResidueClass> values(k);
  for (std::size_t i = 0; i < k; ++i) {
    const ResidueClass bti = q.form().evaluate(t, basis_element(q.form().group(), i));
    values[i] = q.generator_values()[i] - scale_into(bti, d, kTwo);
  }
  return QuadraticRefinement(q.form(), std::move(values));
}

ResidueClass transform_gek(const ResidueClass& gek, const mpz_class& d,
                           const QuadraticRefinement& q, const GroupElement& t) {
  if (d < 0 || !mpz_divisible_ui_p(d.get_mpz_t(), 2))
    throw std::domain_error("transform_gek: d must be even and >= 0");
  if (t.group() != q.form().group())
    throw std::invalid_argument("transform_gek: group mismatch");
  // The q-values below are only defined mod 2; their lift ambiguity is
  // absorbed exactly when the modulus divides both 4d and d^2+2d.
  const Rational& m = gek.modulus();
  if (!divides(m, Rational(mpz_class(4 * d))) || !divides(m, Rational(mpz_class(d * d + 2 * d))))
    throw std::domain_error("transform_gek: modulus does not absorb q-value lifts");
  const Rational qt = q.evaluate(t).value();
  const Rational q2t = q.evaluate(t + t).value();
  const mpz_class half_coeff = (d * d + 2 * d) / 2;
  const Rational raw = gek.value() - Rational(mpz_class(2 * d)) * qt +
                       Rational(half_coeff) * (q2t - kTwo * qt);
  return reduce(raw, m);
}

LinkingForm pullback_form(const LinkingForm& b, const GroupAuto& theta) {
  if (theta.group() != b.group()) throw std::invalid_argument("pullback_form: group mismatch");
  const std::size_t k = b.rank();
  std::vector<GroupElement> images;
  images.reserve(k);
  for (std::size_t i = 0; i < k; ++i) images.push_back(theta.apply(basis_element(b.group(), i)));
  std::vector<std::vector<ResidueClass>> gram(k, std::vector<ResidueClass>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) gram[i][j] = b.evaluate(images[i], images[j]);
  return LinkingForm(b.group(), std::move(gram));
}

QuadraticRefinement pullback(const QuadraticRefinement& q, const GroupAuto& theta) {
  if (theta.group() != q.form().group())
    throw std::invalid_argument("pullback: group mismatch");
  const std::size_t k = q.generator_values().size();
  std::vector<ResidueClass> values(k);
  for (std::size_t i = 0; i < k; ++i)
    values[i] = q.evaluate(theta.apply(basis_element(q.form().group(), i)));
  return QuadraticRefinement(pullback_form(q.form(), theta), std::move(values));
}

}  // namespace m7inv

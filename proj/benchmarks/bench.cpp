#include <benchmark/benchmark.h>

#include <random>

#include "m7inv/classifier.hpp"

using namespace m7inv;

namespace {

IntMatrix random_matrix(std::mt19937& rng, std::size_t n, long max_entry) {
  std::uniform_int_distribution<long> entry(-max_entry, max_entry);
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = entry(rng);
  return m;
}

LinkingForm diagonal_form(const FinAbGroup& g) {
  const auto& chain = g.torsion_chain();
  const std::size_t k = chain.size();
  std::vector<std::vector<ResidueClass>> gram(
      k, std::vector<ResidueClass>(k, reduce(Rational(0), Rational(1))));
  for (std::size_t i = 0; i < k; ++i)
    gram[i][i] = reduce(Rational(mpz_class(1), chain[i]), Rational(1));
  return LinkingForm(g, std::move(gram));
}

void BM_SmithNormalForm(benchmark::State& state) {
  std::mt19937 rng(7);
  const IntMatrix a = random_matrix(rng, state.range(0), 50);
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(a));
}
BENCHMARK(BM_SmithNormalForm)->Arg(4)->Arg(8)->Arg(12);

void BM_HermiteReduce(benchmark::State& state) {
  std::mt19937 rng(9);
  const IntMatrix lat = random_matrix(rng, 6, 30);
  const std::vector<mpz_class> v = {100, -250, 77, 31, -8, 999};
  for (auto _ : state) benchmark::DoNotOptimize(hermite_reduce(v, lat));
}
BENCHMARK(BM_HermiteReduce);

void BM_AutomorphismEnumeration(benchmark::State& state) {
  const FinAbGroup g(0, {4, 4});
  for (auto _ : state) {
    long count = 0;
    for_each_automorphism(g, [&](const GroupAuto&) {
      ++count;
      return true;
    });
    benchmark::DoNotOptimize(count);
  }
}
BENCHMARK(BM_AutomorphismEnumeration);

void BM_EnumerateRefinements(benchmark::State& state) {
  const FinAbGroup g(0, {2, 24});
  const LinkingForm b = diagonal_form(g);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_refinements(b));
}
BENCHMARK(BM_EnumerateRefinements);

void BM_TupleCompare(benchmark::State& state) {
  const FinAbGroup g(0, {2, 8});
  const LinkingForm b = diagonal_form(g);
  const auto qs = enumerate_refinements(b);
  PhiTuple a{1,
             g,
             2,
             Category::smooth,
             GroupElement::torsion(g, {0, 1}),
             GroupElement::torsion(g, {1, 3}),
             b,
             qs[0],
             reduce(Rational(0), Rational(gek_modulus(2, Category::smooth)))};
  PhiTuple c = a;
  c.q = qs[qs.size() - 1];
  for (auto _ : state) benchmark::DoNotOptimize(phi_isomorphic(a, c));
}
BENCHMARK(BM_TupleCompare);

void BM_FamilyScan(benchmark::State& state) {
  for (auto _ : state) {
    long diffeo = 0;
    for (long k = 0; k <= 10; ++k)
      for (long r = 0; r < 28; ++r)
        if (family_diffeomorphic(make_family_point(7, 0, 0), make_family_point(7, k, r)))
          ++diffeo;
    benchmark::DoNotOptimize(diffeo);
  }
}
BENCHMARK(BM_FamilyScan);

}  // namespace

BENCHMARK_MAIN();

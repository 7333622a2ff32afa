#include "m7inv/tuple_io.hpp"

#include <stdexcept>
#include <string>

namespace m7inv {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& key, const std::string& what) {
  throw std::invalid_argument("key \"" + key + "\": " + what);
}

const json& require_key(const json& doc, const char* key) {
  if (!doc.is_object()) throw std::invalid_argument("expected a JSON object");
  const auto it = doc.find(key);
  if (it == doc.end()) throw std::invalid_argument("missing key \"" + std::string(key) + "\"");
  return *it;
}

mpz_class parse_integer(const json& v, const std::string& key) {
  if (!v.is_number_integer()) fail(key, "expected an integer");
  return mpz_class(static_cast<long>(v.get<std::int64_t>()));
}

std::vector<mpz_class> parse_integer_array(const json& v, const std::string& key) {
  if (!v.is_array()) fail(key, "expected an array of integers");
  std::vector<mpz_class> out;
  out.reserve(v.size());
  for (const auto& e : v) out.push_back(parse_integer(e, key));
  return out;
}

Rational parse_rational(const json& v, const std::string& key) {
  if (!v.is_string()) fail(key, "expected a rational string \"p/q\" or \"n\"");
  try {
    return Rational::parse(v.get<std::string>());
  } catch (const std::invalid_argument& e) {
    fail(key, e.what());
  }
}

Category parse_category(const json& v) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "smooth") return Category::smooth;
    if (s == "top") return Category::topological;
  }
  fail("category", "expected \"smooth\" or \"top\"");
}

const char* category_name(Category c) {
  return c == Category::smooth ? "smooth" : "top";
}

}  // namespace

PhiTuple parse_phi_tuple(const json& doc) {
  const mpz_class free_rank_z = parse_integer(require_key(doc, "free_rank"), "free_rank");
  if (free_rank_z < 0) fail("free_rank", "must be >= 0");
  const std::size_t free_rank = mpz_get_ui(free_rank_z.get_mpz_t());

  FinAbGroup torsion = FinAbGroup::trivial();
  try {
    torsion = FinAbGroup(0, parse_integer_array(require_key(doc, "torsion"), "torsion"));
  } catch (const std::invalid_argument& e) {
    fail("torsion", e.what());
  }
  const std::size_t k = torsion.torsion_generator_count();

  const mpz_class d = parse_integer(require_key(doc, "d"), "d");
  if (d < 0 || !mpz_divisible_ui_p(d.get_mpz_t(), 2)) fail("d", "must be even and >= 0");
  const Category cat = parse_category(require_key(doc, "category"));

  auto parse_element = [&](const char* key) {
    auto coords = parse_integer_array(require_key(doc, key), key);
    if (coords.size() != k) fail(key, "expected " + std::to_string(k) + " coordinates");
    return GroupElement::torsion(torsion, std::move(coords));
  };
  const GroupElement x_torsion = parse_element("x_torsion");
  const GroupElement p1_torsion = parse_element("p1_torsion");

  const json& bj = require_key(doc, "b");
  if (!bj.is_array() || bj.size() != k) fail("b", "expected a " + std::to_string(k) + "-row matrix");
  std::vector<std::vector<ResidueClass>> gram(k, std::vector<ResidueClass>(k));
  for (std::size_t i = 0; i < k; ++i) {
    if (!bj[i].is_array() || bj[i].size() != k)
      fail("b", "row " + std::to_string(i) + ": expected " + std::to_string(k) + " entries");
    for (std::size_t j = 0; j < k; ++j)
      gram[i][j] = reduce(parse_rational(bj[i][j], "b"), Rational(1));
  }
  std::optional<LinkingForm> b;
  try {
    b.emplace(torsion, std::move(gram));
  } catch (const std::invalid_argument& e) {
    fail("b", e.what());
  }

  const json& qj = require_key(doc, "q");
  if (!qj.is_array() || qj.size() != k) fail("q", "expected " + std::to_string(k) + " entries");
  std::vector<ResidueClass> qvals(k);
  for (std::size_t i = 0; i < k; ++i)
    qvals[i] = reduce(parse_rational(qj[i], "q"), Rational(2));
  std::optional<QuadraticRefinement> q;
  try {
    q.emplace(*b, std::move(qvals));
  } catch (const std::invalid_argument& e) {
    fail("q", e.what());
  }

  const ResidueClass gek =
      reduce(parse_rational(require_key(doc, "gek"), "gek"), Rational(gek_modulus(d, cat)));

  PhiTuple t{free_rank, torsion, d, cat, x_torsion, p1_torsion, *b, *q, gek};
  validate(t);
  return t;
}

json phi_tuple_to_json(const PhiTuple& t) {
  json doc;
  doc["free_rank"] = t.free_rank;
  json torsion = json::array();
  for (const auto& d : t.torsion.torsion_chain()) torsion.push_back(d.get_si());
  doc["torsion"] = torsion;
  doc["d"] = t.d.get_si();
  doc["category"] = category_name(t.category);
  auto coords_json = [](const GroupElement& e) {
    json a = json::array();
    for (const auto& c : e.torsion_coords()) a.push_back(c.get_si());
    return a;
  };
  doc["x_torsion"] = coords_json(t.x_torsion);
  doc["p1_torsion"] = coords_json(t.p1_torsion);
  const std::size_t k = t.torsion.torsion_generator_count();
  json b = json::array();
  for (std::size_t i = 0; i < k; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < k; ++j) row.push_back(t.b.gram(i, j).value().str());
    b.push_back(row);
  }
  doc["b"] = b;
  json q = json::array();
  for (std::size_t i = 0; i < k; ++i) q.push_back(t.q.generator_values()[i].value().str());
  doc["q"] = q;
  doc["gek"] = t.gek.value().str();
  return doc;
}

LinkingForm parse_linking_form(const json& doc) {
  FinAbGroup torsion = FinAbGroup::trivial();
  try {
    torsion = FinAbGroup(0, parse_integer_array(require_key(doc, "torsion"), "torsion"));
  } catch (const std::invalid_argument& e) {
    fail("torsion", e.what());
  }
  const std::size_t k = torsion.torsion_generator_count();
  const json& bj = require_key(doc, "b");
  if (!bj.is_array() || bj.size() != k) fail("b", "expected a " + std::to_string(k) + "-row matrix");
  std::vector<std::vector<ResidueClass>> gram(k, std::vector<ResidueClass>(k));
  for (std::size_t i = 0; i < k; ++i) {
    if (!bj[i].is_array() || bj[i].size() != k)
      fail("b", "row " + std::to_string(i) + ": expected " + std::to_string(k) + " entries");
    for (std::size_t j = 0; j < k; ++j)
      gram[i][j] = reduce(parse_rational(bj[i][j], "b"), Rational(1));
  }
  try {
    return LinkingForm(torsion, std::move(gram));
  } catch (const std::invalid_argument& e) {
    fail("b", e.what());
  }
}

json sinvariants_to_json(const SInvariants& s) {
  json doc;
  doc["d"] = s.d.get_si();
  doc["s1"] = {{"value", s.s1.value().str()}, {"modulus", s.s1.modulus().str()}};
  doc["s2"] = {{"value", s.s2.value().str()}, {"modulus", s.s2.modulus().str()}};
  doc["s3"] = {{"value", s.s3.value().str()}, {"modulus", s.s3.modulus().str()}};
  return doc;
}

json table_to_json(const GeneratorTable& t) {
  json doc;
  if (const auto* tc = std::get_if<TwoConnectedContext>(&t.context)) {
    doc["context"] = {{"type", "two-connected"}, {"d", tc->d.get_si()}, {"m", tc->m}};
  } else {
    doc["context"] = {{"type", "s2s5"}, {"s", std::get<S2S5Context>(t.context).s.get_si()}};
  }
  doc["category"] = category_name(t.category);
  doc["rows"] = t.row_labels;
  doc["cols"] = t.col_labels;
  json entries = json::array();
  for (std::size_t i = 0; i < t.entries.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < t.entries.cols(); ++j) row.push_back(t.entries(i, j).get_si());
    entries.push_back(row);
  }
  doc["entries"] = entries;
  return doc;
}

}  // namespace m7inv

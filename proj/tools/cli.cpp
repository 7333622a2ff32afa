#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <sstream>

#include "m7inv/tuple_io.hpp"

namespace m7inv::cli {

namespace {

using nlohmann::json;

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitError = 2;

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument(path + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

PhiTuple load_tuple(const std::string& path) {
  try {
    return parse_phi_tuple(load_json_file(path));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

Category parse_category_flag(const std::string& s) {
  if (s == "smooth") return Category::smooth;
  if (s == "top") return Category::topological;
  throw std::invalid_argument("--category: expected \"smooth\" or \"top\"");
}

std::string matrix_lines(const IntMatrix& m) {
  std::ostringstream os;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << "[";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << " ";
      os << m(i, j).get_str();
    }
    os << "]\n";
  }
  if (m.rows() == 0) os << "[]\n";
  return os.str();
}

json matrix_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).get_si());
    rows.push_back(row);
  }
  return rows;
}

std::string coords_text(const GroupElement& e) {
  std::ostringstream os;
  os << "(";
  const auto& c = e.torsion_coords();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) os << ", ";
    os << c[i].get_str();
  }
  os << ")";
  return os.str();
}

std::string residue_text(const ResidueClass& r) {
  return r.value().str() + " (mod " + r.modulus().str() + ")";
}

int cmd_tuple_compare(const std::string& path_a, const std::string& path_b, bool fixed,
                      bool as_json, std::ostream& out) {
  const PhiTuple a = load_tuple(path_a);
  const PhiTuple b = load_tuple(path_b);
  std::optional<GroupAuto> theta;
  std::optional<GroupElement> shift;
  if (fixed) {
    theta = phi_isomorphic_fixed(a, b);
  } else if (auto w = phi_isomorphic(a, b)) {
    theta = w->theta;
    shift = w->shift;
  }
  if (as_json) {
    json doc;
    doc["isomorphic"] = theta.has_value();
    if (theta) {
      doc["theta"] = matrix_json(theta->matrix());
      if (shift) {
        json s = json::array();
        for (const auto& c : shift->torsion_coords()) s.push_back(c.get_si());
        doc["shift"] = s;
      }
    }
    out << doc.dump(2) << "\n";
  } else if (theta) {
    out << "ISOMORPHIC\ntheta:\n" << matrix_lines(theta->matrix());
    if (shift) out << "shift: " << coords_text(*shift) << "\n";
  } else {
    out << "NOT ISOMORPHIC\n";
  }
  return theta ? kExitYes : kExitNo;
}

int cmd_family_invariants(long s, long k, long r, std::ostream& out) {
  const SInvariants inv = family_invariants(make_family_point(s, k, r));
  out << sinvariants_to_json(inv).dump(2) << "\n";
  return kExitYes;
}

int cmd_family_compare(long s, long k, long r, long s2, long k2,
                       long r2, bool as_json, std::ostream& out) {
  const FamilyComparison cmp =
      compare_family(make_family_point(s, k, r), make_family_point(s2, k2, r2));
  if (cmp.congruence_route != cmp.invariant_route)
    throw std::logic_error("decision routes disagree");
  if (as_json) {
    json doc;
    doc["diffeomorphic"] = cmp.verdict();
    doc["congruence_route"] = {{"holds", cmp.congruence_route},
                               {"quad_lhs", cmp.quad_lhs.get_si()},
                               {"quad_rhs", cmp.quad_rhs.get_si()},
                               {"quad_modulus", cmp.quad_modulus.get_si()},
                               {"k_modulus", cmp.k_modulus.get_si()}};
    doc["invariant_route"] = {{"holds", cmp.invariant_route},
                              {"a", sinvariants_to_json(cmp.inv_a)},
                              {"b", sinvariants_to_json(cmp.inv_b)}};
    out << doc.dump(2) << "\n";
  } else {
    out << (cmp.verdict() ? "DIFFEOMORPHIC" : "NOT DIFFEOMORPHIC") << "\n";
    out << "congruence route: " << (cmp.congruence_route ? "yes" : "no") << "  [quad "
        << cmp.quad_lhs.get_str() << " vs " << cmp.quad_rhs.get_str() << " (mod "
        << cmp.quad_modulus.get_str() << "), k mod " << cmp.k_modulus.get_str() << "]\n";
    out << "invariant route:  " << (cmp.invariant_route ? "yes" : "no") << "  [s1 "
        << residue_text(cmp.inv_a.s1) << " vs " << residue_text(cmp.inv_b.s1) << ", s2 "
        << residue_text(cmp.inv_a.s2) << " vs " << residue_text(cmp.inv_b.s2) << ", s3 "
        << residue_text(cmp.inv_a.s3) << " vs " << residue_text(cmp.inv_b.s3) << "]\n";
  }
  return cmp.verdict() ? kExitYes : kExitNo;
}

int cmd_family_inertia(long s, bool as_json, std::ostream& out) {
  const std::vector<long> group = inertia_group(s);
  if (as_json) {
    out << json(group).dump() << "\n";
  } else {
    for (std::size_t i = 0; i < group.size(); ++i) out << (i ? " " : "") << group[i];
    out << "\n";
  }
  return kExitYes;
}

int cmd_modulus_gek(long d, Category cat, bool as_json, std::ostream& out) {
  const mpz_class derived = gek_modulus(d, cat);
  // closed form: 8*gcd(28, d/2, (d^2+2d)/8) smoothly; the topological lattice
  // gcd collapses to 8 for every even d
  mpz_class closed;
  if (cat == Category::smooth) {
    const mpz_class dd(d);
    closed = 8 * gcd_nonneg({mpz_class(28), dd / 2, (dd * dd + 2 * dd) / 8});
  } else {
    closed = 8;
  }
  if (as_json) {
    json doc;
    doc["d"] = d;
    doc["category"] = cat == Category::smooth ? "smooth" : "top";
    doc["modulus"] = derived.get_si();
    doc["closed_form"] = closed.get_si();
    doc["match"] = (derived == closed);
    out << doc.dump(2) << "\n";
  } else {
    out << "derived modulus: " << derived.get_str() << "\n";
    out << "closed form:     " << closed.get_str() << "  ["
        << (derived == closed ? "match" : "MISMATCH") << "]\n";
  }
  return derived == closed ? kExitYes : kExitNo;
}

int cmd_refinements(const std::string& path, bool as_json, std::ostream& out) {
  LinkingForm b = [&] {
    try {
      return parse_linking_form(load_json_file(path));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(path + ": " + e.what());
    }
  }();
  const auto refinements = enumerate_refinements(b);
  if (as_json) {
    json doc = json::array();
    for (const auto& q : refinements) {
      json vals = json::array();
      for (const auto& v : q.generator_values()) vals.push_back(v.value().str());
      doc.push_back(vals);
    }
    out << doc.dump(2) << "\n";
  } else {
    out << refinements.size() << " refinements\n";
    for (const auto& q : refinements) {
      const auto& vals = q.generator_values();
      if (vals.empty()) {
        out << "-\n";
        continue;
      }
      for (std::size_t i = 0; i < vals.size(); ++i)
        out << (i ? " " : "") << vals[i].value().str();
      out << "\n";
    }
  }
  return kExitYes;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact-arithmetic classification invariants for closed spin 7-manifolds"};
  app.require_subcommand(1);
  std::function<int()> action;

  // tuple compare
  auto* tuple = app.add_subcommand("tuple", "Operations on invariant tuple documents");
  tuple->require_subcommand(1);
  auto* tcompare = tuple->add_subcommand("compare", "Decide isomorphism of two tuples");
  auto path_a = std::make_shared<std::string>();
  auto path_b = std::make_shared<std::string>();
  auto fixed = std::make_shared<bool>(false);
  auto tjson = std::make_shared<bool>(false);
  tcompare->add_option("a", *path_a, "first tuple document")->required();
  tcompare->add_option("b", *path_b, "second tuple document")->required();
  tcompare->add_flag("--fixed-structure", *fixed, "keep the d-structures fixed");
  tcompare->add_flag("--json", *tjson, "machine-readable output");
  tcompare->callback(
      [=, &out, &action] { action = [=, &out] { return cmd_tuple_compare(*path_a, *path_b, *fixed, *tjson, out); }; });

  // family <invariants|compare|inertia>
  auto* family = app.add_subcommand("family", "Invariants of the bundle # exotic-sphere family");
  family->require_subcommand(1);
  auto fs = std::make_shared<std::vector<long>>(std::vector<long>(6, 0));
  auto fjson = std::make_shared<bool>(false);

  auto* finv = family->add_subcommand("invariants", "s-invariants of one family member");
  finv->add_option("s", (*fs)[0])->required();
  finv->add_option("k", (*fs)[1])->required();
  finv->add_option("r", (*fs)[2])->required();
  finv->callback([=, &out, &action] {
    action = [=, &out] { return cmd_family_invariants((*fs)[0], (*fs)[1], (*fs)[2], out); };
  });

  auto* fcmp = family->add_subcommand("compare", "Decide diffeomorphism of two family members");
  fcmp->add_option("s", (*fs)[0])->required();
  fcmp->add_option("k", (*fs)[1])->required();
  fcmp->add_option("r", (*fs)[2])->required();
  fcmp->add_option("s2", (*fs)[3])->required();
  fcmp->add_option("k2", (*fs)[4])->required();
  fcmp->add_option("r2", (*fs)[5])->required();
  fcmp->add_flag("--json", *fjson, "machine-readable output");
  fcmp->callback([=, &out, &action] {
    action = [=, &out] {
      return cmd_family_compare((*fs)[0], (*fs)[1], (*fs)[2], (*fs)[3], (*fs)[4], (*fs)[5], *fjson,
                                out);
    };
  });

  auto* finertia = family->add_subcommand("inertia", "Inertia subgroup of Z/28 for parameter s");
  finertia->add_option("s", (*fs)[0])->required();
  finertia->add_flag("--json", *fjson, "machine-readable output");
  finertia->callback(
      [=, &out, &action] { action = [=, &out] { return cmd_family_inertia((*fs)[0], *fjson, out); }; });

  // modulus gek
  auto* modulus = app.add_subcommand("modulus", "Derived invariant moduli");
  modulus->require_subcommand(1);
  auto* mgek = modulus->add_subcommand("gek", "Generalized Eells-Kuiper modulus for divisibility d");
  auto md = std::make_shared<long>(0);
  auto mcat = std::make_shared<std::string>("smooth");
  auto mjson = std::make_shared<bool>(false);
  mgek->add_option("d", *md)->required();
  mgek->add_option("--category", *mcat, "smooth|top")->default_val("smooth");
  mgek->add_flag("--json", *mjson, "machine-readable output");
  mgek->callback([=, &out, &action] {
    action = [=, &out] { return cmd_modulus_gek(*md, parse_category_flag(*mcat), *mjson, out); };
  });

  // table export <two-connected|s2s5>
  auto* table = app.add_subcommand("table", "Characteristic-number generator tables");
  table->require_subcommand(1);
  auto* texport = table->add_subcommand("export", "Emit a generator table as JSON");
  texport->require_subcommand(1);
  auto tcat = std::make_shared<std::string>("smooth");
  auto targs = std::make_shared<std::vector<long>>(std::vector<long>(2, 0));

  auto* t2c = texport->add_subcommand("two-connected", "Basis for 2-connected targets");
  t2c->add_option("d", (*targs)[0])->required();
  t2c->add_option("m", (*targs)[1])->required();
  t2c->add_option("--category", *tcat, "smooth|top")->default_val("smooth");
  t2c->callback([=, &out, &action] {
    action = [=, &out] {
      if ((*targs)[1] < 1) throw std::invalid_argument("m must be >= 1");
      const GeneratorTable t = generator_table(
          TwoConnectedContext{mpz_class((*targs)[0]), static_cast<std::size_t>((*targs)[1])},
          parse_category_flag(*tcat));
      out << table_to_json(t).dump(2) << "\n";
      return kExitYes;
    };
  });

  auto* ts2s5 = texport->add_subcommand("s2s5", "Basis for the S2xS5 # S3xS4 cohomology type");
  ts2s5->add_option("s", (*targs)[0])->required();
  ts2s5->add_option("--category", *tcat, "smooth|top")->default_val("smooth");
  ts2s5->callback([=, &out, &action] {
    action = [=, &out] {
      const GeneratorTable t =
          generator_table(S2S5Context{mpz_class((*targs)[0])}, parse_category_flag(*tcat));
      out << table_to_json(t).dump(2) << "\n";
      return kExitYes;
    };
  });

  // refinements enumerate
  auto* refinements = app.add_subcommand("refinements", "Quadratic refinements of a linking form");
  refinements->require_subcommand(1);
  auto* renumerate = refinements->add_subcommand("enumerate", "All refinements of a linking form");
  auto rpath = std::make_shared<std::string>();
  auto rjson = std::make_shared<bool>(false);
  renumerate->add_option("form", *rpath, "linking form document")->required();
  renumerate->add_flag("--json", *rjson, "machine-readable output");
  renumerate->callback(
      [=, &out, &action] { action = [=, &out] { return cmd_refinements(*rpath, *rjson, out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitError;
  }

  try {
    return action ? action() : kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace m7inv::cli

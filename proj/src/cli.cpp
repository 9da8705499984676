#include "ua/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <functional>
#include <set>
#include <sstream>

#include "ua/center.hpp"
#include "ua/definability.hpp"
#include "ua/io.hpp"
#include "ua/pierce.hpp"
#include "ua/sheaf.hpp"

namespace ua::cli {

using json = nlohmann::ordered_json;

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names{"con",     "fc",      "center", "pierce", "hom",
                                              "certify", "defines", "sigma",  "sheaf"};
  return names;
}

json Report::to_json() const {
  json out;
  out["command"] = command;
  out["inputs"] = inputs;
  out["exit_status"] = exit_status;
  if (!error.empty()) out["error"] = error;
  json list = json::array();
  for (const auto& c : checks) {
    json r;
    r["name"] = c.name;
    r["passed"] = c.passed;
    if (!c.witness.empty()) r["witness"] = c.witness;
    list.push_back(std::move(r));
  }
  out["checks"] = std::move(list);
  out["data"] = data;
  return out;
}

std::string Report::to_text() const {
  std::ostringstream out;
  out << command;
  for (const auto& i : inputs) out << " " << i;
  out << "\n";
  for (const auto& [key, value] : data.items())
    out << "  " << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
  for (const auto& c : checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name;
    if (!c.witness.empty()) out << "  [" << c.witness << "]";
    out << "\n";
  }
  if (!error.empty()) out << "error: " << error << "\n";
  out << "exit " << exit_status << "\n";
  return out.str();
}

namespace {

void need_inputs(const AnalysisRequest& r, std::size_t n) {
  if (r.inputs.size() < n)
    throw PreconditionError("'" + r.command + "' needs " + std::to_string(n) + " input file(s)");
}

std::vector<Element> parse_elements(const std::string& text) {
  std::vector<Element> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(static_cast<Element>(v));
    } catch (const std::logic_error&) {
      throw ParseError("expected comma-separated elements, found '" + text + "'", 0, 0);
    }
  }
  return out;
}

ElementPair parse_pair(const std::string& text, const FiniteAlgebra& a) {
  const auto v = parse_elements(text);
  if (v.size() != 2) throw ParseError("expected a pair 'a,b', found '" + text + "'", 0, 0);
  if (v[0] >= a.size() || v[1] >= a.size())
    throw PreconditionError("pair " + text + " out of range");
  return {v[0], v[1]};
}

Tuple parse_tuple(const std::string& text, const FiniteAlgebra& a) {
  auto t = parse_elements(text);
  if (t.size() != a.tuple_length())
    throw PreconditionError("tuple '" + text + "' must have length " + std::to_string(a.tuple_length()));
  for (Element x : t)
    if (x >= a.size()) throw PreconditionError("tuple '" + text + "' out of range");
  return t;
}

Formula request_formula(const AnalysisRequest& r, const Signature& sig) {
  if (!r.formula.empty()) return parse_formula(r.formula, sig);
  if (!r.formula_file.empty()) return io::load_formula(r.formula_file, sig);
  throw PreconditionError("'" + r.command + "' needs --formula or --formula-file");
}

json blocks_json(const Partition& p) { return p.to_string(); }

json table_json(const std::vector<std::size_t>& t) { return t; }

template <class Items, class Fn>
std::string first_failure(const Items& items, Fn&& fn) {
  for (const auto& i : items) {
    auto w = fn(i);
    if (!w.empty()) return w;
  }
  return {};
}

void add_checks(Report& rep, const CheckReport& checks, const std::string& prefix = {}) {
  for (const auto& c : checks.records) rep.check(prefix + c.name, c.passed, c.witness);
}

CenterOptions center_options(const AnalysisRequest& r) { return CenterOptions{r.max_size}; }

json center_json(const CenterAlgebra& z) {
  json out;
  json tuples = json::array();
  for (std::size_t i = 0; i < z.size(); ++i) tuples.push_back(tuple_string(z.tuple(i)));
  out["elements"] = tuples;
  json edges = json::array();
  for (auto [lo, hi] : z.hasse_edges())
    edges.push_back(json::array({tuple_string(z.tuple(lo)), tuple_string(z.tuple(hi))}));
  out["hasse"] = edges;
  json atoms = json::array();
  for (std::size_t a : z.atoms()) atoms.push_back(tuple_string(z.tuple(a)));
  out["atoms"] = atoms;
  std::vector<std::size_t> meet, join, complement;
  for (std::size_t i = 0; i < z.size(); ++i) {
    complement.push_back(z.complement(i));
    for (std::size_t j = 0; j < z.size(); ++j) {
      meet.push_back(z.meet(i, j));
      join.push_back(z.join(i, j));
    }
  }
  out["meet"] = table_json(meet);
  out["join"] = table_json(join);
  out["complement"] = table_json(complement);
  json factors = json::array();
  for (const auto& e : z.elements())
    factors.push_back(json::array({e.theta0.to_string(), e.theta1.to_string()}));
  out["factor_pairs"] = factors;
  return out;
}

// ---------------------------------------------------------------------------

void run_con(const AnalysisRequest& r, Report& rep) {
  need_inputs(r, 1);
  const auto a = io::load_algebra(r.inputs[0]);
  const auto cons = all_congruences(a, r.max_size);
  json list = json::array();
  for (const auto& c : cons) list.push_back(blocks_json(c.partition()));
  rep.data["size"] = a.size();
  rep.data["count"] = cons.size();
  rep.data["congruences"] = list;
  json edges = json::array();
  for (std::size_t i = 0; i < cons.size(); ++i)
    for (std::size_t j = 0; j < cons.size(); ++j) {
      if (i == j || !cons[i].refines(cons[j])) continue;
      bool cover = true;
      for (std::size_t k = 0; k < cons.size() && cover; ++k)
        if (k != i && k != j && cons[i].refines(cons[k]) && cons[k].refines(cons[j])) cover = false;
      if (cover) edges.push_back(json::array({i, j}));
    }
  rep.data["hasse"] = edges;

  const std::set<Partition> found = [&] {
    std::set<Partition> s;
    for (const auto& c : cons) s.insert(c.partition());
    return s;
  }();
  rep.check("bounds", found.count(Partition::identity(a.size())) && found.count(Partition::universal(a.size())));
  std::string witness;
  for (const auto& x : cons)
    for (const auto& y : cons)
      if (witness.empty() && (!found.count(x.partition().meet(y.partition())) ||
                              !found.count(x.partition().join(y.partition()))))
        witness = x.to_string() + " and " + y.to_string();
  rep.check("closed-under-meet-and-join", witness.empty(), witness);
  if (r.oracle) {
    if (a.size() > 10) throw SizeCapExceeded("oracle enumeration limited to 10 elements");
    std::set<Partition> oracle;
    for (auto& p : all_partitions(a.size()))
      if (is_compatible(a, p)) oracle.insert(std::move(p));
    rep.check("oracle-agreement", oracle == found,
              std::to_string(oracle.size()) + " compatible partitions");
  }
}

void run_fc(const AnalysisRequest& r, Report& rep) {
  need_inputs(r, 1);
  const auto a = io::load_algebra(r.inputs[0]);
  const auto pairs = factor_pairs(a, r.max_size);
  json list = json::array();
  for (const auto& p : pairs) list.push_back(json::array({p.first.to_string(), p.second.to_string()}));
  rep.data["count"] = pairs.size();
  rep.data["factor_pairs"] = list;
  const auto delta = Congruence::identity(a), nabla = Congruence::universal(a);
  const bool trivial = std::any_of(pairs.begin(), pairs.end(), [&](const FactorPair& p) {
    return p.first == delta && p.second == nabla;
  });
  rep.check("trivial-pair-present", trivial);
  rep.check("factor-pairs-permute", true);
  for (const auto& p : pairs)
    if (!permutes(p.first, p.second)) {
      rep.checks.back() = {"factor-pairs-permute", false, p.first.to_string() + " | " + p.second.to_string()};
      break;
    }
}

void run_center(const AnalysisRequest& r, Report& rep) {
  need_inputs(r, 1);
  const auto a = io::load_algebra(r.inputs[0]);
  const CenterAlgebra z(a, center_options(r));
  rep.data["center"] = center_json(z);
  rep.data["connected"] = is_connected(a, center_options(r));
  add_checks(rep, check_boolean_laws(z), "boolean:");
  add_checks(rep, check_center_axioms(z));
  add_checks(rep, check_center_bijection(z, center_options(r)), "bijection:");
  if (r.oracle) {
    // Exhaustive centrality: e is central iff some factor pair has e ≡ 0, e ≡ 1.
    std::vector<Tuple> expected;
    const auto pairs = factor_pairs(a, r.max_size);
    for_each_tuple(a.size(), a.tuple_length(), [&](std::span<const Element> t) {
      for (const auto& p : pairs)
        if (p.first.related(t, a.zero()) && p.second.related(t, a.one())) {
          expected.emplace_back(t.begin(), t.end());
          return;
        }
    });
    std::vector<Tuple> got;
    for (const auto& e : z.elements()) got.push_back(e.tuple);
    rep.check("oracle-agreement", got == expected);
  }
}

void run_pierce(const AnalysisRequest& r, Report& rep) {
  need_inputs(r, 1);
  const auto a = io::load_algebra(r.inputs[0]);
  const auto sheaf = build_pierce(a, center_options(r));
  const auto& z = sheaf.base();
  rep.data["center"] = center_json(z);
  json sections = json::object();
  for (std::size_t e = 0; e < z.size(); ++e) {
    json s;
    s["size"] = sheaf.section(e).algebra.size();
    s["kernel"] = sheaf.section(e).canonical.kernel().to_string();
    sections[tuple_string(z.tuple(e))] = s;
  }
  rep.data["sections"] = sections;
  json restrictions = json::array();
  for (std::size_t d = 0; d < z.size(); ++d)
    for (std::size_t c = 0; c < z.size(); ++c)
      if (c != d && z.leq(c, d)) {
        json rj;
        rj["from"] = tuple_string(z.tuple(d));
        rj["to"] = tuple_string(z.tuple(c));
        rj["map"] = sheaf.restriction(d, c).map;
        restrictions.push_back(rj);
      }
  rep.data["restrictions"] = restrictions;

  add_checks(rep, check_presheaf_laws(sheaf));
  add_checks(rep, check_all_covers(sheaf));

  const auto dec = decompose(sheaf, center_options(r));
  json stalks = json::array();
  for (std::size_t i = 0; i < dec.stalks.size(); ++i) {
    const auto& s = dec.stalks[i];
    const std::string at = tuple_string(z.tuple(s.point.atom));
    json sj;
    sj["atom"] = at;
    sj["theta"] = s.theta.to_string();
    sj["size"] = s.fiber.algebra.size();
    sj["connected"] = static_cast<bool>(dec.stalk_connected[i]);
    stalks.push_back(sj);
    rep.check("stalk " + at + " collapse", s.collapse_verified);
    rep.check("stalk " + at + " squares", s.squares_commute);
    rep.check("stalk " + at + " section-iso", [&] {
      const auto& sec = sheaf.section(s.point.atom);
      return sec.canonical.kernel() == s.fiber.canonical.kernel();
    }());
  }
  rep.data["stalks"] = stalks;
  rep.data["canonical"] = dec.canonical;
  rep.check("decomposition-homomorphism", dec.homomorphism);
  rep.check("decomposition-injective", dec.injective);
  rep.check("decomposition-surjective", dec.surjective);
  rep.check("subdirect", dec.subdirect);
  rep.check("stalks-connected", !dec.csc_diagnostic, dec.csc_diagnostic.value_or(""));
  rep.check("global-sections", find_isomorphism(sheaf.global_sections().algebra, a).has_value());
}

void run_hom(const AnalysisRequest& r, Report& rep) {
  need_inputs(r, 1);
  const auto f = io::load_homomorphism(r.inputs[0]);
  rep.data["source"] = f.source.name();
  rep.data["target"] = f.target.name();
  rep.data["map"] = f.map;
  const auto hom = is_homomorphism(f.source, f.target, f.map);
  rep.check("homomorphism", hom.holds, hom.message);
  if (!hom.holds) return;
  const auto opts = center_options(r);
  const auto hc = hom_center_check(f, opts);
  rep.check("SC", hc.sc, hc.sc_witness ? "central " + tuple_string(*hc.sc_witness) + " maps to non-central " +
                                             tuple_string(f(*hc.sc_witness))
                                       : "");
  if (!hc.sc) return;
  rep.check("CSC", hc.csc,
            hc.csc_witness ? tuple_string(hc.csc_witness->first) + " and " + tuple_string(hc.csc_witness->second)
                           : "");
  rep.check("boolean-homomorphism", hc.boolean_hom, hc.boolean_witness);
  if (f.target.size() > r.max_iso_size)
    throw SizeCapExceeded("product stability needs an isomorphism search on " +
                          std::to_string(f.target.size()) + " elements (cap " +
                          std::to_string(r.max_iso_size) + ")");
  const CenterAlgebra za(f.source, opts);
  for (const auto& e : za.elements()) {
    const auto ps = check_product_stability(f, e.tuple, opts);
    rep.check("product-stability " + tuple_string(e.tuple), ps.stable,
              std::to_string(ps.left.target_quotient.algebra.size()) + " x " +
                  std::to_string(ps.right.target_quotient.algebra.size()));
  }
}

void run_certify(const AnalysisRequest& r, Report& rep) {
  need_inputs(r, 1);
  const auto a = io::load_algebra(r.inputs[0]);
  if (r.generators.empty()) throw PreconditionError("certify needs at least one --gen c,d");
  std::vector<ElementPair> gens;
  for (const auto& g : r.generators) gens.push_back(parse_pair(g, a));
  const auto result = principal_congruence(a, gens, true);
  const auto& theta_ = result.congruence;
  rep.data["congruence"] = theta_.to_string();

  std::vector<ElementPair> targets;
  for (const auto& p : r.pairs) targets.push_back(parse_pair(p, a));
  if (targets.empty())
    for (Element x = 0; x < a.size(); ++x)
      for (Element y = 0; y < a.size(); ++y)
        if (x != y && theta_.related(x, y)) targets.emplace_back(x, y);

  json certs = json::array();
  std::vector<PcfSchema> schemas;
  std::string failure;
  for (auto [x, y] : targets) {
    if (!theta_.related(x, y)) {
      rep.check("related " + std::to_string(x) + "," + std::to_string(y), false, "pair is not in the congruence");
      continue;
    }
    const auto cert = extract_certificate(a, *result.provenance, {x, y});
    const auto v = verify_certificate(a, cert);
    const auto schema = certificate_to_formula(a, cert);
    const bool replay = schema.holds_with_emitted(a, x, y, cert.c, cert.d) && schema.holds(a, x, y, cert.c, cert.d);
    json cj;
    cj["pair"] = json::array({x, y});
    cj["length"] = cert.length();
    std::vector<std::string> chain;
    std::stringstream lines(to_string(cert));
    std::string line;
    std::getline(lines, line);
    while (std::getline(lines, line)) chain.push_back(line.substr(line.find_first_not_of(' ')));
    cj["chain"] = chain;
    cj["formula"] = to_string(schema.formula());
    certs.push_back(cj);
    if (failure.empty() && !v.valid) failure = std::to_string(x) + "," + std::to_string(y) + ": " + v.message;
    if (failure.empty() && !replay) failure = std::to_string(x) + "," + std::to_string(y) + ": formula replay";
    schemas.push_back(schema);
  }
  rep.data["certificates"] = certs;
  rep.check("certificates-verify", failure.empty(), failure);

  // Soundness: no emitted schema relates a pair outside the congruence.
  Tuple c, d;
  for (auto [x, y] : gens) {
    c.push_back(x);
    d.push_back(y);
  }
  std::string unsound;
  for (const auto& s : schemas) {
    const auto rel = s.relation(a, c, d);
    for (Element x = 0; x < a.size() && unsound.empty(); ++x)
      for (Element y = 0; y < a.size() && unsound.empty(); ++y)
        if (rel[x * a.size() + y] && !theta_.related(x, y))
          unsound = std::to_string(x) + "," + std::to_string(y);
  }
  rep.check("formulas-sound", unsound.empty(), unsound);
}

void run_defines(const AnalysisRequest& r, Report& rep) {
  need_inputs(r, 2);
  if (r.inputs.size() % 2 != 0) throw PreconditionError("defines takes algebra files in pairs");
  std::vector<std::pair<FiniteAlgebra, FiniteAlgebra>> corpus;
  for (std::size_t i = 0; i < r.inputs.size(); i += 2)
    corpus.emplace_back(io::load_algebra(r.inputs[i]), io::load_algebra(r.inputs[i + 1]));
  const auto phi = request_formula(r, corpus.front().first.signature());
  rep.data["formula"] = to_string(phi);
  rep.data["existential"] = is_existential(phi);
  const auto mode = r.lex ? DefinabilityMode::Left : DefinabilityMode::Right;
  const auto res = defines_theta1(phi, corpus, mode);
  rep.data["quadruples"] = res.quadruples_checked;
  rep.check(r.lex ? "defines theta_{0,e}" : "defines theta_{1,e}", res.passed, res.message);
}

void run_sigma(const AnalysisRequest& r, Report& rep) {
  need_inputs(r, 1);
  const auto a = io::load_algebra(r.inputs[0]);
  const auto phi = request_formula(r, a.signature());
  rep.data["formula"] = to_string(phi);
  json sigma = json::array();
  for (const auto& s : sigma_set(phi, a.signature())) sigma.push_back(to_string(s));
  rep.data["sigma"] = sigma;
  const auto opts = center_options(r);
  if (!r.e.empty() || !r.f.empty()) {
    const auto e = parse_tuple(r.e, a), f = parse_tuple(r.f, a);
    const auto res = check_sigma(a, e, f, phi, opts);
    rep.data["holds"] = res.holds;
    if (res.semantic) rep.data["complementary"] = *res.semantic;
    rep.check("sigma", res.holds, res.first_failure);
    rep.check("center-agreement", res.agrees);
    return;
  }
  const auto res = check_connected_axioms(a, phi);
  json pairs = json::array();
  for (const auto& [e, f] : res.sigma_pairs) pairs.push_back(json::array({tuple_string(e), tuple_string(f)}));
  rep.data["sigma_pairs"] = pairs;
  const bool connected = is_connected(a, opts);
  rep.data["connected"] = connected;
  rep.check("connected-axioms", res.holds,
            !res.constants_distinct ? "0 = 1"
            : res.witness ? tuple_string(res.witness->first) + "," + tuple_string(res.witness->second)
                          : "");
  rep.check("agrees-with-is-connected", res.holds == connected);
}

void run_sheaf(const AnalysisRequest& r, Report& rep) {
  const auto opts = center_options(r);
  auto representation = [&](const AlgebraSheaf& x) {
    const auto res = check_representation(x, opts);
    add_checks(rep, res.checks);
    json alpha = json::array();
    for (const auto& row : res.alpha) {
      json jr = json::array();
      for (const auto& v : row) jr.push_back(v ? json(*v) : json(nullptr));
      alpha.push_back(jr);
    }
    rep.data["alpha"] = alpha;
    rep.data["representation"] = res.representation;
  };
  if (!r.pierce_algebra.empty()) {
    const auto a = io::load_algebra(r.pierce_algebra);
    representation(to_algebra_sheaf(build_pierce(a, opts)));
    return;
  }
  need_inputs(r, 1);
  const auto site = io::load_lattice(r.inputs[0]);
  rep.data["site"] = site.name();
  if (!r.constant_algebra.empty()) {
    const auto a = io::load_algebra(r.constant_algebra);
    representation(constant_sheaf(site, a));
    return;
  }
  const auto part = partition_object(site);
  add_checks(rep, check_sheaf(part), "sheaf:");
  json rows = json::array();
  std::string mismatch;
  for (std::size_t d = 0; d < site.size(); ++d) {
    const auto below = site.complemented_below(d);
    json row;
    row["element"] = d;
    row["sections"] = part.count(d);
    row["complemented_below"] = below;
    rows.push_back(row);
    if (part.count(d) != below.size() && mismatch.empty())
      mismatch = "d=" + std::to_string(d) + ": " + std::to_string(part.count(d)) + " vs " +
                 std::to_string(below.size());
  }
  rep.data["partition_object"] = rows;
  rep.check("partition-count", mismatch.empty(), mismatch);
}

}  // namespace

Report run(const AnalysisRequest& request) {
  Report rep;
  rep.command = request.command;
  rep.inputs = request.inputs;
  static const std::map<std::string, std::function<void(const AnalysisRequest&, Report&)>> table{
      {"con", run_con},         {"fc", run_fc},           {"center", run_center},
      {"pierce", run_pierce},   {"hom", run_hom},         {"certify", run_certify},
      {"defines", run_defines}, {"sigma", run_sigma},     {"sheaf", run_sheaf}};
  try {
    auto it = table.find(request.command);
    if (it == table.end()) throw ParseError("unknown command '" + request.command + "'", 0, 0);
    it->second(request, rep);
    rep.exit_status = rep.all_passed() ? kOk : kCheckFailed;
  } catch (const ParseError& e) {
    rep.error = e.what();
    rep.exit_status = kParseError;
  } catch (const CenterViolation& e) {
    rep.error = e.what();
    rep.check("center", false, e.what());
    rep.exit_status = kCheckFailed;
  } catch (const std::exception& e) {
    rep.error = e.what();
    rep.exit_status = kPreconditionFailed;
  }
  return rep;
}

}  // namespace ua::cli

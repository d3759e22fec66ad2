// artin: command-line front end for the Artin monoid library.
//
// Exit codes: 0 ok, 1 verification failed, 2 usage, 3 parse error,
// 4 I/O error, 5 cap exceeded, 6 domain error, 7 invariant violation.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "artin/cayley.hpp"
#include "artin/cosets.hpp"
#include "artin/deligne.hpp"
#include "artin/fixtures.hpp"
#include "artin/links.hpp"

using namespace artin;
using json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kParse = 3, kIo = 4, kCap = 5, kDomain = 6, kInvariant = 7 };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string graph_path;
  std::string graph_text;
  std::string fixture;
  std::string format = "text";
  std::string output;
};

DefiningGraph load_graph(const Config& c) {
  const int sources = !c.graph_path.empty() + !c.graph_text.empty() + !c.fixture.empty();
  if (sources != 1) throw CLI::ValidationError("graph", "give exactly one of --graph, --graph-text, --fixture");
  if (!c.fixture.empty()) return fixtures::by_name(c.fixture);
  if (!c.graph_text.empty()) return parse_graph(c.graph_text);
  std::ifstream in(c.graph_path);
  if (!in) throw IoError("cannot read graph file '" + c.graph_path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_graph(ss.str());
}

MonoidOptions options_from_env() {
  MonoidOptions opt;
  if (const char* cap = std::getenv("ARTIN_CACHE_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(cap, &end, 10);
    if (!end || *end != '\0' || end == cap) throw DomainError("ARTIN_CACHE_CAP must be a nonnegative integer");
    opt.cache_capacity = static_cast<std::size_t>(v);
  }
  return opt;
}

GenSet subset_or_all(const Monoid& m, const std::string& text) {
  return text.empty() ? m.graph().all() : m.graph().parse_subset(text);
}

json word_list(const Monoid& m, const std::vector<Element>& xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(m.format(x));
  return out;
}

json cube_json(const Monoid& m, const Cube& c) {
  return {{"base", format_coset(m, c.base)}, {"top", m.graph().format_subset(c.top)}, {"dim", c.dim()}};
}

json homology_json(const std::vector<HomologyGroup>& h) {
  json out = json::array();
  for (const auto& g : h) out.push_back(g.describe());
  return out;
}

// Text rendering: one "key: value" line per field; arrays of scalars inline,
// arrays of objects one per line.
std::string scalar(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "none";
  return v.dump();
}

void render_text(std::ostream& os, const json& j, const std::string& indent = "") {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const json& v = it.value();
    if (v.is_object()) {
      os << indent << it.key() << ":\n";
      render_text(os, v, indent + "  ");
    } else if (v.is_array()) {
      const bool flat = std::all_of(v.begin(), v.end(), [](const json& x) { return x.is_primitive(); });
      if (flat) {
        os << indent << it.key() << ": [";
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << scalar(v[i]);
        os << "]\n";
      } else {
        os << indent << it.key() << ": " << v.size() << " entries\n";
        for (const auto& x : v) {
          if (x.is_object()) {
            os << indent << "  -";
            for (auto f = x.begin(); f != x.end(); ++f)
              os << " " << f.key() << "=" << (f.value().is_primitive() ? scalar(f.value()) : f.value().dump());
            os << "\n";
          } else {
            os << indent << "  - " << x.dump() << "\n";
          }
        }
      }
    } else {
      os << indent << it.key() << ": " << scalar(v) << "\n";
    }
  }
}

void emit(const Config& c, const json& result) {
  std::ostringstream text;
  if (c.format == "json")
    text << result.dump(2) << "\n";
  else
    render_text(text, result);
  if (c.output.empty()) {
    std::cout << text.str();
    return;
  }
  std::ofstream out(c.output);
  if (!out) throw IoError("cannot write '" + c.output + "'");
  out << text.str();
  if (!out) throw IoError("write to '" + c.output + "' failed");
}

GeneratingSet parse_gens(const std::string& s) {
  if (s == "S") return GeneratingSet::S;
  if (s == "M") return GeneratingSet::M;
  throw CLI::ValidationError("--gens", "expected S or M");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Artin monoids: word problem, cosets, Deligne complexes, links and Cayley graphs"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");
  Config cfg;
  app.add_option("--graph", cfg.graph_path, "Graph description file");
  app.add_option("--graph-text", cfg.graph_text, "Inline graph description, e.g. \"gens s t; edge s t 3\"");
  app.add_option("--fixture", cfg.fixture, "Built-in graph: edge, figure1, triangle, example64, discrete");
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("-o,--output", cfg.output, "Write the report to a file instead of stdout");

  std::string a_text, b_text, subset_text, element_text;
  bool right = false, monoid_only = false;
  std::size_t bound = 32, radius = 1, depth = 0, n = 1, cap = 0;
  std::string gens_text = "M";

  auto* nf = app.add_subcommand("nf", "Canonical word, length, T_alpha and right-greedy normal form");
  nf->add_option("word", a_text, "Positive word, e.g. \"s t s\"")->required();

  auto* divides = app.add_subcommand("divides", "Does A divide B (left by default)");
  divides->add_option("a", a_text)->required();
  divides->add_option("b", b_text)->required();
  divides->add_flag("--right", right, "Right divisibility");

  auto* lcm = app.add_subcommand("lcm", "Least common multiple of A and B");
  lcm->add_option("a", a_text)->required();
  lcm->add_option("b", b_text)->required();
  lcm->add_flag("--right", right, "Least common right multiple");
  lcm->add_option("--bound", bound, "Length cap for the search")->capture_default_str();

  auto* gcd = app.add_subcommand("gcd", "Greatest common divisor of A and B");
  gcd->add_option("a", a_text)->required();
  gcd->add_option("b", b_text)->required();
  gcd->add_flag("--right", right, "Greatest common right divisor");

  auto* delta = app.add_subcommand("delta", "Garside element of a finite-type subset");
  delta->add_option("--subset", subset_text, "Subset like {s,t}; default all generators");

  auto* minimals = app.add_subcommand("minimals", "Minimal elements: nontrivial divisors of every Delta_T");

  auto* coset = app.add_subcommand("coset", "Monoid coset operations");
  coset->require_subcommand(1);
  auto* coset_min = coset->add_subcommand("min", "Minimal representative of [A]_T");
  coset_min->add_option("word", a_text)->required();
  coset_min->add_option("--subset", subset_text)->required();
  auto* coset_end = coset->add_subcommand("end", "End factor of A for T");
  coset_end->add_option("word", a_text)->required();
  coset_end->add_option("--subset", subset_text)->required();
  auto* coset_eq = coset->add_subcommand("eq", "Do A and B lie in the same T-coset");
  coset_eq->add_option("a", a_text)->required();
  coset_eq->add_option("b", b_text)->required();
  coset_eq->add_option("--subset", subset_text)->required();
  auto* coset_sub = coset->add_subcommand("subset", "Is coset C1 contained in C2; cosets as [w]_{s,t}");
  coset_sub->add_option("c1", a_text)->required();
  coset_sub->add_option("c2", b_text)->required();
  auto* coset_meet = coset->add_subcommand("meet", "Intersection of two cosets");
  coset_meet->add_option("c1", a_text)->required();
  coset_meet->add_option("c2", b_text)->required();
  coset_meet->add_option("--bound", bound, "Length cap for the lcm search")->capture_default_str();

  auto* build = app.add_subcommand("build", "Export the stage D_k^+ of the monoid Deligne complex");
  build->add_option("--radius", radius, "Stage k")->required();

  auto* homology_cmd = app.add_subcommand("homology", "Reduced homology of D_k^+; fails unless it vanishes");
  homology_cmd->add_option("--radius", radius, "Stage k")->required();

  auto* v42 = app.add_subcommand("verify-4-2", "Chamber intersections and collapse certificates for stages 1..k");
  v42->add_option("--radius", radius, "Largest stage k")->required();

  auto* collapse = app.add_subcommand("collapse", "Collapse certificate of the chamber boundary of an element");
  collapse->add_option("--element", element_text, "Nontrivial positive word")->required();

  auto* links = app.add_subcommand("check-links", "Link conditions at every vertex of D_k^+");
  links->add_option("--radius", radius, "Stage k")->required();
  links->add_option("--depth", depth, "Fraction length for group-side links; default the radius, at least the radius");

  auto* ball = app.add_subcommand("cayley-ball", "Ball in the Cayley graph of a finite-type group");
  ball->add_option("--gens", gens_text, "S or M")->capture_default_str();
  ball->add_option("--radius", radius)->required();
  ball->add_option("--subset", subset_text, "Finite-type support; default all generators");
  ball->add_flag("--monoid", monoid_only, "Keep positive vertices only");

  auto* dist = app.add_subcommand("distance", "Word distance between two group elements");
  dist->add_option("x", a_text, "Group word like \"s t^-1\"")->required();
  dist->add_option("y", b_text)->required();
  dist->add_option("--gens", gens_text, "S or M")->capture_default_str();
  dist->add_option("--cap", cap, "Search cap (default 8)");
  dist->add_option("--subset", subset_text);

  auto* v62 = app.add_subcommand("verify-6-2", "Monoid distances equal group distances within a radius");
  v62->add_option("--radius", radius)->required();
  v62->add_option("--subset", subset_text);

  auto* ex64 = app.add_subcommand("example-6-4", "Geodesic from s^n to t^n leaving the monoid");
  ex64->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  ex64->add_option("--cap", cap, "BFS cap (default 2n+2)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    const DefiningGraph graph = load_graph(cfg);
    const Monoid m(graph, options_from_env());
    json out;
    bool ok = true;

    if (*nf) {
      const Element a = m.parse(a_text);
      out["word"] = m.format(a);
      out["length"] = a.length();
      out["t_alpha"] = graph.format_subset(m.t_alpha(a));
      const GenSet sup = m.support(a);
      out["support"] = graph.format_subset(sup);
      if (is_finite_type(graph, sup))
        out["normal_form"] = word_list(m, m.right_greedy_normal_form(a, sup));
      else
        out["normal_form"] = nullptr;
    } else if (*divides) {
      const Element a = m.parse(a_text), b = m.parse(b_text);
      out["side"] = right ? "right" : "left";
      out["divides"] = right ? m.right_divides(a, b) : m.left_divides(a, b);
      auto q = right ? m.right_quotient(b, a) : m.left_quotient(a, b);
      out["quotient"] = q ? json(m.format(*q)) : json(nullptr);
    } else if (*lcm) {
      const Element a = m.parse(a_text), b = m.parse(b_text);
      auto l = right ? m.lcm_right(a, b, bound) : m.lcm_left(a, b, bound);
      out["side"] = right ? "right" : "left";
      out["status"] = l.status == LcmStatus::found ? "found" : l.status == LcmStatus::none ? "none" : "bound_exceeded";
      out["lcm"] = l ? json(m.format(*l.value)) : json(nullptr);
      if (l.status == LcmStatus::bound_exceeded) ok = false;
    } else if (*gcd) {
      const Element a = m.parse(a_text), b = m.parse(b_text);
      out["side"] = right ? "right" : "left";
      out["gcd"] = m.format(right ? m.gcd_right(a, b) : m.gcd_left(a, b));
    } else if (*delta) {
      const GenSet t = subset_or_all(m, subset_text);
      const Element d = m.garside_element(t);
      out["subset"] = graph.format_subset(t);
      out["delta"] = m.format(d);
      out["length"] = d.length();
    } else if (*minimals) {
      const auto mins = m.minimal_elements();
      out["count"] = mins.size();
      out["elements"] = word_list(m, mins);
    } else if (*coset_min || *coset_end) {
      const Element a = m.parse(a_text);
      const GenSet t = graph.parse_subset(subset_text);
      out["element"] = m.format(a);
      out["subset"] = graph.format_subset(t);
      out["min_rep"] = m.format(min_rep(m, a, t));
      out["end"] = m.format(end_factor(m, a, t));
      out["coset"] = format_coset(m, coset_of(m, a, t));
    } else if (*coset_eq) {
      const GenSet t = graph.parse_subset(subset_text);
      const Coset c1 = coset_of(m, m.parse(a_text), t), c2 = coset_of(m, m.parse(b_text), t);
      out["first"] = format_coset(m, c1);
      out["second"] = format_coset(m, c2);
      out["equal"] = c1 == c2;
    } else if (*coset_sub) {
      const Coset c1 = parse_coset(m, a_text), c2 = parse_coset(m, b_text);
      out["first"] = format_coset(m, c1);
      out["second"] = format_coset(m, c2);
      out["subset"] = coset_subset(m, c1, c2);
    } else if (*coset_meet) {
      const Coset c1 = parse_coset(m, a_text), c2 = parse_coset(m, b_text);
      auto meet = coset_intersection(m, c1, c2, bound);
      out["first"] = format_coset(m, c1);
      out["second"] = format_coset(m, c2);
      out["status"] = meet.status == MeetStatus::found ? "found" : meet.status == MeetStatus::empty ? "empty" : "unknown";
      out["meet"] = meet.coset ? json(format_coset(m, *meet.coset)) : json(nullptr);
      if (meet.status == MeetStatus::unknown) ok = false;
    } else if (*build) {
      const CubeComplex x = build_d_k(m, radius);
      out["radius"] = radius;
      out["dimension"] = x.dimension();
      out["f_vector"] = x.f_vector();
      json verts = json::array();
      for (const auto& v : x.vertices()) verts.push_back(format_coset(m, v));
      out["vertices"] = verts;
      json cubes = json::array();
      for (const auto& [c, birth] : x.cubes())
        if (!c.is_vertex()) {
          json j = cube_json(m, c);
          j["stage"] = birth;
          cubes.push_back(j);
        }
      out["cubes"] = cubes;
    } else if (*homology_cmd) {
      json stages = json::array();
      for (std::size_t k = 0; k <= radius; ++k) {
        const CubeComplex x = build_d_k(m, k);
        auto h = homology(x);
        const bool vanishes = homology_vanishes(h);
        ok = ok && vanishes;
        stages.push_back({{"k", k}, {"f_vector", x.f_vector()}, {"reduced_homology", homology_json(h)}, {"vanishes", vanishes}});
      }
      out["stages"] = stages;
      out["ok"] = ok;
    } else if (*v42) {
      if (radius == 0) throw DomainError("verify-4-2 needs --radius >= 1");
      json stages = json::array();
      for (std::size_t k = 1; k <= radius; ++k) {
        auto r = verify_prop_4_2(m, k);
        std::size_t steps = 0;
        json failures = json::array();
        for (const auto& e : r.entries)
          if (!e.ok()) failures.push_back({{"alpha", m.format(e.alpha)}, {"errors", e.errors}});
        for (const auto& e : r.entries) steps += retraction_certificate(m, e.alpha).steps.size();
        ok = ok && r.ok();
        stages.push_back({{"k", k}, {"chambers", r.entries.size()}, {"collapse_steps", steps}, {"ok", r.ok()}, {"failures", failures}});
      }
      out["stages"] = stages;
      out["ok"] = ok;
    } else if (*collapse) {
      const Element a = m.parse(element_text);
      auto cert = retraction_certificate(m, a);
      auto check = validate_certificate(m, cert);
      out["alpha"] = m.format(a);
      out["t_alpha"] = graph.format_subset(cert.t_alpha);
      out["start_cells"] = cert.start.size();
      out["apex"] = format_coset(m, cert.apex);
      json steps = json::array();
      for (const auto& st : cert.steps) {
        json face = cube_json(m, st.face), coface = cube_json(m, st.coface);
        steps.push_back({{"phase", st.phase},
                         {"face", face["base"].get<std::string>() + " < " + face["top"].get<std::string>()},
                         {"coface", coface["base"].get<std::string>() + " < " + coface["top"].get<std::string>()}});
      }
      out["steps"] = steps;
      out["valid"] = check.ok;
      out["errors"] = check.errors;
      ok = check.ok;
    } else if (*links) {
      if (links->count("--depth") == 0) depth = radius;
      auto r = verify_theorem_5_1(m, radius, depth);
      json entries = json::array();
      for (const auto& e : r.entries)
        entries.push_back({{"vertex", format_coset(m, e.vertex)},
                           {"upward_full", e.upward_full},
                           {"downward_flag", e.downward_flag},
                           {"downward_full", e.downward_full},
                           {"witnesses", e.witnesses},
                           {"ok", e.ok()}});
      json gromov = json::array();
      for (const auto& g : gromov_local_check(build_d_k(m, radius)))
        if (!g.missing.empty()) gromov.push_back(format_coset(m, g.vertex));
      out["radius"] = radius;
      out["depth"] = depth;
      out["vertices"] = entries;
      out["non_flag_links"] = gromov;
      out["ok"] = r.ok();
      ok = r.ok();
    } else if (*ball) {
      FiniteTypeGroup group(m, subset_or_all(m, subset_text));
      CayleyBall b = cayley_ball(group, parse_gens(gens_text), radius);
      if (monoid_only) b = monoid_ball(b);
      out["gens"] = to_string(b.gens);
      out["generators"] = word_list(m, b.generators);
      out["radius"] = radius;
      out["monoid_only"] = monoid_only;
      out["size"] = b.vertices.size();
      std::vector<std::size_t> order(b.vertices.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return std::tie(b.distance[i], b.vertices[i]) < std::tie(b.distance[j], b.vertices[j]);
      });
      json verts = json::array();
      for (auto i : order) verts.push_back({{"element", group.format(b.vertices[i])}, {"distance", b.distance[i]}});
      out["vertices"] = verts;
    } else if (*dist) {
      FiniteTypeGroup group(m, subset_or_all(m, subset_text));
      const GroupElement x = group.parse(a_text), y = group.parse(b_text);
      auto d = distance(group, x, y, parse_gens(gens_text), cap ? cap : 8);
      out["x"] = group.format(x);
      out["y"] = group.format(y);
      out["gens"] = gens_text;
      out["distance"] = d ? json(*d) : json(nullptr);
      if (!d) throw CapExceeded("distance exceeds the cap " + std::to_string(cap ? cap : 8));
    } else if (*v62) {
      FiniteTypeGroup group(m, subset_or_all(m, subset_text));
      auto r = verify_prop_6_2(group, radius);
      out["radius"] = r.radius;
      out["certifying_radius"] = r.certifying_radius;
      out["pairs"] = r.pairs;
      out["distance_mismatches"] = r.distance_mismatches;
      out["witness_failures"] = r.witness_failures;
      out["normal_forms_checked"] = r.normal_form_checked;
      out["normal_form_failures"] = r.normal_form_failures;
      out["errors"] = r.errors;
      out["ok"] = r.ok();
      ok = r.ok();
    } else if (*ex64) {
      FiniteTypeGroup group(m);
      auto r = quasiconvexity_example(group, n, cap ? cap : 2 * n + 2);
      out["n"] = r.n;
      out["cap"] = r.cap;
      out["d_sn_tn"] = r.d_sn_tn ? json(*r.d_sn_tn) : json(nullptr);
      out["positive_path_ok"] = r.positive_path_ok;
      out["gamma_prime_ok"] = r.gamma_prime_ok;
      out["gamma_prime_length"] = r.gamma_prime_length;
      out["d_to_monoid"] = r.d_to_monoid ? json(*r.d_to_monoid) : json(nullptr);
      ok = r.d_sn_tn == 2 * n && r.positive_path_ok && r.gamma_prime_ok && r.gamma_prime_length == 2 * n &&
           r.d_to_monoid == n;
      out["errors"] = r.errors;
      out["ok"] = ok;
    }
    emit(cfg, out);
    return ok ? kOk : kFailed;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kIo;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kCap;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kInvariant;
  } catch (const ArtinError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kDomain;
  }
}

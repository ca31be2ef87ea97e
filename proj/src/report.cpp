#include "eymkit/report.hpp"

#include <map>
#include <sstream>

#include "eymkit/linalg.hpp"

namespace eymkit {

namespace {

Json matrices(const std::vector<FieldMatrix>& ms) {
  Json a = Json::array();
  for (const auto& m : ms) a.push_back(to_string(m));
  return a;
}

Json strings(const std::vector<std::string>& xs) {
  Json a = Json::array();
  for (const auto& x : xs) a.push_back(x);
  return a;
}

std::string pair_label(std::size_t i, std::size_t j) {
  return "R(u" + std::to_string(i + 1) + ",u" + std::to_string(j + 1) + ")";
}

// Nonzero components only, keyed "R(u_i,u_j)" with i < j.
Json grid(const CurvatureGrid& R, const std::string& prefix = "R") {
  Json o = Json::object();
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j)
      if (!R[i][j].is_zero()) o[prefix + pair_label(i, j).substr(1)] = to_string(R[i][j]);
  return o;
}

Json holonomy_json(const CurvatureForm& f) {
  Json h;
  h["dim"] = f.holonomy.dim();
  h["basis"] = matrices(f.holonomy.basis);
  h["from_isotropy"] = f.holonomy.from_isotropy;
  h["sampled"] = f.holonomy.substituted;
  return h;
}

}  // namespace

Json to_json(const CaseReport& r) {
  Json j;
  j["id"] = r.id;
  Json checks = Json::array();
  for (const auto& c : r.validation.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"witness", c.witness}});
  j["validation"] = {{"symmetric", r.validation.symmetric}, {"checks", checks}};
  j["isotropy"] = matrices(r.rho);

  Json m;
  m["g"] = to_string(r.metric.g);
  m["params"] = strings(r.metric.params);
  m["det"] = r.metric.det.str();
  m["lorentz_condition"] = r.metric.lorentz_condition ? Json(*r.metric.lorentz_condition) : Json(nullptr);
  m["lorentz_samples"] = {{"inside", r.lorentz.inside}, {"outside", r.lorentz.outside}, {"mismatches", r.lorentz.mismatches}};
  m["catalog_letters"] = r.metric.golden_aligned;
  j["metric"] = m;

  j["levi_civita"] = {{"ricci", to_string(r.levi_civita.ricci)}, {"scalar", r.levi_civita.scalar.str()}};

  Json c;
  c["dim"] = r.family.dim();
  c["params"] = strings(r.family.params);
  c["maps"] = matrices(r.family.maps);
  c["equivariant"] = r.family_equivariant;
  c["g_skew"] = r.family_skew;
  c["curvature_depends_on_params"] = r.family_curvature.depends_on_params;
  c["holonomy"] = holonomy_json(r.family_curvature);
  c["yang_mills"] = r.family_second_eym;
  c["yang_mills_slot_form"] = r.family_second_eym_slot;
  c["preserves_canonical_star"] = r.family_canonical_star;
  c["catalog_family_yang_mills"] = r.golden_family_second_eym ? Json(*r.golden_family_second_eym) : Json(nullptr);
  j["connections"] = c;

  Json k;
  k["curvature"] = grid(r.canonical.R);
  k["holonomy"] = holonomy_json(r.canonical);
  Json coeffs = Json::array();
  for (const auto& a : r.canonical.coeffs) coeffs.push_back(to_string(a));
  k["coefficients"] = coeffs;
  Json hm = Json::object();
  for (std::size_t a = 0; a < r.canonical.holonomy.dim(); ++a) {
    int alpha = static_cast<int>(a) + 5;
    hm[std::to_string(alpha)] = r.holonomy_metric.at(alpha).str();
  }
  k["holonomy_metric"] = hm;
  k["stress_tensor"] = to_string(r.T);
  k["stress_trace"] = r.T_trace.str();
  j["canonical"] = k;

  Json v;
  v["outcome"] = r.verdict.solution ? "Solution" : "NoSolution";
  v["reason"] = r.verdict.solution ? Json(nullptr) : Json(to_string(r.verdict.reason));
  v["lambda"] = r.verdict.solution ? Json(r.verdict.lambda.str()) : Json(nullptr);
  v["kappa"] = r.verdict.solution ? Json(r.verdict.kappa.str()) : Json(nullptr);
  Json conds = Json::array();
  for (const auto& x : r.verdict.conditions) conds.push_back(x.str());
  v["conditions"] = conds;
  v["steps"] = strings(r.verdict.steps);
  j["first_eym"] = v;

  j["second_eym"] = {{"satisfied", r.second_eym},
                     {"slot_form", r.second_eym_slot},
                     {"star", grid(r.star, "*R")},
                     {"note", "densitized star: the constant volume factor is omitted"}};

  Json g = Json::array();
  for (const auto& x : r.golden) g.push_back({{"name", x.name}, {"status", to_string(x.status)}, {"detail", x.detail}});
  j["golden"] = g;
  j["golden_pass"] = r.golden_pass();
  return j;
}

std::string render_json(const Json& report) { return report.dump(2) + "\n"; }

namespace {

std::string yes(const Json& b) {
  if (b.is_null()) return "n/a";
  return b.get<bool>() ? "yes" : "no";
}

void list_matrices(std::ostringstream& os, const Json& arr, const std::string& name) {
  for (std::size_t i = 0; i < arr.size(); ++i)
    os << "- " << name << (i + 1) << ") = `" << arr[i].get<std::string>() << "`\n";
}

void list_object(std::ostringstream& os, const Json& obj) {
  if (obj.empty()) os << "- all components vanish\n";
  for (const auto& [k, val] : obj.items()) os << "- " << k << " = `" << val.get<std::string>() << "`\n";
}

std::string joined(const Json& arr, const std::string& sep) {
  std::string out;
  for (const auto& x : arr) out += (out.empty() ? "" : sep) + x.get<std::string>();
  return out;
}

}  // namespace

std::string render_markdown(const Json& j) {
  std::ostringstream os;
  os << "# " << j["id"].get<std::string>() << "\n\n";
  os << "Pair checks:";
  for (const auto& c : j["validation"]["checks"])
    os << " " << c["name"].get<std::string>() << (c["pass"].get<bool>() ? " ok" : " FAILED (" + c["witness"].get<std::string>() + ")") << ";";
  os << " symmetric: " << yes(j["validation"]["symmetric"]) << "\n\n";

  os << "## Isotropy representation\n\n";
  list_matrices(os, j["isotropy"], "rho(e");
  const Json& m = j["metric"];
  os << "\n## Invariant metric\n\n";
  os << "- g = `" << m["g"].get<std::string>() << "`\n";
  os << "- parameters: " << joined(m["params"], ", ") << "\n";
  os << "- det g = `" << m["det"].get<std::string>() << "`\n";
  if (!m["lorentz_condition"].is_null())
    os << "- Lorentzian where `" << m["lorentz_condition"].get<std::string>() << "`: " << m["lorentz_samples"]["inside"]
       << " samples inside, " << m["lorentz_samples"]["outside"] << " outside, " << m["lorentz_samples"]["mismatches"]
       << " mismatches\n";
  os << "\n## Levi-Civita connection\n\n";
  os << "- Ricci = `" << j["levi_civita"]["ricci"].get<std::string>() << "`\n";
  os << "- s = `" << j["levi_civita"]["scalar"].get<std::string>() << "`\n";

  const Json& c = j["connections"];
  os << "\n## Invariant metric connections\n\n";
  os << "- dimension " << c["dim"] << (c["params"].empty() ? "" : ", parameters " + joined(c["params"], ", ")) << "\n";
  list_matrices(os, c["maps"], "Lambda(u");
  os << "- equivariant: " << yes(c["equivariant"]) << "; g-skew: " << yes(c["g_skew"]) << "\n";
  os << "- curvature depends on the parameters: " << yes(c["curvature_depends_on_params"])
     << "; holonomy dimension " << c["holonomy"]["dim"] << (c["holonomy"]["sampled"].get<bool>() ? " (generic, sampled)" : "")
     << "\n";
  os << "- Yang-Mills with its own curvature: " << yes(c["yang_mills"]) << " (slot form: " << yes(c["yang_mills_slot_form"])
     << "); preserves the canonical *R: " << yes(c["preserves_canonical_star"]) << "\n";
  if (!c["catalog_family_yang_mills"].is_null())
    os << "- catalog family Yang-Mills with its own curvature: " << yes(c["catalog_family_yang_mills"]) << "\n";

  const Json& k = j["canonical"];
  os << "\n## Canonical connection\n\n";
  list_object(os, k["curvature"]);
  os << "- dim l = " << k["holonomy"]["dim"] << (k["holonomy"]["from_isotropy"].get<bool>() ? " (basis taken from rho)" : "") << "\n";
  list_matrices(os, k["holonomy"]["basis"], "b(");
  for (const auto& [alpha, val] : k["holonomy_metric"].items())
    os << "- g_" << alpha << alpha << " = " << val.get<std::string>() << "\n";
  os << "- T = `" << k["stress_tensor"].get<std::string>() << "`\n";
  os << "- g^ij T_ij = " << k["stress_trace"].get<std::string>() << "\n";

  const Json& v = j["first_eym"];
  os << "\n## First EYM equation\n\n";
  if (v["outcome"] == "Solution") {
    os << "Solution: lambda = `" << v["lambda"].get<std::string>() << "`, kappa = `" << v["kappa"].get<std::string>() << "`";
    if (!v["conditions"].empty()) os << ", assuming " << joined(v["conditions"], " != 0, ") << " != 0";
    os << "\n";
  } else {
    os << "No solution: " << v["reason"].get<std::string>() << "\n";
  }
  for (const auto& s : v["steps"]) os << "- " << s.get<std::string>() << "\n";

  const Json& y = j["second_eym"];
  os << "\n## Second EYM equation\n\n";
  os << "- canonical connection: " << (y["satisfied"].get<bool>() ? "satisfied" : "violated") << " (slot form: "
     << yes(y["slot_form"]) << ")\n";
  os << "- " << y["note"].get<std::string>() << "\n";
  list_object(os, y["star"]);

  if (j.contains("sample")) {
    const Json& s = j["sample"];
    os << "\n## Sample point\n\n- point:";
    for (const auto& [k2, val] : s["point"].items()) os << " " << k2 << "=" << val.get<std::string>();
    os << "\n- signature: " << s["signature"].get<std::string>() << "\n";
    if (s.contains("lambda"))
      os << "- lambda = " << s["lambda"].get<std::string>() << ", kappa = " << s["kappa"].get<std::string>() << "\n";
    if (s.contains("error")) os << "- " << s["error"].get<std::string>() << "\n";
  }

  os << "\n## Catalog comparison\n\n| check | status | detail |\n|---|---|---|\n";
  for (const auto& g : j["golden"])
    os << "| " << g["name"].get<std::string>() << " | " << g["status"].get<std::string>() << " | "
       << g["detail"].get<std::string>() << " |\n";
  os << "\nOverall: " << (j["golden_pass"].get<bool>() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

namespace {

std::string family_of(const std::string& id) { return id.substr(0, id.find('(')); }

std::string case_part(const std::string& id) {
  auto p = id.find('(');
  return p == std::string::npos ? id : id.substr(p);
}

}  // namespace

std::vector<Table> build_tables(const Catalog& cat, const std::vector<CaseReport>& reports) {
  std::map<std::string, const CaseReport*> by_id;
  for (const auto& r : reports) by_id[r.id] = &r;
  std::vector<Table> out;

  Table t1{"Table 1: Lorentzian reductive pairs", {"family", "cases", "Lorentz condition", "det g"}, {}, {}};
  for (const auto& row : cat.table1) {
    std::string det = "";
    for (const auto& r : reports)
      if (family_of(r.id) == row.family) {
        det = r.metric.det.str();
        break;
      }
    t1.rows.push_back({{row.family, row.cases, row.condition, det}, false});
  }
  out.push_back(std::move(t1));

  Table t2{"Table 2: symmetric pairs", {"family", "cases", "dim h", "Lorentz condition"}, {}, {}};
  std::vector<std::string> order;
  std::map<std::string, std::vector<const LiePair*>> fam;
  for (const auto& p : cat.pairs) {
    auto f = family_of(p.id());
    if (!fam.count(f)) order.push_back(f);
    fam[f].push_back(&p);
  }
  for (const auto& f : order) {
    std::string cases;
    for (const auto* p : fam[f]) cases += (cases.empty() ? "" : ", ") + case_part(p->id());
    const LiePair& first = *fam[f].front();
    t2.rows.push_back({{f, cases, std::to_string(first.dim_h()), first.golden.lorentz.value_or("")}, false});
  }
  out.push_back(std::move(t2));

  Table t3{"Table 3: solutions of the first EYM equation", {"case", "dim l", "lambda", "kappa", "conditions", "catalog"}, {}, {}};
  for (const auto& p : cat.pairs) {
    auto it = by_id.find(p.id());
    if (it == by_id.end()) continue;
    const CaseReport& r = *it->second;
    const bool golden_solution = p.golden.has_verdict && !p.golden.no_solution;
    if (!r.verdict.solution) {
      if (golden_solution) t3.diffs.push_back(r.id + ": catalog lists a solution, computed " + to_string(r.verdict));
      continue;
    }
    bool ok = golden_solution;
    std::string note = ok ? "PASS" : "not in catalog";
    if (!golden_solution) t3.diffs.push_back(r.id + ": computed " + to_string(r.verdict) + ", catalog has no solution");
    for (const char* name : {"lambda", "kappa", "holonomy_dim"}) {
      const GoldenCheck* g = r.golden_check(name);
      if (g && g->status == GoldenStatus::Fail) {
        ok = false;
        note = "FAIL";
        t3.diffs.push_back(r.id + ": " + name + " " + g->detail);
      }
    }
    std::string conds;
    for (const auto& x : r.verdict.conditions) conds += (conds.empty() ? "" : ", ") + x.str() + " != 0";
    t3.rows.push_back({{r.id, std::to_string(r.canonical.holonomy.dim()), r.verdict.lambda.str(), r.verdict.kappa.str(), conds, note}, !ok});
  }
  out.push_back(std::move(t3));

  Table t4{"Table 4: spaces", {"case", "space"}, {}, {}};
  for (const auto& p : cat.pairs)
    if (p.golden.space) t4.rows.push_back({{p.id(), *p.golden.space}, false});
  out.push_back(std::move(t4));
  return out;
}

std::string render_tables_markdown(const std::vector<Table>& tables) {
  std::ostringstream os;
  for (const auto& t : tables) {
    os << "## " << t.title << "\n\n|";
    for (const auto& h : t.header) os << " " << h << " |";
    os << "\n|";
    for (std::size_t i = 0; i < t.header.size(); ++i) os << "---|";
    os << "\n";
    for (const auto& r : t.rows) {
      os << "|";
      for (const auto& c : r.cells) os << " " << c << " |";
      os << "\n";
    }
    os << "\n" << t.rows.size() << " rows\n";
    for (const auto& d : t.diffs) os << "- mismatch: " << d << "\n";
    os << "\n";
  }
  return os.str();
}

Json tables_to_json(const std::vector<Table>& tables) {
  Json a = Json::array();
  for (const auto& t : tables) {
    Json rows = Json::array();
    for (const auto& r : t.rows) {
      Json row = Json::object();
      for (std::size_t i = 0; i < t.header.size(); ++i) row[t.header[i]] = r.cells[i];
      row["mismatch"] = r.mismatch;
      rows.push_back(row);
    }
    Json diffs = Json::array();
    for (const auto& d : t.diffs) diffs.push_back(d);
    a.push_back({{"title", t.title}, {"rows", rows}, {"mismatches", diffs}});
  }
  return a;
}

}  // namespace eymkit

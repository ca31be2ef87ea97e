#include "eymkit/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <thread>

#include "eymkit/error.hpp"
#include "eymkit/report.hpp"

namespace eymkit {

std::vector<CaseReport> run_cases(const std::vector<const LiePair*>& pairs, const HolonomyMetric& hm) {
  std::vector<CaseReport> out(pairs.size());
  const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  std::atomic<std::size_t> next{0};
  std::vector<std::future<void>> pool;
  for (std::size_t w = 0; w < std::min(workers, pairs.size()); ++w)
    pool.push_back(std::async(std::launch::async, [&] {
      for (std::size_t i; (i = next++) < pairs.size();) out[i] = run_case(*pairs[i], hm);
    }));
  for (auto& f : pool) f.get();  // rethrows the first failure
  return out;
}

Assignment parse_sample(std::string_view text) {
  Assignment at;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string item(text.substr(pos, end - pos));
    pos = end + 1;
    if (item.empty()) {
      if (end == text.size()) break;
      continue;
    }
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw Error(ErrorKind::BadArgument, "expected name=value in '" + item + "'");
    try {
      at[item.substr(0, eq)] = Rational::parse(item.substr(eq + 1));
    } catch (const Error&) {
      throw Error(ErrorKind::BadArgument, "not an exact rational in '" + item + "'");
    }
  }
  return at;
}

namespace {

struct Config {
  std::string command;
  std::string case_id;
  std::string filter = "*";
  std::string catalog;
  std::string format = "markdown";
  std::string g_holonomy;
  std::string sample;
  std::string out;
};

std::string cell(const std::string& s) { return s.empty() ? "-" : s; }

std::vector<const LiePair*> select(const Catalog& cat, const std::string& filter) {
  std::vector<const LiePair*> out;
  for (const auto& p : cat.pairs)
    if (glob_match(filter, p.id())) out.push_back(&p);
  return out;
}

Json sample_json(const CaseReport& r, const Assignment& at) {
  Json s;
  Json point = Json::object();
  for (const auto& [k, v] : at) point[k] = v.str();
  s["point"] = point;
  try {
    auto sig = lorentz_check(r.metric, at);
    s["signature"] = to_string(sig.kind);
  } catch (const Error& e) {
    s["signature"] = std::string(e.what());
  }
  if (r.verdict.solution) {
    try {
      s["lambda"] = r.verdict.lambda.eval(at).str();
      s["kappa"] = r.verdict.kappa.eval(at).str();
    } catch (const Error& e) {
      s["error"] = std::string(e.what());
    }
  }
  return s;
}

int cmd_list(const Catalog& cat, const Config& cfg, std::ostream& os) {
  auto sel = select(cat, cfg.filter);
  if (cfg.format == "json") {
    Json a = Json::array();
    for (const auto* p : sel)
      a.push_back({{"id", p->id()},
                   {"dim_h", p->dim_h()},
                   {"lorentz", p->golden.lorentz ? Json(*p->golden.lorentz) : Json(nullptr)},
                   {"space", p->golden.space ? Json(*p->golden.space) : Json(nullptr)}});
    os << a.dump(2) << "\n";
    return kOk;
  }
  os << "| case | dim h | Lorentz condition | space |\n|---|---|---|---|\n";
  for (const auto* p : sel)
    os << "| " << p->id() << " | " << p->dim_h() << " | " << cell(p->golden.lorentz.value_or("")) << " | "
       << cell(p->golden.space.value_or("")) << " |\n";
  os << "\n" << sel.size() << " cases\n";
  return kOk;
}

int cmd_validate(const Catalog& cat, const Config& cfg, const HolonomyMetric& hm, std::ostream& os) {
  auto sel = select(cat, cfg.filter);
  struct Outcome {
    std::vector<ValidationCheck> failed;
  };
  std::vector<Outcome> res(sel.size());
  std::vector<std::future<void>> jobs;
  for (std::size_t i = 0; i < sel.size(); ++i)
    jobs.push_back(std::async(std::launch::async, [&, i] {
      const LiePair& p = *sel[i];
      std::vector<ValidationCheck> all = validate_pair(p).checks;
      try {
        CaseReport r = run_case(p, hm);
        auto inv = invariant_suite(p, r);
        all.insert(all.end(), inv.begin(), inv.end());
      } catch (const Error& e) {
        all.push_back({"pipeline", false, e.what()});
      }
      for (auto& c : all)
        if (!c.pass) res[i].failed.push_back(std::move(c));
    }));
  for (auto& j : jobs) j.get();
  std::size_t passed = 0;
  Json a = Json::array();
  for (std::size_t i = 0; i < sel.size(); ++i) {
    const bool ok = res[i].failed.empty();
    passed += ok;
    Json f = Json::array();
    for (const auto& c : res[i].failed) f.push_back({{"check", c.name}, {"witness", c.witness}});
    a.push_back({{"id", sel[i]->id()}, {"pass", ok}, {"failures", f}});
    if (cfg.format != "json") {
      os << (ok ? "ok   " : "FAIL ") << sel[i]->id() << "\n";
      for (const auto& c : res[i].failed) os << "     " << c.name << ": " << c.witness << "\n";
    }
  }
  if (cfg.format == "json")
    os << Json{{"cases", a}, {"passed", passed}, {"total", sel.size()}}.dump(2) << "\n";
  else
    os << "\n" << passed << "/" << sel.size() << " pass\n";
  return passed == sel.size() ? kOk : kMismatch;
}

int cmd_report(const Catalog& cat, const Config& cfg, const HolonomyMetric& hm, std::ostream& os, std::ostream& err) {
  const LiePair* p = cat.find(cfg.case_id);
  if (!p) {
    err << "unknown case '" << cfg.case_id << "'\n";
    return kUnknownCase;
  }
  CaseReport r = run_case(*p, hm);
  Json j = to_json(r);
  if (!cfg.sample.empty()) j["sample"] = sample_json(r, parse_sample(cfg.sample));
  os << (cfg.format == "json" ? render_json(j) : render_markdown(j));
  return r.golden_pass() ? kOk : kMismatch;
}

int cmd_solve(const Catalog& cat, const Config& cfg, const HolonomyMetric& hm, std::ostream& os, std::ostream& err) {
  const LiePair* p = cat.find(cfg.case_id);
  if (!p) {
    err << "unknown case '" << cfg.case_id << "'\n";
    return kUnknownCase;
  }
  CaseReport r = run_case(*p, hm);
  Json j = to_json(r);
  Json v = j["first_eym"];
  v["id"] = r.id;
  v["second_eym"] = r.second_eym;
  if (!cfg.sample.empty()) v["sample"] = sample_json(r, parse_sample(cfg.sample));
  const GoldenCheck* g = r.golden_check("verdict");
  const bool ok = !g || g->status != GoldenStatus::Fail;
  v["catalog"] = g ? to_string(g->status) : "n/a";
  if (cfg.format == "json") {
    os << v.dump(2) << "\n";
  } else {
    os << r.id << ": " << to_string(r.verdict) << "\n";
    for (const auto& c : r.verdict.conditions) os << "  requires " << c.str() << " != 0\n";
    if (v.contains("sample")) {
      const Json& s = v["sample"];
      os << "  at sample: signature " << s["signature"].get<std::string>();
      if (s.contains("lambda"))
        os << ", lambda = " << s["lambda"].get<std::string>() << ", kappa = " << s["kappa"].get<std::string>();
      os << "\n";
    }
    os << "  second EYM (canonical connection): " << (r.second_eym ? "satisfied" : "violated") << "\n";
    os << "  catalog: " << v["catalog"].get<std::string>() << "\n";
  }
  return ok ? kOk : kMismatch;
}

int cmd_tables(const Catalog& cat, const Config& cfg, const HolonomyMetric& hm, std::ostream& os) {
  auto sel = select(cat, cfg.filter);
  auto reports = run_cases(sel, hm);
  auto tables = build_tables(cat, reports);
  if (cfg.format == "json")
    os << tables_to_json(tables).dump(2) << "\n";
  else
    os << render_tables_markdown(tables);
  const bool ok = std::all_of(tables.begin(), tables.end(), [](const Table& t) { return t.diffs.empty(); });
  return ok ? kOk : kMismatch;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Invariant Einstein-Yang-Mills solutions on four-dimensional symmetric spaces"};
  app.require_subcommand(1);
  app.add_option("--catalog", cfg.catalog, "catalog file replacing the built-in one");
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"markdown", "json"}));
  app.add_option("--g-holonomy", cfg.g_holonomy, "diagonal holonomy metric overrides, e.g. 5=2,6=3");
  app.add_option("--sample", cfg.sample, "parameter point, e.g. a=3,b=5");
  app.add_option("--out", cfg.out, "write output to this file");
  app.add_option("--filter", cfg.filter, "glob over case labels");
  auto* list = app.add_subcommand("list", "list catalog cases");
  auto* validate = app.add_subcommand("validate", "check every pair and the pipeline invariants");
  auto* report = app.add_subcommand("report", "full report for one case");
  report->add_option("case", cfg.case_id)->required();
  auto* tables = app.add_subcommand("tables", "reproduce the classification tables");
  auto* solve = app.add_subcommand("solve", "first EYM verdict for one case");
  solve->add_option("case", cfg.case_id)->required();
  for (auto* sub : {list, validate, report, tables, solve}) {
    sub->fallthrough();
    sub->callback([&cfg, sub] { cfg.command = sub->get_name(); });
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kBadArguments;
  }

  HolonomyMetric hm;
  try {
    if (!cfg.g_holonomy.empty()) hm = parse_holonomy_metric(cfg.g_holonomy);
    if (!cfg.sample.empty()) parse_sample(cfg.sample);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kBadArguments;
  }

  std::optional<Catalog> loaded;
  const Catalog* cat = nullptr;
  try {
    if (cfg.catalog.empty()) {
      cat = &builtin_catalog();
    } else {
      loaded = load_catalog_file(cfg.catalog);
      cat = &*loaded;
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kCatalogError;
  }

  std::ostringstream buf;
  int code = kOk;
  try {
    if (cfg.command == "list") code = cmd_list(*cat, cfg, buf);
    else if (cfg.command == "validate") code = cmd_validate(*cat, cfg, hm, buf);
    else if (cfg.command == "report") code = cmd_report(*cat, cfg, hm, buf, err);
    else if (cfg.command == "solve") code = cmd_solve(*cat, cfg, hm, buf, err);
    else code = cmd_tables(*cat, cfg, hm, buf);
  } catch (const Error& e) {
    err << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::CatalogParse: return kCatalogError;
      case ErrorKind::UnknownCase: return kUnknownCase;
      case ErrorKind::BadArgument: return kBadArguments;
      default: return kMismatch;
    }
  }
  if (cfg.out.empty()) {
    out << buf.str();
  } else {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) {
      err << "cannot write " << cfg.out << "\n";
      return kBadArguments;
    }
    f << buf.str();
  }
  return code;
}

}  // namespace eymkit

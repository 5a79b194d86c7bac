#include "glueback/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "glueback/catalog.hpp"
#include "glueback/glue_back.hpp"
#include "glueback/homology.hpp"
#include "glueback/orbit_format.hpp"
#include "glueback/surgery.hpp"
#include "glueback/verify.hpp"

namespace glueback::cli {

namespace {

using Json = nlohmann::ordered_json;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Context {
  std::ostream& out;
  std::ostream& err;
  bool json = false;
};

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream s;
    s << std::cin.rdbuf();
    return s.str();
  }
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

OrbitFile load(const std::string& path) {
  try {
    return parse_orbit_file(read_file(path));
  } catch (const ParseError& e) {
    throw InputError(path + ": " + e.what());
  }
}

Coloring coloring_of(const OrbitFile& f, const std::string& path) {
  if (!f.coloring && f.q.facet_count() == 0) return Coloring{f.rank, {}};
  if (!f.coloring) throw InputError(path + ": no color lines");
  return *f.coloring;
}

Cocycle cocycle_of(const OrbitFile& f, const std::string& bundle_path) {
  if (!bundle_path.empty()) {
    try {
      return parse_bundle_file(read_file(bundle_path), f.q, f.rank);
    } catch (const ParseError& e) {
      throw InputError(bundle_path + ": " + e.what());
    }
  }
  return f.cocycle ? *f.cocycle : zero_cocycle(f.rank);
}

// Validates everything build() needs; input errors on failure.
BuiltManifold build_checked(const OrbitFile& f, const std::string& path, const std::string& bundle_path) {
  const auto q_report = validate(f.q);
  if (!q_report.ok()) throw InputError(path + ": complex is not valid\n" + q_report.to_string());
  const Coloring lambda = coloring_of(f, path);
  const auto c_report = validate_coloring(f.q, lambda);
  if (!c_report.ok()) throw InputError(path + ": coloring is not valid\n" + c_report.to_string());
  const Cocycle xi = cocycle_of(f, bundle_path);
  const auto x_report = validate_cocycle(f.q, xi);
  if (!x_report.ok()) throw InputError(path + ": cocycle is not valid\n" + x_report.to_string());
  return build(f.q, lambda, xi);
}

std::string join(const std::vector<std::size_t>& v, const char* sep = ",") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
  return s;
}

std::string torsion_text(const std::vector<BigInt>& t) {
  std::string s = "[";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + t[i].str();
  return s + "]";
}

void print_table(std::ostream& out, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows) {
    if (width.size() < r.size()) width.resize(r.size(), 0);
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t i = 0; i < r.size(); ++i) {
      line += r[i];
      if (i + 1 < r.size()) line += std::string(width[i] - r[i].size() + 2, ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << "\n";
  }
}

Json report_json(const ValidationReport& r) {
  Json j = Json::array();
  for (const auto& v : r.violations) j.push_back({{"kind", to_string(v.kind)}, {"where", v.where}, {"message", v.message}});
  return j;
}

void emit_json(Context& ctx, const std::string& verb, Json body) {
  Json j;
  j["schema"] = kJsonSchema;
  j["verb"] = verb;
  for (auto& [k, v] : body.items()) j[k] = v;
  ctx.out << j.dump(2) << "\n";
}

int cmd_validate(Context& ctx, const std::string& path) {
  const OrbitFile f = load(path);
  const auto qr = validate(f.q);
  std::optional<ValidationReport> cr, xr;
  if (f.coloring && qr.ok()) cr = validate_coloring(f.q, *f.coloring);
  if (f.cocycle && qr.ok()) xr = validate_cocycle(f.q, *f.cocycle);
  const bool ok = qr.ok() && (!cr || cr->ok()) && (!xr || xr->ok());
  if (ctx.json) {
    Json j{{"ok", ok}, {"complex", report_json(qr)}, {"warnings", qr.warnings}};
    if (cr) j["coloring"] = report_json(*cr);
    if (xr) j["cocycle"] = report_json(*xr);
    emit_json(ctx, "validate", j);
  } else {
    ctx.out << "complex: " << (qr.ok() ? "ok" : "invalid") << "\n";
    if (!qr.ok() || !qr.warnings.empty()) ctx.out << qr.to_string();
    if (cr) ctx.out << "coloring: " << (cr->ok() ? "ok" : "invalid") << "\n" << (cr->ok() ? "" : cr->to_string());
    if (xr) ctx.out << "cocycle: " << (xr->ok() ? "ok" : "invalid") << "\n" << (xr->ok() ? "" : xr->to_string());
  }
  return ok ? kOk : kCheckFailed;
}

int cmd_build(Context& ctx, const std::string& path, const std::string& bundle, const std::string& cells_out) {
  const OrbitFile f = load(path);
  const BuiltManifold m = build_checked(f, path, bundle);
  std::vector<std::size_t> counts;
  for (int d = 0; d <= m.dim(); ++d) counts.push_back(m.cells(d).size());
  const long chi = euler_characteristic(m.complex());
  const int comps = components(m);
  if (!cells_out.empty()) {
    const std::string dump = emit_cells(m);
    if (cells_out == "-") {
      ctx.out << dump;
      return kOk;
    }
    std::ofstream o(cells_out);
    if (!o) throw InputError("cannot write " + cells_out);
    o << dump;
  }
  if (ctx.json) {
    emit_json(ctx, "build", {{"dim", m.dim()}, {"rank", m.rank()}, {"cells", counts}, {"euler", chi}, {"components", comps}});
  } else {
    ctx.out << "dim " << m.dim() << " rank " << m.rank() << "\n";
    ctx.out << "cells " << join(counts, " ") << "\n";
    ctx.out << "euler " << chi << "\n";
    ctx.out << "components " << comps << "\n";
  }
  return kOk;
}

int cmd_homology(Context& ctx, const std::string& path, const std::string& bundle, const std::string& coeff) {
  const OrbitFile f = load(path);
  const BuiltManifold m = build_checked(f, path, bundle);
  const DeltaComplex& k = m.complex();
  std::vector<std::size_t> betti;
  std::vector<std::vector<BigInt>> torsion(static_cast<std::size_t>(k.dim() + 1));
  std::string label;
  if (coeff == "gf2") {
    betti = gf2_betti(k);
    label = "GF(2)";
  } else if (coeff == "q") {
    betti = rational_betti(k);
    label = "Q";
  } else {
    const IntegralHomology h = integral_homology(k);
    torsion = h.torsion;
    if (coeff == "z") {
      betti = h.free_rank;
      label = "Z (free rank and torsion)";
    } else {
      betti = gf2_betti_from_integral(h);
      label = "GF(2) betti, Z torsion";
    }
  }
  if (ctx.json) {
    Json rows = Json::array();
    for (std::size_t d = 0; d < betti.size(); ++d) {
      Json t = Json::array();
      for (const auto& x : torsion[d]) t.push_back(x.str());
      rows.push_back({{"degree", d}, {"betti", betti[d]}, {"torsion", t}});
    }
    emit_json(ctx, "homology", {{"coefficients", coeff.empty() ? "mixed" : coeff}, {"degrees", rows}});
  } else {
    ctx.out << "# " << label << "\n";
    for (std::size_t d = 0; d < betti.size(); ++d) {
      ctx.out << d << ": betti " << betti[d] << " torsion " << torsion_text(torsion[d]) << "\n";
    }
  }
  return kOk;
}

int cmd_fixset(Context& ctx, const std::string& path, const std::string& bundle, const std::string& element) {
  const OrbitFile f = load(path);
  const BuiltManifold m = build_checked(f, path, bundle);
  GroupElement g;
  try {
    g = GroupElement::parse(element, m.rank());
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("--element: ") + e.what());
  }
  const std::vector<GroupElement> gens{g};
  const DeltaComplex fix = restrict(m.complex(), fixed_subcomplex(m, Subgroup::span(gens, m.rank())));
  std::vector<std::size_t> counts;
  for (int d = 0; d <= fix.dim(); ++d) counts.push_back(fix.count(d));
  const auto betti = fix.dim() >= 0 ? gf2_betti(fix) : std::vector<std::size_t>{};
  const long chi = euler_characteristic(fix);
  const int comps = fix.dim() >= 0 ? component_count(fix) : 0;
  if (ctx.json) {
    emit_json(ctx, "fixset", {{"element", g.to_string()}, {"dim", fix.dim()}, {"cells", counts}, {"euler", chi},
                              {"components", comps}, {"gf2_betti", betti}});
  } else {
    ctx.out << "element " << g.to_string() << "\n";
    ctx.out << "dim " << fix.dim() << "\n";
    ctx.out << "cells " << join(counts, " ") << "\n";
    ctx.out << "euler " << chi << "\n";
    ctx.out << "components " << comps << "\n";
    ctx.out << "gf2 betti " << join(betti, " ") << "\n";
  }
  return kOk;
}

int cmd_verify(Context& ctx, const std::string& path, const std::string& bundle, const SuiteSelection& which) {
  const OrbitFile f = load(path);
  build_checked(f, path, bundle);
  const auto reports = run_suite(f.q, coloring_of(f, path), cocycle_of(f, bundle), which);
  const bool failed = std::any_of(reports.begin(), reports.end(), [](const TheoremReport& r) { return r.failed(); });
  if (ctx.json) {
    Json rows = Json::array();
    for (const auto& r : reports) {
      rows.push_back({{"theorem", r.theorem}, {"inputs", r.inputs}, {"left", r.left}, {"relation", r.relation},
                      {"right", r.right}, {"outcome", to_string(r.outcome)}, {"detail", r.detail}});
    }
    emit_json(ctx, "verify", {{"ok", !failed}, {"reports", rows}});
  } else {
    std::vector<std::vector<std::string>> rows{{"theorem", "inputs", "left", "rel", "right", "outcome", "detail"}};
    for (const auto& r : reports) rows.push_back({r.theorem, r.inputs, r.left, r.relation, r.right, to_string(r.outcome), r.detail});
    print_table(ctx.out, rows);
  }
  return failed ? kCheckFailed : kOk;
}

Excision excision_of(const StratifiedComplex& q, const std::string& spec, const char* flag) {
  const auto at = spec.find('@');
  const std::string kind = spec.substr(0, at);
  int value = -1;
  if (at != std::string::npos) {
    try {
      std::size_t used = 0;
      value = std::stoi(spec.substr(at + 1), &used);
      if (used != spec.size() - at - 1) value = -1;
    } catch (const std::exception&) {
      value = -1;
    }
  }
  if (value < 0 || (kind != "ball" && kind != "collar")) {
    throw InputError(std::string(flag) + ": expected ball@<vertex> or collar@<component>, got '" + spec + "'");
  }
  return kind == "ball" ? interior_ball(q, value) : boundary_collar(q, static_cast<std::size_t>(value));
}

int cmd_cutpaste(Context& ctx, const std::string& p1, const std::string& p2, const std::string& k1s,
                 const std::string& k2s, const std::string& match_path) {
  const OrbitFile f1 = load(p1), f2 = load(p2);
  build_checked(f1, p1, "");
  build_checked(f2, p2, "");
  std::optional<Matching> match;
  if (!match_path.empty()) {
    try {
      const MatchSpec spec = parse_match_file(read_file(match_path), f1.rank);
      Matching m;
      for (const auto& [a, b] : spec.pairs) m.vertex_map[a] = b;
      m.sigma = spec.sigma;
      match = m;
    } catch (const ParseError& e) {
      throw InputError(match_path + ": " + e.what());
    }
  }
  SurgeryResult r;
  try {
    const Excision k1 = excision_of(f1.q, k1s, "--k1");
    const Excision k2 = excision_of(f2.q, k2s, "--k2");
    r = cut_and_paste(f1.q, coloring_of(f1, p1), k1, f2.q, coloring_of(f2, p2), k2, match, f1.cocycle, f2.cocycle);
  } catch (const SurgeryError& e) {
    const bool input = e.kind() == SurgeryError::Kind::invalid_excision || e.kind() == SurgeryError::Kind::unsupported;
    ctx.err << "cutpaste: " << e.what() << "\n";
    return input ? kInputError : kCheckFailed;
  }
  const std::string text = emit_orbit_file(r.q, r.lambda.rank, &r.lambda);
  if (ctx.json) {
    emit_json(ctx, "cutpaste", {{"merged_facets", r.merged_facets},
                                {"chi_remainder1", r.chi_remainder1},
                                {"chi_remainder2", r.chi_remainder2},
                                {"chi_section", r.chi_section},
                                {"orbit_file", text}});
  } else {
    ctx.out << "# euler: remainder1 " << r.chi_remainder1 << ", remainder2 " << r.chi_remainder2 << ", section "
            << r.chi_section << "\n";
    ctx.out << "# merged facets: " << (r.merged_facets ? "yes" : "no") << "\n";
    ctx.out << text;
  }
  return kOk;
}

int cmd_catalog_list(Context& ctx) {
  const auto names = catalog_names();
  if (ctx.json) {
    emit_json(ctx, "catalog", {{"names", names}});
  } else {
    for (const auto& n : names) ctx.out << n << "\n";
  }
  return kOk;
}

int cmd_catalog_emit(Context& ctx, const std::string& name) {
  CatalogModel m;
  try {
    m = make(name);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  ctx.out << emit_orbit_file(m.q, m.lambda.rank, &m.lambda);
  return kOk;
}

int cmd_classify(Context& ctx, const std::string& path) {
  const OrbitFile f = load(path);
  const auto report = validate(f.q);
  if (!report.ok()) throw InputError(path + ": complex is not valid\n" + report.to_string());
  if (f.q.dim() != 3) throw InputError(path + ": boundary classification needs dimension 3");
  const auto verdicts = classify_boundary(f.q);
  if (ctx.json) {
    Json rows = Json::array();
    for (const auto& v : verdicts) rows.push_back({{"component", v.component}, {"pattern", to_string(v.pattern)}, {"detail", v.detail}});
    emit_json(ctx, "classify-boundary", {{"components", rows}});
  } else {
    for (const auto& v : verdicts) ctx.out << "component " << v.component << ": " << to_string(v.pattern) << " (" << v.detail << ")\n";
  }
  return kOk;
}

std::string coloring_text(const StratifiedComplex& q, const Coloring& c) {
  std::string s;
  for (const auto& f : q.facets()) s += (s.empty() ? "" : " ") + f.name + "=" + c.colors.at(f.name).to_string();
  return s;
}

int cmd_colorings(Context& ctx, const std::string& path, int rank, const std::string& up_to) {
  const OrbitFile f = load(path);
  const auto report = validate(f.q);
  if (!report.ok()) throw InputError(path + ": complex is not valid\n" + report.to_string());
  if (rank <= 0) rank = f.rank;
  ColoringCensus census;
  try {
    census = enumerate_colorings(f.q, rank, up_to == "weak" ? ColoringQuotient::weak : ColoringQuotient::none);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  if (ctx.json) {
    Json reps = Json::array();
    for (std::size_t i = 0; i < census.representatives.size(); ++i) {
      Json c;
      for (const auto& fc : f.q.facets()) c[fc.name] = census.representatives[i].colors.at(fc.name).to_string();
      reps.push_back({{"coloring", c}, {"orbit_size", census.orbit_sizes[i]}});
    }
    emit_json(ctx, "enumerate-colorings", {{"rank", rank}, {"up_to", up_to}, {"total", census.total}, {"representatives", reps}});
  } else {
    ctx.out << "total " << census.total << "\n";
    ctx.out << "classes " << census.representatives.size() << "\n";
    for (std::size_t i = 0; i < census.representatives.size(); ++i) {
      ctx.out << coloring_text(f.q, census.representatives[i]) << "  orbit " << census.orbit_sizes[i] << "\n";
    }
  }
  return kOk;
}

int cmd_bundles(Context& ctx, const std::string& path) {
  const OrbitFile f = load(path);
  const auto report = validate(f.q);
  if (!report.ok()) throw InputError(path + ": complex is not valid\n" + report.to_string());
  BundleClasses classes;
  try {
    classes = enumerate_bundle_classes(f.q, f.rank);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  Json rows = Json::array();
  std::vector<std::vector<std::string>> table{{"class", "components", "cocycle"}};
  for (std::size_t i = 0; i < classes.representatives.size(); ++i) {
    const Cocycle& xi = classes.representatives[i];
    const int comps = covering_components(f.q, xi);
    std::string values;
    Json jv = Json::object();
    for (const auto& [e, g] : xi.values) {
      if (g.is_zero()) continue;
      const std::string edge = "(" + std::to_string(e.first) + " " + std::to_string(e.second) + ")";
      values += (values.empty() ? "" : " ") + edge + "=" + g.to_string();
      jv[edge] = g.to_string();
    }
    rows.push_back({{"class", i}, {"components", comps}, {"cocycle", jv}});
    table.push_back({std::to_string(i), std::to_string(comps), values.empty() ? "0" : values});
  }
  if (ctx.json) {
    emit_json(ctx, "bundles", {{"rank", f.rank}, {"h1_dimension", classes.h1_dimension}, {"classes", rows}});
  } else {
    ctx.out << "rank " << f.rank << " h1 " << classes.h1_dimension << " classes " << classes.representatives.size() << "\n";
    print_table(ctx.out, table);
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Locally standard (Z2)^n-actions: orbit spaces, glue-back and checks", "glueback"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json = false;
  app.add_flag("--json", json, "structured output");

  std::string file, file2, bundle, cells_out, coeff, element, k1, k2, match, up_to = "none", name;
  int rank = 0;
  SuiteSelection pick{false, false, false, false, false, false};
  bool all = false;

  auto* v_validate = app.add_subcommand("validate", "check an orbit-space file");
  v_validate->add_option("file", file)->required();

  auto* v_build = app.add_subcommand("build", "build the manifold over an orbit space");
  v_build->add_option("file", file)->required();
  v_build->add_option("--bundle", bundle, "cocycle file");
  v_build->add_option("--emit-cells", cells_out, "write the cell dump ('-' for stdout)");

  auto* v_hom = app.add_subcommand("homology", "homology of the built manifold");
  v_hom->add_option("file", file)->required();
  v_hom->add_option("--bundle", bundle, "cocycle file");
  v_hom->add_option("--coeff", coeff, "gf2, q or z")->check(CLI::IsMember({"gf2", "q", "z"}));

  auto* v_fix = app.add_subcommand("fixset", "fixed set of a group element");
  v_fix->add_option("file", file)->required();
  v_fix->add_option("--bundle", bundle, "cocycle file");
  v_fix->add_option("--element", element, "bit-string")->required();

  auto* v_verify = app.add_subcommand("verify", "run the theorem checks");
  v_verify->add_option("file", file)->required();
  v_verify->add_option("--bundle", bundle, "cocycle file");
  v_verify->add_flag("--all", all);
  v_verify->add_flag("--borel", pick.borel);
  v_verify->add_flag("--lefschetz", pick.lefschetz);
  v_verify->add_flag("--kobayashi", pick.kobayashi);
  v_verify->add_flag("--euler", pick.euler);
  v_verify->add_flag("--boundary", pick.boundary);

  auto* v_cut = app.add_subcommand("cutpaste", "excise and glue two orbit spaces");
  v_cut->add_option("file1", file)->required();
  v_cut->add_option("file2", file2)->required();
  v_cut->add_option("--k1", k1, "ball@<vertex> or collar@<component>")->required();
  v_cut->add_option("--k2", k2, "ball@<vertex> or collar@<component>")->required();
  v_cut->add_option("--match", match, "match file");

  auto* v_cat = app.add_subcommand("catalog", "built-in models");
  v_cat->require_subcommand(1);
  auto* v_cat_list = v_cat->add_subcommand("list", "list model names");
  auto* v_cat_emit = v_cat->add_subcommand("emit", "print a model as an orbit-space file");
  v_cat_emit->add_option("name", name)->required();

  auto* v_cls = app.add_subcommand("classify-boundary", "classify boundary spheres");
  v_cls->add_option("file", file)->required();

  auto* v_col = app.add_subcommand("enumerate-colorings", "count valid colorings");
  v_col->add_option("file", file)->required();
  v_col->add_option("--rank", rank, "group rank (default: the file's)");
  v_col->add_option("--up-to", up_to, "none or weak")->check(CLI::IsMember({"none", "weak"}));

  auto* v_bun = app.add_subcommand("bundles", "principal bundle classes");
  v_bun->add_option("file", file)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kOk;
    }
    err << "error: " << e.what() << "\n\n" << app.help();
    return kInputError;
  }

  Context ctx{out, err, json};
  try {
    if (*v_validate) return cmd_validate(ctx, file);
    if (*v_build) return cmd_build(ctx, file, bundle, cells_out);
    if (*v_hom) return cmd_homology(ctx, file, bundle, coeff);
    if (*v_fix) return cmd_fixset(ctx, file, bundle, element);
    if (*v_verify) {
      const bool none = !(pick.borel || pick.lefschetz || pick.kobayashi || pick.euler || pick.boundary);
      if (all || none) pick = SuiteSelection{};
      return cmd_verify(ctx, file, bundle, pick);
    }
    if (*v_cut) return cmd_cutpaste(ctx, file, file2, k1, k2, match);
    if (*v_cat_list) return cmd_catalog_list(ctx);
    if (*v_cat_emit) return cmd_catalog_emit(ctx, name);
    if (*v_cls) return cmd_classify(ctx, file);
    if (*v_col) return cmd_colorings(ctx, file, rank, up_to);
    if (*v_bun) return cmd_bundles(ctx, file);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const SurgeryError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace glueback::cli

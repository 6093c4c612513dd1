#include "bcalc/cli.hpp"

#include "bcalc/corner_geometry.hpp"
#include "bcalc/examples.hpp"
#include "bcalc/serialize.hpp"
#include "bcalc/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace bcalc {

namespace {

namespace fs = std::filesystem;

struct Globals {
  int truncate = 10;
  double tol = 1e-8;
  bool json = false;
  std::string workspace;
};

/// A command result: JSON payload, text rendering and exit code.
struct Outcome {
  Json json;
  std::string text;
  int code = 0;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

Json builtin(const std::string& name) {
  if (name == "smooth") return to_json(IndexSet::smooth());
  if (name == "empty") return to_json(IndexSet{});
  if (name == "smooth_log1") return to_json(IndexSet::complete({IndexEntry(Exponent(0), 1)}));
  if (name == "x2b") return to_json(double_b_space().result);
  if (name == "x3b") return to_json(triple_b_space().first);
  if (name == "blowdown_x2b") return to_json(double_b_space().blowdown);
  if (name == "blowdown_x3b") return to_json(triple_blowdown());
  if (name == "proj_lb") return to_json(x2b_halfline_projection(true));
  if (name == "proj_rb") return to_json(x2b_halfline_projection(false));
  if (name == "halfline_x") return to_json(halfline_projection(true));
  if (name == "halfline_y") return to_json(halfline_projection(false));
  for (int i = 1; i <= 3; ++i) {
    if (name == "quadrant" + std::to_string(i)) return to_json(model_quadrant(i, i));
    if (name == "pi" + std::to_string(i)) return to_json(lifted_projection(i));
    if (name == "quad_pi" + std::to_string(i)) return to_json(quadrant_projection(i));
  }
  return nullptr;
}

class Workspace {
 public:
  explicit Workspace(std::string dir) : dir_(std::move(dir)) {
    if (!dir_.empty() && !fs::is_directory(dir_)) throw std::invalid_argument("workspace '" + dir_ + "' is not a directory");
  }

  /// Inline JSON, a file path, a workspace name, or a built-in name.
  Json load(const std::string& ref, int depth = 0) const {
    if (depth > 8) throw std::invalid_argument("reference cycle at '" + ref + "'");
    Json j = raw(ref);
    resolve(j, depth);
    return j;
  }

 private:
  Json raw(const std::string& ref) const {
    if (!ref.empty() && (ref.front() == '{' || ref.front() == '[')) return Json::parse(ref);
    if (ref.rfind("poly:", 0) == 0) {
      Json coeffs = Json::array();
      for (const auto& c : split(ref.substr(5), ',')) coeffs.push_back(Json::array({c}));
      return {{"coeffs", coeffs}, {"truncation", 0}};
    }
    std::vector<fs::path> candidates{ref};
    if (!dir_.empty()) {
      candidates.emplace_back(fs::path(dir_) / ref);
      candidates.emplace_back(fs::path(dir_) / (ref + ".json"));
    }
    for (const auto& p : candidates) {
      if (fs::is_regular_file(p)) {
        std::ifstream in(p);
        return Json::parse(in);
      }
    }
    const std::string stem = fs::path(ref).stem().string();
    Json b = builtin(stem);
    if (b.is_null()) throw std::invalid_argument("unknown object '" + ref + "' (no file, workspace entry or built-in)");
    return b;
  }

  /// Lattice references inside map descriptors.
  void resolve(Json& j, int depth) const {
    for (const char* key : {"source", "target"}) {
      if (j.is_object() && j.contains(key) && j.at(key).is_string()) {
        j[key] = load(j.at(key).get<std::string>(), depth + 1);
      }
    }
  }

  std::string dir_;
};

std::string entries_table(const EntryList& entries) {
  std::ostringstream os;
  os << "  Re z   Im z   p\n";
  for (const auto& e : entries) {
    os << "  " << format_rational(e.z.re) << "   " << format_rational(e.z.im) << "   " << e.p << "\n";
  }
  return os.str();
}

Outcome index_outcome(const IndexSet& e, const Globals& g) {
  const EntryList members = e.truncate(g.truncate);
  Outcome o;
  o.json = to_json(e);
  o.json["truncate"] = g.truncate;
  o.json["members"] = to_json(members);
  o.text = "generators " + to_string(e) + "\nmembers with Re z <= " + std::to_string(g.truncate) + " (" +
           std::to_string(members.size()) + "):\n" + entries_table(members);
  return o;
}

std::string lattice_text(const FaceLattice& z) {
  std::ostringstream os;
  os << "dimension " << z.dimension() << ", bhs:";
  for (const auto& n : z.bhs_names()) os << " " << n;
  os << "\nfaces (" << z.faces().size() << "):\n";
  for (const auto& f : z.sorted_faces()) os << "  codim " << f.size() << "  " << to_string(f) << "\n";
  for (const auto& a : z.annotations()) os << "interior submanifold " << a.name << " meets " << to_string(a.meets) << "\n";
  return os.str();
}

std::string matrix_text(const BMapDescriptor& f) {
  std::ostringstream os;
  os << "exponent matrix (rows source bhs, columns target bhs):\n       ";
  for (const auto& h : f.target().bhs_names()) os << " " << h;
  os << "\n";
  for (const auto& g : f.source().bhs_names()) {
    os << "  " << g << ":";
    for (const auto& h : f.target().bhs_names()) os << " " << f.e(g, h);
    os << "\n";
  }
  return os.str();
}

std::string family_text(const IndexFamily& fam, const Globals& g) {
  std::ostringstream os;
  for (const auto& [name, set] : fam) {
    os << name << ": " << to_string(set) << "\n" << entries_table(set.truncate(g.truncate));
  }
  return os.str();
}

std::string contributions_text(const std::vector<FaceContribution>& rows) {
  std::ostringstream os;
  for (const auto& r : rows) {
    os << "  " << to_string(r.face) << " <- [";
    for (std::size_t i = 0; i < r.contributors.size(); ++i) os << (i ? " " : "") << r.contributors[i];
    os << "] " << to_string(r.set) << "\n";
  }
  return os.str();
}

std::string pretty(const Json& j) { return j.dump(2) + "\n"; }

Rational parse_gamma(const std::string& s) { return parse_rational(s); }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"bcalc: index sets, corners, b-maps and the b-calculus on the half-line", "bcalc"};
  app.fallthrough();
  app.require_subcommand(1);
  Globals g;
  app.add_option("--truncate", g.truncate, "Display truncation Re z <= N")->capture_default_str();
  app.add_option("--tol", g.tol, "Numeric tolerance")->capture_default_str();
  app.add_flag("--json", g.json, "JSON output");
  app.add_option("--workspace", g.workspace, "Directory of named JSON objects");

  std::function<Outcome()> action;
  auto set_action = [&](CLI::App* sub, std::function<Outcome(const Workspace&)> f) {
    sub->callback([&action, &g, f] { action = [&g, f] { return f(Workspace(g.workspace)); }; });
  };

  // indexset
  auto* is = app.add_subcommand("indexset", "Index set algebra");
  is->require_subcommand(1);
  static std::string a_ref, b_ref;
  auto binary = [&](const char* name, const char* help, std::function<IndexSet(const IndexSet&, const IndexSet&)> op) {
    auto* sub = is->add_subcommand(name, help);
    sub->add_option("a", a_ref)->required();
    sub->add_option("b", b_ref)->required();
    set_action(sub, [&g, op](const Workspace& ws) {
      return index_outcome(op(index_set_from_json(ws.load(a_ref)), index_set_from_json(ws.load(b_ref))), g);
    });
  };
  binary("union", "E u F", set_union);
  binary("extunion", "Extended union", extended_union);
  binary("sum", "E + F", set_sum);
  {
    auto* sub = is->add_subcommand("complete", "Close a raw generator list");
    sub->add_option("set", a_ref)->required();
    set_action(sub, [&g](const Workspace& ws) { return index_outcome(index_set_from_json(ws.load(a_ref)), g); });
    auto* inf = is->add_subcommand("inf", "inf Re z");
    inf->add_option("set", a_ref)->required();
    set_action(inf, [](const Workspace& ws) {
      const IndexSet e = index_set_from_json(ws.load(a_ref));
      const auto v = e.inf_re_exact();
      Outcome o;
      o.json = {{"inf_re", v ? Json(format_rational(*v)) : Json("+inf")}};
      o.text = "inf Re z = " + (v ? format_rational(*v) : std::string("+inf")) + "\n";
      return o;
    });
    auto* tr = is->add_subcommand("truncate", "Members with Re z <= --truncate");
    tr->add_option("set", a_ref)->required();
    set_action(tr, [&g](const Workspace& ws) { return index_outcome(index_set_from_json(ws.load(a_ref)), g); });
  }

  // space
  auto* sp = app.add_subcommand("space", "Face lattices and blow-ups");
  sp->require_subcommand(1);
  static int quad_k = 0, quad_n = 0;
  static std::string center, ff_name = "ff";
  {
    auto* q = sp->add_subcommand("quadrant", "[0,inf)^k x R^(n-k)");
    q->add_option("k", quad_k)->required();
    q->add_option("n", quad_n)->required();
    set_action(q, [](const Workspace&) {
      const FaceLattice z = model_quadrant(quad_k, quad_n);
      return Outcome{to_json(z), lattice_text(z), 0};
    });
    auto* b = sp->add_subcommand("blowup", "Blow up a boundary face");
    b->add_option("lattice", a_ref)->required();
    b->add_option("--center", center, "Comma-separated bhs names")->required();
    b->add_option("--name", ff_name, "Front face name")->capture_default_str();
    set_action(b, [](const Workspace& ws) {
      const auto names = split(center, ',');
      const BlowupRecord r = blow_up_face(lattice_from_json(ws.load(a_ref)), Face(names.begin(), names.end()), ff_name);
      return Outcome{to_json(r), lattice_text(r.result) + matrix_text(r.blowdown), 0};
    });
    auto* d = sp->add_subcommand("double", "The b-double space X2b");
    set_action(d, [](const Workspace&) {
      const BlowupRecord r = double_b_space();
      return Outcome{to_json(r), lattice_text(r.result) + matrix_text(r.blowdown), 0};
    });
    auto* t = sp->add_subcommand("triple", "The b-triple space X3b");
    set_action(t, [](const Workspace&) {
      const auto [x3b, chain] = triple_b_space();
      Json steps = Json::array();
      std::string text = lattice_text(x3b) + "blow-up chain:\n";
      for (const auto& r : chain) {
        steps.push_back({{"center", std::vector<std::string>(r.center.begin(), r.center.end())},
                         {"front_face", r.front_face_name}});
        text += "  " + to_string(r.center) + " -> " + r.front_face_name + "\n";
      }
      return Outcome{{{"lattice", to_json(x3b)}, {"chain", steps}}, text, 0};
    });
  }

  // map
  auto* mp = app.add_subcommand("map", "b-map descriptors");
  mp->require_subcommand(1);
  static std::string face_arg;
  {
    auto* c = mp->add_subcommand("compose", "First map, then second (exponents multiply)");
    c->add_option("f", a_ref)->required();
    c->add_option("g", b_ref)->required();
    set_action(c, [](const Workspace& ws) {
      const BMapDescriptor fg = compose(bmap_from_json(ws.load(a_ref)), bmap_from_json(ws.load(b_ref)));
      return Outcome{to_json(fg), matrix_text(fg), 0};
    });
    auto* fm = mp->add_subcommand("facemap", "Image face of a source face");
    fm->add_option("f", a_ref)->required();
    fm->add_option("--face", face_arg, "Comma-separated bhs names (empty for the interior)");
    set_action(fm, [](const Workspace& ws) {
      const auto names = split(face_arg, ',');
      const Face image = induced_face_map(bmap_from_json(ws.load(a_ref)), Face(names.begin(), names.end()));
      return Outcome{{{"image", std::vector<std::string>(image.begin(), image.end())}}, to_string(image) + "\n", 0};
    });
    auto* cb = mp->add_subcommand("check-bfibration", "Codimension test and fibration flag");
    cb->add_option("f", a_ref)->required();
    set_action(cb, [](const Workspace& ws) {
      const BMapDescriptor f = bmap_from_json(ws.load(a_ref));
      const BFibrationReport r = check_b_fibration(f);
      std::string text = r.is_b_fibration() ? "b-fibration\n" : "not a b-fibration\n";
      for (const auto& v : r.violating_faces) {
        text += "  " + v + " is mapped to the codimension " + std::to_string(induced_face_map(f, Face{v}).size()) +
                " face " + to_string(induced_face_map(f, Face{v})) + "\n";
      }
      if (r.codim_ok && !r.fibration_flag) text += "  fibration over open faces not asserted\n";
      return Outcome{to_json(r), text, r.is_b_fibration() ? 0 : 2};
    });
  }

  // transport
  auto* tp = app.add_subcommand("transport", "Pull-back and push-forward of index families");
  tp->require_subcommand(1);
  static bool not_proper = false;
  {
    auto* pb = tp->add_subcommand("pullback", "f# of a family on the target");
    pb->add_option("f", a_ref)->required();
    pb->add_option("family", b_ref)->required();
    set_action(pb, [&g](const Workspace& ws) {
      const IndexFamily fam = pull_back_family(bmap_from_json(ws.load(a_ref)), family_from_json(ws.load(b_ref)));
      return Outcome{to_json(fam), family_text(fam, g), 0};
    });
    auto* pf = tp->add_subcommand("pushforward", "f_* of a family on the source");
    pf->add_option("f", a_ref)->required();
    pf->add_option("family", b_ref)->required();
    pf->add_flag("--not-proper", not_proper, "The map is not proper on the support");
    set_action(pf, [&g](const Workspace& ws) {
      const BMapDescriptor f = bmap_from_json(ws.load(a_ref));
      const IndexFamily fam = family_from_json(ws.load(b_ref));
      const PushForwardOptions opts{!not_proper};
      Outcome o;
      bool ok = true;
      std::vector<std::string> violators;
      if (f.target().dimension() == 1 && f.target().bhs_count() == 1) {
        const HalflineReport r = push_forward_halfline(f, fam, opts);
        o.json = to_json(r);
        o.text = "result " + to_string(r.result) + "\n" + entries_table(r.result.truncate(g.truncate)) +
                 "face contributions:\n" + contributions_text(r.face_contributions);
        ok = r.integrability_ok;
        violators = r.violating_bhs;
      } else {
        const TransportReport r = push_forward_family(f, fam, opts);
        o.json = to_json(r);
        o.text = family_text(r.result, g);
        for (const auto& [h, rows] : r.face_contributions) o.text += "face contributions to " + h + ":\n" + contributions_text(rows);
        ok = r.integrability_ok;
        violators = r.violating_bhs;
      }
      if (!ok) {
        o.code = 2;
        o.text += "integrability violated at:";
        for (const auto& v : violators) o.text += " " + v;
        o.text += "\n";
      }
      return o;
    });
  }

  // op
  auto* op = app.add_subcommand("op", "b-differential operators and full-calculus descriptors");
  op->require_subcommand(1);
  static std::string gamma = "0", bump = "0.5,2", grid = "0.3,0.55,0.8,1,1.3,1.7,2.5", kernel = "bump";
  static int steps = 1;
  {
    auto* sb = op->add_subcommand("specb", "Indicial polynomial and Spec_b");
    sb->add_option("operator", a_ref)->required();
    set_action(sb, [](const Workspace& ws) {
      const IndicialData d = indicial(operator_from_json(ws.load(a_ref)));
      std::string text = "Spec_b:";
      for (const auto& e : d.spec_b) text += " " + to_string(e);
      text += "\nroots:\n";
      for (const auto& r : d.roots) {
        text += "  " + format_complex(r.exponent()) + "  order " + std::to_string(r.order) +
                (r.exact ? "  exact" : "  numeric") + "\n";
      }
      return Outcome{to_json(d), text, 0};
    });
    auto* spl = op->add_subcommand("split", "Split Spec_b by the weight gamma");
    spl->add_option("operator", a_ref)->required();
    spl->add_option("--gamma", gamma)->capture_default_str();
    set_action(spl, [&g](const Workspace& ws) {
      const SpecSplit s = split_spec(indicial(operator_from_json(ws.load(a_ref))), {parse_gamma(gamma)});
      return Outcome{{{"E_lb", to_json(s.E_lb)}, {"E_rb", to_json(s.E_rb)}},
                     "E_lb = " + to_string(s.E_lb) + "\n" + entries_table(s.E_lb.truncate(g.truncate)) + "E_rb = " +
                         to_string(s.E_rb) + "\n" + entries_table(s.E_rb.truncate(g.truncate)),
                     0};
    });
    auto* inv = op->add_subcommand("inverse", "Model inverse kernel by residues");
    inv->add_option("operator", a_ref)->required();
    inv->add_option("--gamma", gamma)->capture_default_str();
    set_action(inv, [](const Workspace& ws) {
      const ModelKernel k = model_inverse(indicial(operator_from_json(ws.load(a_ref))), {parse_gamma(gamma)});
      std::string text = "k(s) =\n";
      for (const auto& t : k.terms) {
        const std::string c = t.exact_coeff ? format_complex(*t.exact_coeff)
                                            : num(t.coeff.real()) + (t.coeff.imag() != 0 ? "+" + num(t.coeff.imag()) + "i" : "");
        const std::string var = t.side == KernelSide::rb ? "s" : "(1/s)";
        const std::string logarg = t.side == KernelSide::rb ? "1/s" : "s";
        text += "  + (" + c + ") " + var + "^(" + format_complex(t.z) + ") log^" + std::to_string(t.p) + "(" + logarg +
                ") H(" + (t.side == KernelSide::rb ? "1-s" : "s-1") + ")\n";
      }
      return Outcome{to_json(k), text, 0};
    });
    auto* ac = op->add_subcommand("apply-check", "Residual of P(Kv) - v for a bump v");
    ac->add_option("operator", a_ref)->required();
    ac->add_option("--gamma", gamma)->capture_default_str();
    ac->add_option("--bump", bump, "Support lo,hi of the bump")->capture_default_str();
    ac->add_option("--grid", grid, "Comma-separated x values")->capture_default_str();
    set_action(ac, [&g](const Workspace& ws) {
      const BDiffOp p = operator_from_json(ws.load(a_ref));
      const ModelKernel k = model_inverse(indicial(p), {parse_gamma(gamma)});
      const auto lohi = split(bump, ',');
      if (lohi.size() != 2) throw std::invalid_argument("--bump needs lo,hi");
      std::vector<double> xs;
      for (const auto& x : split(grid, ',')) xs.push_back(std::stod(x));
      const ApplyCheckReport r = apply_check(p, k, examples::test_bump(std::stod(lohi[0]), std::stod(lohi[1])), xs);
      Outcome o{to_json(r), "max |P(Kv) - v| = " + num(r.max_residual) + " at x = " + num(r.worst_x) + "\n", 0};
      o.json["within_tol"] = r.max_residual <= g.tol;
      return o;
    });
    auto* cp = op->add_subcommand("compose", "Descriptor of P o Q");
    cp->add_option("p", a_ref)->required();
    cp->add_option("q", b_ref)->required();
    set_action(cp, [](const Workspace& ws) {
      const FullCalcDescriptor d =
          compose_descriptors(descriptor_from_json(ws.load(a_ref)), descriptor_from_json(ws.load(b_ref)));
      return Outcome{to_json(d), to_string(d) + "\n", 0};
    });
    auto* act = op->add_subcommand("action", "Index set of Pw");
    act->add_option("p", a_ref)->required();
    act->add_option("f", b_ref)->required();
    set_action(act, [&g](const Workspace& ws) {
      return index_outcome(action_index(descriptor_from_json(ws.load(a_ref)), index_set_from_json(ws.load(b_ref))), g);
    });
    auto* par = op->add_subcommand("parametrix", "Index bookkeeping of the Neumann parametrix");
    par->add_option("operator", a_ref)->required();
    par->add_option("--gamma", gamma)->capture_default_str();
    par->add_option("--steps", steps)->capture_default_str();
    set_action(par, [](const Workspace& ws) {
      const ParametrixReport r = parametrix_indices(operator_from_json(ws.load(a_ref)), {parse_gamma(gamma)}, steps);
      std::string text;
      for (const auto& s : r.steps) text += s.label + ": " + to_string(s.descriptor) + "\n";
      text += "parametrix: " + to_string(r.parametrix) + "\nremainder: " + to_string(r.remainder) + "\n";
      return Outcome{to_json(r), text, 0};
    });
    auto* hs = op->add_subcommand("hs", "Hilbert-Schmidt front-face test for a built-in kernel");
    hs->add_option("--kernel", kernel, "bump, x-bump or zero")->capture_default_str();
    set_action(hs, [](const Workspace&) {
      KernelFunction2D p;
      if (kernel == "bump") {
        p = [](double, double s) { return examples::log_bump(s); };
      } else if (kernel == "x-bump") {
        p = [](double x, double s) { return x * examples::log_bump(s); };
      } else if (kernel == "zero") {
        p = [](double, double) { return 0.0; };
      } else {
        throw std::invalid_argument("unknown kernel '" + kernel + "'");
      }
      const HsReport r = hs_front_face_criterion(p, smooth_cutoff(0.5, 1.0));
      std::string text;
      for (std::size_t i = 0; i < r.eps.size(); ++i) text += "  eps " + num(r.eps[i]) + "  N " + num(r.norms[i]) + "\n";
      text += "slope in log(1/eps): " + num(r.slope) + "\nrestriction integral: " + num(r.restriction_integral) +
              "\n" + (r.finite ? "finite (kernel vanishes at ff)\n" : "diverges like log(1/eps)\n");
      return Outcome{to_json(r), text, 0};
    });
  }

  // verify
  auto* vf = app.add_subcommand("verify", "Run acceptance criteria");
  static std::string suite = "all";
  vf->add_option("--suite", suite, "combinatorics, pushforward, parametrix or all")->capture_default_str();
  set_action(vf, [](const Workspace&) {
    const VerifyReport r = run_suite(suite);
    Json rows = Json::array();
    std::string text;
    for (const auto& c : r.results) {
      rows.push_back({{"id", c.id}, {"name", c.name}, {"passed", c.passed}, {"details", c.details}});
      char line[128];
      std::snprintf(line, sizeof line, "%2d  %-40s %s\n", c.id, c.name.c_str(), c.passed ? "PASS" : "FAIL");
      text += line;
      for (const auto& d : c.details) text += "      " + d + "\n";
    }
    return Outcome{{{"suite", suite}, {"criteria", rows}, {"all_passed", r.all_passed()}}, text, r.all_passed() ? 0 : 1};
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (!action) {
      err << "error: incomplete command\n";
      return 1;
    }
    const Outcome o = action();
    out << (g.json ? pretty(o.json) : o.text);
    return o.code;
  } catch (const HypothesisViolated& e) {
    if (g.json) out << pretty({{"error", "hypothesis violated"}, {"message", e.what()}});
    err << "hypothesis violated: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    if (g.json) out << pretty({{"error", "invalid input"}, {"message", e.what()}});
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace bcalc

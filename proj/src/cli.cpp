#include "green/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "green/psh.hpp"

namespace green::cli {

using json = nlohmann::ordered_json;
using ideal::DomainKind;
using ideal::DomainSpec;
using ideal::IdealSpec;
using poly::MultiPoly;

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json ext_json(const ExtReal& v) {
  if (v.is_neg_inf()) return "-inf";
  return v.value();
}

double parse_double(const std::string& s) {
  if (s.empty()) throw ParseError("empty number");
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || !std::isfinite(v)) throw ParseError("invalid number '" + s + "'");
  return v;
}

Complex parse_complex(std::string t) {
  t.erase(std::remove_if(t.begin(), t.end(), [](unsigned char c) { return std::isspace(c); }), t.end());
  if (t.empty()) throw ParseError("empty coordinate");
  if (t.back() != 'i') return {parse_double(t), 0.0};
  const std::string body = t.substr(0, t.size() - 1);
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag = [](const std::string& s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_double(s);
  };
  if (split == std::string::npos) return {0.0, imag(body)};
  return {parse_double(body.substr(0, split)), imag(body.substr(split))};
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

const DomainSpec& domain_of(const IdealFile& f) { return f.spec.domain(); }

void check_point(const IdealFile& f, const Point& x) {
  if (x.size() != f.spec.dim()) throw ParseError("point has " + std::to_string(x.size()) +
                                                 " coordinates, expected " + std::to_string(f.spec.dim()));
  if (!domain_of(f).contains_open(x)) throw ParseError("point outside the open domain");
}

json disc_json(const envelope::DiscWitness& w) {
  json center = json::array();
  for (const auto& c : w.disc.center()) center.push_back(complex_json(c));
  json coeffs = json::array();
  for (const auto& row : w.disc.coeffs()) {
    json r = json::array();
    for (const auto& c : row) r.push_back(complex_json(c));
    coeffs.push_back(r);
  }
  return json{{"center", center}, {"coeffs", coeffs}, {"marked", complex_json(w.marked)}, {"slack", w.slack}};
}

}  // namespace

// ------------------------------------------------------------------ files

IdealFile parse_ideal_file(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  try {
    if (!j.is_object()) throw ParseError("top level must be an object");
    const auto& d = j.at("domain");
    const std::string kind = d.at("kind").get<std::string>();
    DomainKind dk;
    if (kind == "polydisc") {
      dk = DomainKind::polydisc;
    } else if (kind == "ball") {
      dk = DomainKind::ball;
    } else {
      throw ParseError("unknown domain kind '" + kind + "'");
    }
    const auto& dim_j = d.at("dim");
    if (!dim_j.is_number_integer() || dim_j.get<long long>() < 1) throw ParseError("dim must be a positive integer");
    const auto n = static_cast<std::size_t>(dim_j.get<long long>());

    const auto& gens = j.at("generators");
    if (!gens.is_array() || gens.empty()) throw ParseError("generators must be a nonempty list");
    std::vector<MultiPoly> polys;
    for (const auto& g : gens) {
      if (!g.is_array() || g.empty()) throw ParseError("each generator needs at least one term");
      MultiPoly p(n);
      for (const auto& t : g) {
        const auto& c = t.at("c");
        if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number()) {
          throw ParseError("coefficient must be [re, im]");
        }
        const auto& e = t.at("e");
        if (!e.is_array() || e.size() != n) throw ParseError("exponent length must equal dim");
        poly::Exponent ex;
        for (const auto& k : e) {
          if (!k.is_number_integer() || k.get<long long>() < 0) {
            throw ParseError("exponents must be non-negative integers");
          }
          ex.push_back(static_cast<std::uint32_t>(k.get<long long>()));
        }
        p = p + MultiPoly::monomial(n, ex, Complex(c[0].get<double>(), c[1].get<double>()));
      }
      polys.push_back(std::move(p));
    }
    std::optional<models::ModelTag> hint;
    if (j.contains("model") && !j.at("model").is_null()) {
      hint = models::parse_model_tag(j.at("model").get<std::string>());
      if (!hint) throw ParseError("unknown model tag '" + j.at("model").get<std::string>() + "'");
    }
    IdealFile f{IdealSpec(DomainSpec(dk, n), std::move(polys)), hint};
    resolve_model(f);
    return f;
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid ideal file: ") + e.what());
  } catch (const ContractViolation& e) {
    throw ParseError(std::string("invalid ideal file: ") + e.what());
  }
}

IdealFile load_ideal_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_ideal_file(ss.str());
}

std::string serialize_ideal_file(const IdealFile& f) {
  json gens = json::array();
  for (const auto& g : f.spec.generators()) {
    json terms = json::array();
    for (const auto& [e, c] : g.terms()) terms.push_back(json{{"c", complex_json(c)}, {"e", e}});
    gens.push_back(terms);
  }
  json j{{"domain", {{"kind", ideal::to_string(f.spec.domain().kind)}, {"dim", f.spec.dim()}}},
         {"generators", gens}};
  if (f.hint) j["model"] = models::to_string(*f.hint);
  return j.dump(2) + "\n";
}

Point parse_point(const std::string& text) {
  Point p;
  for (const auto& tok : split(text, ',')) p.push_back(parse_complex(tok));
  if (p.empty()) throw ParseError("empty point");
  return p;
}

std::string format_complex(Complex z) {
  if (z.imag() == 0.0) return fmt17(z.real());
  std::string im = fmt17(z.imag());
  if (im[0] != '-') im = "+" + im;
  return fmt17(z.real()) + im + "i";
}

std::optional<models::ModelId> resolve_model(const IdealFile& f) {
  auto m = models::match_model(f.spec);
  if (!f.hint) return m;
  using models::ModelTag;
  if (m && m->tag == *f.hint) return m;
  if (m && m->tag == ModelTag::intro_pair && *f.hint == ModelTag::poly_powers) {
    return models::ModelId::poly_powers({2, 1}, 2);
  }
  throw ParseError("model hint '" + models::to_string(*f.hint) + "' does not match the generators");
}

// ---------------------------------------------------------------- commands

CommandResult cmd_eval(const IdealFile& f, const Point& x, bool envelope_fallback,
                       const envelope::EnvelopeOptions& opt) {
  CommandResult r;
  check_point(f, x);
  const auto m = resolve_model(f);
  char buf[128];
  if (m) {
    const ExtReal v = models::oracle_eval(*m, x);
    const std::string vs = v.is_neg_inf() ? "-inf" : (std::snprintf(buf, sizeof buf, "%.6f", v.value()), buf);
    r.out = vs + " (oracle_exact, " + m->name() + ")\n";
    return r;
  }
  if (!envelope_fallback) {
    r.exit_code = kNoOracle;
    r.err = "no oracle; use envelope\n";
    return r;
  }
  const auto e = envelope::optimize_envelope(f.spec, x, opt);
  const std::string vs =
      e.value.is_neg_inf() ? "-inf" : (std::snprintf(buf, sizeof buf, "%.6f", e.value.value()), buf);
  r.out = vs + " (" + envelope::to_string(e.kind) + ", none)\n";
  if (e.vacuous) r.exit_code = kVacuous;
  return r;
}

CommandResult cmd_envelope(const IdealFile& f, const Point& x, const envelope::EnvelopeOptions& opt) {
  CommandResult r;
  check_point(f, x);
  const auto m = resolve_model(f);
  const auto e = envelope::optimize_envelope(f.spec, x, opt);
  if (e.value.is_neg_inf()) {
    r.out = "-inf (exact)\n";
    return r;
  }
  json j;
  j["value"] = e.value.value();
  j["kind"] = envelope::to_string(e.kind);
  j["vacuous"] = e.vacuous;
  j["model"] = m ? json(m->name()) : json(nullptr);
  if (m) {
    const ExtReal o = models::oracle_eval(*m, x);
    j["oracle"] = ext_json(o);
    j["gap"] = o.is_neg_inf() ? json(nullptr) : json(e.value.value() - o.value());
  } else {
    j["oracle"] = nullptr;
    j["gap"] = nullptr;
  }
  json pt = json::array();
  for (const auto& c : x) pt.push_back(complex_json(c));
  j["point"] = pt;
  j["config"] = {{"degree", opt.degree},   {"restarts", opt.restarts},   {"budget", opt.budget},
                 {"seed", opt.seed},       {"templates", opt.templates}, {"slack", opt.slack}};
  if (e.disc) j["witness"] = disc_json(*e.disc);
  r.out = j.dump(2) + "\n";
  if (e.vacuous) {
    r.exit_code = kVacuous;
    r.err = "only the vacuous estimate 0 was found\n";
  }
  return r;
}

namespace {

struct CheckOutcome {
  std::string name;
  std::string status;  // PASS, FAIL, SKIP
  json data;
};

std::vector<Point> filtered_grid(const DomainSpec& d, std::size_t n, std::size_t max_points) {
  std::size_t count = 20;
  while (count > 2 && std::pow(static_cast<double>(count), static_cast<double>(n)) > static_cast<double>(max_points)) {
    --count;
  }
  std::vector<double> phases;
  for (std::size_t j = 0; j < n; ++j) phases.push_back(0.3 * static_cast<double>(j + 1));
  const double hi = d.kind == DomainKind::ball ? 0.95 / std::sqrt(static_cast<double>(n)) : 0.95;
  auto g = models::modulus_grid(n, count, 0.0, hi, phases);
  std::vector<Point> out;
  for (auto& p : g) {
    if (d.contains_open(p)) out.push_back(std::move(p));
  }
  return out;
}

void membership_checks(const IdealFile& f, const models::ModelId& m, const VerifyConfig& cfg,
                       std::vector<CheckOutcome>& all) {
  FunctionHandle u = models::oracle_handle(m);
  if (cfg.inject_offset != 0.0) u = shifted(u, cfg.inject_offset);
  const auto neg = psh::check_negative(u, 2000, cfg.seed);
  all.push_back({"membership.negative", neg.pass ? "PASS" : "FAIL",
                 {{"samples", neg.samples}, {"violations", neg.violations}, {"max_value", ext_json(neg.max_value)}}});
  const auto lines = psh::check_psh_lines(u, 200, 256, {0.1, 0.05, 0.01}, psh::kPshTolerance, cfg.seed);
  all.push_back({"membership.psh_lines", lines.pass ? "PASS" : "FAIL",
                 {{"checks", lines.checks},
                  {"skipped", lines.skipped},
                  {"violations", lines.violations.size()},
                  {"worst_excess", lines.worst_excess}}});
  auto anchors = ideal::find_zero_set_points(f.spec, 64, cfg.seed, true);
  if (anchors.size() > 4) anchors.resize(4);
  if (anchors.empty()) {
    all.push_back({"membership.log_bound", "FAIL", {{"reason", "no points of |A| found"}}});
  } else {
    const auto lb = psh::check_log_bound(u, f.spec, anchors, psh::default_log_bound_radii(), 64, cfg.seed);
    all.push_back({"membership.log_bound", lb.pass ? "PASS" : "FAIL",
                   {{"C_estimate", lb.C_estimate}, {"C_by_radius", lb.C_by_radius}, {"anchors", anchors.size()}}});
  }
}

void product_check(const models::ModelId& m, const VerifyConfig& cfg, std::vector<CheckOutcome>& all) {
  std::vector<unsigned> nu;
  if (m.tag == models::ModelTag::poly_powers) nu = m.nu;
  if (m.tag == models::ModelTag::intro_pair) nu = {2, 1};
  if (nu.empty()) {
    all.push_back({"product", "SKIP", {{"reason", "model is not a product of one-dimensional factors"}}});
    return;
  }
  auto factor = [](unsigned v) {
    return FunctionHandle{[v](PointView z) { return log_abs(z[0]) * static_cast<double>(v); },
                          DomainSpec(DomainKind::polydisc, 1), "factor"};
  };
  FunctionHandle prod = factor(nu[0]);
  for (std::size_t k = 1; k < nu.size(); ++k) prod = models::product_green(prod, factor(nu[k]));
  FunctionHandle u = models::oracle_handle(m);
  if (cfg.inject_offset != 0.0) u = shifted(u, cfg.inject_offset);
  const auto grid = filtered_grid(DomainSpec(DomainKind::polydisc, nu.size()), nu.size(), 8000);
  double worst = 0.0;
  Point z(m.n, Complex(0.3, 0.1));
  for (const auto& y : grid) {
    std::copy(y.begin(), y.end(), z.begin());
    worst = std::max(worst, ext_distance(prod(y), u(z)));
  }
  all.push_back({"product", worst <= 1e-12 ? "PASS" : "FAIL", {{"points", grid.size()}, {"max_diff", worst}}});
}

void pullback_check(const IdealFile& f, const VerifyConfig& cfg, std::vector<CheckOutcome>& all) {
  std::vector<std::uint32_t> k = cfg.map ? *cfg.map : std::vector<std::uint32_t>(f.spec.dim(), 2);
  if (k.size() != f.spec.dim()) throw ParseError("--map needs one exponent per coordinate");
  const ideal::ProperMapSpec phi(k);
  const auto grid = filtered_grid(f.spec.domain(), f.spec.dim(), 8000);
  try {
    const auto rep = models::pullback_equality_check(f.spec, phi, grid);
    all.push_back({"pullback", rep.pass ? "PASS" : "FAIL",
                   {{"map", k}, {"points", rep.points}, {"max_diff", rep.max_diff},
                    {"base", rep.base.name()}, {"pulled", rep.pulled.name()}}});
  } catch (const models::UnsupportedModelError& e) {
    all.push_back({"pullback", "SKIP", {{"map", k}, {"reason", e.what()}}});
  }
}

void lelong_check(const IdealFile& f, const models::ModelId& m, const VerifyConfig& cfg,
                  std::vector<CheckOutcome>& all) {
  FunctionHandle u = models::oracle_handle(m);
  if (cfg.inject_offset != 0.0) u = shifted(u, cfg.inject_offset);
  std::vector<Point> pts;
  const Point origin(f.spec.dim());
  if (f.spec.abs_psi(origin) == 0.0) pts.push_back(origin);
  for (auto& p : ideal::find_zero_set_points(f.spec, 64, derive_seed(cfg.seed, 1), true)) {
    if (pts.size() >= 5) break;
    if (p != origin && f.spec.domain().gauge(p) < 0.9) pts.push_back(std::move(p));
  }
  json items = json::array();
  bool pass = !pts.empty();
  for (const auto& a : pts) {
    const auto rep = psh::lelong_radial(u, a, psh::default_lelong_radii(), 4096, cfg.seed);
    const auto nu = ideal::nu_tilde(f.spec, a);
    const double expect = nu.is_finite() ? nu.value : std::numeric_limits<double>::infinity();
    const bool ok = std::abs(rep.final - expect) <= 0.05;
    pass = pass && ok;
    json pj = json::array();
    for (const auto& c : a) pj.push_back(complex_json(c));
    items.push_back({{"point", pj}, {"lelong", rep.final}, {"nu_tilde", expect}, {"ok", ok}});
  }
  all.push_back({"lelong", pass ? "PASS" : "FAIL", {{"points", items}}});
}

}  // namespace

CommandResult cmd_verify(const IdealFile& f, const VerifyConfig& cfg) {
  static const std::vector<std::string> kSuites{"membership", "product", "pullback", "lelong", "all"};
  if (std::find(kSuites.begin(), kSuites.end(), cfg.suite) == kSuites.end()) {
    throw ParseError("unknown suite '" + cfg.suite + "'");
  }
  CommandResult r;
  const auto m = resolve_model(f);
  const bool all_suites = cfg.suite == "all";
  auto wants = [&](const std::string& s) { return all_suites || cfg.suite == s; };
  std::vector<CheckOutcome> checks;

  auto no_oracle = [&](const std::string& name) {
    checks.push_back({name, "SKIP", {{"reason", "no closed-form oracle for this ideal"}}});
  };
  if (wants("membership")) {
    if (m) {
      membership_checks(f, *m, cfg, checks);
    } else {
      no_oracle("membership");
    }
  }
  if (wants("product")) {
    if (m) {
      product_check(*m, cfg, checks);
    } else {
      no_oracle("product");
    }
  }
  if (wants("pullback")) pullback_check(f, cfg, checks);
  if (wants("lelong")) {
    if (m) {
      lelong_check(f, *m, cfg, checks);
    } else {
      no_oracle("lelong");
    }
  }

  bool pass = true;
  json list = json::array();
  std::ostringstream os;
  for (auto& c : checks) {
    // an explicitly requested suite that cannot run is a failure
    if (c.status == "SKIP" && !all_suites) c.status = "FAIL";
    if (c.status == "FAIL") pass = false;
    os << c.status << ' ' << c.name << '\n';
    list.push_back({{"name", c.name}, {"status", c.status}, {"data", c.data}});
  }
  json report{{"suite", cfg.suite}, {"seed", cfg.seed}, {"model", m ? json(m->name()) : json(nullptr)},
              {"pass", pass}, {"checks", list}};
  os << (pass ? "PASS" : "FAIL") << " overall\n";
  r.out = os.str();
  r.exit_code = pass ? kOk : kCheckFailed;
  if (cfg.out_path) {
    std::ofstream o(*cfg.out_path);
    if (!o || !(o << report.dump(2) << '\n')) {
      r.exit_code = kUnwritable;
      r.err = "cannot write '" + *cfg.out_path + "'\n";
    }
  }
  return r;
}

std::vector<GridAxis> parse_grid_spec(const std::string& text) {
  std::vector<GridAxis> axes;
  for (const auto& tok : split(text, ',')) {
    GridAxis ax;
    if (tok.find(':') == std::string::npos) {
      ax.values.push_back(parse_complex(tok));
    } else {
      std::string range = tok;
      double phase = 0.0;
      if (auto at = tok.find('@'); at != std::string::npos) {
        range = tok.substr(0, at);
        phase = parse_double(tok.substr(at + 1));
      }
      const auto parts = split(range, ':');
      if (parts.size() != 3) throw ParseError("grid axis must be lo:hi:count[@phase]");
      const double lo = parse_double(parts[0]);
      const double hi = parse_double(parts[1]);
      const double cnt = parse_double(parts[2]);
      if (!(cnt >= 1) || cnt != std::floor(cnt) || cnt > 1e6) throw ParseError("grid count must be a positive integer");
      if (lo < 0.0 || hi < 0.0) throw ParseError("grid moduli must be non-negative");
      const auto n = static_cast<std::size_t>(cnt);
      for (std::size_t i = 0; i < n; ++i) {
        const double r = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
        ax.values.push_back(std::polar(r, phase));
      }
    }
    axes.push_back(std::move(ax));
  }
  if (axes.empty()) throw ParseError("empty grid spec");
  return axes;
}

std::string grid_csv(const IdealFile& f, const std::vector<GridAxis>& grid,
                     const envelope::EnvelopeOptions& fallback) {
  const std::size_t n = f.spec.dim();
  if (grid.size() != n) throw ParseError("grid spec needs one axis per coordinate");
  const auto m = resolve_model(f);
  std::ostringstream os;
  for (std::size_t j = 0; j < n; ++j) os << 'z' << j + 1 << "_re,z" << j + 1 << "_im,";
  os << "value,kind\n";
  std::vector<std::size_t> idx(n, 0);
  Point z(n);
  while (true) {
    for (std::size_t j = 0; j < n; ++j) {
      z[j] = grid[j].values[idx[j]];
      os << fmt17(z[j].real()) << ',' << fmt17(z[j].imag()) << ',';
    }
    if (!f.spec.domain().contains_open(z)) {
      os << "nan,outside\n";
    } else if (m) {
      os << models::oracle_eval(*m, z).str() << ",oracle_exact\n";
    } else {
      const auto e = envelope::optimize_envelope(f.spec, z, fallback);
      os << e.value.str() << ',' << envelope::to_string(e.kind) << '\n';
    }
    std::size_t j = n;
    while (j > 0 && ++idx[j - 1] == grid[j - 1].values.size()) idx[--j] = 0;
    if (j == 0) break;
  }
  return os.str();
}

CommandResult cmd_grid(const IdealFile& f, const std::vector<GridAxis>& grid, const std::string& out_path,
                       const envelope::EnvelopeOptions& fallback) {
  CommandResult r;
  const std::string csv = grid_csv(f, grid, fallback);
  std::ofstream o(out_path, std::ios::binary);
  if (!o || !(o << csv) || !o.flush()) {
    r.exit_code = kUnwritable;
    r.err = "cannot write '" + out_path + "'\n";
    return r;
  }
  return r;
}

CommandResult cmd_reduce(const IdealFile& f, std::size_t k, std::size_t trials, std::uint64_t seed) {
  CommandResult r;
  if (k < 1 || k > f.spec.size()) throw ParseError("--k must lie in [1, number of generators]");
  if (trials < 1) throw ParseError("--trials must be positive");
  const auto res = ideal::reduce_generators(f.spec, k, trials, seed);
  const auto& rep = res.report;
  json comb = json::array();
  for (const auto& row : rep.combination) {
    json jr = json::array();
    for (const auto& c : row) jr.push_back(complex_json(c));
    comb.push_back(jr);
  }
  json j{{"status", rep.success ? "SUCCESS" : "FAILURE"},
         {"target_k", k},
         {"trials", trials},
         {"seed", seed},
         {"trial", rep.trial},
         {"max_log_diff", std::isfinite(rep.max_log_diff) ? json(rep.max_log_diff) : json("inf")},
         {"mean_log_diff", rep.mean_log_diff},
         {"declared_bound", rep.declared_bound},
         {"probes_used", rep.probes_used},
         {"combination", comb},
         {"reduced", json::parse(serialize_ideal_file({res.reduced, std::nullopt}))}};
  r.out = j.dump(2) + "\n";
  r.exit_code = rep.success ? kOk : kCheckFailed;
  return r;
}

// --------------------------------------------------------------------- run

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pluricomplex Green functions: closed forms, disc envelopes, verification"};
  app.require_subcommand(1);

  std::string file, point, suite = "all", map, spec, out_path;
  std::size_t degree = 4, restarts = 20, budget = 500, k = 1, trials = 16;
  std::uint64_t seed = 0;
  bool use_envelope = false, no_templates = false;
  double inject = 0.0;

  std::vector<CLI::Option*> seed_opts;
  auto add_env_flags = [&](CLI::App* c) {
    c->add_option("--degree", degree, "Disc degree")->check(CLI::Range(1, 12));
    c->add_option("--restarts", restarts, "Random restarts");
    c->add_option("--budget", budget, "Objective evaluations per restart");
    seed_opts.push_back(c->add_option("--seed", seed, "Random seed"));
    c->add_flag("--no-templates", no_templates, "Disable structural starts");
  };

  auto* eval = app.add_subcommand("eval", "Closed-form value at a point");
  eval->add_option("file", file, "Ideal file")->required();
  eval->add_option("--point", point, "Point, comma-separated re+imi tokens")->required();
  eval->add_flag("--envelope", use_envelope, "Fall back to the disc envelope without an oracle");
  add_env_flags(eval);

  auto* env = app.add_subcommand("envelope", "Disc-envelope upper bound with witness");
  env->add_option("file", file, "Ideal file")->required();
  env->add_option("--point", point, "Point")->required();
  add_env_flags(env);
  seed_opts.back()->required();

  auto* ver = app.add_subcommand("verify", "Oracle verification suites");
  ver->add_option("file", file, "Ideal file")->required();
  ver->add_option("--suite", suite, "membership|product|pullback|lelong|all");
  ver->add_option("--seed", seed, "Random seed")->required();
  ver->add_option("--map", map, "Power map exponents k1,k2,...");
  ver->add_option("--out", out_path, "JSON report path");
  ver->add_option("--inject-offset", inject, "Add a constant to the oracle")->group("");

  auto* grid = app.add_subcommand("grid", "CSV of values on a grid");
  grid->add_option("file", file, "Ideal file")->required();
  grid->add_option("--spec", spec, "lo:hi:count[@phase] or value, one per coordinate")->required();
  grid->add_option("--out", out_path, "CSV path")->required();
  add_env_flags(grid);

  auto* red = app.add_subcommand("reduce", "Random generator reduction");
  red->add_option("file", file, "Ideal file")->required();
  red->add_option("--k", k, "Target number of generators")->required();
  red->add_option("--trials", trials, "Random draws");
  red->add_option("--seed", seed, "Random seed")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kParseError;
  }

  envelope::EnvelopeOptions opt;
  opt.degree = degree;
  opt.restarts = restarts;
  opt.budget = budget;
  opt.seed = seed;
  opt.templates = !no_templates;

  const bool seed_given = std::any_of(seed_opts.begin(), seed_opts.end(), [](CLI::Option* o) { return o->count() > 0; });

  try {
    const IdealFile f = load_ideal_file(file);
    // the envelope is stochastic, so it never runs on an implicit seed
    if (!seed_given && (*eval ? use_envelope : static_cast<bool>(*grid)) && !resolve_model(f)) {
      throw ParseError("--seed is required when values come from the envelope");
    }
    CommandResult r;
    if (*eval) {
      r = cmd_eval(f, parse_point(point), use_envelope, opt);
    } else if (*env) {
      r = cmd_envelope(f, parse_point(point), opt);
    } else if (*ver) {
      VerifyConfig cfg;
      cfg.suite = suite;
      cfg.seed = seed;
      cfg.inject_offset = inject;
      if (!map.empty()) {
        std::vector<std::uint32_t> ks;
        for (const auto& t : split(map, ',')) {
          const double v = parse_double(t);
          if (v < 1 || v != std::floor(v) || v > 64) throw ParseError("--map entries must be integers in [1, 64]");
          ks.push_back(static_cast<std::uint32_t>(v));
        }
        cfg.map = ks;
      }
      if (!out_path.empty()) cfg.out_path = out_path;
      r = cmd_verify(f, cfg);
    } else if (*grid) {
      r = cmd_grid(f, parse_grid_spec(spec), out_path, opt);
    } else {
      r = cmd_reduce(f, k, trials, seed);
    }
    out << r.out;
    err << r.err;
    return r.exit_code;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const ContractViolation& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  }
}

}  // namespace green::cli

#include "cli.hpp"

#include "hartree/field_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <locale>
#include <map>
#include <sstream>

namespace hartree::cli {

using nlohmann::json;
using ojson = nlohmann::ordered_json;
namespace fs = std::filesystem;

//==============================================================================
// RunConfig parsing
namespace {

void check_keys(const json &j, std::initializer_list<std::string_view> allowed,
                const std::string &where) {
  if (!j.is_object())
    throw ConfigError(where + " must be a JSON object");
  for (const auto &item : j.items())
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end())
      throw ConfigError("unknown key '" + where + "." + item.key() + "'");
}

double get_number(const json &j, const char *key, const std::string &where) {
  const auto &v = j.at(key);
  if (!v.is_number())
    throw ConfigError(where + "." + key + " must be a number");
  return v.get<double>();
}

long long get_integer(const json &j, const char *key, const std::string &where) {
  const auto &v = j.at(key);
  if (!v.is_number_integer())
    throw ConfigError(where + "." + key + " must be an integer");
  return v.get<long long>();
}

template <class T, class Get>
void maybe(const json &j, const char *key, T &dst, Get get) {
  if (j.contains(key))
    dst = static_cast<T>(get(key));
}

} // namespace

RunConfig parse_run_config(const std::string &json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error &e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  check_keys(root, {"params", "grid", "solver", "diagnostics", "output"}, "config");

  RunConfig rc;
  if (root.contains("params")) {
    const auto &j = root["params"];
    check_keys(j, {"N", "alpha", "p", "q"}, "params");
    maybe(j, "N", rc.N, [&](const char *k) { return get_integer(j, k, "params"); });
    maybe(j, "alpha", rc.alpha, [&](const char *k) { return get_number(j, k, "params"); });
    if (j.contains("p"))
      rc.p = get_number(j, "p", "params");
    if (j.contains("q"))
      rc.q = get_number(j, "q", "params");
  }
  if (root.contains("grid")) {
    const auto &j = root["grid"];
    check_keys(j, {"L", "M"}, "grid");
    maybe(j, "L", rc.L, [&](const char *k) { return get_number(j, k, "grid"); });
    if (j.contains("M")) {
      const long long M = get_integer(j, "M", "grid");
      if (M <= 0)
        throw ConfigError("grid.M must be positive");
      rc.M = static_cast<std::size_t>(M);
    }
  }
  if (root.contains("solver")) {
    const auto &j = root["solver"];
    const std::string w = "solver";
    check_keys(j, {"init", "seed", "step0", "tol", "max_iters", "symmetrize_every", "force"}, w);
    if (j.contains("init")) {
      if (!j["init"].is_string())
        throw ConfigError("solver.init must be \"gaussian\" or \"random\"");
      rc.init = j["init"].get<std::string>();
      if (rc.init != "gaussian" && rc.init != "random")
        throw ConfigError("solver.init must be \"gaussian\" or \"random\"");
    }
    if (j.contains("seed")) {
      if (!j["seed"].is_number_unsigned())
        throw ConfigError("solver.seed must be a non-negative integer");
      rc.seed = j["seed"].get<std::uint64_t>();
    }
    maybe(j, "step0", rc.step0, [&](const char *k) { return get_number(j, k, w); });
    maybe(j, "tol", rc.tol, [&](const char *k) { return get_number(j, k, w); });
    maybe(j, "max_iters", rc.max_iters, [&](const char *k) { return get_integer(j, k, w); });
    maybe(j, "symmetrize_every", rc.symmetrize_every,
          [&](const char *k) { return get_integer(j, k, w); });
    if (j.contains("force")) {
      if (!j["force"].is_boolean())
        throw ConfigError("solver.force must be a boolean");
      rc.force = j["force"].get<bool>();
    }
  }
  if (root.contains("diagnostics")) {
    const auto &j = root["diagnostics"];
    check_keys(j, {"windows"}, "diagnostics");
    if (j.contains("windows")) {
      if (!j["windows"].is_array())
        throw ConfigError("diagnostics.windows must be an array of [r_lo, r_hi]");
      for (const auto &win : j["windows"]) {
        if (!win.is_array() || win.size() != 2 || !win[0].is_number() || !win[1].is_number())
          throw ConfigError("diagnostics.windows entries must be [r_lo, r_hi]");
        rc.windows.push_back({win[0].get<double>(), win[1].get<double>()});
      }
    }
  }
  if (root.contains("output")) {
    const auto &j = root["output"];
    check_keys(j, {"dir"}, "output");
    if (j.contains("dir")) {
      if (!j["dir"].is_string())
        throw ConfigError("output.dir must be a string");
      rc.output_dir = j["dir"].get<std::string>();
    }
  }
  return rc;
}

SolveConfig to_solve_config(const RunConfig &rc) {
  if (!rc.p || !rc.q)
    throw ConfigError("params.p and params.q are required");
  try {
    SolveConfig cfg(ProblemParams(rc.N, rc.alpha, *rc.p, *rc.q), GridSpec(rc.N, rc.L, rc.M));
    if (rc.init == "random")
      cfg.init = RandomInit{rc.seed};
    cfg.step0 = rc.step0;
    cfg.tol_residual = rc.tol;
    cfg.max_iters = rc.max_iters;
    cfg.symmetrize_every = rc.symmetrize_every;
    cfg.force = rc.force;
    cfg.validate();
    return cfg;
  } catch (const std::invalid_argument &e) {
    throw ConfigError(e.what());
  }
}

//==============================================================================
// Sweep specification
namespace {

double parse_double(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
    throw ConfigError("malformed number '" + std::string(s) + "' in sweep spec");
  return v;
}

int parse_count(std::string_view s) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || v < 1)
    throw ConfigError("malformed count '" + std::string(s) + "' in sweep spec");
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos)
      return out;
    start = pos + 1;
  }
}

SweepAxis parse_axis(std::string_view s) {
  const auto parts = split(s, ':');
  if (parts.size() != 3)
    throw ConfigError("sweep axis must be lo:hi:count, got '" + std::string(s) + "'");
  SweepAxis a{parse_double(parts[0]), parse_double(parts[1]), parse_count(parts[2])};
  if (!(a.lo > 1.0) || !(a.hi > 1.0))
    throw ConfigError("sweep exponents must exceed 1");
  return a;
}

} // namespace

std::vector<double> SweepAxis::values() const {
  std::vector<double> v(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    v[static_cast<std::size_t>(i)] =
        count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (count - 1);
  return v;
}

std::pair<SweepAxis, SweepAxis> parse_sweep_spec(const std::string &spec) {
  const auto parts = split(spec, ',');
  if (parts.size() != 2)
    throw ConfigError("sweep spec must be \"p0:p1:n,q0:q1:m\"");
  return {parse_axis(parts[0]), parse_axis(parts[1])};
}

//==============================================================================
// JSON helpers
namespace {

ojson number(double x) { return std::isfinite(x) ? ojson(x) : ojson(nullptr); }

ojson classification_json(const ProblemParams &pp) {
  ojson j;
  const auto ex = classify_existence(pp);
  j["existence"] = std::string(to_string(ex.tag));
  j["lower_line_margin"] = number(ex.lower_line_margin);
  j["upper_line_margin"] = number(ex.upper_line_margin);
  const auto th = theta_interval(pp);
  if (th.empty()) {
    j["theta_interval"] = nullptr;
  } else {
    j["theta_interval"] = {{"lower", th.lower}, {"upper", th.upper},
                           {"inv_theta1", th.inv_theta1}, {"theta1", th.theta1},
                           {"theta2", th.theta2}};
  }
  if (ex.tag == Existence::ExistsH1) {
    const auto reg = classify_regularity(pp);
    j["regularity"] = {{"region", std::string(to_string(reg.region))},
                       {"sub_case", reg.sub_case},
                       {"r_bar", reg.r_bar},
                       {"h_bar", reg.h_bar}};
    const auto dc = decay_case(pp);
    auto comp = [](const ComponentDecay &c) {
      return ojson{{"kind", std::string(to_string(c.kind))},
                   {"algebraic_exponent", number(c.algebraic_exponent)},
                   {"limit_coefficient", number(c.limit_coefficient)}};
    };
    j["decay"] = {{"u", comp(dc.u)}, {"v", comp(dc.v)}, {"extra_ok", dc.extra_ok}};
  } else {
    j["regularity"] = nullptr;
    j["decay"] = nullptr;
  }
  return j;
}

int existence_exit_code(Existence e) {
  switch (e) {
  case Existence::ExistsH1:
    return kOk;
  case Existence::NonexistenceLowerLine:
  case Existence::NonexistenceUpperLine:
    return kRefused;
  case Existence::OutsideTheory:
    return kOutsideTheory;
  }
  return kOutsideTheory;
}

ojson fit_json(const DecayFit &f) {
  return ojson{{"component", std::string(1, f.component)},
               {"kind", std::string(to_string(f.kind))},
               {"window", {f.window.r_lo, f.window.r_hi}},
               {"bins", f.bins},
               {"fitted", number(f.fitted)},
               {"predicted", number(f.predicted)},
               {"r_squared", number(f.r_squared)},
               {"limit_estimate", number(f.limit_estimate)},
               {"limit_predicted", number(f.limit_predicted)},
               {"variation", number(f.variation)},
               {"theory_applicable", f.theory_applicable}};
}

ojson hls_json(const HlsAudit &a) {
  return ojson{{"theta1", a.theta1},
               {"theta2", a.theta2},
               {"pairing_ratio", number(a.pairing_ratio)},
               {"potential_ratio", number(a.potential_ratio)}};
}

std::string read_file(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::ofstream open_text(const fs::path &path) {
  std::ofstream os(path, std::ios::binary);
  if (!os)
    throw std::runtime_error("cannot write " + path.string());
  os.imbue(std::locale::classic());
  os << std::setprecision(17);
  return os;
}

} // namespace

//==============================================================================
int cmd_check(int N, double alpha, double p, double q, bool as_json,
              std::ostream &out, std::ostream &err) {
  std::optional<ProblemParams> pp;
  try {
    pp.emplace(N, alpha, p, q);
  } catch (const std::invalid_argument &e) {
    err << "check: " << e.what() << "\n";
    return kUsage;
  }
  const auto j = classification_json(*pp);
  const auto tag = classify_existence(*pp).tag;
  if (as_json) {
    ojson doc{{"params", {{"N", N}, {"alpha", alpha}, {"p", p}, {"q", q}}}};
    doc.update(j);
    out << doc.dump(2) << "\n";
    return existence_exit_code(tag);
  }

  out << std::setprecision(12);
  out << "params      N=" << N << " alpha=" << alpha << " p=" << p << " q=" << q << "\n";
  out << "existence   " << j["existence"].get<std::string>() << "\n";
  if (j["theta_interval"].is_null()) {
    out << "theta       empty\n";
  } else {
    const auto &t = j["theta_interval"];
    out << "theta       1/theta1 in (" << t["lower"].get<double>() << ", "
        << t["upper"].get<double>() << "), theta1=" << t["theta1"].get<double>()
        << " theta2=" << t["theta2"].get<double>() << "\n";
  }
  if (j["regularity"].is_null()) {
    out << "region      n/a (H1 fails)\n";
  } else {
    const auto &r = j["regularity"];
    out << "region      " << r["region"].get<std::string>() << " sub-case "
        << r["sub_case"].get<int>() << ", r_bar=" << r["r_bar"].get<double>()
        << " h_bar=" << r["h_bar"].get<double>() << "\n";
    const auto &d = j["decay"];
    for (const char *c : {"u", "v"}) {
      out << "decay " << c << "     " << d[c]["kind"].get<std::string>();
      if (!d[c]["algebraic_exponent"].is_null())
        out << " exponent=" << d[c]["algebraic_exponent"].get<double>();
      out << "\n";
    }
    out << "extra_ok    " << (d["extra_ok"].get<bool>() ? "true" : "false") << "\n";
  }
  return existence_exit_code(tag);
}

//==============================================================================
namespace {

void write_profile(const fs::path &path, const Functional &fn, const StatePair &w) {
  const auto center = w.spec().unravel(w.u.argmax_abs());
  const auto pu = radial_profile(w.u, center);
  const auto pv = radial_profile(w.v, center);
  const auto iav = radial_profile(fn.potential_v(w.v), center);
  const auto iau = radial_profile(fn.potential_u(w.u), center);
  auto os = open_text(path);
  os << "r,u_mean,v_mean,u_max,v_max,Iav_mean,Iau_mean\r\n";
  for (std::size_t j = 0; j < pu.bins(); ++j)
    os << pu.radius[j] << ',' << pu.mean[j] << ',' << pv.mean[j] << ','
       << pu.max_abs[j] << ',' << pv.max_abs[j] << ',' << iav.mean[j] << ','
       << iau.mean[j] << "\r\n";
}

ojson diagnostics_json(const Functional &fn, const StatePair &w,
                       const std::vector<FitWindow> &windows) {
  const auto &pp = fn.params();
  ojson d;
  d["pohozaev_residual"] = number(pohozaev_residual(fn, w));
  ojson sym;
  for (const auto &[name, f] : {std::pair{"u", &w.u}, std::pair{"v", &w.v}}) {
    try {
      sym[name] = number(symmetry_deviation(*f));
    } catch (const std::exception &e) {
      sym[name] = ojson{{"error", e.what()}};
    }
  }
  d["symmetry_deviation"] = sym;

  ojson fits = ojson::array();
  for (const auto &win : windows) {
    ojson entry{{"window", {win.r_lo, win.r_hi}}};
    for (char c : {'u', 'v'}) {
      const std::string key(1, c);
      try {
        entry[key] = fit_json(fit_decay_component(w, pp, win, c));
      } catch (const std::exception &e) {
        entry[key] = ojson{{"error", e.what()}};
      }
    }
    fits.push_back(entry);
  }
  d["decay_fits"] = fits;

  try {
    ojson h;
    h["solution"] = hls_json(hls_audit(fn, w));
    const auto dil = hls_dilation_audit(fn, w);
    ojson fam = ojson::array();
    for (std::size_t i = 0; i < dil.lambdas.size(); ++i) {
      auto a = hls_json(dil.audits[i]);
      a["lambda"] = dil.lambdas[i];
      fam.push_back(a);
    }
    h["dilations"] = fam;
    h["pairing_spread"] = number(dil.pairing_spread);
    h["potential_spread"] = number(dil.potential_spread);
    d["hls_audit"] = h;
  } catch (const std::exception &e) {
    d["hls_audit"] = ojson{{"error", e.what()}};
  }
  return d;
}

} // namespace

int cmd_solve(const fs::path &config, const std::optional<fs::path> &out_dir,
              bool verbose, std::ostream &out, std::ostream &err) {
  std::string text;
  try {
    text = read_file(config);
  } catch (const std::exception &e) {
    err << "solve: " << e.what() << "\n";
    return kNoInput;
  }
  RunConfig rc;
  std::optional<SolveConfig> cfg;
  try {
    rc = parse_run_config(text);
    cfg.emplace(to_solve_config(rc));
  } catch (const ConfigError &e) {
    err << "solve: " << e.what() << "\n";
    return kUsage;
  }
  const auto tag = classify_existence(cfg->params).tag;
  if (!cfg->force && tag != Existence::ExistsH1) {
    err << "solve: " << NonexistenceRefused().what() << " (" << to_string(tag) << ")\n";
    return kRefused;
  }
  fs::path dir;
  if (out_dir)
    dir = *out_dir;
  else if (!rc.output_dir.empty())
    dir = rc.output_dir;
  else {
    err << "solve: no output directory (use --out or output.dir)\n";
    return kUsage;
  }

  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    err << "solve: cannot create " << dir << ": " << ec.message() << "\n";
    return kNotConverged;
  }

  const auto start = std::chrono::steady_clock::now();
  Solver solver(*cfg);
  std::vector<IterationRecord> history;
  std::string failure;
  bool converged = false;
  SolveReport summary;
  try {
    auto [w, report] = solver.solve([&](const IterationRecord &r) {
      history.push_back(r);
      if (verbose && r.iteration % 100 == 0)
        err << "iter " << r.iteration << "  I=" << std::setprecision(15) << r.energy
            << "  residual=" << std::setprecision(4) << r.residual << "\n";
    });
    converged = report.converged;
    summary = std::move(report);
  } catch (const Stagnation &e) {
    failure = e.what();
  }
  const auto &w = solver.state();
  const auto &fn = solver.functional();
  const auto windows = rc.windows.empty() ? staggered_windows(cfg->spec) : rc.windows;

  ojson rep;
  rep["params"] = {{"N", rc.N}, {"alpha", rc.alpha}, {"p", *rc.p}, {"q", *rc.q}};
  rep["grid"] = {{"L", rc.L}, {"M", rc.M}, {"h", cfg->spec.h()}};
  rep["solver"] = {{"init", rc.init}, {"seed", rc.seed}, {"step0", rc.step0},
                   {"tol", rc.tol}, {"max_iters", rc.max_iters},
                   {"symmetrize_every", rc.symmetrize_every}, {"force", rc.force}};
  rep["classification"] = classification_json(cfg->params);
  rep["converged"] = converged;
  if (!failure.empty())
    rep["error"] = failure;
  rep["iterations"] = history.size();
  const auto &e = solver.energy();
  rep["c_N"] = number(e.energy_I);
  rep["final_residual"] = number(solver.residual());
  rep["final_energy"] = {{"e_norm_sq", number(e.e_norm_sq)},
                         {"d_interaction", number(e.d_interaction)},
                         {"energy_I", number(e.energy_I)},
                         {"nehari_P", number(e.nehari_P)}};
  ojson hist = ojson::array();
  for (const auto &r : history)
    hist.push_back({{"iteration", r.iteration}, {"I", number(r.energy)},
                    {"residual", number(r.residual)}, {"nehari_scale", number(r.nehari_scale)},
                    {"step", number(r.step)}, {"halvings", r.halvings},
                    {"symmetrized", r.symmetrized}});
  rep["history"] = hist;
  rep["symmetrization"] = {{"accepted", summary.symmetrizations_accepted},
                           {"rejected", summary.symmetrizations_rejected},
                           {"recentered", summary.recenterings}};
  rep["diagnostics"] = diagnostics_json(fn, w, windows);

  try {
    write_field(dir / "u.hfld", w.u);
    write_field(dir / "v.hfld", w.v);
    write_profile(dir / "profile.csv", fn, w);
    // Timing lives apart from the reproducible numbers.
    rep["timing"] = {{"wall_seconds", std::chrono::duration<double>(
                                          std::chrono::steady_clock::now() - start)
                                          .count()}};
    auto os = open_text(dir / "report.json");
    os << rep.dump(2) << "\n";
  } catch (const std::exception &ex) {
    err << "solve: " << ex.what() << "\n";
    return kNotConverged;
  }

  out << std::setprecision(12) << "converged " << (converged ? "true" : "false")
      << "  iterations " << history.size() << "  c_N " << e.energy_I << "  residual "
      << std::setprecision(4) << solver.residual() << "\n";
  if (!failure.empty())
    err << "solve: " << failure << "\n";
  return converged ? kOk : kNotConverged;
}

//==============================================================================
int cmd_sweep(const fs::path &config, const std::string &grid_pq,
              const std::optional<fs::path> &out_dir, std::ostream &out,
              std::ostream &err) {
  std::string text;
  try {
    text = read_file(config);
  } catch (const std::exception &e) {
    err << "sweep: " << e.what() << "\n";
    return kNoInput;
  }
  RunConfig rc;
  std::pair<SweepAxis, SweepAxis> axes;
  try {
    rc = parse_run_config(text);
    axes = parse_sweep_spec(grid_pq);
    ProblemParams(rc.N, rc.alpha, 2.0, 2.0);
  } catch (const ConfigError &e) {
    err << "sweep: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument &e) {
    err << "sweep: " << e.what() << "\n";
    return kUsage;
  }
  fs::path dir = out_dir ? *out_dir : fs::path(rc.output_dir);
  if (dir.empty()) {
    err << "sweep: no output directory (use --out or output.dir)\n";
    return kUsage;
  }
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    err << "sweep: cannot create " << dir << ": " << ec.message() << "\n";
    return kNotConverged;
  }

  std::map<std::string, int> counts;
  try {
    auto os = open_text(dir / "regions.csv");
    os << "p,q,existence_class,regularity_region,r_bar,h_bar,decay_case_u,decay_case_v\r\n";
    for (double p : axes.first.values())
      for (double q : axes.second.values()) {
        const ProblemParams pp(rc.N, rc.alpha, p, q);
        const auto tag = classify_existence(pp).tag;
        ++counts[std::string(to_string(tag))];
        os << p << ',' << q << ',' << to_string(tag);
        if (tag == Existence::ExistsH1) {
          const auto reg = classify_regularity(pp);
          const auto dc = decay_case(pp);
          ++counts[std::string("region ") + std::string(to_string(reg.region))];
          os << ',' << to_string(reg.region) << ',' << reg.r_bar << ',' << reg.h_bar << ','
             << to_string(dc.u.kind) << ',' << to_string(dc.v.kind);
        } else {
          os << ",,,,,";
        }
        os << "\r\n";
      }
  } catch (const std::exception &e) {
    err << "sweep: " << e.what() << "\n";
    return kNotConverged;
  }
  for (const auto &[k, n] : counts)
    out << k << ' ' << n << "\n";
  return kOk;
}

//==============================================================================
namespace {

constexpr const char *kConfigHelp = R"(RunConfig JSON (unknown keys are rejected; defaults in brackets):
  params.N [3]  params.alpha [2]  params.p, params.q (required for solve)
  grid.L [8]  grid.M [64] (power of two >= 16)
  solver.init ["gaussian": u = v = exp(-|x|^2) | "random"]  solver.seed [0]
  solver.step0 [0.5]  solver.tol [1e-6]  solver.max_iters [5000]
  solver.symmetrize_every [10] (0 disables)  solver.force [false]
  diagnostics.windows [[0.3L,0.6L],[0.35L,0.7L],[0.4L,0.8L]] as [[r_lo,r_hi],...]
  output.dir (overridden by --out)
Exit codes: 0 ok/converged, 1 not converged or I/O failure, 2 refused
(nonexistence or unsupported parameters), 3 outside theory (check),
64 usage error, 66 unreadable input.)";

} // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Ground states of coupled Choquard systems on a periodic grid."};
  app.require_subcommand(1);
  app.footer(kConfigHelp);

  int N = 0;
  double alpha = 0, p = 0, q = 0;
  bool as_json = false;
  auto *check = app.add_subcommand("check", "Classify (N, alpha, p, q); no solve.");
  check->add_option("--N", N, "Dimension (1, 2 or 3)")->required();
  check->add_option("--alpha", alpha, "Riesz order in (0, N)")->required();
  check->add_option("--p", p, "Exponent p > 1")->required();
  check->add_option("--q", q, "Exponent q > 1")->required();
  check->add_flag("--json", as_json, "Print the report as JSON");

  std::string config, out_dir, grid_pq;
  bool verbose = false;
  auto *solve = app.add_subcommand("solve", "Compute a ground state and its diagnostics.");
  solve->add_option("--config", config, "RunConfig JSON file")->required();
  solve->add_option("--out", out_dir, "Output directory");
  solve->add_flag("--verbose", verbose, "Progress on stderr every 100 iterations");
  solve->footer(kConfigHelp);

  auto *sweep = app.add_subcommand("sweep", "Classify a (p, q) grid into regions.csv.");
  sweep->add_option("--config", config, "RunConfig JSON (params.N, params.alpha)")->required();
  sweep->add_option("--grid-pq", grid_pq, "\"p0:p1:n,q0:q1:m\" inclusive ranges")->required();
  sweep->add_option("--out", out_dir, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError &e) {
    app.exit(e, out, err);
    return kUsage;
  }

  auto maybe_dir = [&]() -> std::optional<fs::path> {
    if (out_dir.empty())
      return std::nullopt;
    return fs::path(out_dir);
  };
  try {
    if (check->parsed())
      return cmd_check(N, alpha, p, q, as_json, out, err);
    if (solve->parsed())
      return cmd_solve(config, maybe_dir(), verbose, out, err);
    return cmd_sweep(config, grid_pq, maybe_dir(), out, err);
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return kNotConverged;
  }
}

} // namespace hartree::cli

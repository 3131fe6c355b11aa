#include "rnm/run_config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "rnm/errors.hpp"

namespace rnm {

namespace pt = boost::property_tree;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

double to_double(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto r = std::from_chars(t.data(), t.data() + t.size(), v);
  if (r.ec != std::errc() || r.ptr != t.data() + t.size()) throw ConfigError(key + ": not a number: '" + text + "'");
  return v;
}

long long to_int(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  long long v = 0;
  const auto r = std::from_chars(t.data(), t.data() + t.size(), v);
  if (r.ec != std::errc() || r.ptr != t.data() + t.size()) throw ConfigError(key + ": not an integer: '" + text + "'");
  return v;
}

void apply_tree(RunConfig& c, const pt::ptree& tree) {
  static const std::set<std::string> known{
      "potential.preset", "potential.terms",  "weight.alpha",      "weight.u",        "weight.u_im",
      "weight.a",         "weight.rho",       "weight.rho_frac",   "weight.delta",    "run.n",
      "run.sweep",        "run.grid",         "run.quad_rel_tol",  "run.x_cutoff",    "run.tail_order",
      "run.threads",      "run.jmax",         "mc.reps",           "mc.seed",         "mc.grid_size",
      "output.format",    "output.path"};
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) throw ConfigError("key outside a section: " + section);
    for (const auto& [key, node] : body) {
      const std::string full = section + "." + key;
      if (!known.count(full)) throw ConfigError("unknown config key: " + full);
      const std::string v = node.data();
      if (full == "potential.preset") {
        const RunConfig p = preset_config(trim(v));
        c.potential = p.potential;
        c.terms = p.terms;
      } else if (full == "potential.terms") {
        c.terms = parse_terms(v);
        c.potential = "monomial";
      } else if (full == "weight.alpha") {
        c.alpha = to_double(full, v);
      } else if (full == "weight.u") {
        c.u.real(to_double(full, v));
      } else if (full == "weight.u_im") {
        c.u.imag(to_double(full, v));
      } else if (full == "weight.a") {
        c.a = to_double(full, v);
      } else if (full == "weight.rho") {
        c.rho = to_double(full, v);
        c.rho_frac.reset();
      } else if (full == "weight.rho_frac") {
        c.rho_frac = to_double(full, v);
        c.rho.reset();
      } else if (full == "weight.delta") {
        c.delta = to_double(full, v);
      } else if (full == "run.n") {
        c.n_list = parse_n_list(v);
      } else if (full == "run.sweep") {
        c.sweep = parse_sweep(v);
      } else if (full == "run.grid") {
        c.grid = parse_grid(v);
      } else if (full == "run.quad_rel_tol") {
        c.exact.quad_rel_tol = to_double(full, v);
      } else if (full == "run.x_cutoff") {
        c.reg.x_cutoff = to_double(full, v);
      } else if (full == "run.tail_order") {
        c.reg.tail_order = static_cast<int>(to_int(full, v));
      } else if (full == "run.threads") {
        c.exact.threads = static_cast<int>(to_int(full, v));
      } else if (full == "run.jmax") {
        c.jmax = static_cast<int>(to_int(full, v));
      } else if (full == "mc.reps") {
        c.reps = static_cast<int>(to_int(full, v));
      } else if (full == "mc.seed") {
        const long long s = to_int(full, v);
        if (s < 0) throw ConfigError("mc.seed must be nonnegative");
        c.seed = static_cast<std::uint64_t>(s);
      } else if (full == "mc.grid_size") {
        c.mc_grid = static_cast<int>(to_int(full, v));
      } else if (full == "output.format") {
        c.format = trim(v);
      } else if (full == "output.path") {
        c.out_path = trim(v);
      }
    }
  }
}

}  // namespace

std::vector<double> GridSpec::points() const {
  std::vector<double> p;
  if (count == 1) return {lo};
  for (int k = 0; k < count; ++k) p.push_back(lo + (hi - lo) * k / (count - 1));
  return p;
}

PotentialModel RunConfig::model() const {
  if (potential == "ginibre") return PotentialModel::ginibre();
  if (potential == "figure1") return PotentialModel::figure1();
  return PotentialModel::monomials(terms, potential);
}

double RunConfig::resolve_rho(const PotentialModel& m) const {
  if (rho) return *rho;
  return *rho_frac * r1_solve(m).r1;
}

SingularWeightParams RunConfig::params(const PotentialModel& m) const {
  SingularWeightParams p;
  p.u = u;
  p.a = a;
  p.rho = resolve_rho(m);
  p.delta = delta;
  return p;
}

void RunConfig::validate() const {
  if (terms.empty()) throw ConfigError("potential.terms: at least one term is required");
  try {
    const PotentialModel m = model();
    const AssumptionReport rep = validate_assumptions(m);
    for (const auto& ch : rep.checks)
      if (!ch.pass) throw ConfigError("potential: assumption '" + ch.name + "' fails: " + ch.detail);
    if (!(alpha > -1.0)) throw ConfigError("weight.alpha must exceed -1");
    if (!(a > -1.0)) throw ConfigError("weight.a must exceed -1");
    if (!(delta > 0.0)) throw ConfigError("weight.delta must be positive");
    if (std::abs(u.imag()) > delta) throw ConfigError("weight.u_im must satisfy |Im u| <= weight.delta");
    if (rho.has_value() == rho_frac.has_value()) throw ConfigError("weight: set exactly one of rho and rho_frac");
    if (rho_frac && !(*rho_frac > 0.0 && *rho_frac < 1.0)) throw ConfigError("weight.rho_frac must lie in (0, 1)");
    const double r1 = r1_solve(m).r1;
    if (rho && !(*rho > 0.0 && *rho < r1))
      throw ConfigError("weight.rho must lie in (0, r1) with r1 = " + std::to_string(r1));
    if (sweep == Sweep::rho) {
      const double lo = std::min(grid.lo, grid.hi), hi = std::max(grid.lo, grid.hi);
      if (!(lo > 0.0 && hi < 1.0)) throw ConfigError("run.grid: a rho sweep takes fractions of r1 inside (0, 1)");
    }
    if (sweep == Sweep::a && !(std::min(grid.lo, grid.hi) > -1.0)) throw ConfigError("run.grid: a sweep needs a > -1");
  } catch (const DomainError& e) {
    throw ConfigError(std::string("potential: ") + e.what());
  } catch (const ConvergenceError& e) {
    throw ConfigError(std::string("potential: ") + e.what());
  }
  if (n_list.empty()) throw ConfigError("run.n: at least one n is required");
  for (int n : n_list)
    if (n < 1) throw ConfigError("run.n: entries must be positive integers");
  if (sweep != Sweep::none && grid.count < 1) throw ConfigError("run.grid: count must be positive");
  if (jmax < 1 || jmax > 8) throw ConfigError("run.jmax must lie in 1..8");
  if (reps < 2) throw ConfigError("mc.reps must be at least 2");
  if (mc_grid < 16) throw ConfigError("mc.grid_size must be at least 16");
  if (format != "csv" && format != "json") throw ConfigError("output.format must be csv or json");
  try {
    exact.validate();
    reg.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("run: ") + e.what());
  }
}

RunConfig preset_config(const std::string& name) {
  RunConfig c;
  if (name == "ginibre") return c;
  if (name == "figure1a" || name == "figure1b" || name == "figure1") {
    c.potential = "figure1";
    c.terms = {{0.2, 2.0}, {0.2345, 3.0}};
    c.alpha = 0.667;
    c.u = 1.56;
    c.rho_frac = 0.71;
    if (name == "figure1a") {
      c.n_list = {10, 40, 160};
      c.sweep = Sweep::a;
      c.grid = {-0.5, 3.0, 15};
    } else if (name == "figure1b") {
      c.a = 1.25;
      c.n_list = {100, 300, 600};
      c.sweep = Sweep::rho;
      c.grid = {0.2, 0.9, 15};
    }
    return c;
  }
  throw ConfigError("unknown preset '" + name + "' (expected ginibre, figure1a or figure1b)");
}

RunConfig parse_config_string(const std::string& text, RunConfig base) {
  std::istringstream in(text);
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  apply_tree(base, tree);
  return base;
}

RunConfig load_config(const std::string& path, RunConfig base) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config_string(ss.str(), std::move(base));
}

std::vector<int> parse_n_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& item : split(text, ',')) {
    if (item.empty()) continue;
    const long long v = to_int("run.n", item);
    if (v < 1 || v > 100000) throw ConfigError("run.n: entries must lie in 1..100000");
    out.push_back(static_cast<int>(v));
  }
  if (out.empty()) throw ConfigError("run.n: empty list");
  return out;
}

GridSpec parse_grid(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw ConfigError("run.grid: expected lo:hi:count, got '" + text + "'");
  GridSpec g;
  g.lo = to_double("run.grid", parts[0]);
  g.hi = to_double("run.grid", parts[1]);
  const long long c = to_int("run.grid", parts[2]);
  if (c < 1 || c > 10000) throw ConfigError("run.grid: count must lie in 1..10000");
  g.count = static_cast<int>(c);
  return g;
}

Sweep parse_sweep(const std::string& text) {
  const std::string t = trim(text);
  if (t == "a") return Sweep::a;
  if (t == "rho") return Sweep::rho;
  if (t == "none" || t.empty()) return Sweep::none;
  throw ConfigError("run.sweep must be a, rho or none");
}

std::vector<MonomialTerm> parse_terms(const std::string& text) {
  std::vector<MonomialTerm> out;
  for (const auto& item : split(text, ',')) {
    if (item.empty()) continue;
    const auto cp = split(item, ':');
    if (cp.size() != 2) throw ConfigError("potential.terms: expected coeff:power pairs, got '" + item + "'");
    out.push_back({to_double("potential.terms", cp[0]), to_double("potential.terms", cp[1])});
  }
  if (out.empty()) throw ConfigError("potential.terms: empty list");
  return out;
}

}  // namespace rnm

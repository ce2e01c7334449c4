#include <lcg/io.hpp>

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace lcg {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad(const std::string& key, const std::string& value) {
  throw Error(ErrorKind::Config, "invalid value '" + value + "' for " + key);
}

int to_int(const std::string& key, const std::string& v) {
  int out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) bad(key, v);
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double out = std::stod(v, &used);
    if (used != v.size()) bad(key, v);
    return out;
  } catch (const std::logic_error&) {
    bad(key, v);
  }
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "on" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "off" || v == "no") return false;
  bad(key, v);
}

template <class T, class F>
std::vector<T> to_list(const std::string& v, F&& parse) {
  std::vector<T> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(parse(item));
  }
  return out;
}

}  // namespace

TimeGrid RunConfig::time_grid(const ProblemSpec& p) const {
  return TimeGrid{tfinal > 0.0 ? tfinal : p.t_final, nct, nft, iters};
}

MarchOptions RunConfig::march_options() const {
  MarchOptions o;
  o.scheme = scheme;
  o.limiter = limiter;
  o.stepping = cfl ? StepMode::Cfl : StepMode::Fixed;
  o.strict_cfl = !cfl;
  o.gate_lce = gate_lce;
  o.snapshot_times = snapshots;
  return o;
}

std::map<std::string, std::string> parse_ini(std::istream& is) {
  std::map<std::string, std::string> kv;
  std::string line, section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto c = line.find_first_of("#;");
    line = trim(c == std::string::npos ? line : line.substr(0, c));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw Error(ErrorKind::Config, "bad section header on line " + std::to_string(lineno));
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::Config, "expected key = value on line " + std::to_string(lineno));
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw Error(ErrorKind::Config, "empty key on line " + std::to_string(lineno));
    kv[section.empty() ? key : section + "." + key] = trim(line.substr(eq + 1));
  }
  return kv;
}

Scheme parse_scheme(const std::string& s) {
  if (s == "upwind") return Scheme::Upwind;
  if (s == "limited") return Scheme::Limited;
  bad("scheme", s);
}

LimiterVariant parse_limiter(const std::string& s) {
  if (s == "as-written") return LimiterVariant::AsWritten;
  if (s == "minmod") return LimiterVariant::Minmod;
  bad("limiter-variant", s);
}

const char* to_string(Scheme s) { return s == Scheme::Upwind ? "upwind" : "limited"; }
const char* to_string(LimiterVariant v) { return v == LimiterVariant::AsWritten ? "as-written" : "minmod"; }
const char* to_string(DofClass c) {
  switch (c) {
    case DofClass::Interior: return "interior";
    case DofClass::Dirichlet: return "dirichlet";
    case DofClass::NeumannBoundary: return "neumann";
  }
  return "?";
}

void apply_config(RunConfig& cfg, const std::map<std::string, std::string>& kv) {
  for (const auto& [raw_key, v] : kv) {
    // Section prefixes are accepted and ignored.
    const auto dot = raw_key.rfind('.');
    const std::string key = dot == std::string::npos ? raw_key : raw_key.substr(dot + 1);
    if (key == "example") cfg.example = v;
    else if (key == "n") cfg.n = to_int(key, v);
    else if (key == "order") cfg.order = to_int(key, v);
    else if (key == "scheme") cfg.scheme = parse_scheme(v);
    else if (key == "limiter-variant") cfg.limiter = parse_limiter(v);
    else if (key == "nct") cfg.nct = to_int(key, v);
    else if (key == "nft") cfg.nft = to_int(key, v);
    else if (key == "iters") cfg.iters = to_int(key, v);
    else if (key == "tfinal") cfg.tfinal = to_double(key, v);
    else if (key == "out") cfg.out = v;
    else if (key == "cfl") cfg.cfl = to_bool(key, v);
    else if (key == "gate-lce") cfg.gate_lce = to_bool(key, v);
    else if (key == "vtk") cfg.vtk = to_bool(key, v);
    else if (key == "snapshots") cfg.snapshots = to_list<double>(v, [&](const std::string& s) { return to_double(key, s); });
    else if (key == "levels") cfg.levels = to_list<int>(v, [&](const std::string& s) { return to_int(key, s); });
    else if (key == "metric") cfg.metric = v;
    else if (key == "ref-n") cfg.ref_n = to_int(key, v);
    else throw Error(ErrorKind::Config, "unknown config key '" + raw_key + "'");
  }
}

void validate(const RunConfig& cfg) {
  const auto names = registry_names();
  if (std::find(names.begin(), names.end(), cfg.example) == names.end())
    throw Error(ErrorKind::Config, "unknown example '" + cfg.example + "'");
  if (cfg.n < 1) throw Error(ErrorKind::Config, "n must be >= 1");
  if (cfg.order != 1 && cfg.order != 2) throw Error(ErrorKind::Config, "order must be 1 or 2");
  if (cfg.nct < 1 || cfg.nft < 1 || cfg.iters < 1) throw Error(ErrorKind::Config, "step counts must be >= 1");
  if (cfg.tfinal < 0.0) throw Error(ErrorKind::Config, "tfinal must be positive");
  if (cfg.metric != "saturation" && cfg.metric != "h1" && cfg.metric != "pressure")
    throw Error(ErrorKind::Config, "metric must be saturation, h1 or pressure");
  for (int l : cfg.levels)
    if (l < 2 || l % 2 != 0) throw Error(ErrorKind::Config, "study levels must be even and >= 2");
  if (cfg.ref_n < 0) throw Error(ErrorKind::Config, "ref-n must be >= 0");
}

void write_lce_csv(std::ostream& os, const DofMap& dofs, const std::vector<double>& raw,
                   const std::vector<double>& post) {
  os << "dof,x,y,class,lce_raw,lce_post\n";
  os.precision(17);
  for (Index z = 0; z < dofs.size(); ++z)
    os << z << ',' << dofs.dof_coords[z].x() << ',' << dofs.dof_coords[z].y() << ',' << to_string(dofs.classes[z])
       << ',' << raw[z] << ',' << post[z] << '\n';
}

void write_summary_csv(std::ostream& os, const std::vector<StepSummary>& rows) {
  os << "step,time,mass,min_s,max_s,max_interior_lce\n";
  os.precision(17);
  for (const auto& r : rows)
    os << r.step << ',' << r.time << ',' << r.mass << ',' << r.min_s << ',' << r.max_s << ',' << r.max_interior_lce
       << '\n';
}

void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceStudy>& studies) {
  if (studies.empty()) return;
  os << "n_dof";
  for (const auto& s : studies) os << ',' << s.label;
  os << '\n';
  os.precision(6);
  os << std::scientific;
  const auto levels = studies.front().levels.size();
  for (std::size_t i = 0; i < levels; ++i) {
    os << studies.front().levels[i].ndof;
    for (const auto& s : studies) os << ',' << (i < s.levels.size() ? s.levels[i].error : 0.0);
    os << '\n';
  }
  os << std::fixed;
  os.precision(3);
  os << "order_lsq";
  for (const auto& s : studies) {
    const auto fit = convergence_order(s);
    os << ',' << fit.order << (fit.monotone ? "" : "*");
  }
  os << '\n';
  os << std::defaultfloat;
}

void write_dof_field_vtk(std::ostream& os, const DofMap& dofs, const std::string& name,
                         const std::vector<double>& values) {
  const auto lattice = build_structured_mesh(dofs.order * dofs.n);
  const std::pair<std::string, std::vector<double>> field{name, values};
  write_vtk(os, lattice, std::span(&field, 1));
}

}  // namespace lcg

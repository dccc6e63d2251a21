#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fadiff {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key +
                                "': cannot parse number from '" + v + "'");
  }
}

long parse_int(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    long i = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return i;
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key +
                                "': cannot parse integer from '" + v + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw std::invalid_argument("config key '" + key +
                              "': expected boolean, got '" + v + "'");
}

const std::vector<std::string> kMapKinds = {"identity", "f1", "f2", "random",
                                            "tabulated"};
const std::vector<std::string> kInitialKinds = {"gaussian", "f1", "f2", "zero",
                                                "uniform", "tabulated"};

void check_choice(const std::string& key, const std::string& v,
                  const std::vector<std::string>& allowed) {
  if (std::find(allowed.begin(), allowed.end(), v) == allowed.end()) {
    std::string opts;
    for (const auto& a : allowed) opts += (opts.empty() ? "" : "|") + a;
    throw std::invalid_argument("config key '" + key + "': unknown value '" +
                                v + "' (expected " + opts + ")");
  }
}

}  // namespace

double RunConfig::resolved_dt() const {
  const double dx = length / (n - 1);
  switch (dt_rule) {
    case DtRule::Dx2Over100:
      return dx * dx / 100.0;
    case DtRule::Dx:
      return dx;
    case DtRule::Fixed:
      return dt;
  }
  return dx;
}

std::vector<double> RunConfig::resolved_snapshot_times() const {
  if (!snapshot_times.empty()) return snapshot_times;
  return {0.0, final_time / 4.0, final_time / 2.0, 3.0 * final_time / 4.0,
          final_time};
}

void RunConfig::validate() const {
  if (!(length > 0.0)) {
    throw std::invalid_argument("domain length must be positive");
  }
  if (n < minimum_grid_size(order)) {
    throw std::invalid_argument(
        "grid size " + std::to_string(n) + " below minimum " +
        std::to_string(minimum_grid_size(order)) + " for " + to_string(order));
  }
  if (!(kappa_perp >= 0.0)) {
    throw std::invalid_argument("kappa_perp must be nonnegative");
  }
  if (!(kappa_par >= 0.0)) {
    throw std::invalid_argument("kappa_par must be nonnegative");
  }
  if (alpha > 0.0) {
    throw std::invalid_argument("stability requires alpha <= 0, got " +
                                std::to_string(alpha));
  }
  if (!(final_time > 0.0)) {
    throw std::invalid_argument("final_time must be positive");
  }
  if (dt_rule == DtRule::Fixed && !(dt > 0.0)) {
    throw std::invalid_argument("fixed dt rule requires dt > 0");
  }
  check_choice("initial.kind", initial, kInitialKinds);
  check_choice("maps.forward", map_forward, kMapKinds);
  check_choice("maps.backward", map_backward, kMapKinds);
  if (initial == "tabulated" && initial_file.empty()) {
    throw std::invalid_argument("tabulated initial condition requires a file");
  }
  if (map_forward == "tabulated" && map_forward_file.empty()) {
    throw std::invalid_argument("tabulated forward map requires a file");
  }
  if (map_backward == "tabulated" && map_backward_file.empty()) {
    throw std::invalid_argument("tabulated backward map requires a file");
  }
  for (double t : snapshot_times) {
    if (t < 0.0 || t > final_time) {
      throw std::invalid_argument("snapshot time outside [0, final_time]");
    }
  }
  if (!(cg.tol > 0.0)) throw std::invalid_argument("cg tol must be positive");
  if (cg.max_iter < 0) {
    throw std::invalid_argument("cg max_iter must be nonnegative");
  }
  for (size_t i = 1; i < converge_grids.size(); ++i) {
    if (converge_grids[i] <= converge_grids[i - 1]) {
      throw std::invalid_argument("converge grids must be strictly increasing");
    }
  }
  for (int g : converge_grids) {
    if (g < minimum_grid_size(order)) {
      throw std::invalid_argument("converge grid size " + std::to_string(g) +
                                  " below minimum for " + to_string(order));
    }
  }
}

RunConfig parse_config(const std::string& text) {
  RunConfig c;
  std::istringstream in(text);
  std::string line, section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string s = trim(line);
    if (s.empty() || s[0] == '#' || s[0] == ';') continue;
    if (s.front() == '[') {
      if (s.back() != ']') {
        throw std::invalid_argument("config line " + std::to_string(line_no) +
                                    ": malformed section header");
      }
      section = s.substr(1, s.size() - 2);
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected key = value");
    }
    const std::string key = section + "." + trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));

    if (key == "domain.length") c.length = parse_double(key, value);
    else if (key == "domain.n") c.n = static_cast<int>(parse_int(key, value));
    else if (key == "domain.order") {
      const long o = parse_int(key, value);
      if (o == 2) c.order = SbpOrder::Order2;
      else if (o == 4) c.order = SbpOrder::Order4;
      else throw std::invalid_argument("config key 'domain.order': must be 2 or 4");
    } else if (key == "domain.construction") {
      if (value == "wide") c.construction = SecondDerivConstruction::WideFullyCompatible;
      else if (value == "narrow") c.construction = SecondDerivConstruction::NarrowCompatible;
      else throw std::invalid_argument("config key 'domain.construction': expected wide|narrow");
    } else if (key == "physics.kappa_perp") c.kappa_perp = parse_double(key, value);
    else if (key == "physics.kappa_par") c.kappa_par = parse_double(key, value);
    else if (key == "physics.alpha") c.alpha = parse_double(key, value);
    else if (key == "time.dt_rule") {
      if (value == "dx2_over_100") c.dt_rule = DtRule::Dx2Over100;
      else if (value == "dx") c.dt_rule = DtRule::Dx;
      else if (value == "fixed") c.dt_rule = DtRule::Fixed;
      else throw std::invalid_argument("config key 'time.dt_rule': expected dx2_over_100|dx|fixed");
    } else if (key == "time.dt") c.dt = parse_double(key, value);
    else if (key == "time.final_time") c.final_time = parse_double(key, value);
    else if (key == "initial.kind") c.initial = value;
    else if (key == "initial.uniform_value") c.uniform_value = parse_double(key, value);
    else if (key == "initial.file") c.initial_file = value;
    else if (key == "maps.forward") c.map_forward = value;
    else if (key == "maps.backward") c.map_backward = value;
    else if (key == "maps.forward_file") c.map_forward_file = value;
    else if (key == "maps.backward_file") c.map_backward_file = value;
    else if (key == "maps.seed") c.seed = static_cast<std::uint64_t>(parse_int(key, value));
    else if (key == "boundary.g_left") c.g_left = parse_double(key, value);
    else if (key == "boundary.g_right") c.g_right = parse_double(key, value);
    else if (key == "output.snapshot_times") {
      c.snapshot_times.clear();
      for (const auto& tok : split_ws(value)) {
        c.snapshot_times.push_back(parse_double(key, tok));
      }
    } else if (key == "output.prefix") c.prefix = value;
    else if (key == "output.companion_no_parallel") c.companion_no_parallel = parse_bool(key, value);
    else if (key == "cg.tol") c.cg.tol = parse_double(key, value);
    else if (key == "cg.max_iter") c.cg.max_iter = static_cast<int>(parse_int(key, value));
    else if (key == "cg.jacobi") c.cg.jacobi = parse_bool(key, value);
    else if (key == "converge.grid_sizes") {
      c.converge_grids.clear();
      for (const auto& tok : split_ws(value)) {
        c.converge_grids.push_back(static_cast<int>(parse_int(key, tok)));
      }
    } else if (key == "converge.kappa") c.converge_kappa = parse_double(key, value);
    else if (key == "converge.final_time") c.converge_final_time = parse_double(key, value);
    else {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string RunConfig::serialize() const {
  std::ostringstream os;
  os.precision(17);
  os << "[domain]\n";
  os << "length = " << length << "\n";
  os << "n = " << n << "\n";
  os << "order = " << (order == SbpOrder::Order2 ? 2 : 4) << "\n";
  os << "construction = " << to_string(construction) << "\n";
  os << "[physics]\n";
  os << "kappa_perp = " << kappa_perp << "\n";
  os << "kappa_par = " << kappa_par << "\n";
  os << "alpha = " << alpha << "\n";
  os << "[time]\n";
  os << "dt_rule = "
     << (dt_rule == DtRule::Dx2Over100
             ? "dx2_over_100"
             : (dt_rule == DtRule::Dx ? "dx" : "fixed"))
     << "\n";
  os << "dt = " << dt << "\n";
  os << "final_time = " << final_time << "\n";
  os << "[initial]\n";
  os << "kind = " << initial << "\n";
  os << "uniform_value = " << uniform_value << "\n";
  if (!initial_file.empty()) os << "file = " << initial_file << "\n";
  os << "[maps]\n";
  os << "forward = " << map_forward << "\n";
  os << "backward = " << map_backward << "\n";
  if (!map_forward_file.empty()) os << "forward_file = " << map_forward_file << "\n";
  if (!map_backward_file.empty()) os << "backward_file = " << map_backward_file << "\n";
  os << "seed = " << seed << "\n";
  os << "[boundary]\n";
  os << "g_left = " << g_left << "\n";
  os << "g_right = " << g_right << "\n";
  os << "[output]\n";
  if (!snapshot_times.empty()) {
    os << "snapshot_times =";
    for (double t : snapshot_times) os << " " << t;
    os << "\n";
  }
  os << "prefix = " << prefix << "\n";
  os << "companion_no_parallel = " << (companion_no_parallel ? "true" : "false")
     << "\n";
  os << "[cg]\n";
  os << "tol = " << cg.tol << "\n";
  os << "max_iter = " << cg.max_iter << "\n";
  os << "jacobi = " << (cg.jacobi ? "true" : "false") << "\n";
  os << "[converge]\n";
  os << "grid_sizes =";
  for (int g : converge_grids) os << " " << g;
  os << "\n";
  os << "kappa = " << converge_kappa << "\n";
  os << "final_time = " << converge_final_time << "\n";
  return os.str();
}

std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  return hash;
}

std::uint64_t RunConfig::hash() const { return fnv1a(serialize()); }

}  // namespace fadiff

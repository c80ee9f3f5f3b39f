#include "chj/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "chj/csv.hpp"

namespace chj {

void RunConfig::validate() const {
  grid.validate();
  params.validate();
  if (ic.kind != "kolmogorov") {
    throw std::invalid_argument("config: ic.kind must be 'kolmogorov'");
  }
  if (!(std::isfinite(ic.ux) && std::isfinite(ic.uy) && std::isfinite(ic.kx) &&
        std::isfinite(ic.ky))) {
    throw std::invalid_argument("config: ic parameters must be finite");
  }
  for (int n : carleman.orders) {
    if (n < 2 || n > 4) {
      throw std::invalid_argument("config: carleman orders must lie in {2,3,4}");
    }
  }
  for (std::size_t i = 1; i < carleman.orders.size(); ++i) {
    if (carleman.orders[i] <= carleman.orders[i - 1]) {
      throw std::invalid_argument("config: carleman orders must be strictly increasing");
    }
  }
  if (carleman.backend != "tn" && carleman.backend != "dense") {
    throw std::invalid_argument("config: backend must be 'tn' or 'dense'");
  }
  if (carleman.compress_tol < 0.0) {
    throw std::invalid_argument("config: compress_tol must be non-negative");
  }
  for (const Probe& p : probes) {
    if (!(std::isfinite(p.x) && std::isfinite(p.y))) {
      throw std::invalid_argument("config: probe coordinates must be finite");
    }
  }
  if (output_dir.empty()) throw std::invalid_argument("config: output dir must be non-empty");
  if (k_dominant < 0.0) throw std::invalid_argument("config: k_dominant must be >= 0");
}

namespace {

[[noreturn]] void fail(std::size_t line_no, const std::string& msg) {
  throw std::runtime_error("config line " + std::to_string(line_no) + ": " + msg);
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_number(const std::string& v, std::size_t line_no) {
  try {
    std::size_t used = 0;
    double x = std::stod(v, &used);
    if (used != v.size()) fail(line_no, "trailing characters after number '" + v + "'");
    return x;
  } catch (const std::invalid_argument&) {
    fail(line_no, "expected a number, got '" + v + "'");
  } catch (const std::out_of_range&) {
    fail(line_no, "number out of range: '" + v + "'");
  }
}

int parse_int(const std::string& v, std::size_t line_no) {
  const double x = parse_number(v, line_no);
  const int i = static_cast<int>(x);
  if (static_cast<double>(i) != x) fail(line_no, "expected an integer, got '" + v + "'");
  return i;
}

bool parse_bool(const std::string& v, std::size_t line_no) {
  if (v == "true" || v == "on" || v == "1") return true;
  if (v == "false" || v == "off" || v == "0") return false;
  fail(line_no, "expected a boolean, got '" + v + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(trim(cur));
  return parts;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(line_no, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "grid" && section != "params" && section != "ic" &&
          section != "carleman" && section != "probes" && section != "output") {
        fail(line_no, "unknown section [" + section + "]");
      }
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) fail(line_no, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(line_no, "empty key");
    if (value.empty()) fail(line_no, "empty value for key '" + key + "'");

    if (section == "grid") {
      if (key == "nx") cfg.grid.nx = parse_int(value, line_no);
      else if (key == "ny") cfg.grid.ny = parse_int(value, line_no);
      else if (key == "box_length") cfg.grid.box_length = parse_number(value, line_no);
      else fail(line_no, "unknown key '" + key + "' in [grid]");
    } else if (section == "params") {
      if (key == "dt") cfg.params.dt = parse_number(value, line_no);
      else if (key == "nu") cfg.params.nu = parse_number(value, line_no);
      else if (key == "cs2") cfg.params.cs2 = parse_number(value, line_no);
      else if (key == "n_steps") cfg.params.n_steps = parse_int(value, line_no);
      else if (key == "gauge_shift") cfg.params.gauge_shift = parse_bool(value, line_no);
      else fail(line_no, "unknown key '" + key + "' in [params]");
    } else if (section == "ic") {
      if (key == "kind") cfg.ic.kind = value;
      else if (key == "u_x") cfg.ic.ux = parse_number(value, line_no);
      else if (key == "u_y") cfg.ic.uy = parse_number(value, line_no);
      else if (key == "k_x") cfg.ic.kx = parse_number(value, line_no);
      else if (key == "k_y") cfg.ic.ky = parse_number(value, line_no);
      else fail(line_no, "unknown key '" + key + "' in [ic]");
    } else if (section == "carleman") {
      if (key == "orders") {
        cfg.carleman.orders.clear();
        for (const std::string& part : split(value, ',')) {
          if (!part.empty()) cfg.carleman.orders.push_back(parse_int(part, line_no));
        }
      } else if (key == "backend") {
        cfg.carleman.backend = value;
      } else if (key == "compress_tol") {
        cfg.carleman.compress_tol = parse_number(value, line_no);
      } else {
        fail(line_no, "unknown key '" + key + "' in [carleman]");
      }
    } else if (section == "probes") {
      if (key == "probe") {
        const std::vector<std::string> xy = split(value, ',');
        if (xy.size() != 2) fail(line_no, "probe needs 'x, y'");
        cfg.probes.push_back({parse_number(xy[0], line_no), parse_number(xy[1], line_no)});
      } else {
        fail(line_no, "unknown key '" + key + "' in [probes]");
      }
    } else if (section == "output") {
      if (key == "dir") cfg.output_dir = value;
      else if (key == "k_dominant") cfg.k_dominant = parse_number(value, line_no);
      else fail(line_no, "unknown key '" + key + "' in [output]");
    } else {
      fail(line_no, "key '" + key + "' outside any section");
    }
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string render_config(const RunConfig& cfg) {
  std::string s;
  s += "[grid]\n";
  s += "nx = " + std::to_string(cfg.grid.nx) + "\n";
  s += "ny = " + std::to_string(cfg.grid.ny) + "\n";
  s += "box_length = " + format_double(cfg.grid.box_length) + "\n";
  s += "\n[params]\n";
  s += "dt = " + format_double(cfg.params.dt) + "\n";
  s += "nu = " + format_double(cfg.params.nu) + "\n";
  s += "cs2 = " + format_double(cfg.params.cs2) + "\n";
  s += "n_steps = " + std::to_string(cfg.params.n_steps) + "\n";
  s += std::string("gauge_shift = ") + (cfg.params.gauge_shift ? "true" : "false") + "\n";
  s += "\n[ic]\n";
  s += "kind = " + cfg.ic.kind + "\n";
  s += "u_x = " + format_double(cfg.ic.ux) + "\n";
  s += "u_y = " + format_double(cfg.ic.uy) + "\n";
  s += "k_x = " + format_double(cfg.ic.kx) + "\n";
  s += "k_y = " + format_double(cfg.ic.ky) + "\n";
  s += "\n[carleman]\n";
  if (!cfg.carleman.orders.empty()) {
    s += "orders = ";
    for (std::size_t i = 0; i < cfg.carleman.orders.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(cfg.carleman.orders[i]);
    }
    s += "\n";
  }
  s += "backend = " + cfg.carleman.backend + "\n";
  s += "compress_tol = " + format_double(cfg.carleman.compress_tol) + "\n";
  if (!cfg.probes.empty()) {
    s += "\n[probes]\n";
    for (const Probe& p : cfg.probes) {
      s += "probe = " + format_double(p.x) + ", " + format_double(p.y) + "\n";
    }
  }
  s += "\n[output]\n";
  s += "dir = " + cfg.output_dir + "\n";
  if (cfg.k_dominant > 0.0) s += "k_dominant = " + format_double(cfg.k_dominant) + "\n";
  return s;
}

}  // namespace chj

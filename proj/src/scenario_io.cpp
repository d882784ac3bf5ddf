// SPDX-License-Identifier: Apache-2.0
#include "pinchopt/scenario_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pinchopt {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view token, int line_no) {
  token = trim(token);
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    throw std::runtime_error("scenario line " + std::to_string(line_no) +
                             ": bad number '" + std::string(token) + "'");
  return value;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

ScenarioConfig parse_scenario(std::istream& in) {
  ScenarioConfig cfg;
  cfg.users.clear();
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view{line};
    if (const auto hash = view.find('#'); hash != std::string_view::npos)
      view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;

    const auto eq = view.find('=');
    if (eq == std::string_view::npos)
      throw std::runtime_error("scenario line " + std::to_string(line_no) +
                               ": expected 'key = value'");
    const std::string_view key = trim(view.substr(0, eq));
    const std::string_view value = trim(view.substr(eq + 1));

    if (key == "d1") cfg.d1 = parse_double(value, line_no);
    else if (key == "d2") cfg.d2 = parse_double(value, line_no);
    else if (key == "delta") cfg.delta = parse_double(value, line_no);
    else if (key == "t") cfg.t = parse_double(value, line_no);
    else if (key == "fc") cfg.fc = parse_double(value, line_no);
    else if (key == "ptx_dbm") cfg.ptx = dbm_to_watt(parse_double(value, line_no));
    else if (key == "sigma2_dbm") cfg.sigma2 = dbm_to_watt(parse_double(value, line_no));
    else if (key == "alpha") cfg.alpha = parse_double(value, line_no);
    else if (key == "n_eff") cfg.n_eff = parse_double(value, line_no);
    else if (key == "feed_x") cfg.feed_x = parse_double(value, line_no);
    else if (key == "service_center_x") cfg.service_center_x = parse_double(value, line_no);
    else if (key == "num_pinch") {
      const double v = parse_double(value, line_no);
      if (v < 1.0 || v != static_cast<double>(static_cast<std::size_t>(v)))
        throw std::runtime_error("scenario line " + std::to_string(line_no) +
                                 ": num_pinch must be a positive integer");
      cfg.num_pinch = static_cast<std::size_t>(v);
    } else if (key == "user") {
      const auto comma = value.find(',');
      if (comma == std::string_view::npos)
        throw std::runtime_error("scenario line " + std::to_string(line_no) +
                                 ": user needs 'x,y'");
      cfg.users.push_back(UserPosition{parse_double(value.substr(0, comma), line_no),
                                       parse_double(value.substr(comma + 1), line_no)});
    } else {
      throw std::runtime_error("scenario line " + std::to_string(line_no) +
                               ": unknown key '" + std::string(key) + "'");
    }
  }
  cfg.validate();
  return cfg;
}

ScenarioConfig read_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path);
  return parse_scenario(in);
}

void write_scenario(std::ostream& out, const ScenarioConfig& cfg) {
  out << "# pinchopt scenario\n";
  out << "d1 = " << format_double(cfg.d1) << "\n";
  out << "d2 = " << format_double(cfg.d2) << "\n";
  out << "delta = " << format_double(cfg.delta) << "\n";
  out << "t = " << format_double(cfg.t) << "\n";
  out << "fc = " << format_double(cfg.fc) << "\n";
  out << "ptx_dbm = " << format_double(watt_to_dbm(cfg.ptx)) << "\n";
  out << "sigma2_dbm = " << format_double(watt_to_dbm(cfg.sigma2)) << "\n";
  out << "alpha = " << format_double(cfg.alpha) << "\n";
  out << "n_eff = " << format_double(cfg.n_eff) << "\n";
  out << "feed_x = " << format_double(cfg.feed_x) << "\n";
  if (cfg.service_center_x)
    out << "service_center_x = " << format_double(*cfg.service_center_x) << "\n";
  out << "num_pinch = " << cfg.num_pinch << "\n";
  for (const UserPosition& u : cfg.users)
    out << "user = " << format_double(u.x) << "," << format_double(u.y) << "\n";
}

void write_scenario_file(const std::string& path, const ScenarioConfig& cfg) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write scenario file: " + path);
  write_scenario(out, cfg);
}

}  // namespace pinchopt

#include "halo/sweep_io.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

namespace halo {

std::string format_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

static const char* kHeader = "alpha,lower_ratio,upper_bound,family,grid,seed";

std::string sweep_records_csv(std::span<const SweepRecord> records) {
  std::string out(kHeader);
  out += "\n";
  for (const auto& r : records) {
    out += format_double(r.alpha);
    out += ",";
    out += format_double(r.lower_ratio);
    out += ",";
    if (r.upper_bound) out += format_double(*r.upper_bound);
    out += ",";
    out += r.family;
    out += ",";
    out += format_double(r.grid_step);
    out += ",";
    out += std::to_string(r.seed);
    out += "\n";
  }
  return out;
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const auto next = line.find(sep, pos);
    out.push_back(line.substr(pos, next == std::string::npos ? std::string::npos : next - pos));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

double parse_num(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("sweep csv: malformed ") + what + " '" + s + "'");
  }
}

}  // namespace

std::vector<SweepRecord> parse_sweep_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kHeader)
    throw std::invalid_argument("sweep csv: missing header '" + std::string(kHeader) + "'");
  std::vector<SweepRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 6) throw std::invalid_argument("sweep csv: expected 6 fields: " + line);
    SweepRecord r;
    r.alpha = parse_num(f[0], "alpha");
    r.lower_ratio = parse_num(f[1], "lower_ratio");
    if (!f[2].empty()) r.upper_bound = parse_num(f[2], "upper_bound");
    r.family = f[3];
    r.grid_step = parse_num(f[4], "grid");
    r.seed = std::stoull(f[5]);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<std::pair<double, double>> sweep_column(std::span<const SweepRecord> records,
                                                    const std::string& column) {
  std::vector<std::pair<double, double>> out;
  for (const auto& r : records) {
    if (column == "lower_ratio") {
      out.emplace_back(r.alpha, r.lower_ratio);
    } else if (column == "upper_bound") {
      if (r.upper_bound) out.emplace_back(r.alpha, *r.upper_bound);
    } else {
      throw std::invalid_argument("sweep csv: unknown column '" + column + "'");
    }
  }
  return out;
}

}  // namespace halo

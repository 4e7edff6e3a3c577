#include "trisplit/errors.hpp"
#include "trisplit/experiments.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace trisplit {

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("not a number: '" + s + "'");
  }
  return v;
}

namespace {

std::vector<std::string> split(const std::string& line, char sep = ',') {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

}  // namespace

std::string sweep_to_csv(const SweepResult& sweep) {
  std::ostringstream out;
  out << "tau,n_steps";
  for (const auto& f : sweep.fields) out << ',' << f;
  out << ",blow_up\n";
  for (const auto& r : sweep.records) {
    out << format_double(r.tau) << ',' << r.n_steps;
    for (const double e : r.errors) out << ',' << format_double(e);
    out << ',' << (r.blow_up ? 1 : 0) << '\n';
  }
  return out.str();
}

void emit_csv(const SweepResult& sweep, const std::filesystem::path& path) {
  write_file(path, sweep_to_csv(sweep));
}

SweepResult parse_sweep_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("sweep csv: missing header");
  const auto header = split(line);
  if (header.size() < 4 || header.front() != "tau" || header[1] != "n_steps" ||
      header.back() != "blow_up") {
    throw std::invalid_argument("sweep csv: unexpected header '" + line + "'");
  }
  SweepResult sweep;
  sweep.fields.assign(header.begin() + 2, header.end() - 1);
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != header.size()) {
      throw std::invalid_argument("sweep csv: line " + std::to_string(line_no) +
                                  " has the wrong number of columns");
    }
    ErrorRecord rec;
    rec.tau = parse_double(cells[0]);
    rec.n_steps = std::stoll(cells[1]);
    for (std::size_t c = 2; c + 1 < cells.size(); ++c) rec.errors.push_back(parse_double(cells[c]));
    rec.blow_up = cells.back() == "1";
    sweep.records.push_back(std::move(rec));
  }
  return sweep;
}

SweepResult read_sweep_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_sweep_csv(buf.str());
  } catch (const std::invalid_argument& err) {
    throw std::runtime_error(path.string() + ": " + err.what());
  }
}

std::string report_to_csv(const ConditionReport& report) {
  std::ostringstream out;
  out << "condition,sup,argmax_z,verdict\n";
  for (const auto& c : report.conditions) {
    out << c.id << ',' << format_double(c.sup) << ',' << format_double(c.argmax) << ','
        << (c.divergent ? "divergent" : "finite") << '\n';
  }
  return out.str();
}

void emit_report(const ConditionReport& report, const std::filesystem::path& path) {
  write_file(path, report_to_csv(report));
}

}  // namespace trisplit

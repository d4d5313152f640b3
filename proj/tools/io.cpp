#include "io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace conewalk::io {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

double parse_double(const std::string& s, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("line " + std::to_string(line_no) + ": cannot parse '" + s + "'");
  }
}

std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

}  // namespace

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_tail_csv(std::ostream& out, const TailSeries& tail) {
  out << "n,p,err_lo,err_hi\n";
  for (std::size_t n = 1; n < tail.values.size(); ++n) {
    const double hi = tail.leaked.empty() ? 0.0 : tail.leaked[n];
    out << n << ',' << num(tail.values[n]) << ',' << num(0.0) << ',' << num(hi) << '\n';
  }
}

TailSeries read_tail_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("n,p", 0) != 0) throw std::invalid_argument("tail CSV must start with 'n,p,err_lo,err_hi'");
  std::vector<double> values, leaked;
  std::size_t line_no = 1;
  std::size_t first = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() < 2) throw std::invalid_argument("line " + std::to_string(line_no) + ": expected n,p,...");
    const auto n = static_cast<std::size_t>(parse_double(cells[0], line_no));
    if (values.empty() && n == 1) {
      // p(0) = 1 is implied when the file starts at n = 1
      values.push_back(1.0);
      leaked.push_back(0.0);
      first = 1;
    }
    if (n != values.size()) throw std::invalid_argument("line " + std::to_string(line_no) + ": rows must be n = 0, 1, 2, ...");
    values.push_back(parse_double(cells[1], line_no));
    leaked.push_back(cells.size() >= 4 ? parse_double(cells[3], line_no) : 0.0);
  }
  if (values.size() <= first) throw std::invalid_argument("tail CSV has no rows");
  bool truncated = false;
  for (double v : leaked) truncated = truncated || v > 0.0;
  TailSeries t = TailSeries::from_values(std::move(values), truncated ? Provenance::truncated : Provenance::exact);
  t.leaked = std::move(leaked);
  return t;
}

void write_paths_jsonl(std::ostream& out, const PathEnsemble& ensemble) {
  for (const NormalizedPath& p : ensemble.paths) {
    out << "{\"n\":" << p.n << ",\"sigma\":" << num(p.sigma) << ",\"points\":[";
    for (std::size_t k = 0; k < p.grid.size(); ++k) {
      if (k) out << ',';
      out << '[';
      for (int d = 0; d < p.grid[k].dim; ++d) {
        if (d) out << ',';
        out << num(p.grid[k][d]);
      }
      out << ']';
    }
    out << "]}\n";
  }
}

PathEnsemble read_paths_jsonl(std::istream& in) {
  PathEnsemble ens;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw std::invalid_argument("paths line " + std::to_string(line_no) + ": " + e.what());
    }
    NormalizedPath p;
    p.n = j.at("n").get<int>();
    p.sigma = j.at("sigma").get<double>();
    for (const auto& pt : j.at("points")) {
      Point q = Point::zero(static_cast<int>(pt.size()));
      for (std::size_t d = 0; d < pt.size(); ++d) q[static_cast<int>(d)] = pt[d].get<double>();
      p.grid.push_back(q);
    }
    if (p.grid.size() != static_cast<std::size_t>(p.n) + 1) {
      throw std::invalid_argument("paths line " + std::to_string(line_no) + ": expected n+1 points");
    }
    ens.paths.push_back(std::move(p));
  }
  ens.effective_sample_size = static_cast<double>(ens.paths.size());
  return ens;
}

void write_endpoint_csv(std::ostream& out, const EndpointLaw& law) {
  const int dim = law.masses.empty() ? 1 : law.masses.begin()->first.dim;
  static const char* names[] = {"x", "y", "z"};
  out << "n,sigma";
  for (int d = 0; d < dim; ++d) out << ',' << names[d];
  out << ",mass\n";
  for (const auto& [p, m] : law.masses) {
    out << law.n << ',' << num(law.sigma);
    for (int d = 0; d < dim; ++d) out << ',' << p[d];
    out << ',' << num(m) << '\n';
  }
}

EndpointLaw read_endpoint_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("n,sigma,", 0) != 0) {
    throw std::invalid_argument("endpoint CSV must start with 'n,sigma,x[,y[,z]],mass'");
  }
  const int dim = static_cast<int>(split_csv(line).size()) - 3;
  if (dim < 1 || dim > kMaxDimension) throw std::invalid_argument("endpoint CSV has a bad header");
  EndpointLaw law;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (static_cast<int>(cells.size()) != dim + 3) throw std::invalid_argument("line " + std::to_string(line_no) + ": wrong column count");
    law.n = static_cast<int>(parse_double(cells[0], line_no));
    law.sigma = parse_double(cells[1], line_no);
    LatticePoint p = LatticePoint::zero(dim);
    for (int d = 0; d < dim; ++d) p[d] = static_cast<std::int64_t>(parse_double(cells[2 + d], line_no));
    law.masses[p] += parse_double(cells[2 + dim], line_no);
  }
  if (law.masses.empty()) throw std::invalid_argument("endpoint CSV has no rows");
  return law;
}

std::string to_json(const GofReport& r) {
  return "{\"statistic\":" + json_string(r.statistic) + ",\"value\":" + num(r.value) +
         ",\"sample_size\":" + num(r.sample_size) + ",\"threshold\":" + num(r.threshold) +
         ",\"pass\":" + (r.pass ? "true" : "false") + "}";
}

std::string to_json(const IndexEstimate& e) {
  return "{\"alpha_hat\":" + num(e.alpha_hat) + ",\"stderr\":" + num(e.stderr_) + ",\"window\":[" +
         std::to_string(e.window.lo) + "," + std::to_string(e.window.hi) + "],\"method\":" +
         json_string(to_string(e.method)) + "}";
}

std::string ensemble_summary_json(const PathEnsemble& ens) {
  std::string s = "{\"method\":" + json_string(to_string(ens.method)) + ",\"count\":" +
                  std::to_string(ens.paths.size()) + ",\"tail_estimate\":" + num(ens.tail_estimate) +
                  ",\"stderr\":" + num(ens.tail_stderr) + ",\"seed\":" + std::to_string(ens.seed) +
                  ",\"effective_sample_size\":" + num(ens.effective_sample_size);
  if (ens.method == SamplingMethod::rejection) {
    s += ",\"attempts\":" + std::to_string(ens.attempts);
  } else {
    s += ",\"schedule\":[";
    for (std::size_t i = 0; i < ens.schedule.size(); ++i) s += (i ? "," : "") + std::to_string(ens.schedule[i]);
    s += "],\"level_fractions\":[";
    for (std::size_t i = 0; i < ens.level_fractions.size(); ++i) s += (i ? "," : "") + num(ens.level_fractions[i]);
    s += "]";
  }
  return s + "}";
}

}  // namespace conewalk::io

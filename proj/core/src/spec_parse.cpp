#include "conewalk/spec_parse.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

namespace conewalk {

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view token, std::string_view context) {
  token = trim(token);
  double v = 0.0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, v);
  if (ec != std::errc{} || ptr != end || token.empty()) {
    throw std::invalid_argument("cannot parse number '" + std::string(token) + "' in " + std::string(context));
  }
  return v;
}

std::pair<std::string_view, std::string_view> key_value(std::string_view item, std::string_view context) {
  const std::size_t eq = item.find('=');
  if (eq == std::string_view::npos) {
    throw std::invalid_argument("expected key=value, got '" + std::string(item) + "' in " + std::string(context));
  }
  return {trim(item.substr(0, eq)), item.substr(eq + 1)};
}

Cone parse_wedge(std::string_view args, std::string_view spec) {
  double beta = 0.0;
  double rot = 0.0;
  double eps = kDefaultWedgeTolerance;
  bool has_beta = false;
  for (std::string_view item : split(args, ',')) {
    const auto [key, value] = key_value(item, spec);
    if (key == "beta") {
      beta = parse_number(value, spec);
      has_beta = true;
    } else if (key == "rot") {
      rot = parse_number(value, spec);
    } else if (key == "eps") {
      eps = parse_number(value, spec);
    } else {
      throw std::invalid_argument("unknown wedge key '" + std::string(key) + "'");
    }
  }
  if (!has_beta) throw std::invalid_argument("wedge spec needs beta=<radians>");
  return Cone::wedge(beta, rot, eps);
}

Cone parse_half_spaces(std::string_view args, std::string_view spec) {
  std::vector<Point> normals;
  int dim = 0;
  for (std::string_view item : split(args, ';')) {
    const auto [key, value] = key_value(item, spec);
    if (key.empty() || key.front() != 'n') throw std::invalid_argument("half-space keys are n1, n2, ...");
    const auto comps = split(value, ',');
    if (comps.size() < 1 || comps.size() > kMaxDimension) {
      throw std::invalid_argument("normal '" + std::string(value) + "' must have 1 to 3 components");
    }
    Point n = Point::zero(static_cast<int>(comps.size()));
    for (std::size_t i = 0; i < comps.size(); ++i) n.x[i] = parse_number(comps[i], spec);
    if (dim == 0) dim = n.dim;
    if (n.dim != dim) throw std::invalid_argument("half-space normals have mixed dimensions");
    normals.push_back(n);
  }
  return Cone::half_spaces(dim, std::move(normals));
}

}  // namespace

Cone parse_cone(std::string_view spec) {
  spec = trim(spec);
  const std::size_t colon = spec.find(':');
  const std::string_view kind = spec.substr(0, colon);
  const std::string_view args = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  if (kind == "wedge") return parse_wedge(args, spec);
  if (kind == "halfline") {
    if (!args.empty()) throw std::invalid_argument("halfline takes no arguments");
    return Cone::half_line();
  }
  if (kind == "halfspaces") return parse_half_spaces(args, spec);
  throw std::invalid_argument("unknown cone spec '" + std::string(spec) +
                              "' (expected wedge:beta=..., halfline or halfspaces:n1=...)");
}

StepDistribution parse_lattice_json(std::string_view json_text, std::string name) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("lattice JSON: ") + e.what());
  }
  if (doc.is_object() && doc.contains("atoms")) doc = doc["atoms"];
  if (!doc.is_array() || doc.empty()) throw std::invalid_argument("lattice JSON must be a nonempty array of [[dx,...],p]");
  std::vector<Atom> atoms;
  for (const auto& entry : doc) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_array() || !entry[1].is_number()) {
      throw std::invalid_argument("lattice atom must look like [[dx,dy],p], got " + entry.dump());
    }
    const auto& coords = entry[0];
    if (coords.empty() || coords.size() > kMaxDimension) throw std::invalid_argument("atom must have 1 to 3 coordinates");
    Atom a;
    a.step = LatticePoint::zero(static_cast<int>(coords.size()));
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (!coords[i].is_number_integer()) {
        const double v = coords[i].get<double>();
        if (v != static_cast<double>(static_cast<std::int64_t>(v))) {
          throw std::invalid_argument("lattice atom coordinates must be integers, got " + coords.dump());
        }
        a.step.x[i] = static_cast<std::int64_t>(v);
      } else {
        a.step.x[i] = coords[i].get<std::int64_t>();
      }
    }
    a.probability = entry[1].get<double>();
    atoms.push_back(a);
  }
  return StepDistribution::lattice(std::move(atoms), std::move(name));
}

StepDistribution parse_walk(std::string_view spec) {
  spec = trim(spec);
  if (spec == "srw1d") return srw1d();
  if (spec == "srw2d") return srw2d();
  if (spec == "srw3d") return srw3d();
  if (spec == "srw2d-2step") return two_step_srw2d();
  if (spec == "disk") return StepDistribution::uniform_disk(1.0);
  if (spec.starts_with("disk:")) {
    const auto [key, value] = key_value(spec.substr(5), spec);
    if (key != "sigma2") throw std::invalid_argument("disk takes sigma2=<value>");
    return StepDistribution::uniform_disk(parse_number(value, spec));
  }
  if (spec.starts_with("lattice:@")) {
    const std::string path(spec.substr(9));
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open lattice file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_lattice_json(buf.str(), std::string(spec));
  }
  throw std::invalid_argument("unknown walk spec '" + std::string(spec) +
                              "' (expected srw1d, srw2d, srw3d, srw2d-2step, disk or lattice:@file.json)");
}

}  // namespace conewalk

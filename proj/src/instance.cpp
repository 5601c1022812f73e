#include "weakdiam/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace weakdiam {

using nlohmann::json;

FormatError::FormatError(const std::string& at, const std::string& what)
    : std::runtime_error(at + ": " + what), where(at) {}

namespace {

void reject_unknown(const json& object, const std::string& path, std::initializer_list<const char*> known) {
  if (!object.is_object()) throw FormatError(path.empty() ? "<root>" : path, "expected an object");
  const std::set<std::string> allowed(known.begin(), known.end());
  for (const auto& [key, value] : object.items())
    if (!allowed.contains(key)) throw FormatError(path.empty() ? key : path + "." + key, "unknown field");
}

const json& require(const json& object, const char* key, const std::string& path) {
  const auto it = object.find(key);
  if (it == object.end()) throw FormatError(path.empty() ? key : path + "." + key, "missing field");
  return *it;
}

double as_number(const json& value, const std::string& path) {
  if (!value.is_number()) throw FormatError(path, "expected a number");
  const double d = value.get<double>();
  if (!std::isfinite(d)) throw FormatError(path, "expected a finite number");
  return d;
}

std::int64_t as_integer(const json& value, const std::string& path) {
  if (!value.is_number_integer()) throw FormatError(path, "expected an integer");
  return value.get<std::int64_t>();
}

const json& as_array(const json& value, const std::string& path) {
  if (!value.is_array()) throw FormatError(path, "expected an array");
  return value;
}

PointSet read_point_list(const json& value, const std::string& path, std::size_t point_count) {
  std::vector<PointId> ids;
  for (std::size_t j = 0; j < as_array(value, path).size(); ++j) {
    const std::string at = path + "[" + std::to_string(j) + "]";
    const std::int64_t p = as_integer(value[j], at);
    if (p < 0 || static_cast<std::uint64_t>(p) >= point_count)
      throw FormatError(at, "point index " + std::to_string(p) + " outside 0.." + std::to_string(point_count - 1));
    ids.push_back(static_cast<PointId>(p));
  }
  return PointSet(std::move(ids));
}

json point_list(const PointSet& s) { return json(s.ids()); }

}  // namespace

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const auto upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    throw FormatError("line " + std::to_string(line), e.what());
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path);
}

Instance instance_from_json(const json& doc) {
  reject_unknown(doc, "", {"dimension", "metric", "points", "matrix", "objects", "covers", "meta"});
  Instance instance;

  const std::int64_t dimension = as_integer(require(doc, "dimension", ""), "dimension");
  const json& metric_field = require(doc, "metric", "");
  if (!metric_field.is_string()) throw FormatError("metric", "expected a string");
  MetricKind kind;
  try {
    kind = metric_kind_from_string(metric_field.get<std::string>());
  } catch (const std::exception& e) {
    throw FormatError("metric", e.what());
  }

  if (kind == MetricKind::kMatrix) {
    if (dimension != 0) throw FormatError("dimension", "matrix spaces have dimension 0");
    const json& rows = as_array(require(doc, "matrix", ""), "matrix");
    if (doc.contains("points") && !as_array(doc["points"], "points").empty())
      throw FormatError("points", "matrix spaces carry no coordinates");
    std::vector<double> entries;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const std::string at = "matrix[" + std::to_string(i) + "]";
      if (as_array(rows[i], at).size() != rows.size()) throw FormatError(at, "matrix must be square");
      for (std::size_t j = 0; j < rows.size(); ++j)
        entries.push_back(as_number(rows[i][j], at + "[" + std::to_string(j) + "]"));
    }
    instance.space = std::make_shared<const Space>(Space::from_matrix(rows.size(), std::move(entries)));
  } else {
    if (dimension < 1) throw FormatError("dimension", "coordinate spaces need dimension >= 1");
    if (doc.contains("matrix")) throw FormatError("matrix", "only matrix spaces carry a distance matrix");
    const json& rows = as_array(require(doc, "points", ""), "points");
    std::vector<double> coords;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const std::string at = "points[" + std::to_string(i) + "]";
      if (as_array(rows[i], at).size() != static_cast<std::size_t>(dimension))
        throw FormatError(at, "expected " + std::to_string(dimension) + " coordinates");
      for (std::size_t j = 0; j < rows[i].size(); ++j)
        coords.push_back(as_number(rows[i][j], at + "[" + std::to_string(j) + "]"));
    }
    instance.space = std::make_shared<const Space>(
        Space::from_coordinates(kind, static_cast<std::size_t>(dimension), std::move(coords)));
  }
  const std::size_t count = instance.space->size();

  const json& objects = as_array(require(doc, "objects", ""), "objects");
  std::vector<PointSet> sets;
  for (std::size_t i = 0; i < objects.size(); ++i) {
    const std::string at = "objects[" + std::to_string(i) + "]";
    PointSet s = read_point_list(objects[i], at, count);
    if (s.empty()) throw FormatError(at, "objects must be nonempty");
    sets.push_back(std::move(s));
  }
  instance.objects = ObjectSystem(instance.space, std::move(sets));

  if (doc.contains("covers")) {
    const json& covers = doc["covers"];
    reject_unknown(covers, "covers", {"K", "scales"});
    UserCovers user;
    user.mesh_constant = as_number(require(covers, "K", "covers"), "covers.K");
    if (!(user.mesh_constant > 1.0)) throw FormatError("covers.K", "K must exceed 1");
    const json& scales = as_array(require(covers, "scales", "covers"), "covers.scales");
    for (std::size_t i = 0; i < scales.size(); ++i) {
      const std::string at = "covers.scales[" + std::to_string(i) + "]";
      reject_unknown(scales[i], at, {"scale", "families"});
      const auto scale = static_cast<int>(as_integer(require(scales[i], "scale", at), at + ".scale"));
      const json& families = as_array(require(scales[i], "families", at), at + ".families");
      std::vector<std::vector<PointSet>> cells(families.size());
      for (std::size_t f = 0; f < families.size(); ++f) {
        const std::string fat = at + ".families[" + std::to_string(f) + "]";
        for (std::size_t c = 0; c < as_array(families[f], fat).size(); ++c)
          cells[f].push_back(read_point_list(families[f][c], fat + "[" + std::to_string(c) + "]", count));
      }
      const double radius = std::pow(2.0 * user.mesh_constant + 1.0, static_cast<double>(scale));
      user.scales.push_back({scale, explicit_cover(user.mesh_constant, radius, std::move(cells))});
    }
    if (user.scales.empty()) throw FormatError("covers.scales", "at least one scale required");
    instance.covers = std::move(user);
  }

  if (doc.contains("meta")) {
    const json& meta = doc["meta"];
    reject_unknown(meta, "meta", {"name", "seed"});
    if (meta.contains("name")) {
      if (!meta["name"].is_string()) throw FormatError("meta.name", "expected a string");
      instance.name = meta["name"].get<std::string>();
    }
    if (meta.contains("seed")) {
      if (!meta["seed"].is_number_unsigned() && !(meta["seed"].is_number_integer() && meta["seed"].get<std::int64_t>() >= 0))
        throw FormatError("meta.seed", "expected a nonnegative integer");
      instance.seed = meta["seed"].get<std::uint64_t>();
    }
  }
  return instance;
}

json instance_to_json(const Instance& instance) {
  const Space& space = *instance.space;
  json doc;
  doc["dimension"] = space.dimension();
  doc["metric"] = to_string(space.kind());
  json points = json::array();
  if (space.has_coordinates()) {
    for (PointId p = 0; p < space.size(); ++p) {
      const auto y = space.point(p);
      points.push_back(std::vector<double>(y.begin(), y.end()));
    }
  } else {
    json rows = json::array();
    for (PointId p = 0; p < space.size(); ++p) {
      const auto* row = space.matrix().data() + static_cast<std::size_t>(p) * space.size();
      rows.push_back(std::vector<double>(row, row + space.size()));
    }
    doc["matrix"] = std::move(rows);
  }
  doc["points"] = std::move(points);
  json objects = json::array();
  for (const auto& s : instance.objects.objects()) objects.push_back(point_list(s));
  doc["objects"] = std::move(objects);
  if (instance.covers) {
    json scales = json::array();
    for (const auto& sc : instance.covers->scales) {
      json families = json::array();
      for (const auto& family : sc.cover.families) {
        json cells = json::array();
        for (const auto& cell : family) cells.push_back(point_list(cell.members));
        families.push_back(std::move(cells));
      }
      scales.push_back({{"scale", sc.scale}, {"families", std::move(families)}});
    }
    doc["covers"] = {{"K", instance.covers->mesh_constant}, {"scales", std::move(scales)}};
  }
  doc["meta"] = {{"name", instance.name}, {"seed", instance.seed}};
  return doc;
}

bool operator==(const Instance& a, const Instance& b) {
  if (!a.space || !b.space || !(*a.space == *b.space)) return false;
  if (a.objects.objects() != b.objects.objects() || a.name != b.name || a.seed != b.seed) return false;
  if (a.covers.has_value() != b.covers.has_value()) return false;
  if (!a.covers) return true;
  if (a.covers->mesh_constant != b.covers->mesh_constant || a.covers->scales.size() != b.covers->scales.size())
    return false;
  for (std::size_t i = 0; i < a.covers->scales.size(); ++i) {
    const auto& x = a.covers->scales[i];
    const auto& y = b.covers->scales[i];
    if (x.scale != y.scale || x.cover.families.size() != y.cover.families.size()) return false;
    for (std::size_t f = 0; f < x.cover.families.size(); ++f) {
      if (x.cover.families[f].size() != y.cover.families[f].size()) return false;
      for (std::size_t c = 0; c < x.cover.families[f].size(); ++c)
        if (!(x.cover.families[f][c].members == y.cover.families[f][c].members)) return false;
    }
  }
  return true;
}

Instance load_instance(const std::string& path) { return instance_from_json(parse_json_text(read_text_file(path))); }

void save_instance(const Instance& instance, const std::string& path) {
  write_text_file(path, instance_to_json(instance).dump() + "\n");
}

}  // namespace weakdiam

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "weakdiam/objects.hpp"
#include "weakdiam/web.hpp"

namespace weakdiam {

struct UserCovers {
  double mesh_constant = 0.0;      // K declared by the file
  std::vector<ScaleCover> scales;  // one per consecutive scale
};

struct Instance {
  std::shared_ptr<const Space> space;
  ObjectSystem objects;
  std::optional<UserCovers> covers;
  std::string name;
  std::uint64_t seed = 0;
};

bool operator==(const Instance& a, const Instance& b);

// Malformed input. `where` is a line number for syntax errors or a field path
// such as "objects[3][1]" for content errors.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& where, const std::string& what);
  std::string where;
};

Instance instance_from_json(const nlohmann::json& doc);
nlohmann::json instance_to_json(const Instance& instance);

// Parses text, reporting syntax errors by line.
nlohmann::json parse_json_text(const std::string& text);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

Instance load_instance(const std::string& path);
void save_instance(const Instance& instance, const std::string& path);

}  // namespace weakdiam

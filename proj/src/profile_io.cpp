#include "hlab/profile_io.hpp"

#include <fstream>
#include <sstream>

#include "hlab/error.hpp"
#include "json.hpp"

namespace hlab {

using nlohmann::json;

std::string profile_to_json(const RadialProfile& u) {
  json j;
  j["format"] = kProfileFormat;
  j["n"] = u.dim().n();
  j["k"] = u.dim().k();
  j["R"] = u.radius();
  j["boundary"] = u.boundary();
  j["atom"] = u.atom();
  j["nodes"] = std::vector<double>(u.nodes().begin(), u.nodes().end());
  j["values"] = std::vector<double>(u.values().begin(), u.values().end());
  j["slope"] = std::vector<double>(u.slope().begin(), u.slope().end());
  return j.dump() + "\n";
}

namespace {

const json& field(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) fail(Errc::schema_error, std::string("profile: missing key \"") + key + "\"");
  return *it;
}

double number(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number()) fail(Errc::schema_error, std::string("profile: \"") + key + "\" must be a number");
  return v.get<double>();
}

int integer(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer()) fail(Errc::schema_error, std::string("profile: \"") + key + "\" must be an integer");
  return v.get<int>();
}

std::vector<double> array(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_array()) fail(Errc::schema_error, std::string("profile: \"") + key + "\" must be an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& e : v) {
    if (!e.is_number()) fail(Errc::schema_error, std::string("profile: \"") + key + "\" must hold numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

}  // namespace

RadialProfile profile_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(Errc::schema_error, std::string("profile: malformed JSON: ") + e.what());
  }
  if (!j.is_object()) fail(Errc::schema_error, "profile: document must be a JSON object");
  const json& format = field(j, "format");
  if (!format.is_string() || format.get<std::string>() != kProfileFormat)
    fail(Errc::schema_error, std::string("profile: unsupported format (expected ") + kProfileFormat + ")");
  const HessianDim dim(integer(j, "n"), integer(j, "k"));
  const double R = number(j, "R");
  const double boundary = number(j, "boundary");
  const double atom = number(j, "atom");
  auto nodes = array(j, "nodes");
  auto values = array(j, "values");
  auto slope = array(j, "slope");
  return RadialProfile(dim, R, boundary, std::move(nodes), std::move(values), std::move(slope), atom);
}

void save_profile(const RadialProfile& u, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::io_error, "cannot write " + path);
  out << profile_to_json(u);
  if (!out) fail(Errc::io_error, "write failed: " + path);
}

RadialProfile load_profile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::io_error, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return profile_from_json(buf.str());
}

}  // namespace hlab

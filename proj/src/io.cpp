#include "posgeo/cli.hpp"

#include <json.hpp>

#include <charconv>
#include <fstream>
#include <sstream>

namespace posgeo {

PolygonFile parse_polygon(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("polygon file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("polygon file must be a JSON object");
  if (!doc.contains("vertices")) throw InputError("polygon file has no \"vertices\" field");
  const auto& verts = doc["vertices"];
  if (!verts.is_array()) throw InputError("\"vertices\" must be an array of [x, y] pairs");

  PolygonFile file;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    const auto& v = verts[i];
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
      throw InputError("vertex " + std::to_string(i) + " is not a pair of numbers");
    file.vertices.emplace_back(v[0].get<double>(), v[1].get<double>());
  }
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw InputError("\"name\" must be a string");
    file.name = doc["name"].get<std::string>();
  }
  return file;
}

PolygonFile read_polygon_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open polygon file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_polygon(buffer.str());
}

std::string format_number(double value) {
  if (value == 0) value = 0;  // drop the sign of -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

namespace {

double parse_double(std::string_view s, const std::string& context) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw InputError("cannot parse number '" + std::string(s) + "' in '" + context + "'");
  return v;
}

}  // namespace

std::vector<double> parse_numbers(const std::string& text) {
  std::vector<double> out;
  const std::string_view view(text);
  std::size_t start = 0;
  for (;;) {
    const auto comma = view.find(',', start);
    out.push_back(parse_double(view.substr(start, comma == std::string_view::npos ? view.npos : comma - start), text));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

Vector2<double> parse_point(const std::string& text) {
  const auto v = parse_numbers(text);
  if (v.size() != 2) throw InputError("expected a point as X,Y but got '" + text + "'");
  return {v[0], v[1]};
}

}  // namespace posgeo

#include "sched/json_io.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace sched {

namespace {

using ordered_json = nlohmann::ordered_json;

double number_field(const ordered_json& obj, const char* key) {
  const auto& v = obj.at(key);
  if (!v.is_number())
    fail(errc::schema_error, std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

}  // namespace

Instance parse_instance(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(errc::syntax_error, e.what());
  }
  if (!doc.is_object()) fail(errc::schema_error, "top level must be an object");
  for (const auto& [key, value] : doc.items())
    if (key != "m" && key != "jobs")
      fail(errc::schema_error, "unknown top-level field '" + key + "'");

  Instance inst;
  if (doc.contains("m")) {
    if (!doc["m"].is_number_integer())
      fail(errc::schema_error, "field 'm' must be an integer");
    inst.m = doc["m"].get<int>();
  }
  if (!doc.contains("jobs") || !doc["jobs"].is_array())
    fail(errc::schema_error, "field 'jobs' must be an array");
  for (const auto& item : doc["jobs"]) {
    if (!item.is_object()) fail(errc::schema_error, "each job must be an object");
    for (const auto& [key, value] : item.items())
      if (key != "id" && key != "t" && key != "u" && key != "p")
        fail(errc::schema_error, "unknown job field '" + key + "'");
    for (const char* key : {"id", "t", "u", "p"})
      if (!item.contains(key))
        fail(errc::schema_error, std::string("job missing field '") + key + "'");
    if (!item["id"].is_number_integer())
      fail(errc::schema_error, "job id must be an integer");
    Job j;
    j.id = item["id"].get<std::int64_t>();
    j.t = number_field(item, "t");
    j.u = number_field(item, "u");
    j.p = number_field(item, "p");
    inst.jobs.push_back(j);
  }
  require_valid(inst);
  return inst;
}

std::string serialize_instance(const Instance& inst) {
  ordered_json doc;
  doc["m"] = inst.m;
  ordered_json jobs = ordered_json::array();
  for (const Job& j : inst.jobs) {
    ordered_json job;
    job["id"] = j.id;
    job["t"] = j.t;
    job["u"] = j.u;
    job["p"] = j.p;
    jobs.push_back(std::move(job));
  }
  doc["jobs"] = std::move(jobs);
  return doc.dump();
}

std::string instance_fingerprint(const Instance& inst) {
  std::string text = serialize_instance(inst);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  static const char* hex = "0123456789abcdef";
  for (int i = 15; i >= 0; --i) {
    buf[i] = hex[h & 0xf];
    h >>= 4;
  }
  buf[16] = '\0';
  return std::string(buf);
}

Instance load_instance_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::syntax_error, "cannot open input file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace sched

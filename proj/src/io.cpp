#include "ietpc/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace ietpc {

namespace {

Json numbers(const std::vector<Number>& xs) {
  Json out = Json::array();
  for (const Number& x : xs) out.push_back(x.to_string());
  return out;
}

std::vector<Number> parse_numbers(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array())
    throw Error(ErrorKind::ParseError, std::string("map file needs an array \"") + key + "\"");
  std::vector<Number> out;
  for (const Json& item : j.at(key)) {
    if (!item.is_string()) throw Error(ErrorKind::ParseError, std::string("entries of \"") + key + "\" must be strings");
    out.push_back(Number::parse(item.get<std::string>()));
  }
  return out;
}

void require_keys(const Json& j, const std::set<std::string>& allowed) {
  if (!j.is_object()) throw Error(ErrorKind::ParseError, "expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) throw Error(ErrorKind::ParseError, "unknown field \"" + key + "\"");
  }
}

Interval interval_from_json(const Json& j) {
  require_keys(j, {"lo", "hi", "lo_closed", "hi_closed"});
  return Interval{Number::parse(j.at("lo").get<std::string>()), Number::parse(j.at("hi").get<std::string>()),
                  j.at("lo_closed").get<bool>(), j.at("hi_closed").get<bool>()};
}

}  // namespace

Json to_json(const Iet& t) {
  Json j;
  j["type"] = "iet";
  j["breakpoints"] = numbers(t.breakpoints());
  j["signs"] = t.signs();
  j["translations"] = numbers(t.translations());
  return j;
}

Json to_json(const PiecewiseContraction& f) {
  Json j;
  j["type"] = "pc";
  j["breakpoints"] = numbers(f.breakpoints());
  j["slopes"] = numbers(f.slopes());
  j["intercepts"] = numbers(f.intercepts());
  return j;
}

Json to_json(const Ball& b) {
  Json j;
  j["center"] = rational_to_string(b.center());
  j["radius"] = rational_to_string(b.radius());
  j["decimal"] = rational_to_decimal(b.center(), 25);
  return j;
}

Json to_json(const Interval& i) {
  Json j;
  j["lo"] = i.lo.to_string();
  j["hi"] = i.hi.to_string();
  j["lo_closed"] = i.lo_closed;
  j["hi_closed"] = i.hi_closed;
  return j;
}

Json to_json(const ComplexityTable& table) {
  Json j;
  j["prefix_length"] = table.prefix_length;
  Json rows = Json::array();
  for (int k = 1; k <= table.k_max(); ++k) rows.push_back(Json{{"k", k}, {"p", table.p(k)}});
  j["values"] = rows;
  if (table.fit) {
    j["fit"] = Json{{"alpha", table.fit->alpha}, {"beta", table.fit->beta}, {"k0", table.fit->k0}};
  } else {
    j["fit"] = nullptr;
  }
  if (table.stable_under_doubling) j["stable_under_doubling"] = *table.stable_under_doubling;
  return j;
}

Json to_json(const PeriodicCertificate& cert) {
  Json j;
  j["preperiod"] = cert.preperiod;
  j["period"] = cert.period;
  j["word"] = cert.word.to_text();
  j["cylinder"] = to_json(cert.cylinder);
  j["image"] = to_json(cert.image);
  j["slope"] = cert.slope.to_string();
  j["contraction_bound"] = cert.contraction_bound.to_string();
  return j;
}

Json to_json(const IdocCertificate& cert) {
  Json j;
  switch (cert.verdict) {
    case IdocCertificate::Verdict::PassedToDepth:
      j["verdict"] = "PassedToDepth";
      break;
    case IdocCertificate::Verdict::FailedDisjoint:
      j["verdict"] = "FailedDisjoint";
      j["i"] = cert.i;
      j["j"] = cert.j;
      j["k"] = cert.k;
      j["l"] = cert.l;
      break;
    case IdocCertificate::Verdict::FailedFinite:
      j["verdict"] = "FailedFinite";
      j["i"] = cert.i;
      j["k"] = cert.k;
      break;
  }
  j["depth"] = cert.depth;
  return j;
}

Iet iet_from_json(const Json& j) {
  require_keys(j, {"type", "breakpoints", "signs", "translations"});
  std::vector<int> signs;
  if (!j.contains("signs") || !j.at("signs").is_array())
    throw Error(ErrorKind::ParseError, "map file needs an array \"signs\"");
  for (const Json& s : j.at("signs")) {
    if (!s.is_number_integer() || (s.get<int>() != 1 && s.get<int>() != -1))
      throw Error(ErrorKind::ParseError, "signs must be 1 or -1");
    signs.push_back(s.get<int>());
  }
  return Iet(parse_numbers(j, "breakpoints"), std::move(signs), parse_numbers(j, "translations"));
}

PiecewiseContraction pc_from_json(const Json& j) {
  require_keys(j, {"type", "breakpoints", "slopes", "intercepts"});
  return PiecewiseContraction(parse_numbers(j, "breakpoints"), parse_numbers(j, "slopes"),
                              parse_numbers(j, "intercepts"));
}

Map map_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string())
    throw Error(ErrorKind::ParseError, "map file needs a string \"type\"");
  const std::string type = j.at("type").get<std::string>();
  if (type == "iet") return iet_from_json(j);
  if (type == "pc") return pc_from_json(j);
  throw Error(ErrorKind::ParseError, "unknown map type \"" + type + "\"");
}

PeriodicCertificate certificate_from_json(const Json& j) {
  require_keys(j, {"preperiod", "period", "word", "cylinder", "image", "slope", "contraction_bound"});
  return PeriodicCertificate{j.at("preperiod").get<std::size_t>(),
                             j.at("period").get<std::size_t>(),
                             interval_from_json(j.at("cylinder")),
                             interval_from_json(j.at("image")),
                             Number::parse(j.at("slope").get<std::string>()),
                             Number::parse(j.at("contraction_bound").get<std::string>()),
                             Word::parse(j.at("word").get<std::string>())};
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Map load_map(const std::filesystem::path& path) {
  Json j;
  try {
    j = Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::ParseError, path.string() + ": " + e.what());
  }
  return map_from_json(j);
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path temp = path;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + temp.string());
    out << content;
    if (!out.flush()) throw Error(ErrorKind::InvalidArgument, "write failed for " + temp.string());
  }
  std::filesystem::rename(temp, path);
}

}  // namespace ietpc

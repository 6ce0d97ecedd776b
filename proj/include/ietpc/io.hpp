#pragma once

#include <json.hpp>

#include <filesystem>
#include <string>
#include <variant>

#include "ietpc/ball.hpp"
#include "ietpc/construct.hpp"
#include "ietpc/iet.hpp"
#include "ietpc/pc.hpp"
#include "ietpc/words.hpp"

namespace ietpc {

using Json = nlohmann::ordered_json;

Json to_json(const Iet& t);
Json to_json(const PiecewiseContraction& f);
Json to_json(const Ball& b);
Json to_json(const Interval& i);
Json to_json(const ComplexityTable& table);
Json to_json(const PeriodicCertificate& cert);
Json to_json(const IdocCertificate& cert);

// Map files carry "type": "iet" or "pc"; unknown keys are rejected.
using Map = std::variant<Iet, PiecewiseContraction>;
Map map_from_json(const Json& j);
Iet iet_from_json(const Json& j);
PiecewiseContraction pc_from_json(const Json& j);
PeriodicCertificate certificate_from_json(const Json& j);

std::string read_file(const std::filesystem::path& path);
Map load_map(const std::filesystem::path& path);
// Writes to a sibling temp file and renames it into place.
void write_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace ietpc

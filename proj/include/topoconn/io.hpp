#pragma once

#include <string>

#include "json.hpp"
#include "topoconn/embed3d.hpp"
#include "topoconn/error.hpp"
#include "topoconn/geometry2d.hpp"
#include "topoconn/pcp.hpp"
#include "topoconn/quasisaw.hpp"

namespace topoconn {

using json = nlohmann::json;

inline constexpr const char* kFormat = "topoconn/1";

// {"w0":[ids],"w1":[{"id":id,"succ":[ids]}],"valuation":{var:[ids]}}
json qs_to_json(const QuasiSaw& s);
json qs_model_to_json(const QsInterpretation& m);
QsInterpretation qs_model_from_json(const json& j);

// {"vars":{name:{"polygons":[{"outer":[["p/q","p/q"],...],"holes":[...]}],"complemented":bool}}}
json poly_model_to_json(const PolyInterpretation& m);
PolyInterpretation poly_model_from_json(const json& j);

json pcp_to_json(const PcpInstance& p);
PcpInstance pcp_from_json(const json& j);
json compile_report_to_json(const CompileReport& r);

json scene_to_json(const Scene& s);
Scene scene_from_json(const json& j);
json scene_report_to_json(const SceneReport& r);

json error_to_json(const Error& e);

// IoError on failure; JSON syntax errors become InvalidJson.
std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& text);
json read_json(const std::string& path);

}  // namespace topoconn

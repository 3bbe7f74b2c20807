#include "topoconn/io.hpp"

#include <fstream>
#include <sstream>

namespace topoconn {

namespace {

// nlohmann throws its own exceptions on type mismatches; report them as input errors.
template <class F>
auto guarded(const std::string& what, F f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    fail("InvalidJson", what + ": " + e.what());
  }
}

bool identifier(const std::string& s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '\'') return false;
  return true;
}

Rat rat_from(const json& j) {
  if (j.is_string()) return parse_rat(j.get<std::string>());
  if (j.is_number_integer()) return Rat(j.get<long>());
  fail("InvalidRational", "expected a \"num/den\" string, got " + j.dump());
}

json point2(const Point& p) { return json::array({rat_string(p.x), rat_string(p.y)}); }
json point3(const Vec3& p) { return json::array({rat_string(p[0]), rat_string(p[1]), rat_string(p[2])}); }

Vec3 vec3_from(const json& j) {
  if (!j.is_array() || j.size() != 3) fail("InvalidJson", "expected a point with three coordinates, got " + j.dump());
  return {rat_from(j[0]), rat_from(j[1]), rat_from(j[2])};
}

json loop_json(const Loop& l) {
  json a = json::array();
  for (auto& p : l) a.push_back(point2(p));
  return a;
}

Loop loop_from(const json& j) {
  Loop l;
  for (auto& p : j) {
    if (!p.is_array() || p.size() != 2) fail("InvalidJson", "expected a vertex [x, y], got " + p.dump());
    l.push_back({rat_from(p[0]), rat_from(p[1])});
  }
  return l;
}

}  // namespace

json qs_to_json(const QuasiSaw& s) {
  json w1 = json::array();
  for (size_t z = 0; z < s.n1(); ++z) {
    json succ = json::array();
    for (size_t x = 0; x < s.n0(); ++x)
      if (s.succ(z).test(x)) succ.push_back(s.w0()[x]);
    w1.push_back({{"id", s.w1()[z]}, {"succ", succ}});
  }
  return {{"w0", s.w0()}, {"w1", w1}};
}

json qs_model_to_json(const QsInterpretation& m) {
  json j = qs_to_json(*m.space);
  json val = json::object();
  for (auto& [v, core] : m.valuation) {
    json ids = json::array();
    for (size_t x = 0; x < m.space->n0(); ++x)
      if (x < core.size() && core.test(x)) ids.push_back(m.space->w0()[x]);
    val[v] = ids;
  }
  j["valuation"] = val;
  return j;
}

QsInterpretation qs_model_from_json(const json& j) {
  return guarded("quasi-saw model", [&] {
    if (!j.is_object() || !j.contains("w0")) fail("InvalidModel", "a quasi-saw model needs \"w0\"");
    auto w0 = j.at("w0").get<std::vector<std::string>>();
    std::vector<QuasiSaw::Depth1> w1;
    if (j.contains("w1"))
      for (auto& z : j.at("w1")) w1.push_back({z.at("id").get<std::string>(), z.at("succ").get<std::vector<std::string>>()});
    auto s = std::make_shared<const QuasiSaw>(std::move(w0), std::move(w1));
    QsInterpretation m{s, {}};
    if (j.contains("valuation")) {
      for (auto& [v, ids] : j.at("valuation").items()) {
        if (!identifier(v)) fail("InvalidModel", "'" + v + "' is not a variable name");
        Bits core(s->n0());
        std::vector<int> depth1;
        for (auto& idj : ids) {
          auto id = idj.get<std::string>();
          if (int x = s->index0(id); x >= 0) {
            core.set(x);
          } else if (int z = s->index1(id); z >= 0) {
            depth1.push_back(z);
          } else {
            fail("UnknownPoint", "'" + id + "' in the value of '" + v + "' is not a point");
          }
        }
        // depth-1 points may be listed, but then they must be exactly the closure of the core
        if (!depth1.empty()) {
          Bits listed(s->n1()), closure(s->n1());
          for (int z : depth1) listed.set(z);
          for (size_t z = 0; z < s->n1(); ++z)
            if (s->succ(z).intersects(core)) closure.set(z);
          if (listed != closure) fail("InvalidRegion", "value of '" + v + "' is not a regular closed set", v);
        }
        m.valuation[v] = core;
      }
    }
    return m;
  });
}

json poly_model_to_json(const PolyInterpretation& m) {
  json vars = json::object();
  for (auto& [v, r] : m.valuation) {
    PolyLoops l = to_loops(r);
    json polys = json::array();
    for (auto& p : l.polygons) {
      json holes = json::array();
      for (auto& h : p.holes) holes.push_back(loop_json(h));
      polys.push_back({{"outer", loop_json(p.outer)}, {"holes", holes}});
    }
    vars[v] = {{"polygons", polys}, {"complemented", l.complemented}};
  }
  return {{"vars", vars}};
}

PolyInterpretation poly_model_from_json(const json& j) {
  return guarded("polygon model", [&] {
    if (!j.is_object() || !j.contains("vars")) fail("InvalidModel", "a polygon model needs \"vars\"");
    PolyInterpretation m;
    for (auto& [v, r] : j.at("vars").items()) {
      if (!identifier(v)) fail("InvalidModel", "'" + v + "' is not a variable name");
      PolyLoops l;
      l.complemented = r.value("complemented", false);
      for (auto& p : r.at("polygons")) {
        PolygonWithHoles ph;
        ph.outer = loop_from(p.at("outer"));
        if (p.contains("holes"))
          for (auto& h : p.at("holes")) ph.holes.push_back(loop_from(h));
        l.polygons.push_back(std::move(ph));
      }
      try {
        m.valuation[v] = from_loops(l);
      } catch (const Error& e) {
        fail(e.code(), e.what(), e.location().empty() ? v : v + ": " + e.location());
      }
    }
    return m;
  });
}

json pcp_to_json(const PcpInstance& p) {
  return {{"tiles", p.tiles}, {"lower", p.lower}, {"upper", p.upper}};
}

PcpInstance pcp_from_json(const json& j) {
  return guarded("PCP instance", [&] {
    PcpInstance p;
    p.tiles = j.at("tiles").get<std::vector<std::string>>();
    p.lower = j.at("lower").get<std::map<std::string, std::string>>();
    p.upper = j.at("upper").get<std::map<std::string, std::string>>();
    validate(p);
    return p;
  });
}

json compile_report_to_json(const CompileReport& r) {
  json fams = json::array();
  for (auto& f : r.families) {
    json e = {{"stage", f.stage}, {"family", f.family}, {"conjuncts", f.conjuncts}, {"transcription", f.transcription}};
    if (!f.note.empty()) e["note"] = f.note;
    fams.push_back(e);
  }
  return {{"variables", r.variables},
          {"atoms", r.atoms},
          {"stage_conjuncts", r.stage_conjuncts},
          {"families", fams},
          {"adjacency_table", adjacency_table().version},
          {"envelope", {{"size", r.size}, {"c0", r.c0}, {"c1", r.c1}, {"within", r.within_envelope}}}};
}

json scene_to_json(const Scene& s) {
  json balls = json::array(), rods = json::array(), hosts = json::array();
  for (auto& b : s.balls) {
    json e = {{"owner", b.owner}, {"center", point3(b.center)}, {"radius", rat_string(b.radius)}, {"step", b.step}};
    if (!b.host.empty()) e["host"] = b.host;
    balls.push_back(e);
  }
  for (auto& r : s.rods)
    rods.push_back({{"owner", r.owner},
                    {"a", point3(r.a)},
                    {"b", point3(r.b)},
                    {"radius", rat_string(r.radius)},
                    {"step", r.step},
                    {"host", r.host}});
  for (auto& h : s.hosts) {
    if (h.complement)
      hosts.push_back({{"id", h.id}, {"complement", true}});
    else
      hosts.push_back({{"id", h.id}, {"center", point3(h.center)}, {"radius", rat_string(h.radius)}});
  }
  return {{"stage", s.stage}, {"balls", balls}, {"rods", rods}, {"hosts", hosts}};
}

Scene scene_from_json(const json& j) {
  return guarded("scene", [&] {
    Scene s;
    s.stage = j.at("stage").get<int>();
    for (auto& b : j.at("balls"))
      s.balls.push_back({b.at("owner").get<std::string>(), vec3_from(b.at("center")), rat_from(b.at("radius")),
                         b.value("step", 0), b.value("host", std::string())});
    for (auto& r : j.at("rods"))
      s.rods.push_back({r.at("owner").get<std::string>(), vec3_from(r.at("a")), vec3_from(r.at("b")),
                        rat_from(r.at("radius")), r.value("step", 0), r.value("host", std::string())});
    if (j.contains("hosts"))
      for (auto& h : j.at("hosts")) {
        HostCell c;
        c.id = h.at("id").get<std::string>();
        c.complement = h.value("complement", false);
        if (!c.complement) {
          c.center = vec3_from(h.at("center"));
          c.radius = rat_from(h.at("radius"));
        }
        s.hosts.push_back(c);
      }
    return s;
  });
}

json scene_report_to_json(const SceneReport& r) {
  return {{"valid", r.valid},
          {"checks", {{"disjoint", r.disjoint}, {"connected", r.connected}, {"hosts", r.hosts}}},
          {"property_b", r.property_b},
          {"problems", r.problems}};
}

json error_to_json(const Error& e) {
  return {{"error", {{"code", e.code()}, {"message", e.what()}, {"location", e.location()}}}};
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("IoError", "cannot read '" + path + "'", path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("IoError", "cannot write '" + path + "'", path);
  out << text;
  if (!out) fail("IoError", "write to '" + path + "' failed", path);
}

json read_json(const std::string& path) {
  auto text = read_text(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail("InvalidJson", e.what(), path + ":" + std::to_string(e.byte));
  }
}

}  // namespace topoconn

#include "sbc/io.hpp"

#include <fstream>
#include <sstream>

namespace sbc {

namespace {

[[noreturn]] void fail(const std::string& source, const std::string& pointer, const std::string& msg) {
  throw InputError(source + ": at " + (pointer.empty() ? "/" : pointer) + ": " + msg);
}

const Json& require(const Json& j, const char* key, const std::string& source, const std::string& at) {
  if (!j.is_object()) fail(source, at, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(source, at, std::string("missing field \"") + key + "\"");
  return *it;
}

std::string as_string(const Json& j, const std::string& source, const std::string& at) {
  if (!j.is_string()) fail(source, at, "expected a string");
  return j.get<std::string>();
}

long long as_integer(const Json& j, const std::string& source, const std::string& at) {
  if (!j.is_number_integer()) fail(source, at, "expected an integer");
  return j.get<long long>();
}

std::vector<std::string> as_string_list(const Json& j, const std::string& source, const std::string& at) {
  if (!j.is_array()) fail(source, at, "expected an array of ids");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_string(j[i], source, at + "/" + std::to_string(i)));
  return out;
}

IntMatrix<long long> as_matrix(const Json& j, const std::string& source, const std::string& at) {
  if (!j.is_array()) fail(source, at, "expected a matrix (array of rows)");
  const int rows = static_cast<int>(j.size());
  int cols = -1;
  for (int i = 0; i < rows; ++i) {
    if (!j[i].is_array()) fail(source, at + "/" + std::to_string(i), "expected a row");
    if (cols >= 0 && static_cast<int>(j[i].size()) != cols) fail(source, at + "/" + std::to_string(i), "ragged matrix");
    cols = static_cast<int>(j[i].size());
  }
  IntMatrix<long long> m(rows, std::max(cols, 0));
  for (int i = 0; i < rows; ++i)
    for (int c = 0; c < cols; ++c)
      m(i, c) = as_integer(j[i][c], source, at + "/" + std::to_string(i) + "/" + std::to_string(c));
  return m;
}

const char* flag_names[] = {"exceptional", "in_last_divisor"};

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    // byte offset -> line:column
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') ++line, col = 1;
      else ++col;
    }
    throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": parse error: " + e.what());
  }
}

ComplexData complex_data_from_json(const Json& j, const std::string& source) {
  ComplexData d;
  if (!j.is_object()) fail(source, "", "expected an object");
  if (auto it = j.find("name"); it != j.end()) d.name = as_string(*it, source, "/name");
  if (auto it = j.find("base"); it != j.end()) {
    if (it->is_string()) {
      if (it->get<std::string>() != "k") fail(source, "/base", "expected \"k\" or {\"R_d\": d}");
    } else if (it->is_object() && it->contains("R_d")) {
      d.base.dvr = true;
      d.base.d = static_cast<int>(as_integer(it->at("R_d"), source, "/base/R_d"));
    } else {
      fail(source, "/base", "expected \"k\" or {\"R_d\": d}");
    }
  }
  if (auto it = j.find("vertices"); it != j.end()) {
    if (!it->is_array()) fail(source, "/vertices", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string at = "/vertices/" + std::to_string(i);
      const Json& v = (*it)[i];
      VertexData vd;
      vd.id = as_string(require(v, "id", source, at), source, at + "/id");
      if (auto o = v.find("order"); o != v.end()) {
        if (o->is_number_integer()) vd.key = o->get<long long>();
        else vd.below = as_string_list(*o, source, at + "/order");
      }
      if (auto c = v.find("class"); c != v.end()) vd.label = as_string(*c, source, at + "/class");
      d.vertices.push_back(std::move(vd));
    }
  }
  const Json& strata = require(j, "strata", source, "");
  if (!strata.is_array()) fail(source, "/strata", "expected an array");
  bool any_codim = false, any_vertices = false;
  for (std::size_t i = 0; i < strata.size(); ++i) {
    const std::string at = "/strata/" + std::to_string(i);
    const Json& s = strata[i];
    StratumData sd;
    sd.id = as_string(require(s, "id", source, at), source, at + "/id");
    if (auto c = s.find("codim"); c != s.end()) {
      any_codim = true;
      sd.codim = static_cast<int>(as_integer(*c, source, at + "/codim"));
      if (auto cv = s.find("covers"); cv != s.end()) sd.covers = as_string_list(*cv, source, at + "/covers");
    }
    if (auto vs = s.find("vertices"); vs != s.end()) {
      any_vertices = true;
      sd.vertices = as_string_list(*vs, source, at + "/vertices");
    }
    if (auto f = s.find("faces"); f != s.end()) {
      if (!f->is_object()) fail(source, at + "/faces", "expected an object {\"j\": id}");
      for (const auto& [k, v] : f->items()) {
        int idx = -1;
        try {
          std::size_t used = 0;
          idx = std::stoi(k, &used);
          if (used != k.size()) idx = -1;
        } catch (const std::exception&) {
        }
        if (idx < 0) fail(source, at + "/faces/" + k, "face index must be a non-negative integer");
        sd.faces[idx] = as_string(v, source, at + "/faces/" + k);
      }
    }
    if (auto c = s.find("class"); c != s.end()) sd.label = as_string(*c, source, at + "/class");
    if (auto fl = s.find("flags"); fl != s.end()) {
      for (const auto& name : as_string_list(*fl, source, at + "/flags")) {
        if (name == flag_names[0]) sd.flags |= kExceptional;
        else if (name == flag_names[1]) sd.flags |= kInLastDivisor;
        else fail(source, at + "/flags", "unknown flag " + name);
      }
    }
    d.strata.push_back(std::move(sd));
  }
  if (any_codim && any_vertices) fail(source, "/strata", "mixes the vertex form and the codim/covers form");
  d.poset = any_codim;
  return d;
}

ComplexDocument complex_document_from_json(const Json& j, const std::string& source) {
  ComplexDocument doc;
  doc.complex = StratifiedComplex::make(complex_data_from_json(j, source));
  auto lat = j.find("lattice");
  if (lat == j.end()) return doc;
  const auto& c = *doc.complex;
  const Json& cones = require(*lat, "cones", source, "/lattice");
  if (!cones.is_object()) fail(source, "/lattice/cones", "expected an object {id: rays}");
  std::vector<LatticeMatrix> rays(c.stratum_count());
  std::vector<char> seen(c.stratum_count(), 0);
  for (const auto& [id, r] : cones.items()) {
    auto s = c.find_stratum(id);
    if (!s) fail(source, "/lattice/cones/" + id, "unknown stratum");
    // listed as rays; stored with one column per ray
    LatticeMatrix listed = as_matrix(r, source, "/lattice/cones/" + id);
    LatticeMatrix m(listed.cols, listed.rows);
    for (int i = 0; i < listed.rows; ++i)
      for (int k = 0; k < listed.cols; ++k) m(k, i) = listed(i, k);
    rays[*s] = m;
    seen[*s] = 1;
  }
  for (int s = 0; s < c.stratum_count(); ++s)
    if (!seen[s]) {
      if (c.stratum(s).codim == 1) rays[s] = LatticeMatrix::identity(1);
      else fail(source, "/lattice/cones", "no cone for stratum " + c.id(s));
    }
  doc.lattice = make_lattice_complex(doc.complex, std::move(rays));
  if (auto fe = lat->find("face_embeddings"); fe != lat->end()) {
    for (const auto& [key, m] : fe->items()) {
      const std::string at = "/lattice/face_embeddings/" + key;
      auto arrow = key.find("->");
      if (arrow == std::string::npos) fail(source, at, "expected a key \"face->cone\"");
      auto f = c.find_stratum(key.substr(0, arrow));
      auto s = c.find_stratum(key.substr(arrow + 2));
      if (!f || !s) fail(source, at, "unknown stratum");
      const auto& faces = c.stratum(*s).faces;
      auto pos = std::find(faces.begin(), faces.end(), *f);
      if (pos == faces.end()) fail(source, at, "not a facet");
      LatticeMatrix given = as_matrix(m, source, at);
      if (!(given == doc.lattice->face_embedding(*s, static_cast<int>(pos - faces.begin()))))
        fail(source, at, "face embedding does not match the rays");
    }
  }
  return doc;
}

ComplexDocument load_complex(const std::string& path) {
  return complex_document_from_json(parse_json(read_text_file(path), path), path);
}

Json complex_to_json(const StratifiedComplex& c, const LatticeConeComplex* lattice) {
  ComplexData d = c.to_data();
  Json j;
  j["name"] = d.name;
  if (d.base.dvr) j["base"] = Json{{"R_d", d.base.d}};
  else j["base"] = "k";
  Json vs = Json::array();
  for (const auto& v : d.vertices) {
    Json x;
    x["id"] = v.id;
    if (v.key) x["order"] = *v.key;
    else x["order"] = v.below;
    if (!v.label.empty()) x["class"] = v.label;
    vs.push_back(x);
  }
  j["vertices"] = vs;
  Json ss = Json::array();
  for (const auto& s : d.strata) {
    Json x;
    x["id"] = s.id;
    x["class"] = s.label;
    if (d.poset) {
      x["codim"] = *s.codim;
      x["covers"] = s.covers;
    } else {
      x["vertices"] = s.vertices;
      Json f = Json::object();
      for (const auto& [k, id] : s.faces) f[std::to_string(k)] = id;
      x["faces"] = f;
    }
    if (s.flags) {
      Json fl = Json::array();
      if (s.flags & kExceptional) fl.push_back(flag_names[0]);
      if (s.flags & kInLastDivisor) fl.push_back(flag_names[1]);
      x["flags"] = fl;
    }
    ss.push_back(x);
  }
  j["strata"] = ss;
  if (lattice) {
    Json cones = Json::object();
    for (int s = 0; s < c.stratum_count(); ++s) {
      const auto& r = lattice->rays[s];
      Json rays = Json::array();
      for (int k = 0; k < r.cols; ++k) {
        Json ray = Json::array();
        for (int i = 0; i < r.rows; ++i) ray.push_back(r(i, k));
        rays.push_back(ray);
      }
      cones[c.id(s)] = rays;
    }
    j["lattice"] = Json{{"cones", cones}};
  }
  return j;
}

std::string serialize_complex(const StratifiedComplex& c, const LatticeConeComplex* lattice) {
  return complex_to_json(c, lattice).dump(2) + "\n";
}

AbelianRealization realization_from_json(const Json& j, const std::string& source) {
  AbelianRealization r;
  if (!j.is_object()) fail(source, "", "expected an object");
  if (auto c = j.find("constant"); c != j.end() && c->is_boolean() && c->get<bool>()) r.constant = true;
  if (auto rk = j.find("ranks"); rk != j.end()) {
    if (!rk->is_object()) fail(source, "/ranks", "expected an object {class: rank}");
    for (const auto& [k, v] : rk->items()) {
      long long n = as_integer(v, source, "/ranks/" + k);
      if (n < 0) fail(source, "/ranks/" + k, "rank must be non-negative");
      r.ranks[k] = static_cast<int>(n);
    }
  }
  if (auto ms = j.find("matrices"); ms != j.end()) {
    if (!ms->is_object()) fail(source, "/matrices", "expected an object {\"src->dst\": rows}");
    for (const auto& [k, v] : ms->items()) {
      auto arrow = k.find("->");
      if (arrow == std::string::npos) fail(source, "/matrices/" + k, "expected a key \"src->dst\"");
      r.matrices[{k.substr(0, arrow), k.substr(arrow + 2)}] = as_matrix(v, source, "/matrices/" + k);
    }
  }
  if (r.constant && (!r.ranks.empty() || !r.matrices.empty()))
    fail(source, "", "a constant realization takes no ranks or matrices");
  return r;
}

IntersectionProfile profile_from_json(const Json& j, const std::string& source) {
  IntersectionProfile p;
  p.center = as_string(require(j, "center", source, ""), source, "/center");
  if (auto m = j.find("mode"); m != j.end()) {
    std::string mode = as_string(*m, source, "/mode");
    if (mode == "proper") p.mode = BlowupMode::Proper;
    else if (mode == "equals_center") p.mode = BlowupMode::EqualsCenter;
    else if (mode == "no_stratum") p.mode = BlowupMode::NoStratum;
    else fail(source, "/mode", "expected proper, equals_center or no_stratum");
  }
  if (auto c = j.find("components"); c != j.end()) {
    if (!c->is_object()) fail(source, "/components", "expected an object {stratum: count}");
    for (const auto& [k, v] : c->items()) p.components[k] = static_cast<int>(as_integer(v, source, "/components/" + k));
  }
  if (auto l = j.find("labels"); l != j.end()) {
    if (!l->is_object()) fail(source, "/labels", "expected an object {stratum: class}");
    for (const auto& [k, v] : l->items()) p.labels[k] = as_string(v, source, "/labels/" + k);
  }
  return p;
}

LabelQuotient quotient_from_json(const Json& j, const std::string& source) {
  LabelQuotient q;
  const Json& m = require(j, "merge", source, "");
  if (!m.is_array()) fail(source, "/merge", "expected an array of label groups");
  for (std::size_t i = 0; i < m.size(); ++i) {
    auto group = as_string_list(m[i], source, "/merge/" + std::to_string(i));
    for (std::size_t k = 1; k < group.size(); ++k) q.merge(ClassLabel(group[0]), ClassLabel(group[k]));
  }
  return q;
}

Json report_to_json(const ValidationReport& r) {
  Json v = Json::array();
  for (const auto& x : r.violations()) v.push_back(Json{{"kind", x.kind}, {"message", x.message}, {"ids", x.ids}});
  return Json{{"ok", r.ok()}, {"violations", v}};
}

Json k0_to_json(const K0Class& k) {
  Json terms = Json::object();
  for (const auto& [l, c] : k.coeffs) terms[l.symbol()] = c;
  return Json{{"class", k.to_string()}, {"coefficients", terms}};
}

Json homology_to_json(const std::vector<HomologyGroup>& h) {
  Json out = Json::array();
  for (std::size_t n = 0; n < h.size(); ++n) {
    Json t = Json::array();
    for (const auto& x : h[n].torsion) t.push_back(x.str());
    out.push_back(Json{{"degree", n}, {"betti", h[n].betti}, {"torsion", t}, {"group", h[n].to_string()}});
  }
  return out;
}

}  // namespace sbc

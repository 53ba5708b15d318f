#pragma once

// Instance files: JSON descriptions of an algebra with optional idempotent,
// group action, modules, linearizations and triangular data.
//
// load_spec checks shape and types only; build_instance constructs the
// objects and runs every algebraic validation.

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "eqrec/algebra.hpp"
#include "eqrec/errors.hpp"
#include "eqrec/group_action.hpp"
#include "eqrec/homology.hpp"
#include "eqrec/module.hpp"
#include "eqrec/quiver.hpp"
#include "eqrec/skew_group.hpp"
#include "eqrec/triangular.hpp"

namespace eqrec {

using Json = nlohmann::json;

struct Bounds {
  std::size_t pd_bound = 10;
  std::size_t ext_k = 4;
  std::size_t tor_i = 4;
};

struct InstanceSpec {
  std::string name;
  Field field;
  Json doc;  // shape-checked document
  Bounds bounds;
};

namespace detail {

inline void require(bool ok, const std::string& path, const std::string& what) {
  if (!ok) throw SchemaError(path + ": " + what);
}

inline void only_keys(const Json& j, const std::string& path, std::initializer_list<const char*> keys) {
  require(j.is_object(), path, "expected an object");
  for (const auto& [k, v] : j.items()) {
    bool known = std::any_of(keys.begin(), keys.end(), [&](const char* x) { return k == x; });
    require(known, path + "." + k, "unknown key");
  }
}

inline std::size_t get_index(const Json& j, const std::string& path) {
  require(j.is_number_unsigned() || (j.is_number_integer() && j.get<long long>() >= 0), path,
          "expected a non-negative integer");
  return j.get<std::size_t>();
}

inline void check_scalar(const Json& j, const std::string& path) {
  require(j.is_string() || j.is_number_integer(), path, "expected an integer or a \"num/den\" string");
}

inline void check_array(const Json& j, const std::string& path) { require(j.is_array(), path, "expected an array"); }

inline void check_vector(const Json& j, const std::string& path) {
  check_array(j, path);
  for (std::size_t i = 0; i < j.size(); ++i) check_scalar(j[i], path + "[" + std::to_string(i) + "]");
}

inline void check_matrix(const Json& j, const std::string& path) {
  check_array(j, path);
  for (std::size_t i = 0; i < j.size(); ++i) {
    check_vector(j[i], path + "[" + std::to_string(i) + "]");
    require(j[i].size() == j[0].size(), path + "[" + std::to_string(i) + "]", "rows differ in length");
  }
}

inline void check_matrices(const Json& j, const std::string& path) {
  check_array(j, path);
  for (std::size_t i = 0; i < j.size(); ++i) check_matrix(j[i], path + "[" + std::to_string(i) + "]");
}

inline void check_algebra(const Json& j, const std::string& path) {
  only_keys(j, path, {"structure", "quiver"});
  require(j.contains("structure") != j.contains("quiver"), path, "give exactly one of structure and quiver");
  if (j.contains("structure")) {
    const Json& s = j["structure"];
    const std::string p = path + ".structure";
    only_keys(s, p, {"dim", "constants", "unit"});
    for (const char* k : {"dim", "constants", "unit"}) require(s.contains(k), p + "." + k, "missing");
    get_index(s["dim"], p + ".dim");
    check_array(s["constants"], p + ".constants");
    for (std::size_t c = 0; c < s["constants"].size(); ++c) {
      const Json& t = s["constants"][c];
      const std::string q = p + ".constants[" + std::to_string(c) + "]";
      require(t.is_array() && t.size() == 4, q, "expected [i, j, k, coefficient]");
      for (std::size_t x = 0; x < 3; ++x) get_index(t[x], q + "[" + std::to_string(x) + "]");
      check_scalar(t[3], q + "[3]");
    }
    check_vector(s["unit"], p + ".unit");
  } else {
    const Json& q = j["quiver"];
    const std::string p = path + ".quiver";
    only_keys(q, p, {"vertices", "arrows", "relations", "bound"});
    for (const char* k : {"vertices", "arrows", "bound"}) require(q.contains(k), p + "." + k, "missing");
    get_index(q["vertices"], p + ".vertices");
    get_index(q["bound"], p + ".bound");
    check_array(q["arrows"], p + ".arrows");
    for (std::size_t a = 0; a < q["arrows"].size(); ++a) {
      const Json& x = q["arrows"][a];
      const std::string r = p + ".arrows[" + std::to_string(a) + "]";
      require(x.is_array() && (x.size() == 2 || (x.size() == 3 && x[2].is_string())), r,
              "expected [source, target] or [source, target, name]");
      get_index(x[0], r + "[0]");
      get_index(x[1], r + "[1]");
    }
    if (q.contains("relations")) {
      check_array(q["relations"], p + ".relations");
      for (std::size_t i = 0; i < q["relations"].size(); ++i) {
        const std::string r = p + ".relations[" + std::to_string(i) + "]";
        only_keys(q["relations"][i], r, {"terms"});
        const Json& terms = q["relations"][i].value("terms", Json());
        check_array(terms, r + ".terms");
        for (std::size_t t = 0; t < terms.size(); ++t) {
          const std::string u = r + ".terms[" + std::to_string(t) + "]";
          require(terms[t].is_array() && terms[t].size() == 2, u, "expected [coefficient, [arrows]]");
          check_scalar(terms[t][0], u + "[0]");
          check_array(terms[t][1], u + "[1]");
          for (std::size_t x = 0; x < terms[t][1].size(); ++x)
            get_index(terms[t][1][x], u + "[1][" + std::to_string(x) + "]");
        }
      }
    }
  }
}

inline void check_module(const Json& m, const std::string& path) {
  only_keys(m, path, {"name", "dim", "actions", "representation", "simple", "projective", "regular", "top"});
  require(m.contains("name") && m["name"].is_string(), path + ".name", "expected a string");
  int forms = 0;
  for (const char* k : {"actions", "representation", "simple", "projective", "regular", "top"}) forms += m.contains(k);
  require(forms == 1, path, "give exactly one of actions, representation, simple, projective, regular, top");
  if (m.contains("actions")) {
    require(m.contains("dim"), path + ".dim", "missing");
    get_index(m["dim"], path + ".dim");
    check_matrices(m["actions"], path + ".actions");
  }
  if (m.contains("representation")) {
    const Json& r = m["representation"];
    only_keys(r, path + ".representation", {"dims", "maps"});
    require(r.contains("dims") && r.contains("maps"), path + ".representation", "needs dims and maps");
    check_array(r["dims"], path + ".representation.dims");
    for (std::size_t i = 0; i < r["dims"].size(); ++i)
      get_index(r["dims"][i], path + ".representation.dims[" + std::to_string(i) + "]");
    check_matrices(r["maps"], path + ".representation.maps");
  }
  if (m.contains("simple")) get_index(m["simple"], path + ".simple");
  if (m.contains("projective")) get_index(m["projective"], path + ".projective");
  for (const char* k : {"regular", "top"})
    if (m.contains(k)) require(m[k] == true, path + "." + k, "expected true");
}

inline void check_document(const Json& j) {
  only_keys(j, "$", {"name", "description", "field", "algebra", "triangular", "idempotent", "group", "modules",
                     "linearizations", "bounds"});
  if (j.contains("name")) require(j["name"].is_string(), "$.name", "expected a string");
  if (j.contains("description")) require(j["description"].is_string(), "$.description", "expected a string");
  require(j.contains("field"), "$.field", "missing");
  require(j.contains("algebra") != j.contains("triangular"), "$", "give exactly one of algebra and triangular");
  if (j.contains("algebra")) check_algebra(j["algebra"], "$.algebra");
  if (j.contains("triangular")) {
    const Json& t = j["triangular"];
    only_keys(t, "$.triangular", {"R", "S", "N"});
    for (const char* k : {"R", "S", "N"}) require(t.contains(k), std::string("$.triangular.") + k, "missing");
    check_algebra(t["R"], "$.triangular.R");
    check_algebra(t["S"], "$.triangular.S");
    only_keys(t["N"], "$.triangular.N", {"dim", "left", "right"});
    for (const char* k : {"dim", "left", "right"})
      require(t["N"].contains(k), std::string("$.triangular.N.") + k, "missing");
    get_index(t["N"]["dim"], "$.triangular.N.dim");
    check_matrices(t["N"]["left"], "$.triangular.N.left");
    check_matrices(t["N"]["right"], "$.triangular.N.right");
  }
  if (j.contains("idempotent")) {
    const Json& e = j["idempotent"];
    if (e.is_object()) {
      only_keys(e, "$.idempotent", {"vertices"});
      require(e.contains("vertices") && e["vertices"].is_array(), "$.idempotent.vertices", "expected an array");
      require(j.contains("algebra") && j["algebra"].contains("quiver"), "$.idempotent.vertices",
              "vertex idempotents need a quiver algebra");
      for (std::size_t i = 0; i < e["vertices"].size(); ++i)
        get_index(e["vertices"][i], "$.idempotent.vertices[" + std::to_string(i) + "]");
    } else {
      check_vector(e, "$.idempotent");
    }
  }
  if (j.contains("group")) {
    only_keys(j["group"], "$.group", {"matrices", "labels"});
    require(j["group"].contains("matrices"), "$.group.matrices", "missing");
    check_matrices(j["group"]["matrices"], "$.group.matrices");
    if (j["group"].contains("labels")) {
      check_array(j["group"]["labels"], "$.group.labels");
      for (std::size_t i = 0; i < j["group"]["labels"].size(); ++i)
        require(j["group"]["labels"][i].is_string(), "$.group.labels[" + std::to_string(i) + "]", "expected a string");
    }
  }
  std::set<std::string> names;
  if (j.contains("modules")) {
    check_array(j["modules"], "$.modules");
    for (std::size_t i = 0; i < j["modules"].size(); ++i) {
      const std::string p = "$.modules[" + std::to_string(i) + "]";
      check_module(j["modules"][i], p);
      require(names.insert(j["modules"][i]["name"].get<std::string>()).second, p + ".name", "duplicate module name");
      const Json& m = j["modules"][i];
      if (m.contains("representation") || m.contains("simple") || m.contains("projective"))
        require(j.contains("algebra") && j["algebra"].contains("quiver"), p, "needs a quiver algebra");
    }
  }
  if (j.contains("linearizations")) {
    check_array(j["linearizations"], "$.linearizations");
    require(j.contains("group"), "$.linearizations", "linearizations need a group");
    for (std::size_t i = 0; i < j["linearizations"].size(); ++i) {
      const std::string p = "$.linearizations[" + std::to_string(i) + "]";
      const Json& l = j["linearizations"][i];
      only_keys(l, p, {"module", "maps"});
      require(l.contains("module") && l["module"].is_string(), p + ".module", "expected a module name");
      require(names.count(l["module"].get<std::string>()) == 1, p + ".module",
              "unknown module '" + l["module"].get<std::string>() + "'");
      require(l.contains("maps"), p + ".maps", "missing");
      check_matrices(l["maps"], p + ".maps");
    }
  }
  if (j.contains("bounds")) {
    only_keys(j["bounds"], "$.bounds", {"pd_bound", "ext_k", "tor_i"});
    for (const auto& [k, v] : j["bounds"].items()) get_index(v, "$.bounds." + k);
  }
}

inline Field parse_field(const Json& j) {
  only_keys(j, "$.field", {"rationals", "prime"});
  require(j.contains("rationals") != j.contains("prime"), "$.field", "give exactly one of rationals and prime");
  if (j.contains("rationals")) {
    require(j["rationals"] == true, "$.field.rationals", "expected true");
    return Field::rationals();
  }
  return Field::prime(get_index(j["prime"], "$.field.prime"));
}

inline std::size_t line_of(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

}  // namespace detail

/// Parses and shape-checks a document; `fallback_name` labels unnamed specs.
inline InstanceSpec parse_spec(const std::string& text, const std::string& fallback_name = "instance") {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::string msg = e.what();
    auto pos = msg.find("] ");
    throw ParseError(detail::line_of(text, e.byte == 0 ? 0 : e.byte - 1),
                     pos == std::string::npos ? msg : msg.substr(pos + 2));
  }
  detail::check_document(doc);
  InstanceSpec spec;
  spec.name = doc.value("name", fallback_name);
  spec.field = detail::parse_field(doc["field"]);
  if (doc.contains("bounds")) {
    const Json& b = doc["bounds"];
    spec.bounds.pd_bound = b.value("pd_bound", spec.bounds.pd_bound);
    spec.bounds.ext_k = b.value("ext_k", spec.bounds.ext_k);
    spec.bounds.tor_i = b.value("tor_i", spec.bounds.tor_i);
  }
  spec.doc = std::move(doc);
  return spec;
}

inline InstanceSpec load_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_spec(ss.str(), path.stem().string());
}

struct NamedModule {
  std::string name;
  RightModule module;
};

struct NamedLinearization {
  std::size_t module;  // index into Instance::modules
  std::vector<Matrix> maps;
};

struct Instance {
  std::string name;
  Field field;
  Algebra algebra;
  std::optional<PathAlgebra> quiver;
  std::optional<TriangularAlgebra> triangular;
  std::optional<Vector> idempotent;
  std::optional<GroupAction> action;
  std::vector<NamedModule> modules;
  std::vector<NamedLinearization> linearizations;
  Bounds bounds;

  std::optional<SkewAlgebra> skew() const {
    if (!action) return std::nullopt;
    return skew_group_algebra(algebra, *action);
  }
};

namespace detail {

inline Scalar scalar_from(const Json& j, const Field& f) {
  return j.is_string() ? f.parse(j.get<std::string>()) : f.from_int(j.get<long long>());
}

inline Vector vector_from(const Json& j, const Field& f, std::size_t n, const std::string& path) {
  require(j.size() == n, path, "expected length " + std::to_string(n));
  Vector v;
  for (const auto& x : j) v.push_back(scalar_from(x, f));
  return v;
}

/// Rows of the given shape; [] stands for any matrix with no entries.
inline Matrix matrix_from(const Json& j, const Field& f, std::size_t rows, std::size_t cols, const std::string& path) {
  Matrix m = zero_matrix(rows, cols, f);
  if (rows * cols == 0 && j.empty()) return m;
  require(j.size() == rows && (rows == 0 || j[0].size() == cols), path,
          "expected a " + std::to_string(rows) + " x " + std::to_string(cols) + " matrix");
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = scalar_from(j[i][c], f);
  return m;
}

inline std::vector<Matrix> matrices_from(const Json& j, const Field& f, std::size_t count, std::size_t rows,
                                         std::size_t cols, const std::string& path) {
  require(j.size() == count, path, "expected " + std::to_string(count) + " matrices");
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < count; ++i)
    out.push_back(matrix_from(j[i], f, rows, cols, path + "[" + std::to_string(i) + "]"));
  return out;
}

struct BuiltAlgebra {
  Algebra algebra;
  std::optional<PathAlgebra> quiver;
};

inline BuiltAlgebra algebra_from(const Json& j, const Field& f, const std::string& path) {
  if (j.contains("structure")) {
    const Json& s = j["structure"];
    const std::size_t n = s["dim"].get<std::size_t>();
    std::vector<StructureConstant> sc;
    for (const auto& t : s["constants"]) {
      sc.push_back({t[0].get<std::size_t>(), t[1].get<std::size_t>(), t[2].get<std::size_t>(), scalar_from(t[3], f)});
    }
    return {Algebra(f, n, sc, vector_from(s["unit"], f, n, path + ".structure.unit")), std::nullopt};
  }
  const Json& q = j["quiver"];
  QuiverPresentation pres;
  pres.vertices = q["vertices"].get<std::size_t>();
  pres.bound = q["bound"].get<std::size_t>();
  for (std::size_t a = 0; a < q["arrows"].size(); ++a) {
    const Json& x = q["arrows"][a];
    pres.arrows.push_back({x[0].get<std::size_t>(), x[1].get<std::size_t>(),
                           x.size() == 3 ? x[2].get<std::string>() : "a" + std::to_string(a)});
  }
  for (const auto& rel : q.value("relations", Json::array())) {
    Relation r;
    for (const auto& t : rel["terms"]) r.push_back({scalar_from(t[0], f), t[1].get<std::vector<std::size_t>>()});
    pres.relations.push_back(std::move(r));
  }
  PathAlgebra pa = path_algebra(pres, f);
  return {pa.algebra, pa};
}

inline RightModule module_from(const Json& m, const Instance& inst, const std::string& path) {
  const Algebra& a = inst.algebra;
  if (m.contains("regular")) return regular_module(a);
  if (m.contains("top")) return top_of_algebra(a);
  if (m.contains("actions")) {
    const std::size_t d = m["dim"].get<std::size_t>();
    return RightModule(a, d, matrices_from(m["actions"], inst.field, a.dim(), d, d, path + ".actions"));
  }
  const PathAlgebra& pa = *inst.quiver;
  const std::size_t nv = pa.quiver.vertices;
  if (m.contains("simple") || m.contains("projective")) {
    std::size_t v = m.contains("simple") ? m["simple"].get<std::size_t>() : m["projective"].get<std::size_t>();
    require(v < nv, path, "vertex out of range");
    return m.contains("simple") ? simple_module(pa, v) : vertex_projective(pa, v);
  }
  const Json& r = m["representation"];
  Representation rep;
  rep.dims = r["dims"].get<std::vector<std::size_t>>();
  require(rep.dims.size() == nv, path + ".representation.dims", "expected one entry per vertex");
  require(r["maps"].size() == pa.quiver.arrows.size(), path + ".representation.maps", "expected one map per arrow");
  for (std::size_t x = 0; x < pa.quiver.arrows.size(); ++x) {
    const Arrow& arr = pa.quiver.arrows[x];
    rep.maps.push_back(matrix_from(r["maps"][x], inst.field, rep.dims[arr.source], rep.dims[arr.target],
                                   path + ".representation.maps[" + std::to_string(x) + "]"));
  }
  return representation_module(pa, rep);
}

}  // namespace detail

/// Builds every object described by an instance file, running all algebraic validations.
inline Instance build_instance(const InstanceSpec& spec) {
  using namespace detail;
  const Json& j = spec.doc;
  Instance inst;
  inst.name = spec.name;
  inst.field = spec.field;
  inst.bounds = spec.bounds;
  if (j.contains("algebra")) {
    BuiltAlgebra b = algebra_from(j["algebra"], spec.field, "$.algebra");
    inst.algebra = b.algebra;
    inst.quiver = b.quiver;
  } else {
    const Json& t = j["triangular"];
    Algebra r = algebra_from(t["R"], spec.field, "$.triangular.R").algebra;
    Algebra s = algebra_from(t["S"], spec.field, "$.triangular.S").algebra;
    const std::size_t dn = t["N"]["dim"].get<std::size_t>();
    Bimodule n(s, r, dn, matrices_from(t["N"]["left"], spec.field, s.dim(), dn, dn, "$.triangular.N.left"),
               matrices_from(t["N"]["right"], spec.field, r.dim(), dn, dn, "$.triangular.N.right"));
    inst.triangular = triangular_algebra(r, s, n);
    inst.algebra = inst.triangular->total;
    inst.idempotent = inst.triangular->e;
  }
  const std::size_t n = inst.algebra.dim();
  if (j.contains("idempotent")) {
    const Json& e = j["idempotent"];
    if (e.is_object()) {
      auto vs = e["vertices"].get<std::vector<std::size_t>>();
      for (auto v : vs) require(v < inst.quiver->quiver.vertices, "$.idempotent.vertices", "vertex out of range");
      inst.idempotent = inst.quiver->vertex_sum(vs);
    } else {
      inst.idempotent = vector_from(e, spec.field, n, "$.idempotent");
    }
    inst.algebra.require_idempotent(*inst.idempotent);
  }
  if (j.contains("group")) {
    const Json& g = j["group"];
    std::vector<Matrix> ms = matrices_from(g["matrices"], spec.field, g["matrices"].size(), n, n, "$.group.matrices");
    inst.action = GroupAction(inst.algebra, std::move(ms), g.value("labels", std::vector<std::string>{}));
    if (inst.idempotent) require_invariant_idempotent(*inst.action, *inst.idempotent);
  }
  for (std::size_t i = 0; i < j.value("modules", Json::array()).size(); ++i) {
    const Json& m = j["modules"][i];
    inst.modules.push_back(
        {m["name"].get<std::string>(), module_from(m, inst, "$.modules[" + std::to_string(i) + "]")});
  }
  if (j.contains("linearizations")) {
    SkewAlgebra s = skew_group_algebra(inst.algebra, *inst.action, false);
    for (std::size_t i = 0; i < j["linearizations"].size(); ++i) {
      const Json& l = j["linearizations"][i];
      const std::string p = "$.linearizations[" + std::to_string(i) + "]";
      std::size_t idx = 0;
      while (inst.modules[idx].name != l["module"].get<std::string>()) ++idx;
      const std::size_t d = inst.modules[idx].module.dim();
      NamedLinearization nl{idx, matrices_from(l["maps"], spec.field, inst.action->order(), d, d, p + ".maps")};
      validate_linearization(s, {inst.modules[idx].module, nl.maps});
      inst.linearizations.push_back(std::move(nl));
    }
  }
  return inst;
}

}  // namespace eqrec

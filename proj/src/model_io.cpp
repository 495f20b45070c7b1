#include "gma/model_io.hpp"

#include <cmath>

#include "gma/errors.hpp"
#include "gma/literal.hpp"
#include "gma/rational.hpp"
#include "json.hpp"

namespace gma {

namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& what) { throw ValidationError(path + ": " + what); }

const json& field(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail(path.empty() ? key : path + "." + key, "missing field");
  return *it;
}

std::string child(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string child(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

double number(const json& j, const std::string& path) {
  double x = 0.0;
  if (j.is_number()) {
    x = j.get<double>();
  } else if (j.is_string()) {
    try {
      x = to_double(parse_rational(j.get<std::string>()));
    } catch (const ValidationError& e) {
      fail(path, e.what());
    }
  } else {
    fail(path, "expected a number or a \"p/q\" string");
  }
  if (!std::isfinite(x)) fail(path, "number is not finite");
  return x;
}

cplx complex_entry(const json& j, const std::string& path) {
  if (j.is_array()) {
    if (j.size() != 2) fail(path, "complex entries are [re, im] pairs");
    return {number(j[0], child(path, 0)), number(j[1], child(path, 1))};
  }
  return {number(j, path), 0.0};
}

ComplexVector parse_vector(const json& j, Eigen::Index n, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  if (static_cast<Eigen::Index>(j.size()) != n)
    fail(path, "expected " + std::to_string(n) + " entries, got " + std::to_string(j.size()));
  ComplexVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = complex_entry(j[static_cast<std::size_t>(i)], child(path, static_cast<std::size_t>(i)));
  return v;
}

ComplexMatrix parse_matrix(const json& j, Eigen::Index n, const std::string& path) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != n)
    fail(path, "expected a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
  ComplexMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::string rp = child(path, static_cast<std::size_t>(i));
    const ComplexVector row = parse_vector(j[static_cast<std::size_t>(i)], n, rp);
    m.row(i) = row.transpose();
  }
  return m;
}

std::vector<ComplexMatrix> parse_matrix_list(const json& j, Eigen::Index n, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of matrices");
  std::vector<ComplexMatrix> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_matrix(j[i], n, child(path, i)));
  return out;
}

int label_index(const FiniteWedgeSystem& s, const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a wedge label");
  const std::string l = j.get<std::string>();
  for (int i = 0; i < s.size(); ++i)
    if (s.labels[static_cast<std::size_t>(i)] == l) return i;
  fail(path, "unknown wedge label '" + l + "'");
}

std::pair<int, int> label_pair(const FiniteWedgeSystem& s, const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) fail(path, "expected a pair of labels");
  return {label_index(s, j[0], child(path, 0)), label_index(s, j[1], child(path, 1))};
}

FiniteWedgeSystem parse_system(const json& j, const std::string& path) {
  FiniteWedgeSystem s;
  const json& labels = field(j, "labels", path);
  if (!labels.is_array() || labels.empty()) fail(child(path, "labels"), "expected a nonempty array of strings");
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!labels[i].is_string()) fail(child(child(path, "labels"), i), "expected a string");
    s.labels.push_back(labels[i].get<std::string>());
  }
  const int n = s.size();

  if (j.contains("order")) {
    const json& order = j["order"];
    const std::string op = child(path, "order");
    if (!order.is_array()) fail(op, "expected an array of pairs");
    for (std::size_t i = 0; i < order.size(); ++i) s.order.push_back(label_pair(s, order[i], child(op, i)));
  }

  const std::string cp = child(path, "complement");
  const json& comp = field(j, "complement", path);
  if (!comp.is_array()) fail(cp, "expected an array of pairs");
  s.complement.assign(static_cast<std::size_t>(n), -1);
  for (std::size_t i = 0; i < comp.size(); ++i) {
    const auto [a, b] = label_pair(s, comp[i], child(cp, i));
    for (const auto& [x, y] : {std::pair{a, b}, std::pair{b, a}}) {
      if (s.complement[x] != -1 && s.complement[x] != y) fail(child(cp, i), "conflicting complement of " + s.labels[x]);
      s.complement[x] = y;
    }
  }
  for (int a = 0; a < n; ++a)
    if (s.complement[a] == -1) fail(cp, "no complement given for " + s.labels[a]);

  const std::string rp = child(path, "reflections");
  const json& refl = field(j, "reflections", path);
  if (!refl.is_object()) fail(rp, "expected an object keyed by label");
  s.reflections.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), -1));
  for (int w0 = 0; w0 < n; ++w0) {
    const std::string wp = child(rp, s.labels[w0]);
    const json& perm = field(refl, s.labels[w0], rp);
    if (!perm.is_object()) fail(wp, "expected an object mapping labels to labels");
    for (auto it = perm.begin(); it != perm.end(); ++it) {
      const int from = label_index(s, json(it.key()), wp);
      s.reflections[w0][from] = label_index(s, it.value(), child(wp, it.key()));
    }
    for (int w = 0; w < n; ++w)
      if (s.reflections[w0][w] == -1) fail(wp, "no image given for " + s.labels[w]);
  }
  for (const auto& key : refl.items())
    label_index(s, json(key.key()), rp);

  try {
    s.validate();
  } catch (const ValidationError& e) {
    fail(path, e.what());
  }
  return s;
}

ojson matrix_json(const ComplexMatrix& m) {
  ojson rows = ojson::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ojson row = ojson::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

ojson vector_json(const ComplexVector& v) {
  ojson out = ojson::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
  return out;
}

} // namespace

ToyNet parse_model(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) fail("$", "model must be a JSON object");
  const json& version = field(j, "version", "");
  if (!version.is_number_integer() || version.get<int>() != kModelVersion)
    fail("version", "unsupported model version (expected " + std::to_string(kModelVersion) + ")");

  ToyNet net;
  if (j.contains("name")) {
    if (!j["name"].is_string()) fail("name", "expected a string");
    net.name = j["name"].get<std::string>();
  } else {
    net.name = "model";
  }
  const json& dim = field(j, "hilbert_dim", "");
  if (!dim.is_number_integer() || dim.get<long>() <= 0 || dim.get<long>() > 4096)
    fail("hilbert_dim", "expected a positive integer");
  const Eigen::Index n = dim.get<long>();
  net.hilbert_dim = n;
  net.system = parse_system(field(j, "wedge_system", ""), "wedge_system");

  const json& algebras = field(j, "algebras", "");
  if (!algebras.is_object()) fail("algebras", "expected an object keyed by label");
  for (const auto& item : algebras.items()) label_index(net.system, json(item.key()), "algebras");
  for (const auto& label : net.system.labels) {
    const std::string ap = child("algebras", label);
    const auto gens = parse_matrix_list(field(algebras, label, "algebras"), n, ap);
    net.algebras.push_back(close_star_algebra(gens, n));
  }

  net.omega0 = parse_vector(field(j, "omega0", ""), n, "omega0");
  if (std::abs(net.omega0.norm() - 1.0) > 1e-10)
    fail("omega0", "must be a unit vector (norm " + std::to_string(net.omega0.norm()) + ")");

  if (j.contains("symmetries")) {
    net.symmetries = parse_matrix_list(j["symmetries"], n, "symmetries");
    for (std::size_t i = 0; i < net.symmetries.size(); ++i)
      if (!is_unitary(net.symmetries[i], 1e-9)) fail(child("symmetries", i), "matrix is not unitary");
  }
  if (j.contains("translation_generators")) {
    net.translation_generators = parse_matrix_list(j["translation_generators"], n, "translation_generators");
    if (!net.translation_generators.empty() && net.translation_generators.size() != 4)
      fail("translation_generators", "expected four generators");
    for (std::size_t i = 0; i < net.translation_generators.size(); ++i)
      if (!is_hermitian(net.translation_generators[i], 1e-10))
        fail(child("translation_generators", i), "matrix is not Hermitian");
  }
  if (j.contains("wedge_geometry")) {
    const json& geo = j["wedge_geometry"];
    if (!geo.is_object()) fail("wedge_geometry", "expected an object keyed by label");
    for (const auto& label : net.system.labels) {
      const std::string gp = child("wedge_geometry", label);
      const json& lit = field(geo, label, "wedge_geometry");
      if (!lit.is_string()) fail(gp, "expected a Poincare literal string");
      try {
        parse_poincare(lit.get<std::string>());
      } catch (const ValidationError& e) {
        fail(gp, e.what());
      }
      net.geometry.push_back(lit.get<std::string>());
    }
  }
  try {
    net.validate();
  } catch (const ValidationError& e) {
    fail("$", e.what());
  }
  return net;
}

std::string serialize_model(const ToyNet& net) {
  ojson j;
  j["version"] = kModelVersion;
  j["name"] = net.name;
  j["hilbert_dim"] = net.hilbert_dim;
  const auto& s = net.system;
  ojson sys;
  sys["labels"] = s.labels;
  ojson order = ojson::array();
  for (const auto& [a, b] : s.order) order.push_back({s.labels[a], s.labels[b]});
  sys["order"] = order;
  ojson comp = ojson::array();
  for (int a = 0; a < s.size(); ++a)
    if (a <= s.complement[a]) comp.push_back({s.labels[a], s.labels[s.complement[a]]});
  sys["complement"] = comp;
  ojson refl = ojson::object();
  for (int w0 = 0; w0 < s.size(); ++w0) {
    ojson perm = ojson::object();
    for (int w = 0; w < s.size(); ++w) perm[s.labels[w]] = s.labels[s.reflections[w0][w]];
    refl[s.labels[w0]] = perm;
  }
  sys["reflections"] = refl;
  j["wedge_system"] = sys;

  ojson algebras = ojson::object();
  for (int w = 0; w < s.size(); ++w) {
    ojson gens = ojson::array();
    for (const auto& b : net.algebras[w].basis()) gens.push_back(matrix_json(b));
    algebras[s.labels[w]] = gens;
  }
  j["algebras"] = algebras;
  j["omega0"] = vector_json(net.omega0);
  if (!net.symmetries.empty()) {
    ojson syms = ojson::array();
    for (const auto& v : net.symmetries) syms.push_back(matrix_json(v));
    j["symmetries"] = syms;
  }
  if (!net.translation_generators.empty()) {
    ojson ps = ojson::array();
    for (const auto& p : net.translation_generators) ps.push_back(matrix_json(p));
    j["translation_generators"] = ps;
  }
  if (!net.geometry.empty()) {
    ojson geo = ojson::object();
    for (int w = 0; w < s.size(); ++w) geo[s.labels[w]] = net.geometry[static_cast<std::size_t>(w)];
    j["wedge_geometry"] = geo;
  }
  return j.dump(1);
}

} // namespace gma

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "gma/errors.hpp"
#include "gma/literal.hpp"
#include "gma/model_io.hpp"
#include "gma/suite.hpp"
#include "json.hpp"

using namespace gma;

namespace {

struct Common {
  double tol = 1e-8;
  std::uint64_t seed = 0;
  int samples = 200;
  std::string format = "text";
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

DemoParams parse_params(const std::vector<std::string>& items) {
  DemoParams p;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw ValidationError("--param expects key=value, got '" + item + "'");
    p[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return p;
}

int emit(const Report& rep, const Common& c) {
  std::cout << (c.format == "json" ? report_to_json(rep) + "\n" : report_to_text(rep));
  return rep.exit_code();
}

SuiteOptions options(const Common& c) { return {c.tol, c.seed, c.samples}; }

// wedge commands -------------------------------------------------------------

struct WedgeArgs {
  std::string op, w1, w2;
  double t = 0.0, eps = 1e-4;
};

using ojson = nlohmann::ordered_json;

template <typename T>
ojson wedge_json(const Wedge<T>& w) {
  auto vec = [](const Vec4<T>& v) {
    ojson a = ojson::array();
    for (const auto& x : v) {
      if constexpr (std::is_same_v<T, Rational>)
        a.push_back(to_string(x));
      else
        a.push_back(x);
    }
    return a;
  };
  auto num = [](const T& x) -> ojson {
    if constexpr (std::is_same_v<T, Rational>)
      return to_string(x);
    else
      return x;
  };
  return {{"plus", {{"covector", vec(w.plus.covector)}, {"offset", num(w.plus.offset)}}},
          {"minus", {{"covector", vec(w.minus.covector)}, {"offset", num(w.minus.offset)}}},
          {"edge_point", vec(w.edge_point)}};
}

template <typename T>
ojson poincare_json(const Poincare<T>& g) {
  ojson l = ojson::array();
  for (const auto& row : g.lorentz) {
    ojson r = ojson::array();
    for (const auto& x : row) {
      if constexpr (std::is_same_v<T, Rational>)
        r.push_back(to_string(x));
      else
        r.push_back(x);
    }
    l.push_back(r);
  }
  ojson a = ojson::array();
  for (const auto& x : g.translation) {
    if constexpr (std::is_same_v<T, Rational>)
      a.push_back(to_string(x));
    else
      a.push_back(x);
  }
  return {{"lorentz", l}, {"translation", a}, {"text", format_poincare(g)}};
}

template <typename T>
std::string num_text(const T& x) {
  if constexpr (std::is_same_v<T, Rational>) {
    return to_string(x);
  } else {
    std::ostringstream s;
    s.precision(12);
    s << x;
    return s.str();
  }
}

template <typename T>
const Poincare<T>& element_of(const PoincareLiteral& lit) {
  if constexpr (std::is_same_v<T, Rational>)
    return lit.rational;
  else
    return lit.floating;
}

template <typename T>
int wedge_op(const WedgeArgs& a, const PoincareLiteral& l1, const PoincareLiteral* l2, const Common& c,
             ojson& out, std::ostringstream& text) {
  const Wedge<T> wr = standard_wedge<T>();
  const Wedge<T> w1 = transform(element_of<T>(l1), wr);
  out["exact"] = std::is_same_v<T, Rational>;
  out["w1"] = wedge_json(w1);
  text << "W1 = " << format_wedge(w1) << "\n";
  std::optional<Wedge<T>> w2;
  if (l2) {
    w2 = transform(element_of<T>(*l2), wr);
    out["w2"] = wedge_json(*w2);
    text << "W2 = " << format_wedge(*w2) << "\n";
  }
  (void)c;
  if (a.op == "reflect") {
    const Poincare<T> g = edge_reflection(w1);
    out["reflection"] = poincare_json(g);
    const bool maps = same_wedge(transform(g, w1), causal_complement(w1));
    out["maps_to_complement"] = maps;
    text << "edge reflection: " << format_poincare(g) << "\n";
    text << "maps W1 onto W1': " << (maps ? "yes" : "no") << "\n";
  } else if (a.op == "complement") {
    const Wedge<T> wc = causal_complement(w1);
    out["complement"] = wedge_json(wc);
    text << "complement: " << format_wedge(wc) << "\n";
  } else if (a.op == "product") {
    const Poincare<T> g = reflection_product(w1, *w2);
    out["product"] = poincare_json(g);
    text << "lambda_W1 lambda_W2: " << format_poincare(g) << "\n";
    text << "translation: " << format_vector(g.translation) << "\n";
  } else if (a.op == "include") {
    const InclusionCertificate<T> cert = includes(w1, *w2);
    out["inner_in_outer"] = cert.holds;
    ojson terms = ojson::array();
    for (const auto& t : cert.terms)
      terms.push_back({{"alpha", num_text(t.alpha)}, {"beta", num_text(t.beta)}, {"constant", num_text(t.constant)},
                       {"valid", t.valid}});
    out["certificate"] = terms;
    text << "W2 inside W1: " << (cert.holds ? "yes" : "no") << "\n";
    const char* names[2] = {"f+", "f-"};
    for (std::size_t k = 0; k < 2; ++k) {
      const auto& t = cert.terms[k];
      text << "  W1." << names[k] << " = " << num_text(t.alpha) << " W2.f+ + " << num_text(t.beta) << " W2.f- + "
           << num_text(t.constant) << (t.valid ? "" : "  (no certificate)") << "\n";
    }
    return cert.holds ? 0 : 1;
  }
  return 0;
}

int run_wedge(const WedgeArgs& a, const Common& c) {
  const bool two = a.op == "product" || a.op == "include" || a.op == "approx-include";
  if (a.w1.empty()) throw ValidationError("--w1 is required");
  if (two && a.w2.empty()) throw ValidationError("--w2 is required for " + a.op);
  const PoincareLiteral l1 = parse_poincare(a.w1);
  std::optional<PoincareLiteral> l2;
  if (two) l2 = parse_poincare(a.w2);

  ojson out;
  out["operation"] = a.op;
  std::ostringstream text;
  int code = 0;
  if (a.op == "boost") {
    const Wedge<double> w = transform(l1.floating, standard_wedge<double>());
    const Poincare<double> g = boost_subgroup(w, a.t);
    out["w1"] = wedge_json(w);
    out["t"] = a.t;
    out["boost"] = poincare_json(g);
    out["preserves_w1"] = same_wedge(transform(g, w), w);
    text << "W1 = " << format_wedge(w) << "\n";
    text << "boost lambda_W1(2 pi t), t = " << a.t << ": " << format_poincare(g) << "\n";
  } else if (a.op == "approx-include") {
    const Wedge<double> inner = transform(l1.floating, standard_wedge<double>());
    const Wedge<double> outer = transform(l2->floating, standard_wedge<double>());
    const ApproximateInclusion r = approximate_inclusion_pair(inner, outer, a.eps);
    out["epsilon"] = a.eps;
    out["denominator"] = r.denominator.get_str();
    out["inner"] = wedge_json(r.inner);
    out["outer"] = wedge_json(r.outer);
    out["inner_element"] = poincare_json(r.inner_element);
    out["outer_element"] = poincare_json(r.outer_element);
    out["inner_distance"] = r.inner_distance;
    out["outer_distance"] = r.outer_distance;
    out["certified"] = r.certificate.holds;
    text << "rational inner: " << format_wedge(r.inner) << "\n";
    text << "rational outer: " << format_wedge(r.outer) << "\n";
    text << "denominator " << r.denominator.get_str() << ", distances " << r.inner_distance << " and "
         << r.outer_distance << " (epsilon " << a.eps << ")\n";
    text << "exact inclusion certificate: " << (r.certificate.holds ? "yes" : "no") << "\n";
    code = r.certificate.holds ? 0 : 1;
  } else if (l1.exact && (!l2 || l2->exact)) {
    code = wedge_op<Rational>(a, l1, l2 ? &*l2 : nullptr, c, out, text);
  } else {
    code = wedge_op<double>(a, l1, l2 ? &*l2 : nullptr, c, out, text);
  }
  std::cout << (c.format == "json" ? out.dump(2) + "\n" : text.str());
  return code;
}

int error_exit(const std::exception& e) {
  std::cerr << "error: " << e.what() << "\n";
  const std::string kind = error_kind_of(e);
  if (kind == "validation") return 2;
  if (kind == "ill-conditioned" || kind == "convergence" || kind == "numeric") return 3;
  return 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite models of nets of wedge algebras: modular theory, natural cones, wedge geometry"};
  app.require_subcommand(1);
  app.fallthrough();
  Common c;
  app.add_option("--tol", c.tol, "tolerance for required checks")->capture_default_str();
  app.add_option("--seed", c.seed, "seed for sampled checks")->capture_default_str();
  app.add_option("--samples", c.samples, "samples per sampled check")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--format", c.format, "output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();

  std::string model_path, demo_name;
  std::vector<std::string> params;
  std::string save_path;

  auto* check = app.add_subcommand("check", "run every check on a model file");
  check->add_option("model", model_path, "model JSON file")->required();

  auto* demo = app.add_subcommand("demo", "build a demo model and run every check");
  demo->add_option("name", demo_name, "doubled, tracial, multi_block, broken_symmetry, degenerate_abelian, "
                                      "translation_equipped, two_pairs")
      ->required();
  demo->add_option("--param", params, "demo parameter key=value (repeatable)");
  demo->add_option("--save", save_path, "also write the model JSON to this file");

  auto* decompose = app.add_subcommand("decompose", "central decomposition of a model");
  decompose->add_option("model", model_path, "model JSON file")->required();

  WedgeArgs wa;
  auto* wedge = app.add_subcommand("wedge", "wedge calculus; wedges are Poincare literals applied to W_R");
  wedge->require_subcommand(1);
  for (const char* op : {"reflect", "include", "complement", "product", "boost", "approx-include"}) {
    auto* sub = wedge->add_subcommand(op);
    sub->add_option("--w1", wa.w1, "Poincare literal of the first wedge (outer for include, inner for approx-include)")
        ->required();
    if (std::string(op) == "include" || std::string(op) == "product" || std::string(op) == "approx-include")
      sub->add_option("--w2", wa.w2, "Poincare literal of the second wedge")->required();
    if (std::string(op) == "boost") sub->add_option("--t", wa.t, "boost parameter; rapidity 2 pi t")->required();
    if (std::string(op) == "approx-include") sub->add_option("--eps", wa.eps, "target distance")->capture_default_str();
    sub->callback([&wa, op] { wa.op = op; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*check) return emit(run_suite(parse_model(read_file(model_path)), options(c)), c);
    if (*decompose) return emit(run_decomposition(parse_model(read_file(model_path)), options(c)), c);
    if (*demo) {
      const ToyNet net = build_demo(demo_name, parse_params(params));
      if (!save_path.empty()) {
        std::ofstream out(save_path);
        if (!out) throw ValidationError("cannot write '" + save_path + "'");
        out << serialize_model(net) << "\n";
      }
      return emit(run_suite(net, options(c)), c);
    }
    if (*wedge) return run_wedge(wa, c);
  } catch (const std::exception& e) {
    return error_exit(e);
  }
  return 2;
}

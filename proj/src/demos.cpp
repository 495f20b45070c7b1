#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "gma/errors.hpp"
#include "gma/net.hpp"

namespace gma {

namespace {

class Params {
public:
  Params(const std::string& demo, const DemoParams& p, std::set<std::string> allowed) : demo_(demo), p_(p) {
    for (const auto& [k, v] : p_)
      if (!allowed.count(k)) throw ValidationError("demo " + demo + ": unknown parameter '" + k + "'");
  }

  bool has(const std::string& k) const { return p_.count(k) > 0; }

  long integer(const std::string& k, long def, long lo, long hi) const {
    if (!has(k)) return def;
    const std::string& s = p_.at(k);
    std::size_t pos = 0;
    long v = 0;
    try {
      v = std::stol(s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != s.size()) throw ValidationError(where(k) + "expected an integer, got '" + s + "'");
    if (v < lo || v > hi)
      throw ValidationError(where(k) + "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return v;
  }

  std::string word(const std::string& k, const std::string& def, std::set<std::string> options) const {
    if (!has(k)) return def;
    if (!options.count(p_.at(k))) throw ValidationError(where(k) + "unsupported value '" + p_.at(k) + "'");
    return p_.at(k);
  }

  /// Comma list of positive numbers, normalised to sum 1.
  std::vector<double> weights(const std::string& k, std::vector<double> def) const {
    if (!has(k)) return def;
    return parse_weights(p_.at(k), where(k));
  }

  /// Semicolon-separated weight lists.
  std::vector<std::vector<double>> weight_lists(const std::string& k) const {
    std::vector<std::vector<double>> out;
    std::stringstream ss(p_.at(k));
    std::string item;
    while (std::getline(ss, item, ';')) out.push_back(parse_weights(item, where(k)));
    return out;
  }

private:
  std::string where(const std::string& k) const { return "demo " + demo_ + ", parameter " + k + ": "; }

  static std::vector<double> parse_weights(const std::string& s, const std::string& where) {
    std::vector<double> w;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
      std::size_t pos = 0;
      double x = 0.0;
      try {
        x = std::stod(item, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos == 0 || pos != item.size() || !std::isfinite(x) || x <= 0.0)
        throw ValidationError(where + "weights must be positive numbers, got '" + item + "'");
      w.push_back(x);
    }
    if (w.empty()) throw ValidationError(where + "empty weight list");
    double total = 0.0;
    for (double x : w) total += x;
    for (double& x : w) x /= total;
    return w;
  }

  std::string demo_;
  const DemoParams& p_;
};

ComplexMatrix unit(Eigen::Index n, Eigen::Index i, Eigen::Index j) {
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  m(i, j) = 1.0;
  return m;
}

ComplexMatrix eye(Eigen::Index n) { return ComplexMatrix::Identity(n, n); }

ComplexMatrix direct_sum(const std::vector<ComplexMatrix>& parts) {
  Eigen::Index n = 0;
  for (const auto& p : parts) n += p.rows();
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  Eigen::Index off = 0;
  for (const auto& p : parts) {
    out.block(off, off, p.rows(), p.cols()) = p;
    off += p.rows();
  }
  return out;
}

ComplexVector direct_sum(const std::vector<ComplexVector>& parts) {
  Eigen::Index n = 0;
  for (const auto& p : parts) n += p.size();
  ComplexVector out(n);
  Eigen::Index off = 0;
  for (const auto& p : parts) {
    out.segment(off, p.size()) = p;
    off += p.size();
  }
  return out;
}

ComplexVector schmidt_vector(const std::vector<double>& w) {
  const auto k = static_cast<Eigen::Index>(w.size());
  ComplexVector v = ComplexVector::Zero(k * k);
  for (Eigen::Index i = 0; i < k; ++i) v(i * k + i) = std::sqrt(w[static_cast<std::size_t>(i)]);
  return v;
}

// matrix units of M_k (x) 1 (left) or 1 (x) M_k (right), placed in block `at`
// of a direct sum with block sizes k_b^2
std::vector<ComplexMatrix> tensor_factor_basis(const std::vector<Eigen::Index>& ks, std::size_t at, bool left) {
  Eigen::Index n = 0, off = 0;
  for (std::size_t b = 0; b < ks.size(); ++b) {
    if (b == at) off = n;
    n += ks[b] * ks[b];
  }
  const Eigen::Index k = ks[at];
  std::vector<ComplexMatrix> out;
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) {
      ComplexMatrix m = ComplexMatrix::Zero(n, n);
      m.block(off, off, k * k, k * k) = left ? kron(unit(k, i, j), eye(k)) : kron(eye(k), unit(k, i, j));
      out.push_back(std::move(m));
    }
  return out;
}

OperatorAlgebra sum_of_factors(const std::vector<Eigen::Index>& ks, bool left) {
  std::vector<ComplexMatrix> basis;
  for (std::size_t b = 0; b < ks.size(); ++b) {
    auto part = tensor_factor_basis(ks, b, left);
    basis.insert(basis.end(), part.begin(), part.end());
  }
  Eigen::Index n = 0;
  for (auto k : ks) n += k * k;
  return OperatorAlgebra(n, std::move(basis));
}

FiniteWedgeSystem two_wedges() {
  FiniteWedgeSystem s;
  s.labels = {"W", "W'"};
  s.complement = {1, 0};
  s.reflections = {{1, 0}, {1, 0}};
  return s;
}

ComplexMatrix phase_diagonal(Eigen::Index k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  ComplexMatrix u = ComplexMatrix::Zero(k, k);
  for (Eigen::Index i = 0; i < k; ++i) u(i, i) = std::polar(1.0, angle(rng));
  return u;
}

/// Blockwise doubled factors: R(W) = sum M_k (x) 1, R(W') = sum 1 (x) M_k.
ToyNet doubled_blocks(const std::string& name, const std::vector<double>& block_weights,
                      const std::vector<std::vector<double>>& schmidt) {
  ToyNet net;
  net.name = name;
  net.system = two_wedges();
  std::vector<Eigen::Index> ks;
  std::vector<ComplexVector> parts;
  for (std::size_t b = 0; b < schmidt.size(); ++b) {
    ks.push_back(static_cast<Eigen::Index>(schmidt[b].size()));
    parts.push_back(std::sqrt(block_weights[b]) * schmidt_vector(schmidt[b]));
  }
  net.omega0 = direct_sum(parts);
  net.hilbert_dim = net.omega0.size();
  net.algebras = {sum_of_factors(ks, true), sum_of_factors(ks, false)};
  net.geometry = {"identity", "rotpi(3)"};
  return net;
}

std::vector<double> default_schmidt(Eigen::Index k, std::size_t block) {
  std::vector<double> w;
  double total = 0.0;
  for (Eigen::Index i = 0; i < k; ++i) {
    w.push_back(static_cast<double>(k - i) + 0.5 * static_cast<double>(block) + 1.0);
    total += w.back();
  }
  for (double& x : w) x /= total;
  return w;
}

std::vector<std::vector<double>> block_schmidt(const Params& p, std::size_t blocks, Eigen::Index k) {
  std::vector<std::vector<double>> s;
  if (p.has("schmidt")) {
    s = p.weight_lists("schmidt");
    if (s.size() == 1)
      s.assign(blocks, s[0]);
    else if (s.size() != blocks)
      throw ValidationError("schmidt must give one list, or one list per block");
  } else {
    for (std::size_t b = 0; b < blocks; ++b) s.push_back(default_schmidt(k, b));
  }
  return s;
}

ToyNet demo_doubled(const DemoParams& params, bool tracial) {
  const std::string name = tracial ? "tracial" : "doubled";
  Params p(name, params, {"k", "weights", "seed", "extra_symmetry"});
  Eigen::Index k = p.integer("k", 2, 1, 6);
  std::vector<double> w;
  if (tracial) {
    if (p.has("weights")) throw ValidationError("demo tracial: weights are fixed to uniform");
    w.assign(static_cast<std::size_t>(k), 1.0 / static_cast<double>(k));
  } else if (p.has("weights")) {
    w = p.weights("weights", {});
    if (p.has("k") && static_cast<Eigen::Index>(w.size()) != k)
      throw ValidationError("demo doubled: k does not match the number of weights");
    k = static_cast<Eigen::Index>(w.size());
  } else {
    w = k == 2 ? std::vector<double>{0.8, 0.2} : default_schmidt(k, 0);
  }
  ToyNet net = doubled_blocks(name, {1.0}, {w});
  const auto seed = static_cast<std::uint64_t>(p.integer("seed", 0, 0, 1L << 40));
  const ComplexMatrix u = phase_diagonal(k, seed);
  net.symmetries.push_back(kron(u, u.conjugate()));
  if (p.word("extra_symmetry", "none", {"none", "left"}) == "left") net.symmetries.push_back(kron(u, eye(k)));
  return net;
}

ToyNet demo_multi_block(const DemoParams& params, const std::string& name, bool translations) {
  std::set<std::string> allowed{"weights", "k", "schmidt"};
  if (translations) allowed.insert("defect");
  Params p(name, params, allowed);
  const std::vector<double> bw = p.weights("weights", {0.5, 0.3, 0.2});
  const Eigen::Index k = p.integer("k", 2, 1, 6);
  const auto schmidt = block_schmidt(p, bw.size(), k);
  ToyNet net = doubled_blocks(name, bw, schmidt);
  if (!translations) return net;

  const bool defect = p.integer("defect", 0, 0, 1) == 1;
  std::vector<ComplexMatrix> blocks;
  for (std::size_t b = 0; b < schmidt.size(); ++b) {
    const ComplexVector om = schmidt_vector(schmidt[b]);
    const Eigen::Index d = om.size();
    ComplexMatrix seedm(d, d + 1);
    seedm.col(0) = om;
    seedm.rightCols(d) = eye(d);
    Eigen::HouseholderQR<ComplexMatrix> qr(seedm);
    const ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(d, d);
    ComplexMatrix spec = ComplexMatrix::Zero(d, d);
    for (Eigen::Index i = 1; i < d; ++i) spec(i, i) = static_cast<double>(i);
    if (defect && b == 0 && d > 1) spec(1, 1) = 0.0;
    blocks.push_back(q * spec * q.adjoint());
  }
  const ComplexMatrix h = direct_sum(blocks);
  for (double c : {1.0, 0.5, -0.25, 0.125}) {
    ComplexMatrix pm = c * h;
    pm = 0.5 * (pm + pm.adjoint()).eval();
    net.translation_generators.push_back(pm);
  }
  return net;
}

ToyNet demo_broken_symmetry(const DemoParams& params) {
  Params p("broken_symmetry", params, {"k", "schmidt"});
  const Eigen::Index k = p.integer("k", 2, 1, 6);
  std::vector<double> s = default_schmidt(k, 0);
  if (p.has("schmidt")) {
    const auto lists = p.weight_lists("schmidt");
    if (lists.size() != 1) throw ValidationError("demo broken_symmetry: schmidt must be a single list");
    s = lists[0];
  }
  ToyNet net = doubled_blocks("broken_symmetry", {0.5, 0.5}, {s, s});
  const Eigen::Index d = static_cast<Eigen::Index>(s.size() * s.size());
  ComplexMatrix swap = ComplexMatrix::Zero(2 * d, 2 * d);
  swap.topRightCorner(d, d) = eye(d);
  swap.bottomLeftCorner(d, d) = eye(d);
  net.symmetries.push_back(swap);
  const ComplexMatrix u = phase_diagonal(static_cast<Eigen::Index>(s.size()), 7);
  net.symmetries.push_back(direct_sum(std::vector<ComplexMatrix>{kron(u, u.conjugate()), eye(d)}));
  return net;
}

ToyNet demo_degenerate_abelian(const DemoParams& params) {
  Params p("degenerate_abelian", params, {"dim", "nonabelian"});
  const Eigen::Index dim = p.integer("dim", 2, 1, 16);
  const bool nonabelian = p.integer("nonabelian", 0, 0, 1) == 1;
  ToyNet net;
  net.name = "degenerate_abelian";
  net.system = two_wedges();
  if (nonabelian) {
    net.hilbert_dim = dim * dim;
    net.omega0 = schmidt_vector(std::vector<double>(static_cast<std::size_t>(dim), 1.0 / static_cast<double>(dim)));
    const OperatorAlgebra a(net.hilbert_dim, tensor_factor_basis({dim}, 0, true));
    net.algebras = {a, a};
  } else {
    net.hilbert_dim = dim;
    net.omega0 = ComplexVector::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
    std::vector<ComplexMatrix> basis;
    for (Eigen::Index i = 0; i < dim; ++i) basis.push_back(unit(dim, i, i));
    const OperatorAlgebra a(dim, basis);
    net.algebras = {a, a};
  }
  return net;
}

/// Two doubled pairs on (C^k)^{(x)4}: W1 acts on factors {0,2}, W2 on {0,3}.
ToyNet demo_two_pairs(const DemoParams& params) {
  Params p("two_pairs", params, {"k", "weights"});
  Eigen::Index k = p.integer("k", 2, 1, 3);
  std::vector<double> w = p.weights("weights", k == 2 ? std::vector<double>{0.7, 0.3} : default_schmidt(k, 0));
  if (p.has("weights")) {
    if (p.has("k") && static_cast<Eigen::Index>(w.size()) != k)
      throw ValidationError("demo two_pairs: k does not match the number of weights");
    k = static_cast<Eigen::Index>(w.size());
  }
  const ComplexVector pair = schmidt_vector(w); // factors (0,1) and (2,3)
  ToyNet net;
  net.name = "two_pairs";
  net.omega0 = kron(pair, pair);
  net.hilbert_dim = net.omega0.size();

  // single-site operator on factor f of four
  auto site = [&](Eigen::Index f, const ComplexMatrix& x) {
    ComplexMatrix m = ComplexMatrix::Identity(1, 1);
    for (Eigen::Index g = 0; g < 4; ++g) m = kron(m, g == f ? x : eye(k));
    return m;
  };
  auto algebra_on = [&](Eigen::Index f1, Eigen::Index f2) {
    std::vector<ComplexMatrix> basis;
    for (Eigen::Index a = 0; a < k; ++a)
      for (Eigen::Index b = 0; b < k; ++b)
        for (Eigen::Index c = 0; c < k; ++c)
          for (Eigen::Index d = 0; d < k; ++d) basis.push_back(site(f1, unit(k, a, b)) * site(f2, unit(k, c, d)));
    return OperatorAlgebra(net.hilbert_dim, basis);
  };
  net.system.labels = {"W1", "W1'", "W2", "W2'"};
  net.system.complement = {1, 0, 3, 2};
  // every modular conjugation is the same factor swap, so each reflection
  // acts as the complement
  net.system.reflections.assign(4, net.system.complement);
  net.algebras = {algebra_on(0, 2), algebra_on(1, 3), algebra_on(0, 3), algebra_on(1, 2)};
  return net;
}

} // namespace

std::vector<std::string> demo_names() {
  return {"doubled", "tracial", "multi_block", "broken_symmetry", "degenerate_abelian", "translation_equipped",
          "two_pairs"};
}

ToyNet build_demo(const std::string& name, const DemoParams& params) {
  ToyNet net;
  if (name == "doubled")
    net = demo_doubled(params, false);
  else if (name == "tracial")
    net = demo_doubled(params, true);
  else if (name == "multi_block")
    net = demo_multi_block(params, name, false);
  else if (name == "translation_equipped")
    net = demo_multi_block(params, name, true);
  else if (name == "broken_symmetry")
    net = demo_broken_symmetry(params);
  else if (name == "degenerate_abelian")
    net = demo_degenerate_abelian(params);
  else if (name == "two_pairs")
    net = demo_two_pairs(params);
  else
    throw ValidationError("unknown demo '" + name + "'");
  net.validate();
  return net;
}

} // namespace gma

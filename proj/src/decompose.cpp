#include "gma/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>

#include "gma/cone.hpp"
#include "gma/errors.hpp"

namespace gma {

namespace {

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

std::string block_tag(std::size_t z) { return "block " + std::to_string(z); }

bool lex_less(const ComplexMatrix& a, const ComplexMatrix& b) {
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      const cplx x = a(i, j), y = b(i, j);
      if (std::abs(x.real() - y.real()) > 1e-12) return x.real() < y.real();
      if (std::abs(x.imag() - y.imag()) > 1e-12) return x.imag() < y.imag();
    }
  return false;
}

OperatorAlgebra restrict_algebra(const OperatorAlgebra& a, const ComplexMatrix& v) {
  std::vector<ComplexMatrix> basis;
  for (const auto& b : a.basis()) {
    ComplexMatrix r = v.adjoint() * b * v;
    if (r.norm() > 1e-12) basis.push_back(std::move(r));
  }
  return OperatorAlgebra(v.cols(), std::move(basis));
}

// restriction of an antilinear kernel K to the range of v: v^dag K conj(v)
ComplexMatrix restrict_anti(const ComplexMatrix& k, const ComplexMatrix& v) {
  return v.adjoint() * k * v.conjugate();
}

CheckResult renamed(CheckResult r, const std::string& prefix) {
  r.name = prefix + ": " + r.name;
  return r;
}

} // namespace

BlockDecomposition central_decomposition(const ToyNet& net) {
  const auto projections = minimal_central_projections(center(global_algebra(net)));
  struct Block {
    ComplexMatrix e;
    Eigen::Index dim;
    double weight;
  };
  std::vector<Block> blocks;
  for (const auto& e : projections) {
    const double w = (e * net.omega0).squaredNorm();
    if (w < 1e-12) throw PreconditionError("degenerate state: omega0 vanishes on a central block");
    blocks.push_back({e, static_cast<Eigen::Index>(std::lround(e.trace().real())), w});
  }
  std::sort(blocks.begin(), blocks.end(), [](const Block& a, const Block& b) {
    if (std::abs(a.weight - b.weight) > 1e-12) return a.weight > b.weight;
    if (a.dim != b.dim) return a.dim > b.dim;
    return lex_less(a.e, b.e);
  });
  BlockDecomposition bd;
  for (const auto& b : blocks) {
    const HermitianEig eig = hermitian_eig(b.e);
    bd.projections.push_back(b.e);
    bd.block_dims.push_back(b.dim);
    bd.weights.push_back(b.weight);
    bd.isometries.push_back(eig.vectors.rightCols(b.dim)); // eigenvalue 1, ascending order
  }
  return bd;
}

ToyNet restrict_net(const ToyNet& net, const BlockDecomposition& bd, std::size_t z) {
  const ComplexMatrix& v = bd.isometries.at(z);
  const ComplexMatrix& e = bd.projections.at(z);
  ToyNet out;
  out.name = net.name + " " + block_tag(z);
  out.system = net.system;
  out.hilbert_dim = v.cols();
  for (const auto& a : net.algebras) out.algebras.push_back(restrict_algebra(a, v));
  out.omega0 = v.adjoint() * net.omega0;
  out.omega0 /= out.omega0.norm();
  for (const auto& s : net.symmetries)
    if (max_norm(ComplexMatrix(s * e - e * s)) <= 1e-9) out.symmetries.push_back(v.adjoint() * s * v);
  bool translations = !net.translation_generators.empty();
  for (const auto& p : net.translation_generators)
    translations = translations && max_norm(ComplexMatrix(p * e - e * p)) <= 1e-9;
  if (translations)
    for (const auto& p : net.translation_generators) {
      ComplexMatrix r = v.adjoint() * p * v;
      out.translation_generators.push_back(0.5 * (r + r.adjoint()));
    }
  out.geometry = net.geometry;
  return out;
}

CheckResult decomposition_check(const ToyNet& net, const BlockDecomposition& bd) {
  CheckResult r;
  r.name = "central decomposition into factors";
  r.anchor = "decomposition into irreducible nets";
  const Eigen::Index n = net.hilbert_dim;
  ComplexMatrix sum = ComplexMatrix::Zero(n, n);
  double orth = 0.0;
  for (std::size_t a = 0; a < bd.size(); ++a) {
    sum += bd.projections[a];
    for (std::size_t b = a + 1; b < bd.size(); ++b)
      orth = std::max(orth, max_norm(ComplexMatrix(bd.projections[a] * bd.projections[b])));
  }
  const double complete = max_norm(ComplexMatrix(sum - ComplexMatrix::Identity(n, n)));
  const double wsum = std::abs(std::accumulate(bd.weights.begin(), bd.weights.end(), 0.0) - 1.0);
  double worst = std::max({complete, orth, wsum});
  bool factors = true;
  for (std::size_t z = 0; z < bd.size(); ++z) {
    const ToyNet block = restrict_net(net, bd, z);
    const OperatorAlgebra g = global_algebra(block);
    const Eigen::Index d = bd.block_dims[z];
    const bool full = g.dim() == d * d;
    const bool factor = center(g).dim() == 1;
    factors = factors && full && factor;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s: dim %ld, weight %.12g%s%s", block_tag(z).c_str(), static_cast<long>(d),
                  bd.weights[z], factor ? ", factor" : ", not a factor", full ? ", irreducible" : ", reducible");
    r.witnesses.emplace_back(buf);
  }
  r.witnesses.push_back("|sum E - 1| " + sci(complete) + ", max |E E'| " + sci(orth) + ", |sum w - 1| " + sci(wsum));
  r.residual = worst;
  r.status = worst <= 1e-10 && factors ? Status::pass : Status::fail;
  return r;
}

std::vector<CheckResult> blockwise_modular_check(const ToyNet& net, const NetModular& mod,
                                                 const BlockDecomposition& bd, double tol) {
  std::vector<CheckResult> out;
  const char* anchor = "J_W and Delta_W decompose over the blocks";
  const std::string name = "blockwise modular data";
  CheckResult r;
  r.name = name;
  r.anchor = anchor;
  double worst = 0.0;
  const Eigen::Index n = net.hilbert_dim;
  const bool global = mod.complete();
  if (!global) {
    r = error_result(name, PreconditionError("global modular data missing"), anchor);
    for (const auto& e : mod.errors)
      if (!e.empty()) r.witnesses.push_back(e);
  }
  for (std::size_t w = 0; global && w < net.algebras.size(); ++w) {
    const ModularData& md = *mod.data[w];
    const ComplexMatrix& k = md.j.kernel();
    ComplexMatrix k_sum = ComplexMatrix::Zero(n, n), d_sum = ComplexMatrix::Zero(n, n);
    for (std::size_t z = 0; z < bd.size(); ++z) {
      const ComplexMatrix& e = bd.projections[z];
      k_sum += e * k * e.conjugate();
      d_sum += e * md.delta * e;
    }
    const double recon = std::max(max_norm(ComplexMatrix(k - k_sum)), max_norm(ComplexMatrix(md.delta - d_sum)));
    worst = std::max(worst, recon);
    r.witnesses.push_back(net.system.labels[w] + ": reconstruction from blocks " + sci(recon));
  }

  for (std::size_t z = 0; z < bd.size(); ++z) {
    const ToyNet block = restrict_net(net, bd, z);
    const ComplexMatrix& v = bd.isometries[z];
    const ComplexMatrix& e = bd.projections[z];
    bool block_ok = true;
    for (std::size_t w = 0; w < net.algebras.size(); ++w) {
      const std::string where = block_tag(z) + ", " + net.system.labels[w];
      try {
        const ModularData bmd = modular_data(block.algebras[w], block.omega0);
        if (!global) continue;
        const ModularData& md = *mod.data[w];
        double res = max_norm(ComplexMatrix(md.j.kernel() * e.conjugate() - e * md.j.kernel()));
        res = std::max(res, max_norm(ComplexMatrix(restrict_anti(md.j.kernel(), v) - bmd.j.kernel())));
        for (double t : {0.5, 1.0})
          res = std::max(res, max_norm(ComplexMatrix(v.adjoint() * md.delta_power(cplx(0.0, t)) * v -
                                                     bmd.delta_power(cplx(0.0, t)))));
        worst = std::max(worst, res);
        r.witnesses.push_back(where + ": " + sci(res));
      } catch (const Error& ex) {
        out.push_back(error_result(where + " modular data", ex, anchor));
        block_ok = false;
      }
    }
    const std::string prefix = block_tag(z);
    out.push_back(renamed(check_condition_a(block, tol), prefix));
    out.push_back(renamed(check_condition_b(block), prefix));
    if (block_ok) out.push_back(renamed(check_condition_c(block, compute_net_modular(block), tol), prefix));
  }
  if (global) {
    r.residual = worst;
    r.status = worst <= tol ? Status::pass : Status::fail;
  }
  out.insert(out.begin(), r);

  if (!net.translation_generators.empty()) {
    CheckResult e0;
    e0.name = "translation-invariant vector unique in every block";
    e0.anchor = "E0(z) is one-dimensional";
    e0.residual = std::nan("");
    bool ok = true;
    for (std::size_t z = 0; z < bd.size(); ++z) {
      const ToyNet block = restrict_net(net, bd, z);
      if (block.translation_generators.empty()) {
        e0.witnesses.push_back(block_tag(z) + ": translations do not respect the block");
        ok = false;
        continue;
      }
      const Eigen::Index d = block.hilbert_dim;
      ComplexMatrix stack(4 * d, d);
      for (Eigen::Index a = 0; a < 4; ++a) stack.middleRows(a * d, d) = block.translation_generators[static_cast<std::size_t>(a)];
      const auto kernel = kernel_basis(stack, 1e-9);
      e0.witnesses.push_back(block_tag(z) + ": dim E0 = " + std::to_string(kernel.size()));
      ok = ok && kernel.size() == 1;
    }
    e0.status = ok ? Status::pass : Status::fail;
    out.push_back(e0);
  }
  return out;
}

std::vector<std::size_t> failing_blocks(const ToyNet& net, const NetModular& mod, const BlockDecomposition& bd,
                                        std::size_t w, const ComplexVector& v) {
  (void)mod;
  std::vector<std::size_t> out;
  for (std::size_t z = 0; z < bd.size(); ++z) {
    const ToyNet block = restrict_net(net, bd, z);
    const NaturalCone c(block.algebras[w], modular_data(block.algebras[w], block.omega0));
    if (!cone_membership(c, ComplexVector(bd.isometries[z].adjoint() * v)).member) out.push_back(z);
  }
  return out;
}

CheckResult blockwise_cone_check(const ToyNet& net, const NetModular& mod, const BlockDecomposition& bd,
                                 int samples, std::uint64_t seed) {
  CheckResult r;
  r.name = "natural cones decompose over the blocks";
  r.anchor = "P_W = sum of block cones; block P0 is the ray of omega0(z)";
  r.residual = std::nan("");
  const ConeFamily global = net_cones(net, mod);
  std::vector<ToyNet> blocks;
  std::vector<ConeFamily> block_cones;
  for (std::size_t z = 0; z < bd.size(); ++z) {
    blocks.push_back(restrict_net(net, bd, z));
    block_cones.push_back(net_cones(blocks.back(), compute_net_modular(blocks.back())));
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  int disagree = 0, tested = 0, isolated = 0, negated = 0;
  for (std::size_t w = 0; w < global.size(); ++w)
    for (int s = 0; s < samples; ++s) {
      ComplexVector v;
      if (s % 2 == 0) {
        v = global[w].sample_member(rng());
      } else {
        v.resize(net.hilbert_dim);
        for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = cplx(g(rng), g(rng));
      }
      const bool gm = cone_membership(global[w], v).member;
      std::vector<std::size_t> failing;
      for (std::size_t z = 0; z < bd.size(); ++z)
        if (!cone_membership(block_cones[z][w], ComplexVector(bd.isometries[z].adjoint() * v)).member)
          failing.push_back(z);
      ++tested;
      if (gm != failing.empty()) ++disagree;
      if (s % 2 == 0 && bd.size() > 1) {
        const std::size_t z = static_cast<std::size_t>(s / 2) % bd.size();
        const ComplexVector flipped = v - 2.0 * (bd.projections[z] * v);
        std::vector<std::size_t> f2;
        for (std::size_t y = 0; y < bd.size(); ++y)
          if (!cone_membership(block_cones[y][w], ComplexVector(bd.isometries[y].adjoint() * flipped)).member)
            f2.push_back(y);
        ++negated;
        if (cone_membership(global[w], flipped).member || f2 != std::vector<std::size_t>{z}) ++isolated;
      }
    }

  int ray_fail = 0;
  for (std::size_t z = 0; z < bd.size(); ++z) {
    const ComplexVector& om = blocks[z].omega0;
    if (!intersection_membership(block_cones[z], om).member) ++ray_fail;
    if (intersection_membership(block_cones[z], ComplexVector(-om)).member) ++ray_fail;
    if (intersection_membership(block_cones[z], ComplexVector(cplx(0, 1) * om)).member) ++ray_fail;
    const CheckResult p0 = p0_structure_check(blocks[z], compute_net_modular(blocks[z]), std::min(samples, 30), seed + z);
    if (p0.status != Status::pass) ++ray_fail;
  }
  r.witnesses.push_back(std::to_string(tested) + " vectors, " + std::to_string(disagree) +
                        " global/blockwise membership disagreements");
  if (negated)
    r.witnesses.push_back(std::to_string(negated) + " members with one block negated, " + std::to_string(isolated) +
                          " where the failing block was not isolated");
  r.witnesses.push_back(std::to_string(bd.size()) + " block ray checks, " + std::to_string(ray_fail) + " failures");
  r.status = disagree == 0 && isolated == 0 && ray_fail == 0 ? Status::pass : Status::fail;
  return r;
}

std::string cycle_notation(const std::vector<std::size_t>& p) {
  std::vector<bool> seen(p.size(), false);
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == i) continue;
    out += "(";
    for (std::size_t j = i; !seen[j]; j = p[j]) {
      if (j != i) out += " ";
      out += std::to_string(j + 1);
      seen[j] = true;
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

SymmetryBlocks analyse_symmetry(const ToyNet& net, const NetModular& mod, const BlockDecomposition& bd,
                                const ComplexMatrix& v) {
  const Eigen::Index n = net.hilbert_dim;
  if (v.rows() != n || v.cols() != n || !is_unitary(v, 1e-9)) throw ValidationError("symmetry is not unitary");
  for (std::size_t w = 0; w < net.algebras.size(); ++w)
    if (containment_residual(net.algebras[w], conjugate_algebra(net.algebras[w], v)) > 1e-9)
      throw ValidationError("symmetry does not preserve R(" + net.system.labels[w] + ")");
  SymmetryBlocks out;
  for (std::size_t z = 0; z < bd.size(); ++z) {
    const ComplexMatrix moved = v * bd.projections[z] * v.adjoint();
    std::size_t hit = bd.size();
    for (std::size_t y = 0; y < bd.size(); ++y)
      if (max_norm(ComplexMatrix(moved - bd.projections[y])) <= 1e-8) hit = y;
    if (hit == bd.size()) throw ValidationError("symmetry does not map central blocks onto central blocks");
    out.permutation.push_back(hit);
    if (hit != z) out.broken = true;
  }
  if (out.broken) return out;

  const bool fixes = max_norm(ComplexVector(v * net.omega0 - net.omega0)) <= 1e-10;
  for (std::size_t z = 0; z < bd.size(); ++z) {
    const ToyNet block = restrict_net(net, bd, z);
    const ComplexMatrix& iso = bd.isometries[z];
    const ComplexMatrix vz = iso.adjoint() * v * iso;
    for (std::size_t w = 0; w < block.algebras.size(); ++w) {
      const auto& a = block.algebras[w];
      out.restriction_residual = std::max(out.restriction_residual, containment_residual(a, conjugate_algebra(a, vz)));
      if (fixes && mod.data[w]) {
        const ComplexMatrix kz = restrict_anti(mod.data[w]->j.kernel(), iso);
        out.restriction_residual = std::max(out.restriction_residual, max_norm(ComplexMatrix(vz * kz - kz * vz.conjugate())));
      }
    }
  }
  return out;
}

CheckResult symmetry_decomposition(const ToyNet& net, const NetModular& mod, const BlockDecomposition& bd,
                                   const std::vector<ComplexMatrix>& elements) {
  CheckResult r;
  r.name = "symmetries over the central blocks";
  r.anchor = "unbroken symmetries decompose, broken ones permute the blocks";
  double worst = 0.0;
  int broken = 0;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const SymmetryBlocks sb = analyse_symmetry(net, mod, bd, elements[i]);
    const std::string tag = "V[" + std::to_string(i) + "]";
    if (sb.broken) {
      ++broken;
      r.witnesses.push_back(tag + ": broken, block permutation " + cycle_notation(sb.permutation));
    } else {
      worst = std::max(worst, sb.restriction_residual);
      r.witnesses.push_back(tag + ": unbroken, blockwise residual " + sci(sb.restriction_residual));
    }
  }
  r.witnesses.insert(r.witnesses.begin(), std::to_string(elements.size()) + " symmetries, " + std::to_string(broken) +
                                              " broken");
  r.residual = worst;
  r.status = worst <= 1e-8 ? Status::pass : Status::fail;
  return r;
}

} // namespace gma

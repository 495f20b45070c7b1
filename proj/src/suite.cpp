#include "gma/suite.hpp"

#include <algorithm>
#include <functional>

#include "gma/cone.hpp"
#include "gma/decompose.hpp"
#include "gma/errors.hpp"

namespace gma {

namespace {

void guarded(Report& rep, const std::string& name, const std::string& anchor, const std::function<void()>& f) {
  try {
    f();
  } catch (const std::exception& e) {
    rep.add(error_result(name, e, anchor));
  }
}

Report empty_report(const ToyNet& net, const SuiteOptions& opt) {
  if (opt.samples < 1) throw ValidationError("samples must be at least 1");
  if (!(opt.tol > 0.0)) throw ValidationError("tolerance must be positive");
  Report rep;
  rep.model = net.name;
  rep.tol = opt.tol;
  rep.seed = opt.seed;
  rep.samples = opt.samples;
  return rep;
}

void decomposition_checks(Report& rep, const ToyNet& net, const NetModular& mod, const SuiteOptions& opt) {
  BlockDecomposition bd;
  bool have = false;
  guarded(rep, "central decomposition into factors", "decomposition into irreducible nets", [&] {
    bd = central_decomposition(net);
    have = true;
    rep.add(decomposition_check(net, bd));
  });
  if (!have) return;
  guarded(rep, "blockwise modular data", "J_W and Delta_W decompose over the blocks",
          [&] { rep.append(blockwise_modular_check(net, mod, bd, opt.tol)); });
  guarded(rep, "natural cones decompose over the blocks", "block cones",
          [&] { rep.add(blockwise_cone_check(net, mod, bd, std::min(opt.samples, 50), opt.seed + 11)); });
  if (!net.symmetries.empty())
    guarded(rep, "symmetries over the central blocks", "unbroken symmetries decompose",
            [&] { rep.add(symmetry_decomposition(net, mod, bd, net.symmetries)); });
}

} // namespace

Report run_suite(const ToyNet& net, const SuiteOptions& opt) {
  Report rep = empty_report(net, opt);
  const double tol = opt.tol;
  rep.add(check_condition_a(net, tol));
  rep.add(check_condition_b(net));
  const NetModular mod = compute_net_modular(net);
  rep.add(check_condition_c(net, mod, tol));
  rep.add(check_condition_d(net, mod, tol));
  rep.add(wedge_duality_check(net, tol));
  rep.add(global_algebra_check(net, tol));
  rep.add(symmetry_commutation_check(net, mod, tol));
  guarded(rep, "translation-invariant vectors span the center orbit", "E0 H = closure(Z omega0)",
          [&] { rep.add(invariant_subspace_check(net, tol)); });
  rep.add(degenerate_abelian_detector(net));
  guarded(rep, "wedge geometry matches the wedge system", "wedge geometry",
          [&] { rep.add(geometry_consistency_check(net)); });

  ConeFamily cones;
  bool have_cones = false;
  guarded(rep, "natural cones", "natural positive cone", [&] {
    cones = net_cones(net, mod);
    have_cones = true;
  });
  if (have_cones) {
    for (std::size_t w = 0; w < cones.size(); ++w) {
      const std::string label = net.system.labels[w];
      guarded(rep, "natural cone of " + label, "pointed self-dual convex cone", [&] {
        CheckResult r = cone_selfdual_check(cones[w], opt.samples, opt.seed + 100 + w);
        r.name += " (" + label + ")";
        rep.add(r);
      });
      guarded(rep, "positivity form (" + label + ")", "<v, A J A omega0> >= 0 on the cone", [&] {
        double worst = positivity_form_check(cones[w], net.omega0, opt.samples, opt.seed + 200 + w);
        for (int s = 0; s < 5; ++s) {
          const ComplexVector v = cones[w].sample_member(opt.seed + 300 + 10 * w + static_cast<std::uint64_t>(s));
          worst = std::max(worst, positivity_form_check(cones[w], v, opt.samples / 5 + 1, opt.seed + 400 + s));
        }
        CheckResult r = residual_check("positivity form (" + label + ")", std::max(worst, 0.0), tol,
                                       "<v, A J A omega0> >= 0 on the cone");
        r.witnesses.push_back("max violation " + std::to_string(worst));
        rep.add(r);
      });
      guarded(rep, "conjugation of other cone vectors (" + label + ")", "J is the same for every cyclic cone vector", [&] {
        double worst = 0.0;
        for (int s = 0; s < 3; ++s)
          worst = std::max(worst, same_conjugation_check(cones[w], cones[w].sample_member(opt.seed + 500 + 10 * w + s, 0.1)));
        rep.add(residual_check("conjugation of other cone vectors (" + label + ")", worst, tol,
                               "J is the same for every cyclic cone vector"));
      });
    }
    guarded(rep, "intersection cone on the center orbit", "P0 = closure(Z+ omega0)",
            [&] { rep.add(p0_structure_check(net, mod, std::min(opt.samples, 100), opt.seed + 600)); });
    guarded(rep, "modular operator unchanged by central reweighting", "Delta_W for Z omega0 equals Delta_W", [&] {
      rep.add(delta_rigidity_check(net, mod, random_central_positive(net, opt.seed + 700), std::max(tol, 1e-7)));
    });
  }
  decomposition_checks(rep, net, mod, opt);
  return rep;
}

Report run_decomposition(const ToyNet& net, const SuiteOptions& opt) {
  Report rep = empty_report(net, opt);
  decomposition_checks(rep, net, compute_net_modular(net), opt);
  return rep;
}

} // namespace gma

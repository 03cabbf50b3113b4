// One line per acceptance criterion; exit status 0 iff every line passes.
#include "kzb/suite.hpp"

#include <chrono>
#include <cstdio>
#include <functional>

using namespace kzb;

namespace
{
  const std::vector<std::pair<int, int>> kSignatures{{2, 1}, {2, 2}, {3, 1}, {3, 2}};

  double seconds_since(std::chrono::steady_clock::time_point t0)
  {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }

  bool report(int id, const std::string & title, bool pass, const std::string & detail)
  {
    std::printf("[%s] criterion %d: %s: %s\n", pass ? "PASS" : "FAIL", id, title.c_str(), detail.c_str());
    std::fflush(stdout);
    return pass;
  }

  std::string sci(double x)
  {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", x);
    return buf;
  }

  double worst(const std::vector<CheckResult> & results, const std::function<bool(const CheckResult &)> & pick)
  {
    double m = 0.0;
    for (const auto & c : results)
      if (pick(c))
        m = std::max(m, c.maxErr);
    return m;
  }

  bool starts(const std::string & s, const std::string & prefix) { return s.rfind(prefix, 0) == 0; }

  bool criterion1()
  {
    const auto t0 = std::chrono::steady_clock::now();
    double err = 0.0;
    for (auto [p, r] : kSignatures) {
      const RealFormData data = build_real_form(p, r);
      const StructureErrors e = structure_errors(data);
      err = std::max({err, e.bracketNormalization, e.cAlphaRelations, e.hAlphaSum, e.zLambda, e.tableProportionality,
                      e.thetaInvolution, e.cartanOrthonormal, e.dimensionMismatches, e.restrictionMap});
      for (const auto & a : sample_points(data, 42, 5))
        err = std::max(err, reconstruction_errors(data, a).first);
    }
    const double t = seconds_since(t0);
    return report(1, "structure invariants for su(2,1), su(2,2), su(3,1), su(3,2)", err <= 1e-10 && t < 10.0,
                  "max_err " + sci(err) + " (tol 1e-10), " + sci(t) + " s (limit 10 s)");
  }

  bool criterion2()
  {
    double err = 0.0;
    for (auto [p, r] : kSignatures) {
      const RealFormData data = build_real_form(p, r);
      for (const auto & a : sample_points(data, 42, 5)) {
        const RMatrixErrors e = rmatrix_errors(data, a);
        err = std::max({err, e.quasiUnitarity, e.foldingPlus, e.foldingMinus, e.thetaSymmetry, e.mInvariance,
                        e.symbolIdentity});
      }
    }
    return report(2, "r-matrix identities at 5 seeded points per signature", err <= 1e-11,
                  "max_err " + sci(err) + " (tol 1e-11)");
  }

  bool criterion3()
  {
    double err = 0.0, zGap = 1e300, tGap = 1e300, zNorm = 0.0;
    for (auto [p, r] : kSignatures) {
      const RealFormData data = build_real_form(p, r);
      for (const auto & z : data.zLambda)
        zNorm = std::max(zNorm, max_abs(z));
      for (const auto & a : sample_points(data, 42, 5)) {
        err = std::max({err, check_casimir_factorisation(data, a), check_radial_casimir_identity(data, a)});
        zGap = std::min({zGap, check_casimir_factorisation(data, a, Perturbation::Z),
                         check_radial_casimir_identity(data, a, Perturbation::Z)});
        tGap = std::min({tGap, check_casimir_factorisation(data, a, Perturbation::T),
                         check_radial_casimir_identity(data, a, Perturbation::T)});
      }
    }
    const bool identities = err <= 1e-9;
    const bool zControl = zGap >= 1e-3;
    return report(3, "enveloping-algebra identities and dropped-z_lambda controls", identities && zControl,
                  "identities max_err " + sci(err) + " (tol 1e-9, " + (identities ? "ok" : "violated") +
                      "); dropped-z_lambda control gap " + sci(zGap) + " (needs >= 1e-3, " +
                      (zControl ? "ok" : "not met") + ": max |z_lambda| = " + sci(zNorm) +
                      ", z_lambda vanishes identically for su(p,r)); dropped-t_lambda control gap " + sci(tGap) +
                      " (reported)");
  }

  bool criterion4()
  {
    const auto t0 = std::chrono::steady_clock::now();
    double err = 0.0;
    int cases = 0;
    const std::vector<std::pair<std::pair<int, int>, std::vector<Menu>>> plan{
        {{2, 1},
         {{"def", {"def"}, "def"}, {"def", {"def", "dual"}, "def"}, {"def", {"def", "dual", "def"}, "def"}}},
        {{3, 2},
         {{"def", {"dual"}, "def"}, {"def", {"def", "dual"}, "def"}, {"def", {"def", "dual", "def"}, "triv"}}}};
    for (const auto & [sig, menus] : plan) {
      const RealFormData data = build_real_form(sig.first, sig.second);
      for (const auto & menu : menus) {
        const KzbSpace S = make_space(data, menu);
        for (const auto & a : sample_points(data, 42, 2))
          for (int i = 1; i <= S.n(); ++i) {
            const JetMatrix D = build_D(S, a, i).zeroth;
            err = std::max(err, max_abs(D - build_D_oracle(S, a, i).zeroth) / (1.0 + max_abs(D)));
            ++cases;
          }
      }
    }
    const double t = seconds_since(t0);
    return report(4, "first-order operators against their radial expansion, n = 1, 2, 3", err <= 1e-9 && t < 60.0,
                  "max_err " + sci(err) + " over " + std::to_string(cases) + " operators (tol 1e-9), " + sci(t) +
                      " s (limit 60 s)");
  }

  std::vector<CheckResult> g_default;
  double g_defaultSeconds = 0.0;

  bool criterion5()
  {
    std::vector<CheckResult> all = g_default;
    for (auto [p, r] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}}) {
      SuiteConfig c;
      c.p = p;
      c.r = r;
      c.n = 2;
      c.points = 1;
      c.groups = {"kzb"};
      auto more = run_suite(c);
      all.insert(all.end(), more.begin(), more.end());
    }
    auto asserted = [&](const std::string & prefix) {
      return worst(all, [&](const CheckResult & c) { return c.kind == CheckKind::Assert && starts(c.name, prefix); });
    };
    const double symbol = asserted("kzb.commutator_symbol");
    const double expansion = asserted("kzb.commutator_expansion");
    const double re = asserted("kzb.reflection_equation");
    const double ybre = asserted("kzb.yang_baxter_reflection.");
    const double yben = asserted("kzb.yang_baxter_reflection_n");
    const double ham = asserted("kzb.commutator_with_hamiltonian");
    int variants = 0;
    for (const auto & c : all)
      if (c.kind == CheckKind::Assert && (starts(c.name, "kzb.reflection_equation") || starts(c.name, "kzb.yang_baxter")))
        ++variants;
    const bool pass = symbol <= 1e-11 && expansion <= 1e-9 && re <= 1e-9 && ybre <= 1e-9 && yben <= 1e-9 &&
                      ham <= 1e-8 && variants >= 6 && g_defaultSeconds < 300.0 && all_passed(all);
    return report(5, "commutators of the boundary KZB operators", pass,
                  "symbol " + sci(symbol) + " (1e-11), expansion " + sci(expansion) + " (1e-9), n=2 " + sci(re) +
                      ", n=3 " + sci(ybre) + ", n=4 " + sci(yben) + " (1e-9, kappa and kappa-hat), with H " +
                      sci(ham) + " (1e-8); default suite " + sci(g_defaultSeconds) + " s (limit 300 s)");
  }

  bool criterion6()
  {
    double sprop = 0.0, deltaConj = 0.0;
    for (auto [p, r] : kSignatures) {
      SuiteConfig c;
      c.p = p;
      c.r = r;
      c.n = 2;
      c.reps = {"def", "dual"};
      c.groups = {"schrodinger"};
      c.points = 2;
      for (const auto & res : run_suite(c)) {
        if (res.name == "schrodinger.gauged_hamiltonian")
          sprop = std::max(sprop, res.maxErr);
        if (res.name == "schrodinger.delta_conjugation")
          deltaConj = std::max(deltaConj, res.maxErr);
      }
    }
    const RealFormData data = build_real_form(2, 1);
    double kErr = 0.0;
    for (size_t l = 0; l < data.restrictedRoots.size(); ++l) {
      const auto & rr = data.restrictedRoots[l];
      const int twice = data.restricted_index(scale_weight(rr.lambda, 2));
      const double mtp2 = twice < 0 ? 0.0 : data.restrictedRoots[static_cast<size_t>(twice)].mtp;
      const double oracle = rr.mtp * (mtp2 + 0.5 * rr.mtp - 1.0) * t_lambda_norm_sq_by_solve(data, static_cast<int>(l));
      const double expected = std::abs(rr.lambda[0]) == 1 ? 1.0 / 6.0 : -1.0 / 6.0;
      kErr = std::max({kErr, std::abs(oracle - expected), std::abs(potential_k(data, static_cast<int>(l)) - expected)});
    }
    return report(6, "Schroedinger operator", sprop <= 1e-9 && deltaConj <= 1e-9 && kErr <= 1e-12,
                  "gauged H " + sci(sprop) + " (1e-9), delta conjugation " + sci(deltaConj) +
                      " (1e-9), k(f1) = 1/6 and k(2f1) = -1/6 within " + sci(kErr) + " (1e-12)");
  }

  bool criterion7()
  {
    const SuiteConfig c;
    const std::string a = report_json(c, g_default);
    const std::string b = report_json(c, run_suite(c));
    return report(7, "determinism of the report", a == b,
                  a == b ? "two runs byte-identical (" + std::to_string(a.size()) + " bytes)" : "reports differ");
  }

  bool criterion8()
  {
    int probes = 0, exceeding = 0;
    bool leak = false;
    for (const auto & c : g_default) {
      if (!starts(c.name, "probe."))
        continue;
      ++probes;
      leak |= c.kind != CheckKind::Probe || c.status() != "probe" || !c.pass;
      exceeding += c.maxErr > c.tol;
    }
    std::vector<CheckResult> withoutProbes;
    for (const auto & c : g_default)
      if (c.kind != CheckKind::Probe)
        withoutProbes.push_back(c);
    const bool pass = probes >= 6 && !leak && all_passed(g_default) == all_passed(withoutProbes);
    return report(8, "unrestricted probes are reported only", pass,
                  std::to_string(probes) + " probes, " + std::to_string(exceeding) +
                      " above their nominal tolerance, verdict unchanged");
  }
} // namespace

int main()
{
  try {
    const auto t0 = std::chrono::steady_clock::now();
    g_default = run_suite(SuiteConfig{});
    g_defaultSeconds = seconds_since(t0);
    bool ok = true;
    ok &= criterion1();
    ok &= criterion2();
    ok &= criterion3();
    ok &= criterion4();
    ok &= criterion5();
    ok &= criterion6();
    ok &= criterion7();
    ok &= criterion8();
    return ok ? 0 : 1;
  } catch (const std::exception & e) {
    std::printf("error: %s\n", e.what());
    return 2;
  }
}

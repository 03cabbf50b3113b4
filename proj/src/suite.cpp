#include "kzb/suite.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

namespace kzb
{

  namespace
  {
    constexpr double kStructureTol = 1e-10;
    constexpr double kRMatrixTol = 1e-11;
    constexpr double kUgTol = 1e-9;
    constexpr double kOperatorTol = 1e-9;
    constexpr double kSymbolTol = 1e-11;
    constexpr double kEquivarianceTol = 1e-10;
    constexpr double kGaugeTol = 1e-11;
    constexpr double kRoundTripTol = 1e-12;
    constexpr double kSecondOrderTol = 1e-8;
    constexpr double kPotentialKTol = 1e-12;
    constexpr double kRepTol = 1e-11;
    constexpr double kControlGap = 1e-3;
    constexpr long long kMaxSpaceDim = 1024;

    double max_abs(const DynTensor & T) { return kzb::max_abs(T.coeffs); }

    double rel(double err, double scale) { return err / (1.0 + scale); }

    std::string join(const std::vector<std::string> & parts, const std::string & sep)
    {
      std::string out;
      for (size_t k = 0; k < parts.size(); ++k)
        out += (k ? sep : "") + parts[k];
      return out;
    }

    /// Collects results; maxErr of controls is the smallest gap over points
    class Recorder
    {
    public:
      Recorder(const SuiteConfig & config) : m_config(config) {}

      void record(const std::string & name, const std::string & ref, double err, double pinnedTol, CheckKind kind,
                  const std::string & reps, const std::string & note = "")
      {
        auto it = m_index.find(name);
        if (it == m_index.end()) {
          CheckResult c;
          c.name = name;
          c.paperRef = ref;
          c.p = m_config.p;
          c.r = m_config.r;
          c.reps = reps;
          c.seed = m_config.seed;
          c.kind = kind;
          c.tol = (kind == CheckKind::Assert && m_config.tol) ? *m_config.tol : pinnedTol;
          c.maxErr = err;
          c.note = note;
          m_index[name] = m_results.size();
          m_results.push_back(c);
          return;
        }
        CheckResult & c = m_results[it->second];
        if (std::isnan(err) || std::isnan(c.maxErr))
          c.maxErr = std::numeric_limits<double>::quiet_NaN();
        else
          c.maxErr = kind == CheckKind::Control ? std::min(c.maxErr, err) : std::max(c.maxErr, err);
      }

      std::vector<CheckResult> finish()
      {
        for (auto & c : m_results) {
          if (c.kind == CheckKind::Assert)
            c.pass = c.maxErr <= c.tol;
          else if (c.kind == CheckKind::Control)
            c.pass = c.maxErr >= c.tol;
          else
            c.pass = true;
        }
        std::sort(m_results.begin(), m_results.end(),
                  [](const CheckResult & a, const CheckResult & b) { return a.name < b.name; });
        return m_results;
      }

    private:
      const SuiteConfig & m_config;
      std::map<std::string, size_t> m_index;
      std::vector<CheckResult> m_results;
    };

    bool selected(const SuiteConfig & config, const std::string & group)
    {
      return std::find(config.groups.begin(), config.groups.end(), group) != config.groups.end();
    }

    double m_commutation(const KzbSpace & S, const JetMatrix & X)
    {
      double err = 0.0;
      for (const auto & M : S.m_action()) {
        err = std::max(err, kzb::max_abs(commutator(M, X.value)));
        for (const auto & g : X.grad)
          err = std::max(err, kzb::max_abs(commutator(M, g)));
      }
      return err;
    }

    double jet_difference(const JetMatrix & A, const JetMatrix & B) { return kzb::max_abs(A - B); }

    double commutator_value_max(const CommutatorValue & C, bool symbolOnly)
    {
      double err = 0.0;
      for (const auto & M : C.second)
        err = std::max(err, kzb::max_abs(M));
      for (const auto & M : C.first)
        err = std::max(err, kzb::max_abs(M));
      if (!symbolOnly)
        err = std::max(err, kzb::max_abs(C.zeroth));
      return err;
    }

    double commutator_restricted_max(const CommutatorValue & C, const InvariantSubspace & inv)
    {
      double err = restricted_norm(C.zeroth, inv);
      for (const auto & M : C.second)
        err = std::max(err, restricted_norm(M, inv));
      for (const auto & M : C.first)
        err = std::max(err, restricted_norm(M, inv));
      return err;
    }

    double terms_scale(const ReflectionTerms & T)
    {
      double s = kzb::max_abs(T.A);
      for (const auto * list : {&T.myb1, &T.myb2, &T.myb3})
        for (const auto & M : *list)
          s = std::max(s, kzb::max_abs(M));
      return s;
    }

    std::string core_suffix(Core core) { return core == Core::Hat ? ".kappa_hat" : ".kappa"; }

    //--------------------------------------------------------------------------
    // Groups
    //--------------------------------------------------------------------------

    void run_structure(const RealFormData & data, const std::vector<BasePoint> & pts, Recorder & rec)
    {
      const std::string reps = "none";
      const StructureErrors e = structure_errors(data);
      rec.record("structure.theta_involution", "theta squared is the identity", e.thetaInvolution, kStructureTol,
                 CheckKind::Assert, reps);
      rec.record("structure.bracket_normalization", "[e_alpha, e_-alpha] = h_alpha with K(h, h_alpha) = alpha(h)",
                 e.bracketNormalization, kStructureTol, CheckKind::Assert, reps);
      rec.record("structure.cartan_orthonormal", "K(z_s, z_s') = delta_ss'", e.cartanOrthonormal, kStructureTol,
                 CheckKind::Assert, reps);
      rec.record("structure.c_alpha_relations", "theta(e_alpha) = c_alpha e_theta(alpha), c_theta(alpha) = 1/c_alpha = c_-alpha",
                 e.cAlphaRelations, kStructureTol, CheckKind::Assert, reps);
      rec.record("structure.dimensions", "dimension and multiplicity counts of the matrix realization",
                 e.dimensionMismatches, 0.0, CheckKind::Assert, reps, "number of mismatched counts");
      rec.record("structure.h_alpha_sum", "sum of h_alpha over R_lambda = z_lambda + mtp(lambda) t_lambda", e.hAlphaSum,
                 kStructureTol, CheckKind::Assert, reps);
      rec.record("structure.z_lambda", "z_-lambda = -z_lambda and z_lambda central in m", e.zLambda, kStructureTol,
                 CheckKind::Assert, reps,
                 "max |z_lambda| = " + std::to_string(e.zLambdaNorm) + " (vanishes identically for su(p,r))");
      rec.record("structure.rho", "sum over positive restricted roots of mtp(lambda) lambda = 2 rho", e.rho,
                 kStructureTol, CheckKind::Assert, reps);
      rec.record("structure.k_center", "explicit central element of k", e.kCenter, kStructureTol, CheckKind::Assert, reps);
      rec.record("structure.y_alpha_table", "y_alpha proportional to the matrix-unit table of the realization",
                 e.tableProportionality, kStructureTol, CheckKind::Assert, reps);
      rec.record("structure.restriction_map", "roots outside R_0 restrict to restricted roots", e.restrictionMap, 0.0,
                 CheckKind::Assert, reps, "number of violations");
      for (const auto & a : pts) {
        const auto [recon, ad] = reconstruction_errors(data, a);
        rec.record("structure.root_vector_reconstruction", "e_alpha and theta(e_alpha) from y_alpha and Ad_{a^-1}(y_alpha)", recon,
                   kStructureTol, CheckKind::Assert, reps);
        rec.record("structure.ad_two_ways", "Ad_{a^-1} by grading versus matrix conjugation", ad, kRMatrixTol,
                   CheckKind::Assert, reps);
      }
    }

    void run_rmatrix(const RealFormData & data, const std::vector<BasePoint> & pts, Recorder & rec)
    {
      const std::string reps = "none";
      for (const auto & a : pts) {
        const RMatrixErrors e = rmatrix_errors(data, a);
        rec.record("rmatrix.quasi_unitarity", "r + r_21 = -varpi", e.quasiUnitarity, kRMatrixTol, CheckKind::Assert, reps);
        rec.record("rmatrix.folding_plus", "r+ = r + (id x theta) r_21", e.foldingPlus, kRMatrixTol, CheckKind::Assert, reps);
        rec.record("rmatrix.folding_minus", "r- = -r + (id x theta) r_21", e.foldingMinus, kRMatrixTol, CheckKind::Assert,
                   reps);
        rec.record("rmatrix.theta_symmetry", "(id x theta) r_21 = (theta x id) r", e.thetaSymmetry, kRMatrixTol,
                   CheckKind::Assert, reps);
        rec.record("rmatrix.m_invariance", "r, r+ and r- are m-invariant", e.mInvariance, kRMatrixTol, CheckKind::Assert,
                   reps);
        rec.record("rmatrix.symbol_identity", "[1 x h, r-] = [h x 1, r+] for h in a", e.symbolIdentity, kRMatrixTol,
                   CheckKind::Assert, reps);
      }
    }

    void run_ug(const RealFormData & data, const std::vector<BasePoint> & pts, Recorder & rec)
    {
      const std::string reps = "none";
      const std::string zNote = "z_lambda vanishes identically for su(p,r), so omitting it changes nothing";
      for (const auto & a : pts) {
        rec.record("ug.dynamical_casimir", "dynamical Casimir factorisation in U(g)", check_casimir_factorisation(data, a),
                   kUgTol, CheckKind::Assert, reps);
        rec.record("ug.radial_casimir_identity", "U(g) identity behind the explicit radial Casimir",
                   check_radial_casimir_identity(data, a), kUgTol, CheckKind::Assert, reps);
        rec.record("ug.bracket_cancellation", "cancellation of the [theta e_alpha, e_-alpha] terms",
                   check_bracket_cancellation(data, a), kUgTol, CheckKind::Assert, reps);
        const Kappa k = build_kappa(data, a);
        rec.record("ug.kappa_core_alt", "kappa core through the dynamical Casimir factorisation",
                   (k.core - k.coreAlt).max_abs(), kUgTol, CheckKind::Assert, reps);
        rec.record("ug.kappa_core_fold", "folded form of the kappa core", (k.core - k.coreFold).max_abs(), kUgTol,
                   CheckKind::Assert, reps);

        rec.record("control.dynamical_casimir_drop_t", "dynamical Casimir factorisation without the t_lambda term",
                   check_casimir_factorisation(data, a, Perturbation::T), kControlGap, CheckKind::Control, reps);
        rec.record("control.radial_casimir_drop_t", "explicit radial Casimir identity without the t_lambda term",
                   check_radial_casimir_identity(data, a, Perturbation::T), kControlGap, CheckKind::Control, reps);
        rec.record("control.dynamical_casimir_drop_z", "dynamical Casimir factorisation without the z_lambda term",
                   check_casimir_factorisation(data, a, Perturbation::Z), kControlGap, CheckKind::Probe, reps, zNote);
        rec.record("control.radial_casimir_drop_z", "explicit radial Casimir identity without the z_lambda term",
                   check_radial_casimir_identity(data, a, Perturbation::Z), kControlGap, CheckKind::Probe, reps, zNote);
      }
    }

    void run_reps(const RealFormData & data, const SuiteConfig & config, Recorder & rec)
    {
      std::set<std::string> labels(config.reps.begin(), config.reps.end());
      labels.insert(config.sigmaL);
      labels.insert(config.sigmaR);
      for (const auto & label : labels) {
        const Rep R = rep_from_label(data, label);
        rec.record("reps.homomorphism", "representations are Lie algebra homomorphisms", homomorphism_error(data, R),
                   kRepTol, CheckKind::Assert, join({labels.begin(), labels.end()}, ","));
        rec.record("reps.homomorphism", "representations are Lie algebra homomorphisms",
                   homomorphism_error(data, restrict_to_k(data, R)), kRepTol, CheckKind::Assert, "");
        rec.record("reps.homomorphism", "representations are Lie algebra homomorphisms",
                   homomorphism_error(data, dual_rep(R)), kRepTol, CheckKind::Assert, "");
      }
      const Menu menu{config.sigmaL, resolved_reps(config), config.sigmaR};
      const KzbSpace S = make_space(data, menu);
      const InvariantSubspace & inv = S.invariants();
      double err = 0.0;
      if (inv.dim() > 0) {
        err = kzb::max_abs(inv.basis.adjoint() * inv.basis - identity(inv.dim()));
        for (const auto & M : S.m_action())
          err = std::max(err, kzb::max_abs(M * inv.basis));
      }
      rec.record("reps.m_invariants", "m-invariant subspace of the tensor product", err, kEquivarianceTol,
                 CheckKind::Assert, menu.describe(), "dimension " + std::to_string(inv.dim()));
    }

    void run_kzb_configured(const RealFormData & data, const SuiteConfig & config, const std::vector<BasePoint> & pts,
                            Recorder & rec)
    {
      const Menu menu{config.sigmaL, resolved_reps(config), config.sigmaR};
      const KzbSpace S = make_space(data, menu);
      const std::string reps = menu.describe();
      const InvariantSubspace & inv = S.invariants();
      const bool vacuous = inv.dim() == 0;
      const std::string invNote = vacuous ? "invariant subspace is zero, so the restricted check is vacuous"
                                          : "invariant dimension " + std::to_string(inv.dim());
      for (const auto & a : pts) {
        const PointTensors P = point_tensors(data, a);
        std::vector<FirstOrderOp> D, Dh;
        for (int i = 1; i <= S.n(); ++i) {
          D.push_back(build_D(S, P, i, Core::Plain));
          Dh.push_back(build_D(S, P, i, Core::Hat));
          const FirstOrderOp O = build_D_oracle(S, a, i);
          const FirstOrderOp & Di = D.back();
          rec.record("kzb.oracle_pair", "first-order boundary KZB operator equals its radial expansion",
                     rel(jet_difference(Di.zeroth, O.zeroth), kzb::max_abs(Di.zeroth)), kOperatorTol, CheckKind::Assert,
                     reps, "full tensor space");
          rec.record("kzb.m_equivariance", "zeroth-order part commutes with the diagonal m-action",
                     m_commutation(S, Di.zeroth), kEquivarianceTol, CheckKind::Assert, reps);
          const FirstOrderOp G = gauge_first_order(data, Di, a);
          rec.record("kzb.gauge_vs_kappa_hat", "gauging replaces kappa by kappa-hat",
                     rel(jet_difference(G.zeroth, Dh.back().zeroth), kzb::max_abs(G.zeroth)), kGaugeTol,
                     CheckKind::Assert, reps);
          const FirstOrderOp back = gauge_first_order(data, G, a, -1.0);
          rec.record("kzb.gauge_round_trip", "gauge automorphism inverted by the opposite shift",
                     jet_difference(back.zeroth, Di.zeroth), kRoundTripTol, CheckKind::Assert, reps);
        }
        for (const Core core : {Core::Plain, Core::Hat}) {
          const auto & ops = core == Core::Hat ? Dh : D;
          for (int i = 1; i <= S.n(); ++i)
            for (int j = i + 1; j <= S.n(); ++j) {
              const FirstOrderOp & Di = ops[static_cast<size_t>(i - 1)];
              const FirstOrderOp & Dj = ops[static_cast<size_t>(j - 1)];
              const CommutatorValue C = commutator_first_order(Di, Dj);
              const double scale = kzb::max_abs(Di.zeroth.value) * kzb::max_abs(Dj.zeroth.value);
              const ReflectionTerms T = reflection_and_myb(S, P, i, j, core);
              const std::string sfx = core_suffix(core);
              rec.record("kzb.commutator_symbol" + sfx, "first-order part of the commutator vanishes",
                         commutator_value_max(C, true), kSymbolTol, CheckKind::Assert, reps);
              rec.record("kzb.commutator_expansion" + sfx, "commutator equals reflection plus mixed Yang-Baxter terms",
                         rel(kzb::max_abs(C.zeroth - T.total()), scale), kOperatorTol, CheckKind::Assert, reps);
              rec.record("kzb.restricted_commutativity" + sfx, "boundary KZB operators commute on m-invariants",
                         rel(commutator_restricted_max(C, inv), scale), kOperatorTol,
                         vacuous ? CheckKind::Probe : CheckKind::Assert, reps, invNote);
              rec.record("probe.unrestricted_commutativity" + sfx, "commutativity on the full tensor space (conjectural)",
                         rel(commutator_value_max(C, false), scale), kOperatorTol, CheckKind::Probe, reps);
            }
        }
      }
    }

    void run_kzb_menus(const RealFormData & data, const SuiteConfig & config, const std::vector<BasePoint> & pts,
                       Recorder & rec)
    {
      const std::map<int, std::string> names{{2, "kzb.reflection_equation"},
                                             {3, "kzb.yang_baxter_reflection"},
                                             {4, "kzb.yang_baxter_reflection_n"}};
      const std::map<int, std::string> refs{
          {2, "classical dynamical reflection equation on invariants"},
          {3, "coupled classical dynamical Yang-Baxter-reflection equations on invariants"},
          {4, "reflection plus mixed Yang-Baxter terms vanish on invariants for n = 4"}};
      for (int slots = 2; slots <= 4; ++slots) {
        const Menu menu = menu_for(config, slots);
        const KzbSpace S = make_space(data, menu);
        const InvariantSubspace & inv = S.invariants();
        const std::string reps = menu.describe();
        const bool vacuous = inv.dim() == 0;
        const CheckKind restricted = vacuous ? CheckKind::Probe : CheckKind::Assert;
        const std::string note = vacuous ? "invariant subspace is zero, so the restricted check is vacuous"
                                         : "invariant dimension " + std::to_string(inv.dim());
        const std::string probeName = "probe.unrestricted_" + names.at(slots).substr(4);
        for (const auto & a : pts) {
          const PointTensors P = point_tensors(data, a);
          for (const Core core : {Core::Plain, Core::Hat})
            for (int i = 1; i <= slots; ++i)
              for (int j = i + 1; j <= slots; ++j) {
                const ReflectionTerms T = reflection_and_myb(S, P, i, j, core);
                const CMatrix total = T.total();
                const double scale = terms_scale(T);
                rec.record(names.at(slots) + core_suffix(core), refs.at(slots),
                           rel(restricted_norm(total, inv), scale), kOperatorTol, restricted, reps, note);
                rec.record(probeName + core_suffix(core), "same combination on the full tensor space (conjectural)",
                           rel(kzb::max_abs(total), scale), kOperatorTol, CheckKind::Probe, reps);
              }
          if (slots == 2) {
            // flipping a term on every slot at once is a gauge transformation, so only one slot is altered
            const FirstOrderOp D2 = build_D(S, P, 2, Core::Hat);
            for (const auto control : {Perturbation::T, Perturbation::Z}) {
              const FirstOrderOp D1 = build_D(S, point_tensors(data, a, control), 1, Core::Hat);
              const CommutatorValue C = commutator_first_order(D1, D2);
              const double scale = kzb::max_abs(D1.zeroth.value) * kzb::max_abs(D2.zeroth.value);
              const double err = rel(commutator_restricted_max(C, inv), scale);
              if (control == Perturbation::T)
                rec.record("control.reflection_flip_t", "reflection equation with the t_lambda term of kappa-hat flipped on one slot",
                           err, kControlGap, vacuous ? CheckKind::Probe : CheckKind::Control, reps, note);
              else
                rec.record("control.reflection_flip_z", "reflection equation with the z_lambda term of kappa-hat flipped on one slot",
                           err, kControlGap, CheckKind::Probe, reps,
                           "z_lambda vanishes identically for su(p,r), so the flip changes nothing");
            }
          }
        }
        if (slots == 2) {
          for (const auto & a : pts) {
            const SecondOrderOp Ht = build_H_tilde(S, a);
            for (int i = 1; i <= slots; ++i) {
              auto builder = [&](const BasePoint & b) { return build_D(S, point_tensors(data, b), i, Core::Hat); };
              const CommutatorValue C = commutator_with_second_order(builder, Ht, a);
              const double scale = kzb::max_abs(Ht.zeroth.value) * kzb::max_abs(builder(a).zeroth.value);
              rec.record("kzb.commutator_with_hamiltonian", "gauged boundary KZB operators commute with the Schroedinger operator on invariants",
                         rel(commutator_restricted_max(C, inv), scale), kSecondOrderTol, restricted, reps,
                         note + "; second derivatives by Richardson-extrapolated differences");
              rec.record("probe.unrestricted_commutator_with_hamiltonian", "same commutator on the full tensor space",
                         rel(commutator_value_max(C, false), scale), kSecondOrderTol, CheckKind::Probe, reps);
            }
          }
        }
      }
    }

    void run_schrodinger(const RealFormData & data, const SuiteConfig & config, const std::vector<BasePoint> & pts,
                         const std::vector<BasePoint> & chamber, Recorder & rec)
    {
      const Menu menu{config.sigmaL, resolved_reps(config), config.sigmaR};
      const KzbSpace S = make_space(data, menu);
      const std::string reps = menu.describe();
      for (const auto & a : pts) {
        const SecondOrderOp H = build_H(S, a);
        const SecondOrderOp Ht = build_H_tilde(S, a);
        const SecondOrderOp G = gauge_second_order(data, H, a);
        double err = jet_difference(G.zeroth, Ht.zeroth);
        for (size_t j = 0; j < G.first.size(); ++j)
          err = std::max(err, jet_difference(G.first[j], Ht.first[j]));
        rec.record("schrodinger.gauged_hamiltonian", "gauging the radial Casimir gives Laplacian plus potential",
                   rel(err, kzb::max_abs(Ht.zeroth)), kOperatorTol, CheckKind::Assert, reps);
        rec.record("schrodinger.m_equivariance", "radial Casimir commutes with the diagonal m-action",
                   m_commutation(S, H.zeroth), kEquivarianceTol, CheckKind::Assert, reps);
      }
      for (const auto & a : chamber) {
        std::vector<double> mu;
        for (int j = 0; j < data.r; ++j)
          mu.push_back(0.75 - 0.5 * j);
        rec.record("schrodinger.delta_conjugation", "conjugation by delta on the positive chamber",
                   delta_conjugation_error(S, a, mu), kOperatorTol, CheckKind::Assert, reps);
      }
      double kErr = 0.0;
      for (size_t l = 0; l < data.restrictedRoots.size(); ++l) {
        const auto & rr = data.restrictedRoots[l];
        const int twice = data.restricted_index(scale_weight(rr.lambda, 2));
        const double mtp2 = twice < 0 ? 0.0 : data.restrictedRoots[static_cast<size_t>(twice)].mtp;
        const double oracle = rr.mtp * (mtp2 + 0.5 * rr.mtp - 1.0) * t_lambda_norm_sq_by_solve(data, static_cast<int>(l));
        kErr = std::max(kErr, std::abs(potential_k(data, static_cast<int>(l)) - oracle));
      }
      rec.record("schrodinger.potential_k", "k(lambda) = mtp(lambda)(mtp(2 lambda) + mtp(lambda)/2 - 1)(t_lambda, t_lambda)",
                 kErr, kPotentialKTol, CheckKind::Assert, "none", "(t_lambda, t_lambda) by Killing linear solve");
    }
  } // namespace

  //------------------------------------------------------------------------------
  // Measurements
  //------------------------------------------------------------------------------

  StructureErrors structure_errors(const RealFormData & data)
  {
    StructureErrors e;
    const int N = data.n;
    for (const auto & b : data.basis)
      e.thetaInvolution = std::max(e.thetaInvolution, max_abs(data.theta_of(data.theta_of(b)) - b));

    for (const Root & al : data.roots) {
      const CMatrix & ea = data.basis[static_cast<size_t>(al.basisIndex)];
      const Root & neg = data.roots[static_cast<size_t>(al.negative)];
      const CMatrix & en = data.basis[static_cast<size_t>(neg.basisIndex)];
      const CMatrix & h = data.hAlpha[static_cast<size_t>(&al - data.roots.data())];
      e.bracketNormalization = std::max(e.bracketNormalization, max_abs(commutator(ea, en) - h));
      for (int s = 0; s < data.nCartan; ++s) {
        const CMatrix & z = data.basis[static_cast<size_t>(s)];
        const cd alphaOfZ = z(al.i, al.i) - z(al.j, al.j);
        e.bracketNormalization = std::max(e.bracketNormalization, std::abs(killing_form(z, h) - alphaOfZ));
      }
    }

    for (int s = 0; s < data.nCartan; ++s)
      for (int t = 0; t < data.nCartan; ++t)
        e.cartanOrthonormal = std::max(e.cartanOrthonormal,
                                       std::abs(killing_form(data.basis[static_cast<size_t>(s)], data.basis[static_cast<size_t>(t)]) -
                                                (s == t ? 1.0 : 0.0)));

    for (size_t k = 0; k < data.roots.size(); ++k) {
      const Root & al = data.roots[k];
      const Root & th = data.roots[static_cast<size_t>(al.thetaRoot)];
      const Root & ng = data.roots[static_cast<size_t>(al.negative)];
      const CMatrix & ea = data.basis[static_cast<size_t>(al.basisIndex)];
      const CMatrix & et = data.basis[static_cast<size_t>(th.basisIndex)];
      double err = max_abs(data.theta_of(ea) - al.c * et);
      err = std::max(err, std::abs(th.c * al.c - 1.0));
      err = std::max(err, std::abs(ng.c - th.c));
      if (al.imaginary)
        err = std::max(err, std::abs(al.c - 1.0));
      else
        err = std::max(err, max_abs(data.yAlpha[k] - al.c * data.yAlpha[static_cast<size_t>(al.thetaRoot)]));
      e.cAlphaRelations = std::max(e.cAlphaRelations, err);
    }

    // counts of the realization
    int bad = 0;
    const int p = data.p, r = data.r;
    bad += data.dim() != N * N - 1;
    bad += static_cast<int>(data.mBasis.size()) != (p - r) * (p - r) + r - 1;
    bad += static_cast<int>(data.qBasis.size()) + static_cast<int>(data.mBasis.size()) != p * p + r * r - 1;
    int positives = 0;
    for (const auto & rr : data.restrictedRoots) {
      if (!rr.positive)
        continue;
      ++positives;
      int nonzero = 0, maxc = 0;
      for (int c : rr.lambda) {
        nonzero += c != 0;
        maxc = std::max(maxc, std::abs(c));
      }
      int expected = 0;
      if (nonzero == 2)
        expected = 2;
      else if (maxc == 2)
        expected = 1;
      else
        expected = 2 * (p - r);
      bad += rr.mtp != expected;
    }
    const int expectedPositives = r * (r - 1) + r + (p > r ? r : 0);
    bad += positives != expectedPositives;
    e.dimensionMismatches = bad;

    for (size_t l = 0; l < data.restrictedRoots.size(); ++l) {
      const auto & rr = data.restrictedRoots[l];
      e.hAlphaSum = std::max(e.hAlphaSum, max_abs(sum_h_alpha(data, static_cast<int>(l)) - data.zLambda[l] -
                                                static_cast<double>(rr.mtp) * data.tLambda[l]));
      const CMatrix & z = data.zLambda[l];
      e.zLambdaNorm = std::max(e.zLambdaNorm, max_abs(z));
      e.zLambda = std::max(e.zLambda, max_abs(z + data.zLambda[static_cast<size_t>(rr.negative)]));
      for (const auto & m : data.mBasis)
        e.zLambda = std::max(e.zLambda, max_abs(commutator(z, m)));
    }

    std::vector<double> twoRho(static_cast<size_t>(r), 0.0);
    for (const auto & rr : data.restrictedRoots)
      if (rr.positive)
        for (int j = 0; j < r; ++j)
          twoRho[static_cast<size_t>(j)] += rr.mtp * rr.lambda[static_cast<size_t>(j)];
    for (int j = 0; j < r; ++j)
      e.rho = std::max(e.rho, std::abs(twoRho[static_cast<size_t>(j)] - 2.0 * data.rho[static_cast<size_t>(j)]));

    const CMatrix Z = k_center_element(data);
    e.kCenter = max_abs(data.theta_of(Z) - Z);
    for (const auto * list : {&data.mBasis, &data.qBasis})
      for (const auto & X : *list)
        e.kCenter = std::max(e.kCenter, max_abs(commutator(Z, X)));

    // table of y_alpha in matrix units (0-based: outer k < r, k' = N-1-k, middle l in [r, p))
    auto E = [N](int a, int b) {
      CMatrix M = CMatrix::Zero(N, N);
      M(a, b) = 1.0;
      return M;
    };
    auto prime = [N](int a) { return N - 1 - a; };
    std::vector<std::pair<std::pair<int, int>, CMatrix>> table;
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j) {
        table.push_back({{i, j}, E(i, j) + E(prime(i), prime(j))});
        table.push_back({{prime(j), prime(i)}, E(j, i) + E(prime(j), prime(i))});
        table.push_back({{i, prime(j)}, E(i, prime(j)) + E(prime(i), j)});
        table.push_back({{j, prime(i)}, E(j, prime(i)) + E(prime(j), i)});
      }
    for (int k = 0; k < r; ++k) {
      for (int l = r; l < p; ++l) {
        table.push_back({{k, l}, E(k, l) - E(prime(k), l)});
        table.push_back({{l, prime(k)}, E(l, prime(k)) - E(l, k)});
      }
      table.push_back({{k, prime(k)}, E(k, prime(k)) + E(prime(k), k)});
    }
    for (const auto & [ij, T] : table) {
      const CMatrix & y = data.yAlpha[static_cast<size_t>(data.root_index(ij.first, ij.second))];
      const cd c = (T.adjoint() * y).trace() / (T.adjoint() * T).trace();
      double err = max_abs(y - c * T) / std::max(max_abs(y), 1e-300);
      if (std::abs(c) < 1e-12)
        err = 1.0;
      e.tableProportionality = std::max(e.tableProportionality, err);
    }

    int violations = 0;
    for (const Root & al : data.roots) {
      const bool zero = std::all_of(al.weight.begin(), al.weight.end(), [](int c) { return c == 0; });
      if (al.imaginary != zero)
        ++violations;
      if (!al.imaginary && data.restricted_index(al.weight) < 0)
        ++violations;
    }
    e.restrictionMap = violations;
    return e;
  }

  std::pair<double, double> reconstruction_errors(const RealFormData & data, const BasePoint & a)
  {
    // a = exp(sum_j c_j x_j) with x_j diagonal
    CVector logA = CVector::Zero(data.n);
    for (int j = 0; j < data.r; ++j)
      logA += a.coords[static_cast<size_t>(j)] * data.basis[static_cast<size_t>(j)].diagonal();
    const CVector aDiag = logA.array().exp();
    const CVector aInv = (-logA).array().exp();

    double recon = 0.0, twoWays = 0.0;
    for (size_t k = 0; k < data.roots.size(); ++k) {
      const Root & al = data.roots[k];
      if (al.imaginary)
        continue;
      const CMatrix & y = data.yAlpha[k];
      const CMatrix conj = aInv.asDiagonal() * y * aDiag.asDiagonal();
      const CVector c = data.coords(y);
      CVector graded = CVector::Zero(data.dim());
      for (int b = 0; b < data.dim(); ++b)
        graded(b) = c(b) * xi(data, scale_weight(data.basisWeight[static_cast<size_t>(b)], -1), a).value();
      twoWays = std::max(twoWays, max_abs(data.from_coords(graded) - conj));

      const cd al1 = xi(data, al.weight, a).value();
      const cd al2 = xi(data, scale_weight(al.weight, 2), a).value();
      const CMatrix & ea = data.basis[static_cast<size_t>(al.basisIndex)];
      const CMatrix e1 = (al1 * conj - al2 * y) / (1.0 - al2);
      const CMatrix e2 = (al1 * conj - y) / (al2 - 1.0);
      recon = std::max({recon, max_abs(e1 - ea), max_abs(e2 - data.theta_of(ea))});
    }
    return {recon, twoWays};
  }

  RMatrixErrors rmatrix_errors(const RealFormData & data, const BasePoint & a)
  {
    RMatrixErrors e;
    const DynTensor r = build_r(data, a);
    const auto [rp, rm] = build_r_pm(data, a);
    const DynTensor folded = r.swapped().right(data.theta);
    e.quasiUnitarity = max_abs(r + r.swapped() + varpi(data, static_cast<size_t>(data.r)));
    e.foldingPlus = max_abs(rp - r - folded);
    e.foldingMinus = max_abs(rm + r - folded);
    e.thetaSymmetry = max_abs(folded - r.left(data.theta));
    e.mInvariance = std::max({m_invariance_error(data, r), m_invariance_error(data, rp), m_invariance_error(data, rm)});
    for (int j = 0; j < data.r; ++j) {
      const CMatrix & adh = data.ad[static_cast<size_t>(j)];
      e.symbolIdentity = std::max(e.symbolIdentity, max_abs(rm.right(adh) - rp.left(adh)));
    }
    return e;
  }

  double t_lambda_norm_sq_by_solve(const RealFormData & data, int lambdaIndex)
  {
    const auto & rr = data.restrictedRoots[static_cast<size_t>(lambdaIndex)];
    const Root & al = data.roots[static_cast<size_t>(rr.roots.front())];
    const int r = data.r;
    CMatrix G(r, r);
    CVector b(r);
    for (int j = 0; j < r; ++j) {
      const CMatrix & xj = data.basis[static_cast<size_t>(j)];
      b(j) = xj(al.i, al.i) - xj(al.j, al.j);
      for (int k = 0; k < r; ++k)
        G(j, k) = killing_form(xj, data.basis[static_cast<size_t>(k)]);
    }
    const CVector c = G.fullPivLu().solve(b);
    return (c.transpose() * G * c)(0, 0).real();
  }

  std::string Menu::describe() const
  {
    return "sigma_l=" + sigmaL + ";taus=" + (taus.empty() ? std::string("none") : join(taus, ",")) + ";sigma_r=" + sigmaR;
  }

  Menu menu_for(const SuiteConfig & config, int slots)
  {
    const auto reps = resolved_reps(config);
    const std::string L = reps.empty() ? std::string("def") : reps.front();
    const std::string Ld = dual_label(L);
    switch (slots) {
    case 2:
      return Menu{config.sigmaL, {L, Ld}, config.sigmaR};
    case 3:
      return Menu{"triv", {L, "adj", Ld}, "triv"};
    case 4:
      return Menu{"triv", {L, Ld, L, Ld}, "triv"};
    default:
      return Menu{config.sigmaL, std::vector<std::string>(static_cast<size_t>(slots), L), config.sigmaR};
    }
  }

  KzbSpace make_space(const RealFormData & data, const Menu & menu)
  {
    std::vector<Rep> taus;
    for (const auto & label : menu.taus)
      taus.push_back(rep_from_label(data, label));
    return KzbSpace(data, krep_from_label(data, menu.sigmaL), std::move(taus), krep_from_label(data, menu.sigmaR));
  }

  //------------------------------------------------------------------------------
  // Suite
  //------------------------------------------------------------------------------

  std::string CheckResult::status() const
  {
    if (kind == CheckKind::Probe)
      return "probe";
    return pass ? "pass" : "fail";
  }

  std::vector<std::string> resolved_reps(const SuiteConfig & config)
  {
    if (config.reps.empty())
      return std::vector<std::string>(static_cast<size_t>(config.n), "def");
    if (config.reps.size() == 1)
      return std::vector<std::string>(static_cast<size_t>(config.n), config.reps.front());
    return config.reps;
  }

  void validate(const SuiteConfig & config)
  {
    if (config.r < 1 || config.r > config.p || config.p + config.r < 3)
      throw KzbError("unsupported-signature", "need 1 <= r <= p and p + r >= 3");
    if (config.n < 0)
      throw KzbError("invalid-config", "n must be non-negative");
    if (config.reps.size() > 1 && static_cast<int>(config.reps.size()) != config.n)
      throw KzbError("invalid-config", "expected " + std::to_string(config.n) + " representation labels, got " +
                                           std::to_string(config.reps.size()));
    if (config.points < 1)
      throw KzbError("invalid-config", "points must be positive");
    if (config.tol && !(*config.tol >= 0.0))
      throw KzbError("invalid-config", "tolerance must be non-negative");
    for (const auto & g : config.groups)
      if (std::find(all_groups().begin(), all_groups().end(), g) == all_groups().end())
        throw KzbError("invalid-config", "unknown check group '" + g + "'");
    const RealFormData data = build_real_form(config.p, config.r);
    long long total = rep_from_label(data, config.sigmaL).dim * rep_from_label(data, config.sigmaR).dim;
    for (const auto & label : resolved_reps(config))
      total *= rep_from_label(data, label).dim;
    if (total > kMaxSpaceDim)
      throw KzbError("invalid-config", "tensor space of dimension " + std::to_string(total) + " exceeds the limit " +
                                           std::to_string(kMaxSpaceDim) + "; use fewer slots or trivial boundaries");
  }

  std::vector<CheckResult> run_suite(const SuiteConfig & config)
  {
    validate(config);
    Recorder rec(config);
    if (config.groups.empty())
      return rec.finish();
    const RealFormData data = build_real_form(config.p, config.r);
    const auto pts = sample_points(data, config.seed, config.points);
    const auto chamber = sample_points(data, config.seed, config.points, true);

    if (selected(config, "structure"))
      run_structure(data, pts, rec);
    if (selected(config, "rmatrix"))
      run_rmatrix(data, pts, rec);
    if (selected(config, "ug"))
      run_ug(data, pts, rec);
    if (selected(config, "reps"))
      run_reps(data, config, rec);
    if (config.n > 0 && selected(config, "kzb")) {
      run_kzb_configured(data, config, pts, rec);
      run_kzb_menus(data, config, pts, rec);
    }
    if (selected(config, "schrodinger"))
      run_schrodinger(data, config, pts, chamber, rec);

    auto results = rec.finish();
    if (!selected(config, "probe"))
      results.erase(std::remove_if(results.begin(), results.end(),
                                   [](const CheckResult & c) { return c.kind == CheckKind::Probe; }),
                    results.end());
    return results;
  }

  bool all_passed(const std::vector<CheckResult> & results)
  {
    return std::all_of(results.begin(), results.end(), [](const CheckResult & c) { return c.pass; });
  }

  std::string report_json(const SuiteConfig & config, const std::vector<CheckResult> & results)
  {
    using nlohmann::ordered_json;
    ordered_json meta;
    meta["p"] = config.p;
    meta["r"] = config.r;
    meta["n"] = config.n;
    meta["reps"] = resolved_reps(config);
    meta["sigma_l"] = config.sigmaL;
    meta["sigma_r"] = config.sigmaR;
    meta["seeds"] = ordered_json::array({config.seed});
    meta["points"] = config.points;
    if (config.tol)
      meta["tol"] = *config.tol;
    else
      meta["tol"] = "pinned";
    meta["version"] = "1.0.0";
    ordered_json refs = ordered_json::object();
    ordered_json checks = ordered_json::array();
    for (const auto & c : results) {
      refs[c.name] = c.paperRef;
      ordered_json j;
      j["name"] = c.name;
      j["paper_ref"] = c.paperRef;
      if (std::isfinite(c.maxErr))
        j["max_err"] = c.maxErr;
      else
        j["max_err"] = nullptr;
      j["tol"] = c.tol;
      j["kind"] = c.kind == CheckKind::Assert ? "assert" : (c.kind == CheckKind::Control ? "control" : "probe");
      j["status"] = c.status();
      j["reps"] = c.reps;
      j["seed"] = c.seed;
      j["note"] = c.note;
      checks.push_back(std::move(j));
    }
    meta["paper_refs"] = std::move(refs);
    ordered_json doc;
    doc["meta"] = std::move(meta);
    doc["checks"] = std::move(checks);
    return doc.dump(2) + "\n";
  }

} // namespace kzb

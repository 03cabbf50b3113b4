#ifndef KZB_SUITE_HPP
#define KZB_SUITE_HPP

#include "kzb/operators.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace kzb
{

  enum class CheckKind
  {
    Assert,  ///< pass iff maxErr <= tol
    Control, ///< deliberately perturbed identity; pass iff maxErr >= tol
    Probe    ///< reported only
  };

  struct CheckResult
  {
    std::string name;
    std::string paperRef;
    int p = 0;
    int r = 0;
    std::string reps;
    std::uint64_t seed = 0;
    double maxErr = 0.0;
    double tol = 0.0;
    CheckKind kind = CheckKind::Assert;
    bool pass = true;
    std::string note;

    std::string status() const;
  };

  /// Groups of checks that can be selected individually
  inline const std::vector<std::string> & all_groups()
  {
    static const std::vector<std::string> groups{"structure", "rmatrix", "ug", "reps", "kzb", "schrodinger", "probe"};
    return groups;
  }

  struct SuiteConfig
  {
    int p = 2;
    int r = 1;
    int n = 3;
    std::vector<std::string> reps; ///< labels of tau_1..tau_n; empty means def throughout
    std::string sigmaL = "def";
    std::string sigmaR = "def";
    std::uint64_t seed = 42;
    int points = 3;
    std::optional<double> tol; ///< overrides every pinned tolerance
    std::vector<std::string> groups = all_groups();
  };

  /// Throws KzbError("invalid-config") with a specific message for bad configurations,
  /// including tensor spaces above 1024 dimensions
  void validate(const SuiteConfig & config);

  /// Runs every selected check; results sorted by name
  std::vector<CheckResult> run_suite(const SuiteConfig & config);

  /// JSON report {meta, checks}; no timestamp so reports are reproducible
  std::string report_json(const SuiteConfig & config, const std::vector<CheckResult> & results);

  /// True iff every asserted check and every control passed
  bool all_passed(const std::vector<CheckResult> & results);

  /// Tau labels actually used for n tensor slots
  std::vector<std::string> resolved_reps(const SuiteConfig & config);

  //------------------------------------------------------------------------------
  // Individual measurements, shared with the tests and the acceptance run
  //------------------------------------------------------------------------------

  struct StructureErrors
  {
    double thetaInvolution = 0.0;
    double bracketNormalization = 0.0;
    double cartanOrthonormal = 0.0;
    double cAlphaRelations = 0.0;
    double dimensionMismatches = 0.0;
    double hAlphaSum = 0.0;
    double zLambda = 0.0;
    double zLambdaNorm = 0.0; ///< largest |z_lambda| entry
    double rho = 0.0;
    double kCenter = 0.0;
    double tableProportionality = 0.0;
    double restrictionMap = 0.0;
  };

  StructureErrors structure_errors(const RealFormData & data);

  /// Max residual of reconstructing e_alpha and theta(e_alpha) from y_alpha, and the largest
  /// disagreement between Ad_{a^{-1}} by grading and by matrix conjugation
  std::pair<double, double> reconstruction_errors(const RealFormData & data, const BasePoint & a);

  struct RMatrixErrors
  {
    double quasiUnitarity = 0.0;
    double foldingPlus = 0.0;
    double foldingMinus = 0.0;
    double thetaSymmetry = 0.0;
    double mInvariance = 0.0;
    double symbolIdentity = 0.0;
  };

  RMatrixErrors rmatrix_errors(const RealFormData & data, const BasePoint & a);

  /// (t_lambda, t_lambda) from a Killing linear solve on the x-basis
  double t_lambda_norm_sq_by_solve(const RealFormData & data, int lambdaIndex);

  /// Rep menu for a derived number of slots: (L, L*) between the configured boundaries,
  /// (L, adj, L*) and (L, L*, L, L*) between trivial ones
  struct Menu
  {
    std::string sigmaL;
    std::vector<std::string> taus;
    std::string sigmaR;
    std::string describe() const;
  };

  Menu menu_for(const SuiteConfig & config, int slots);
  KzbSpace make_space(const RealFormData & data, const Menu & menu);

} // namespace kzb

#endif

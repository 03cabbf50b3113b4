#ifndef KZB_OPERATORS_HPP
#define KZB_OPERATORS_HPP

#include "kzb/reps.hpp"
#include "kzb/tensors.hpp"

#include <functional>
#include <vector>

namespace kzb
{

  /// Tensor space V_l (x) U_1 (x) ... (x) U_n (x) V_r^* with legs numbered 0..n+1
  class KzbSpace
  {
  public:
    KzbSpace(const RealFormData & data, KRep sigmaL, std::vector<Rep> taus, KRep sigmaR);

    const RealFormData & data() const { return *m_data; }
    int n() const { return static_cast<int>(m_taus.size()); }
    int legs() const { return n() + 2; }
    Eigen::Index dim() const { return m_total; }
    Eigen::Index leg_dim(int leg) const { return m_legDims[static_cast<size_t>(leg)]; }
    const KRep & sigma_l() const { return m_sigmaL; }
    const KRep & sigma_r() const { return m_sigmaR; }
    const KRep & sigma_r_dual() const { return m_sigmaRDual; }
    const std::vector<Rep> & taus() const { return m_taus; }

    /// Images of the g-basis on a leg (through pr_k on the two boundary legs)
    const std::vector<CMatrix> & leg_action(int leg) const { return m_legAct[static_cast<size_t>(leg)]; }
    /// Image of a g-element on a leg
    CMatrix leg_apply(int leg, const CMatrix & X) const;

    /// Operator acting by M on the listed legs (in that tensor order) and by the identity elsewhere
    CMatrix embed(const std::vector<int> & legs, const CMatrix & M) const;
    JetMatrix embed(const std::vector<int> & legs, const JetMatrix & M) const;
    /// Product of single-leg factors, applied in list order
    CMatrix embed_factors(const std::vector<std::pair<int, CMatrix>> & factors) const;

    /// (rho_A (x) rho_B)(T) placed on legs A and B (A may equal B, giving the product)
    JetMatrix pair(const DynTensor & T, int legA, int legB) const;
    /// Image of a PBW element on a g-leg
    JetMatrix on_leg(const UgElement2 & u, int leg) const;

    /// Diagonal m-action and its invariant subspace
    std::vector<CMatrix> m_action() const;
    const InvariantSubspace & invariants() const;

  private:
    const RealFormData * m_data;
    KRep m_sigmaL;
    std::vector<Rep> m_taus;
    KRep m_sigmaR;
    KRep m_sigmaRDual;
    std::vector<Eigen::Index> m_legDims;
    std::vector<Eigen::Index> m_strides;
    Eigen::Index m_total = 0;
    std::vector<std::vector<CMatrix>> m_legAct;
    mutable bool m_haveInvariants = false;
    mutable InvariantSubspace m_invariants;
  };

  /// sum_j symbol_j d/dx_j + zeroth
  struct FirstOrderOp
  {
    std::vector<CMatrix> symbol;
    JetMatrix zeroth;

    Eigen::Index space() const { return zeroth.rows(); }
  };

  /// laplacian * sum_j d^2/dx_j^2 + sum_j first_j d/dx_j + zeroth
  struct SecondOrderOp
  {
    double laplacian = 1.0;
    std::vector<JetMatrix> first;
    JetMatrix zeroth;

    Eigen::Index space() const { return zeroth.rows(); }
  };

  /// Coefficients of a commutator evaluated at the base point
  struct CommutatorValue
  {
    std::vector<CMatrix> second; ///< coefficient of d_j d_k at index j*r+k
    std::vector<CMatrix> first;
    CMatrix zeroth;
  };

  /// Local factors shared by all operators at one base point
  struct PointTensors
  {
    BasePoint point;
    DynTensor rPlus;
    DynTensor rMinus;
    Kappa kappa;
  };

  PointTensors point_tensors(const RealFormData & data, const BasePoint & a,
                             Perturbation control = Perturbation::None);

  enum class Core
  {
    Plain, ///< kappa
    Hat    ///< gauged kappa-hat
  };

  /// kappa_i (or kappa-hat_i) on the full space
  JetMatrix kappa_on_space(const KzbSpace & S, const PointTensors & P, int i, Core core);

  /// D_i = sum_j tau_i(x_j) d_j - kappa_i - sum_{k<i} r+_ki - sum_{k>i} r-_ik; throws "index-out-of-range"
  FirstOrderOp build_D(const KzbSpace & S, const PointTensors & P, int i, Core core = Core::Plain);
  FirstOrderOp build_D(const KzbSpace & S, const BasePoint & a, int i, Core core = Core::Plain);

  /// Radial expansion of (D_{Omega,i} - D_{Omega,i-1}) / 2 through the dual-basis Casimirs
  FirstOrderOp build_D_oracle(const KzbSpace & S, const BasePoint & a, int i);

  /// d_h -> d_h + sign * gauge_shift(h)
  FirstOrderOp gauge_first_order(const RealFormData & data, const FirstOrderOp & D, const BasePoint & a,
                                 double sign = 1.0);

  /// d_j (gauge_shift(x_j)) with its gradient
  Jet1 gauge_shift_derivative(const RealFormData & data, int j, const BasePoint & a);

  /// Radial component of the Casimir with all its terms
  SecondOrderOp build_H(const KzbSpace & S, const BasePoint & a);
  /// Matrix potential V
  JetMatrix build_potential(const KzbSpace & S, const BasePoint & a);
  /// sum_j d_j^2 + V + sigma_r^*(Omega_m) - (t_rho, t_rho)
  SecondOrderOp build_H_tilde(const KzbSpace & S, const BasePoint & a);
  /// Conjugation of H by the gauge, expanding (d + s)^2 with the analytic derivative of s
  SecondOrderOp gauge_second_order(const RealFormData & data, const SecondOrderOp & H, const BasePoint & a);

  /// k(lambda) = mtp(lambda) (mtp(2 lambda) + mtp(lambda)/2 - 1) (t_lambda, t_lambda)
  double potential_k(const RealFormData & data, int lambdaIndex);

  /// [D, E] for first-order operators at a common point; throws "shape"
  CommutatorValue commutator_first_order(const FirstOrderOp & D, const FirstOrderOp & E);

  /// [D, H] where the zeroth-order coefficient of D is re-evaluated by the builder at nearby points
  /// to obtain its second derivatives (Richardson-extrapolated central differences of exact gradients)
  CommutatorValue commutator_with_second_order(const std::function<FirstOrderOp(const BasePoint &)> & builder,
                                               const SecondOrderOp & H, const BasePoint & a,
                                               double step = 1e-3);

  struct ReflectionTerms
  {
    CMatrix A;                 ///< A_ij
    std::vector<CMatrix> myb1; ///< MYB(1)_{kij}, k < i
    std::vector<CMatrix> myb2; ///< MYB(2)_{ikj}, i < k < j
    std::vector<CMatrix> myb3; ///< MYB(3)_{ijk}, k > j
    CMatrix total() const;
  };

  /// Reflection term and mixed Yang-Baxter terms for 1 <= i < j <= n; throws "index-out-of-range"
  ReflectionTerms reflection_and_myb(const KzbSpace & S, const PointTensors & P, int i, int j, Core core);

  /// max |X N| over an orthonormal basis N of the invariant subspace
  double restricted_norm(const CMatrix & X, const InvariantSubspace & inv);

  /// Residual of the delta-conjugation identity for f = xi_mu v, relative to the scale
  double delta_conjugation_error(const KzbSpace & S, const BasePoint & a, const std::vector<double> & mu);

} // namespace kzb

#endif

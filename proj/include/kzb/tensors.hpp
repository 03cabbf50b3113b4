#ifndef KZB_TENSORS_HPP
#define KZB_TENSORS_HPP

#include "kzb/dynamical.hpp"
#include "kzb/ug.hpp"

#include <utility>
#include <vector>

namespace kzb
{

  /// Support marker of a tensor leg
  enum class Leg
  {
    G,
    K,
    P
  };

  /// Two-leg tensor over the g-basis with jet coefficients: sum T_ab b_a (x) b_b
  struct DynTensor
  {
    std::vector<Leg> legs{Leg::G, Leg::G};
    JetMatrix coeffs;

    DynTensor() = default;
    DynTensor(const RealFormData & data, size_t rank);

    size_t rank() const { return coeffs.rank(); }

    /// T_21
    DynTensor swapped() const;
    /// (M (x) id) T and (id (x) M) T for a linear map M on coordinates
    DynTensor left(const CMatrix & M) const;
    DynTensor right(const CMatrix & M) const;

    DynTensor & operator+=(const DynTensor & o);
    DynTensor & operator-=(const DynTensor & o);
  };

  DynTensor operator+(DynTensor a, const DynTensor & b);
  DynTensor operator-(DynTensor a, const DynTensor & b);
  DynTensor operator*(const Jet1 & s, const DynTensor & T);
  DynTensor operator*(cd s, DynTensor T);

  UgElement2 mu(const RealFormData & data, const DynTensor & T);

  /// Coordinate matrices of theta, pr_k, pr_p
  CMatrix theta_matrix(const RealFormData & data);
  CMatrix pr_k_matrix(const RealFormData & data);
  CMatrix pr_p_matrix(const RealFormData & data);

  /// Largest |sum over legs of ad(y) T| for y in mBasis (value and gradient)
  double m_invariance_error(const RealFormData & data, const DynTensor & T);
  /// Same over the whole basis
  double ad_invariance_error(const RealFormData & data, const DynTensor & T);

  DynTensor varpi(const RealFormData & data, size_t rank);
  DynTensor varpi_m(const RealFormData & data, size_t rank);
  DynTensor varpi_x(const RealFormData & data, size_t rank);
  DynTensor varpi_lambda(const RealFormData & data, int lambdaIndex, size_t rank);
  /// sum_{alpha in R_lambda} y_{-alpha} (x) y_alpha
  DynTensor upsilon_lambda(const RealFormData & data, int lambdaIndex, size_t rank);

  struct InvariantTensors
  {
    DynTensor varpiLambda;
    UgElement2 OmegaLambda;
    DynTensor upsilonLambda;
    UgElement2 UpsilonLambda;
  };

  /// Throws "not-restricted-root" unless lambda is in Sigma
  InvariantTensors invariant_tensors(const RealFormData & data, const Weight & lambda, size_t rank);

  UgElement2 casimir(const RealFormData & data, size_t rank);
  UgElement2 casimir_m(const RealFormData & data, size_t rank);
  UgElement2 casimir_prime(const RealFormData & data, size_t rank);

  /// Dynamical r-matrix r(a)
  DynTensor build_r(const RealFormData & data, const BasePoint & a);

  /// Folded r-matrices (r+, r-)
  std::pair<DynTensor, DynTensor> build_r_pm(const RealFormData & data, const BasePoint & a);

  /// Boundary factor kappa = 1 (x) core (x) 1 - left (x) 1 - 1 (x) right
  struct Kappa
  {
    UgElement2 core;     ///< (1/2) Omega + mu(r+_21)
    UgElement2 coreAlt;  ///< expansion through the dynamical Casimir factorisation
    UgElement2 coreFold; ///< mu((1 (x) theta) r_21) + (1/4) sum c (z + mtp t)
    UgElement2 coreHat;  ///< gauged core
    DynTensor left;      ///< legs (k, g)
    DynTensor right;     ///< legs (g, k)
  };

  /// Deliberate defects used as negative controls
  enum class Perturbation
  {
    None,
    Z, ///< drop (or flip, for the gauged core) the z_lambda term
    T  ///< drop (or flip) the mtp t_lambda term
  };

  /// A perturbation reverses the sign of the corresponding term of the gauged core
  Kappa build_kappa(const RealFormData & data, const BasePoint & a, Perturbation control = Perturbation::None);

  /// (1/4) sum_Sigma coth_coeff(lambda) z_lambda and (1/4) sum_Sigma coth_coeff mtp t_lambda
  UgElement2 quarter_coth_z(const RealFormData & data, const BasePoint & a);
  UgElement2 quarter_coth_t(const RealFormData & data, const BasePoint & a);

  /// Max coefficient error of the dynamical Casimir factorisation; a perturbation omits that term
  double check_casimir_factorisation(const RealFormData & data, const BasePoint & a,
                                     Perturbation control = Perturbation::None);

  /// Max coefficient error of the U(g) identity behind the explicit form of H
  double check_radial_casimir_identity(const RealFormData & data, const BasePoint & a,
                                  Perturbation control = Perturbation::None);

  /// Bracket cancellation: sum over Sigma of the [theta e_alpha, e_{-alpha}] terms vanishes
  double check_bracket_cancellation(const RealFormData & data, const BasePoint & a);

  /// sum_{alpha in R_lambda} e_alpha (x) theta(e_{-alpha}) minus its swap
  double check_symmetric_tensor(const RealFormData & data, int lambdaIndex);

} // namespace kzb

#endif

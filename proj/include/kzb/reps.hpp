#ifndef KZB_REPS_HPP
#define KZB_REPS_HPP

#include "kzb/real_form.hpp"

#include <string>
#include <vector>

namespace kzb
{

  /// Finite-dimensional g-module: act[a] is the image of the basis element b_a
  struct Rep
  {
    int dim = 0;
    std::vector<CMatrix> act;
    std::string label;
  };

  /// k-module given on mBasis followed by qBasis
  struct KRep
  {
    int dim = 0;
    std::vector<CMatrix> act;
    std::string label;

    /// Image of pr_k(b_a) for every g-basis element
    std::vector<CMatrix> on_g(const RealFormData & data) const;
    /// Image of an element of k given as a matrix
    CMatrix apply(const RealFormData & data, const CMatrix & X) const;
  };

  /// Orthonormal basis (columns) of the joint kernel of the m-action
  struct InvariantSubspace
  {
    Eigen::Index ambientDim = 0;
    CMatrix basis;

    Eigen::Index dim() const { return basis.cols(); }
  };

  Rep defining_rep(const RealFormData & data);
  Rep adjoint_rep(const RealFormData & data);
  Rep trivial_rep(const RealFormData & data);
  Rep dual_rep(const Rep & R);
  Rep tensor_rep(const Rep & R1, const Rep & R2);

  /// Image of an arbitrary g-element given as a matrix
  CMatrix rep_apply(const RealFormData & data, const Rep & R, const CMatrix & X);

  KRep restrict_to_k(const RealFormData & data, const Rep & R);
  KRep trivial_krep(const RealFormData & data);
  KRep dual_krep(const KRep & R);
  KRep tensor_krep(const KRep & R1, const KRep & R2);

  /// Diagonal k-action on V_l (x) U_1 (x) ... (x) U_n
  KRep sigma_ell_n(const RealFormData & data, const KRep & sigmaL, const std::vector<Rep> & taus);

  /// Invariants of the m-action given by one matrix per m-basis element
  InvariantSubspace m_invariants(const std::vector<CMatrix> & mAction, Eigen::Index ambientDim);
  InvariantSubspace m_invariants(const RealFormData & data, const Rep & R);
  InvariantSubspace m_invariants(const RealFormData & data, const KRep & R);

  /// Labels: def, dual, adj, triv, and tensor products joined by '*'
  Rep rep_from_label(const RealFormData & data, const std::string & label);
  KRep krep_from_label(const RealFormData & data, const std::string & label);
  std::string dual_label(const std::string & label);

  /// max |act([b_a,b_b]) - [act(b_a), act(b_b)]|
  double homomorphism_error(const RealFormData & data, const Rep & R);
  /// Same over pairs from mBasis and qBasis
  double homomorphism_error(const RealFormData & data, const KRep & R);

} // namespace kzb

#endif

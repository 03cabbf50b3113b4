#ifndef KZB_REAL_FORM_HPP
#define KZB_REAL_FORM_HPP

#include "kzb/linalg.hpp"

#include <string>
#include <vector>

namespace kzb
{

  /// Integer coefficient vector over f_1..f_r
  using Weight = std::vector<int>;

  /// Root alpha_ij = eps_i - eps_j (0-based matrix indices)
  struct Root
  {
    int i = 0;
    int j = 0;
    int basisIndex = 0;  ///< position of e_alpha in the g-basis
    int negative = 0;    ///< index of -alpha in the root list
    int thetaRoot = 0;   ///< index of theta(alpha) in the root list
    cd c{1.0, 0.0};      ///< theta(e_alpha) = c e_{theta alpha}
    Weight weight;       ///< restriction to a
    bool positive = false;
    bool imaginary = false; ///< alpha in R_0
    int restricted = -1;    ///< index into restrictedRoots, -1 on R_0
  };

  struct RestrictedRoot
  {
    Weight lambda;
    int mtp = 0;
    bool positive = false;
    std::vector<int> roots; ///< indices into the root list
    int negative = 0;       ///< index of -lambda
  };

  /// Static Lie-theoretic data of su(p,r) inside sl(p+r,C)
  struct RealFormData
  {
    int p = 0;
    int r = 0;
    int n = 0;           ///< matrix size p+r
    double fScale = 0.0; ///< f_j(x_j) = 1/(2 sqrt(n))
    CMatrix J;

    std::vector<CMatrix> basis;      ///< x_1..x_r, imaginary Cartan part, then e_alpha
    std::vector<Weight> basisWeight; ///< restricted weight of each basis element
    int nCartan = 0;

    std::vector<Root> roots;
    std::vector<RestrictedRoot> restrictedRoots; ///< positives first
    std::vector<CMatrix> yAlpha;     ///< per root, empty on R_0
    std::vector<CMatrix> hAlpha;     ///< per root
    std::vector<CMatrix> tLambda;    ///< per restricted root
    std::vector<CMatrix> zLambda;    ///< per restricted root

    std::vector<int> mIndices;       ///< basis indices spanning m
    std::vector<CMatrix> mBasis;
    std::vector<CMatrix> qBasis;     ///< y_alpha for positive alpha outside R_0
    std::vector<int> qRoots;
    std::vector<CMatrix> aBasis;     ///< x_1..x_r

    CMatrix theta;   ///< theta on basis coordinates
    CMatrix kFromG;  ///< coordinates of pr_k(b_a) over mBasis then qBasis
    std::vector<CMatrix> ad; ///< ad(b_a) on basis coordinates
    CMatrix tTransform;      ///< orthonormal t-basis over the traceless spanning set

    std::vector<double> rho;
    double tRhoNormSq = 0.0;

    int dim() const { return static_cast<int>(basis.size()); }
    int dim_k() const { return static_cast<int>(mBasis.size() + qBasis.size()); }

    /// Coordinates over the basis, via the Killing pairing with the dual basis
    CVector coords(const CMatrix & X) const;
    CMatrix from_coords(const CVector & c) const;

    /// Index b with K(b_a, b_b) = 1 (z_s -> z_s, e_alpha -> e_{-alpha})
    int dual_index(int a) const;

    int root_index(int i, int j) const;
    int restricted_index(const Weight & lambda) const;

    /// lambda(x_j)
    double lambda_on_x(const Weight & lambda, int j) const { return lambda[static_cast<size_t>(j)] * fScale; }

    CMatrix theta_of(const CMatrix & X) const { return J * X * J; }
    CMatrix pr_k(const CMatrix & X) const { return 0.5 * (X + theta_of(X)); }
    CMatrix pr_p(const CMatrix & X) const { return 0.5 * (X - theta_of(X)); }
  };

  /// Throws "unsupported-signature" unless 1 <= r <= p and p+r >= 3
  RealFormData build_real_form(int p, int r);

  /// Killing form of sl(n,C), 2n tr(XY)
  cd killing_form(const CMatrix & X, const CMatrix & Y);

  /// E_ij / sqrt(2n) for every root, in root order
  std::vector<CMatrix> normalize_root_vectors(const RealFormData & data);

  /// c_alpha with theta(e_alpha) = c_alpha e_{theta alpha}; "realization-bug" if not proportional
  std::vector<cd> theta_coefficients(const RealFormData & data);

  /// Readable label such as "f1-f2" or "2f1"
  std::string weight_label(const Weight & lambda);

  /// sum_{alpha in R_lambda} h_alpha
  CMatrix sum_h_alpha(const RealFormData & data, int lambdaIndex);

  /// Central element of k from its explicit matrix description
  CMatrix k_center_element(const RealFormData & data);

} // namespace kzb

#endif

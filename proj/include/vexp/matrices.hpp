#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "vexp/exponents.hpp"

namespace vexp {

// Signed power law s(r) = c * r^a.
struct PowerMap {
  double c = 1.0;
  double a = 0.0;

  double operator()(double r) const;
  // ln|s(e^w)|
  double log_abs_at_log(double w) const;
};

class SingularMatrixError : public std::runtime_error {
 public:
  explicit SingularMatrixError(double t);
  double t;
};

enum class FamilyKind { ScalarDilation, DiagonalEqualModulus, OrthogonalTimesScalar };

// A(t) for |t| = t_radius. Every variant satisfies |A(t)x| = |s(t)||x|.
class MatrixFamily {
 public:
  static MatrixFamily scalar_dilation(int n, PowerMap s);
  static MatrixFamily diag_equal(PowerMap s, std::vector<int> signs);
  static MatrixFamily orth_scalar(const Eigen::MatrixXd& q, PowerMap s);

  FamilyKind kind() const { return kind_; }
  int dim() const { return n_; }
  const PowerMap& map() const { return s_; }
  const std::vector<int>& signs() const { return signs_; }
  const Eigen::MatrixXd& rotation() const { return q_; }
  std::string kind_name() const;

  double scale(double t) const { return s_(t); }
  Eigen::MatrixXd matrix(double t) const;

 private:
  MatrixFamily(FamilyKind k, int n, PowerMap s);
  FamilyKind kind_;
  int n_;
  PowerMap s_;
  std::vector<int> signs_;
  Eigen::MatrixXd q_;
};

double frobenius_norm(const Eigen::MatrixXd& a);
double frobenius_norm(const MatrixFamily& fam, double t);

struct InverseStats {
  double inv_norm;
  double det_inv_abs;
};

InverseStats inverse_stats(const MatrixFamily& fam, double t);

double rho_bound(const std::vector<MatrixFamily>& fams, const std::vector<double>& t_samples);

int dyadic_exponent(double norm);
int dyadic_exponent(const MatrixFamily& fam, double t);

int theta_star(double rho);
int theta_star(const std::vector<MatrixFamily>& fams, double t);

double c_factor(const MatrixFamily& fam, const ExponentFunction& q, double gamma, double t);

}  // namespace vexp

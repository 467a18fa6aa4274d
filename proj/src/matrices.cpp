#include "vexp/matrices.hpp"

#include <cmath>
#include <sstream>

namespace vexp {

double PowerMap::operator()(double r) const {
  if (a == 0.0) return c;
  return c * std::pow(r, a);
}

double PowerMap::log_abs_at_log(double w) const {
  if (a == 0.0) return std::log(std::abs(c));
  return std::log(std::abs(c)) + a * w;
}

SingularMatrixError::SingularMatrixError(double t_radius)
    : std::runtime_error([t_radius] {
        std::ostringstream msg;
        msg << "matrix family is singular at |t| = " << t_radius;
        return msg.str();
      }()),
      t(t_radius) {}

MatrixFamily::MatrixFamily(FamilyKind k, int n, PowerMap s) : kind_(k), n_(n), s_(s) {
  if (n < 1) throw std::invalid_argument("matrix dimension must be positive");
}

MatrixFamily MatrixFamily::scalar_dilation(int n, PowerMap s) {
  return MatrixFamily(FamilyKind::ScalarDilation, n, s);
}

MatrixFamily MatrixFamily::diag_equal(PowerMap s, std::vector<int> signs) {
  if (signs.empty()) throw std::invalid_argument("diag_equal needs at least one sign");
  for (int g : signs)
    if (g != 1 && g != -1) throw std::invalid_argument("diag_equal signs must be +1 or -1");
  MatrixFamily f(FamilyKind::DiagonalEqualModulus, static_cast<int>(signs.size()), s);
  f.signs_ = std::move(signs);
  return f;
}

MatrixFamily MatrixFamily::orth_scalar(const Eigen::MatrixXd& q, PowerMap s) {
  if (q.rows() != q.cols() || q.rows() == 0)
    throw std::invalid_argument("orth_scalar needs a square matrix");
  const Eigen::MatrixXd gram = q.transpose() * q;
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(q.rows(), q.cols());
  if ((gram - eye).norm() > 1e-10) throw std::invalid_argument("q_matrix is not orthogonal");
  MatrixFamily f(FamilyKind::OrthogonalTimesScalar, static_cast<int>(q.rows()), s);
  f.q_ = q;
  return f;
}

std::string MatrixFamily::kind_name() const {
  switch (kind_) {
    case FamilyKind::ScalarDilation:
      return "scalar_dilation";
    case FamilyKind::DiagonalEqualModulus:
      return "diag_equal";
    case FamilyKind::OrthogonalTimesScalar:
      return "orth_scalar";
  }
  return "unknown";
}

Eigen::MatrixXd MatrixFamily::matrix(double t) const {
  const double s = scale(t);
  switch (kind_) {
    case FamilyKind::ScalarDilation:
      return s * Eigen::MatrixXd::Identity(n_, n_);
    case FamilyKind::DiagonalEqualModulus: {
      Eigen::VectorXd d(n_);
      for (int j = 0; j < n_; ++j) d(j) = signs_[j] * s;
      return d.asDiagonal();
    }
    case FamilyKind::OrthogonalTimesScalar:
      return s * q_;
  }
  return {};
}

double frobenius_norm(const Eigen::MatrixXd& a) { return a.norm(); }

double frobenius_norm(const MatrixFamily& fam, double t) { return fam.matrix(t).norm(); }

InverseStats inverse_stats(const MatrixFamily& fam, double t) {
  const Eigen::MatrixXd a = fam.matrix(t);
  const double det = a.determinant();
  if (det == 0.0 || !std::isfinite(det)) throw SingularMatrixError(t);
  const Eigen::MatrixXd inv = a.inverse();
  const InverseStats st{inv.norm(), std::abs(inv.determinant())};
  const double n = fam.dim();
  const double lower = std::pow(a.norm(), -n);
  const double upper = std::pow(st.inv_norm, n);
  const double slack = 1e-12;
  if (st.det_inv_abs < lower * (1 - slack) || st.det_inv_abs > upper * (1 + slack))
    throw std::logic_error("determinant sandwich violated");
  return st;
}

namespace {

double conditioning(const MatrixFamily& fam, double t) {
  const double product = frobenius_norm(fam, t) * inverse_stats(fam, t).inv_norm;
  const double exact = fam.dim();
  if (std::abs(product - exact) > 1e-10 * exact)
    throw std::logic_error("family does not act as a dilation up to rotation");
  return exact;
}

}  // namespace

double rho_bound(const std::vector<MatrixFamily>& fams, const std::vector<double>& t_samples) {
  if (fams.empty() || t_samples.empty()) throw std::invalid_argument("rho_bound needs samples");
  double rho = 1.0;
  for (const auto& f : fams)
    for (double t : t_samples) rho = std::max(rho, conditioning(f, t));
  return rho;
}

int dyadic_exponent(double norm) {
  if (!(norm > 0.0) || !std::isfinite(norm))
    throw std::domain_error("dyadic exponent needs a positive finite norm");
  int e = 0;
  const double m = std::frexp(norm, &e);
  return m == 0.5 ? e - 1 : e;
}

int dyadic_exponent(const MatrixFamily& fam, double t) {
  return dyadic_exponent(frobenius_norm(fam, t));
}

int theta_star(double rho) {
  if (!(rho >= 1.0) || !std::isfinite(rho)) throw std::domain_error("theta_star needs rho >= 1");
  int e = 0;
  std::frexp(rho, &e);
  return -e;
}

int theta_star(const std::vector<MatrixFamily>& fams, double t) {
  return theta_star(rho_bound(fams, {t}));
}

double c_factor(const MatrixFamily& fam, const ExponentFunction& q, double gamma, double t) {
  const double norm = frobenius_norm(fam, t);
  const InverseStats st = inverse_stats(fam, t);
  const double weight = std::max(std::pow(norm, -gamma), std::pow(st.inv_norm, gamma));
  const double det = std::max(std::pow(st.det_inv_abs, 1.0 / q.plus()),
                              std::pow(st.det_inv_abs, 1.0 / q.minus()));
  return weight * det;
}

}  // namespace vexp

#include "onebit/bussgang.hpp"

#include <cmath>
#include <iostream>

#include "onebit/error.hpp"

namespace onebit {
namespace {

constexpr double kClampSlack = 1e-9;

double clamped_asin(double rho) {
  if (std::abs(rho) > 1.0) {
    if (std::abs(rho) - 1.0 > kClampSlack) {
      throw DomainError("error_covariance: normalized correlation " + std::to_string(rho) +
                        " outside [-1, 1]");
    }
    if (std::abs(rho) - 1.0 > 1e-12) {
      std::clog << "onebit: warning: clamping normalized correlation " << rho << " to [-1, 1]\n";
    }
    rho = rho > 0 ? 1.0 : -1.0;
  }
  return std::asin(rho);
}

RVector checked_diagonal(const CMatrix& C_x, const char* who) {
  if (C_x.rows() != C_x.cols() || C_x.rows() == 0) {
    throw DimensionError(std::string(who) + ": covariance must be square and nonempty");
  }
  RVector d = C_x.diagonal().real();
  for (Eigen::Index b = 0; b < d.size(); ++b) {
    if (!(d[b] > 0.0)) {
      throw DomainError(std::string(who) + ": diagonal entry " + std::to_string(b) +
                        " of C_x is not strictly positive");
    }
  }
  return d;
}

}  // namespace

void quantize_inplace(std::span<Complex> x) {
  const double a = std::sqrt(1.0 / (2.0 * static_cast<double>(x.size())));
  for (auto& v : x) {
    v = Complex(v.real() >= 0.0 ? a : -a, v.imag() >= 0.0 ? a : -a);
  }
}

CVector quantize(const CVector& x) {
  CVector out = x;
  quantize_inplace({out.data(), static_cast<std::size_t>(out.size())});
  return out;
}

RVector bussgang_gain(const CMatrix& C_x) {
  const RVector d = checked_diagonal(C_x, "bussgang_gain");
  const double B = static_cast<double>(d.size());
  return (std::sqrt(2.0 / (kPi * B)) * d.array().rsqrt()).matrix();
}

CMatrix error_covariance(const CMatrix& C_x) {
  const RVector d = checked_diagonal(C_x, "error_covariance");
  const Eigen::Index B = d.size();
  const RVector inv_sqrt = d.array().rsqrt();
  const RVector a = bussgang_gain(C_x);
  const double scale = 2.0 / (kPi * static_cast<double>(B));
  CMatrix C_e(B, B);
  for (Eigen::Index i = 0; i < B; ++i) {
    for (Eigen::Index j = 0; j < B; ++j) {
      if (i == j) {
        // asin is singular at 1; the diagonal is known in closed form.
        C_e(i, i) = Complex((1.0 - 2.0 / kPi) / static_cast<double>(B), 0.0);
        continue;
      }
      const double norm = inv_sqrt[i] * inv_sqrt[j];
      const double re = clamped_asin(C_x(i, j).real() * norm);
      const double im = clamped_asin(C_x(i, j).imag() * norm);
      C_e(i, j) = scale * Complex(re, im) - a[i] * C_x(i, j) * a[j];
    }
  }
  return C_e;
}

BussgangModel BussgangModel::one_bit(const CMatrix& C_x) {
  BussgangModel m;
  m.C_x = C_x;
  m.D_x = checked_diagonal(C_x, "BussgangModel");
  m.gain = bussgang_gain(C_x);
  m.C_e = error_covariance(C_x);
  return m;
}

BussgangModel BussgangModel::identity(const CMatrix& C_x) {
  BussgangModel m;
  m.C_x = C_x;
  m.D_x = C_x.diagonal().real();
  m.gain = RVector::Ones(C_x.rows());
  m.C_e = CMatrix::Zero(C_x.rows(), C_x.cols());
  return m;
}

}  // namespace onebit

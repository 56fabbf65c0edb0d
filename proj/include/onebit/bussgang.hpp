#pragma once

#include <span>

#include "onebit/numerics.hpp"

namespace onebit {

/// Joint 1-bit DAC map on B antennas:
///   Q(x) = sqrt(1/(2B)) (sign(Re x) + j sign(Im x)),  sign(0) := +1.
/// Output always has unit Euclidean norm.
CVector quantize(const CVector& x);
void quantize_inplace(std::span<Complex> x);

/// Bussgang gain A = sqrt(2/(pi B)) D_x^{-1/2}, returned as its diagonal.
/// Throws DomainError if a diagonal entry of C_x is not strictly positive.
RVector bussgang_gain(const CMatrix& C_x);

/// Distortion covariance from the arcsine law:
///   C_e = 2/(pi B) (asin(D^{-1/2} Re C_x D^{-1/2}) + j asin(D^{-1/2} Im C_x D^{-1/2})) - A C_x A
/// Normalized correlations within 1e-9 outside [-1, 1] are clamped; larger
/// excursions throw DomainError.
CMatrix error_covariance(const CMatrix& C_x);

/// Linearized 1-bit front end Q(x) = A x + e for x ~ CN(0, C_x).
struct BussgangModel {
  RVector gain;  // diagonal of A
  CMatrix C_x;
  RVector D_x;   // diagonal of C_x
  CMatrix C_e;

  int size() const { return static_cast<int>(gain.size()); }
  CMatrix gain_matrix() const { return gain.cast<Complex>().asDiagonal(); }

  static BussgangModel one_bit(const CMatrix& C_x);
  /// Quantization-free reference: A = I, C_e = 0.
  static BussgangModel identity(const CMatrix& C_x);
};

}  // namespace onebit

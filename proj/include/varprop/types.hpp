#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace varprop {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

constexpr Complex kImag{0.0, 1.0};

/// Unnormalized cardinal sine, sin(x)/x with sinc(0) = 1.
inline double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

/// Thrown when a numerical routine cannot produce a trustworthy result
/// (eigensolver failure, integrator step-size collapse, singular solve).
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown by the closed-form coefficient solution when the moment
/// denominator h1*h3 - h2^2 vanishes (e.g. H proportional to identity).
struct DegenerateMoments : NumericalError {
  explicit DegenerateMoments(const std::string& what) : NumericalError(what) {}
};

}  // namespace varprop

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace thinlayer {

/// One-dimensional coefficient: a constant, a polynomial in its argument, or
/// uniformly tabulated samples interpolated by a clamped cubic spline.
class Profile {
 public:
  enum class Kind { Constant, Polynomial, Table };

  static Profile constant(double value);
  /// Coefficients in ascending powers.
  static Profile polynomial(std::vector<double> coefficients);
  /// Samples at lo + i*(hi-lo)/(n-1); needs n >= 4.
  static Profile table(double lo, double hi, std::vector<double> samples);
  /// Parses "const 1", "poly 1 0 1", "table -1 1 v0 v1 ..." (commas allowed).
  static Profile parse(std::string_view text);

  double operator()(double t) const;
  Kind kind() const { return kind_; }
  const std::vector<double>& coefficients() const { return data_; }
  double table_lo() const { return lo_; }
  double table_hi() const { return hi_; }
  std::string describe() const;

 private:
  struct Spline;

  Kind kind_ = Kind::Constant;
  std::vector<double> data_{0.0};
  double lo_ = 0.0;
  double hi_ = 0.0;
  std::shared_ptr<const Spline> spline_;
};

enum class OuterBc { Dirichlet, Neumann, Robin };

const char* to_string(OuterBc bc);

/// Circular inclusion of radius r1 inside the disk of radius r2.
///
/// The layer normal points toward the center, so the inner disk is the "+"
/// side, the annulus is the "-" side and the signed distance to the curve is
/// r = r1 - |x|. The curvature of the curve is therefore +1/r1.
struct Geometry {
  double r1 = 1.0;
  double r2 = 2.0;
  OuterBc outer_bc = OuterBc::Dirichlet;
  /// Robin condition u' + sigma u = 0 at |x| = r2.
  double robin_sigma = 0.0;

  double curvature() const { return 1.0 / r1; }
  /// Stretched layer variable n = (r1 - x) / eps.
  double layer_coordinate(double x, double eps) const { return (r1 - x) / eps; }
  double radius_at(double n, double eps) const { return r1 - eps * n; }

  void validate() const;
};

struct CoefficientModel {
  Profile rho = Profile::constant(1.0);  // radial, on [0, r2]
  Profile a = Profile::constant(0.0);    // radial, on [0, r2]
  Profile q = Profile::constant(1.0);    // cross-section, on [-1, 1]

  /// Positivity of rho on [0, r2] and q on [-1, 1], checked on samples.
  void validate(const Geometry& geometry, int samples = 2001) const;
};

enum class Sector { Cos, Sin };

const char* to_string(Sector sector);

struct ModeIndex {
  int nu = 0;
  Sector sector = Sector::Cos;

  void validate() const;
  friend bool operator==(const ModeIndex&, const ModeIndex&) = default;
};

std::string to_string(const ModeIndex& mode);

/// Length of the angular harmonic on the curve: integral of cos^2 or sin^2
/// over the circle, times r1.
double angular_factor(const ModeIndex& mode, double r1);

/// Integral of q over [-1, 1].
double q_mass(const CoefficientModel& model);

}  // namespace thinlayer

// SPDX-License-Identifier: Apache-2.0
#include "thinlayer/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <boost/math/quadrature/gauss.hpp>

#include "thinlayer/errors.hpp"

namespace thinlayer {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidModel: return "invalid-model";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Resolution: return "resolution";
    case ErrorKind::Resonance: return "resonance";
    case ErrorKind::Degeneracy: return "degeneracy";
    case ErrorKind::InvalidCase: return "invalid-case";
    case ErrorKind::Config: return "config";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

struct Profile::Spline {
  boost::math::interpolators::cardinal_cubic_b_spline<double> s;
};

Profile Profile::constant(double value) {
  Profile p;
  p.kind_ = Kind::Constant;
  p.data_ = {value};
  return p;
}

Profile Profile::polynomial(std::vector<double> coefficients) {
  if (coefficients.empty()) fail(ErrorKind::InvalidModel, "polynomial profile needs at least one coefficient");
  Profile p;
  p.kind_ = Kind::Polynomial;
  p.data_ = std::move(coefficients);
  return p;
}

Profile Profile::table(double lo, double hi, std::vector<double> samples) {
  if (samples.size() < 4) fail(ErrorKind::InvalidModel, "table profile needs at least 4 samples");
  if (!(hi > lo)) fail(ErrorKind::InvalidModel, "table profile needs hi > lo");
  for (double v : samples)
    if (!std::isfinite(v)) fail(ErrorKind::InvalidModel, "table profile has a non-finite sample");
  Profile p;
  p.kind_ = Kind::Table;
  p.lo_ = lo;
  p.hi_ = hi;
  p.data_ = std::move(samples);
  const auto& f = p.data_;
  const std::size_t n = f.size();
  const double h = (hi - lo) / double(n - 1);
  // clamped ends from 4-point one-sided differences, exact on cubics
  const double d0 = (-11 * f[0] + 18 * f[1] - 9 * f[2] + 2 * f[3]) / (6 * h);
  const double d1 = (11 * f[n - 1] - 18 * f[n - 2] + 9 * f[n - 3] - 2 * f[n - 4]) / (6 * h);
  p.spline_ = std::make_shared<const Spline>(
      Spline{boost::math::interpolators::cardinal_cubic_b_spline<double>(f.begin(), f.end(), lo, h, d0, d1)});
  return p;
}

Profile Profile::parse(std::string_view text) {
  std::string buf(text);
  std::replace(buf.begin(), buf.end(), ',', ' ');
  std::istringstream in(buf);
  std::string head;
  in >> head;
  std::vector<double> nums;
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) fail(ErrorKind::Config, "not a number: '" + tok + "'");
    nums.push_back(v);
  }
  if (head == "const") {
    if (nums.size() != 1) fail(ErrorKind::Config, "const profile takes exactly one value");
    return constant(nums[0]);
  }
  if (head == "poly") {
    if (nums.empty()) fail(ErrorKind::Config, "poly profile needs coefficients");
    return polynomial(nums);
  }
  if (head == "table") {
    if (nums.size() < 6) fail(ErrorKind::Config, "table profile needs lo, hi and at least 4 samples");
    return table(nums[0], nums[1], std::vector<double>(nums.begin() + 2, nums.end()));
  }
  // a bare number is shorthand for a constant
  std::size_t used = 0;
  try {
    double v = std::stod(head, &used);
    if (used == head.size() && nums.empty()) return constant(v);
  } catch (const std::exception&) {
  }
  fail(ErrorKind::Config, "unknown profile '" + std::string(text) + "' (expected const, poly or table)");
}

double Profile::operator()(double t) const {
  switch (kind_) {
    case Kind::Constant: return data_[0];
    case Kind::Polynomial: {
      double acc = 0;
      for (auto it = data_.rbegin(); it != data_.rend(); ++it) acc = acc * t + *it;
      return acc;
    }
    case Kind::Table: return spline_->s(std::clamp(t, lo_, hi_));
  }
  return 0;
}

std::string Profile::describe() const {
  std::ostringstream out;
  out.precision(17);
  switch (kind_) {
    case Kind::Constant: out << "const " << data_[0]; break;
    case Kind::Polynomial:
      out << "poly";
      for (double c : data_) out << ' ' << c;
      break;
    case Kind::Table:
      out << "table " << lo_ << ' ' << hi_;
      for (double c : data_) out << ' ' << c;
      break;
  }
  return out.str();
}

const char* to_string(OuterBc bc) {
  switch (bc) {
    case OuterBc::Dirichlet: return "dirichlet";
    case OuterBc::Neumann: return "neumann";
    case OuterBc::Robin: return "robin";
  }
  return "?";
}

void Geometry::validate() const {
  if (!(r1 > 0) || !(r2 > r1) || !std::isfinite(r2))
    fail(ErrorKind::InvalidModel, "geometry needs 0 < r1 < r2");
  if (outer_bc == OuterBc::Robin && !(robin_sigma >= 0))
    fail(ErrorKind::InvalidModel, "robin sigma must be >= 0");
}

namespace {

void check_table_covers(const Profile& p, double lo, double hi, const char* name) {
  if (p.kind() != Profile::Kind::Table) return;
  const double slack = 1e-12 * std::max(1.0, hi - lo);
  if (p.table_lo() > lo + slack || p.table_hi() < hi - slack) {
    std::ostringstream msg;
    msg << name << " table covers [" << p.table_lo() << ", " << p.table_hi() << "] but must cover [" << lo
        << ", " << hi << "]";
    fail(ErrorKind::InvalidModel, msg.str());
  }
}

}  // namespace

void CoefficientModel::validate(const Geometry& geometry, int samples) const {
  check_table_covers(rho, 0.0, geometry.r2, "rho");
  check_table_covers(a, 0.0, geometry.r2, "a");
  check_table_covers(q, -1.0, 1.0, "q");
  for (int i = 0; i < samples; ++i) {
    const double s = double(i) / double(samples - 1);
    const double x = s * geometry.r2;
    const double n = -1.0 + 2.0 * s;
    const double r = rho(x), av = a(x), qv = q(n);
    if (!(r > 0) || !std::isfinite(r)) {
      std::ostringstream msg;
      msg << "rho must be positive on [0, r2]; rho(" << x << ") = " << r;
      fail(ErrorKind::InvalidModel, msg.str());
    }
    if (!std::isfinite(av)) fail(ErrorKind::InvalidModel, "a is not finite on [0, r2]");
    if (!(qv > 0) || !std::isfinite(qv)) {
      std::ostringstream msg;
      msg << "q must be positive on [-1, 1]; q(" << n << ") = " << qv;
      fail(ErrorKind::InvalidModel, msg.str());
    }
  }
}

const char* to_string(Sector sector) { return sector == Sector::Cos ? "cos" : "sin"; }

void ModeIndex::validate() const {
  if (nu < 0) fail(ErrorKind::InvalidModel, "mode index must be nonnegative");
  if (nu == 0 && sector == Sector::Sin) fail(ErrorKind::InvalidModel, "mode 0 has no sin sector");
}

std::string to_string(const ModeIndex& mode) {
  return std::to_string(mode.nu) + ":" + to_string(mode.sector);
}

double angular_factor(const ModeIndex& mode, double r1) {
  return (mode.nu == 0 ? 2.0 * M_PI : M_PI) * r1;
}

double q_mass(const CoefficientModel& model) {
  using boost::math::quadrature::gauss;
  const Profile& q = model.q;
  double total = 0;
  if (q.kind() == Profile::Kind::Table) {
    // integrate piece by piece so each cubic segment is exact
    const std::size_t n = q.coefficients().size();
    const double h = (q.table_hi() - q.table_lo()) / double(n - 1);
    std::vector<double> cuts{-1.0};
    for (std::size_t i = 0; i < n; ++i) {
      const double t = q.table_lo() + double(i) * h;
      if (t > -1.0 && t < 1.0) cuts.push_back(t);
    }
    cuts.push_back(1.0);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
      total += gauss<double, 5>::integrate([&](double t) { return q(t); }, cuts[i], cuts[i + 1]);
  } else {
    total = gauss<double, 30>::integrate([&](double t) { return q(t); }, -1.0, 1.0);
  }
  for (int i = 0; i <= 200; ++i) {
    const double v = q(-1.0 + 0.01 * i);
    if (!(v > 0)) fail(ErrorKind::InvalidModel, "q must be positive on [-1, 1]");
  }
  return total;
}

}  // namespace thinlayer

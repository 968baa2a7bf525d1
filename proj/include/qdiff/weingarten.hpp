#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "qdiff/field.hpp"
#include "qdiff/spline.hpp"

namespace qdiff::weingarten {

/// f, f' and f'' at a point.
struct FJet {
  double value = 0.0, d1 = 0.0, d2 = 0.0;
};

enum class Provenance { Constant, Liebmann, ShiftedSqrt, Expression, Fitted, Extended };

const char* provenance_name(Provenance p);

/// The relation H = f(x). Evaluable for x > lower_bound() (or everywhere when
/// the bound is -inf); below that jet() throws DomainError.
class WeingartenFunction {
 public:
  using Evaluator = std::function<FJet(double)>;

  WeingartenFunction() = default;
  WeingartenFunction(std::string name, Provenance provenance, Evaluator eval, double lower_bound,
                     double eps = 0.05);

  static WeingartenFunction constant(double c);
  /// f(x) = sqrt(K0 + x), K0 > 0.
  static WeingartenFunction liebmann(double K0);
  /// f(x) = sqrt(x) - 1 on x > 0. Not smooth at 0; see smooth_extension.
  static WeingartenFunction shifted_sqrt();
  /// Expression in the single variable x.
  static WeingartenFunction expression(const std::string& source);
  /// Parses "const:c", "liebmann:K0", "shifted-sqrt" or "expr:<expression in x>".
  static WeingartenFunction from_spec(const std::string& spec);

  FJet jet(double x) const;
  double operator()(double x) const { return jet(x).value; }
  double derivative(double x) const { return jet(x).d1; }

  const std::string& name() const { return name_; }
  Provenance provenance() const { return provenance_; }
  double lower_bound() const { return lower_; }
  double eps() const { return eps_; }
  void set_eps(double eps) { eps_ = eps; }
  /// True when f is defined (and smooth) on a neighbourhood of 0.
  bool smooth_through_zero() const { return lower_ < 0.0; }

  /// Points where f is less smooth than C^3 (extension joints, spline knots).
  /// phi integrates piecewise between them.
  const std::vector<double>& breakpoints() const { return breaks_; }
  void set_breakpoints(std::vector<double> xs);

 private:
  std::string name_;
  Provenance provenance_ = Provenance::Constant;
  Evaluator eval_;
  double lower_ = -std::numeric_limits<double>::infinity();
  double eps_ = 0.05;
  std::vector<double> breaks_;
};

/// Extends f from [x0, inf) to all of R: on [-eps/2, x0] a cubic matching f, f'
/// and f'' at x0 with zero slope at -eps/2, constant below. Identical to f on
/// [x0, inf). Throws InvalidRange for x0 <= 0 or eps <= 0.
WeingartenFunction smooth_extension(const WeingartenFunction& f, double x0, double eps);

/// phi(r) = int_0^r f'(s^2) ds, F(r^2) = cosh(phi(r)), G(r^2) = sinh(phi(r)) / r.
/// Below r = series_radius G and F use the expansion
///   phi(r) = a r + b r^3 + O(r^5),  a = f'(0), b = f''(0)/3,
///   G = a + (b + a^3/6) r^2 + O(r^4).
/// Evaluation is pure; there is no memo table.
class FGPair {
 public:
  struct Value {
    double F = 1.0, G = 0.0, phi = 0.0;
  };

  explicit FGPair(WeingartenFunction f, double quad_tol = 1e-12, double series_radius = 1e-3);

  double phi(double r) const;
  Value eval(double x) const;

  const WeingartenFunction& f() const { return f_; }
  double quad_tol() const { return tol_; }
  double series_radius() const { return rs_; }

 private:
  WeingartenFunction f_;
  double tol_, rs_;
};

/// Maximum deviations of F^2 - x G^2 = 1, 2F' = f'G and 2xG' = f'F - G on the
/// given x values. Derivatives are centered differences with step h(x)
/// (default 1e-4 max(1, x)); a forward three-point stencil is used when x < h.
struct IdentityCheck {
  double identity1 = 0.0, identity2 = 0.0, identity3 = 0.0;
};

IdentityCheck fg_identity_check(const FGPair& fg, const std::vector<double>& xs, double h = 0.0);

/// Which curvature combination f is applied to. zz equals H^2 - K in R^3 and
/// H^2 - K + R in S^3; Shifted uses H^2 - K in both.
enum class Argument { ZZ, Shifted };

double relation_argument(const geom::ShapeData& s, double R, Argument arg);

/// Per-node |H - f(x)|. Nodes with x < -eps/2 are flagged (NaN in the field,
/// excluded from the norms); x < -eps throws DomainError.
struct ResidualStats {
  FieldStats stats;
  std::vector<double> field;
  std::size_t flagged = 0;
};

ResidualStats weingarten_residual(const GeometryField& field, const WeingartenFunction& f,
                                  Argument arg = Argument::ZZ);

/// |u - f'(zz)(conj(z) v + z conj(u))| per node from the derivative
/// coefficients; vanishes in the continuum limit when H = f(zz).
ResidualStats crucial_relation_defect(const GeometryField& field, const DerivativeField& coeffs,
                                      const WeingartenFunction& f);

/// A = 4 x f'(x)^2 and its class within a band of `tol` around 1.
enum class EllipticClass { Elliptic, Parabolic, Hyperbolic };

const char* class_name(EllipticClass c);

struct Ellipticity {
  double A = 0.0;
  EllipticClass cls = EllipticClass::Elliptic;
};

Ellipticity ellipticity(const WeingartenFunction& f, double x, double tol = 1e-6);

struct EllipticityReport {
  std::vector<double> A;
  double elliptic = 0.0, parabolic = 0.0, hyperbolic = 0.0;
  std::size_t count = 0;
};

/// Fractions are over interior nodes.
EllipticityReport ellipticity_field(const GeometryField& field, const WeingartenFunction& f,
                                    double tol = 1e-6, Argument arg = Argument::ZZ);

/// Sample of the relation: x = H^2 - K, H.
struct RelationSample {
  double x = 0.0, H = 0.0;
};

std::vector<RelationSample> relation_samples(const GeometryField& field);

struct FitOptions {
  int bins = 64;
  /// Single-valuedness tolerance relative to max |H|.
  double relative_tol = 1e-6;
};

/// H as a function of x recovered from surface samples.
struct FittedRelation {
  MonotoneCubic spline;
  double x_lo = 0.0, x_hi = 0.0;
  /// Worst per-bin non-monotone variation of H (zero when H is a monotone function of x).
  double score = 0.0;
  double tolerance = 0.0;
  /// Largest |f'| at knots in the two lowest bins over the median |f'| of all knots.
  double slope_blowup = 0.0;
  int bins_used = 0;

  /// The spline as a WeingartenFunction, smoothly extended below x_lo when x_lo > 0
  /// and linearly extrapolated above x_hi.
  WeingartenFunction to_function(double eps = 0.05) const;
};

/// Throws NotAFunction when the score exceeds the tolerance.
FittedRelation fit_weingarten(const std::vector<RelationSample>& samples, const FitOptions& opt = {});

}  // namespace qdiff::weingarten

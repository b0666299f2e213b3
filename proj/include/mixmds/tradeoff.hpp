#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mixmds/rational.hpp"
#include "mixmds/report.hpp"

namespace mixmds {

/// Tolerance for comparisons that involve square roots.
inline constexpr double kRootTolerance = 1e-12;

/// 1 + (R - 1) / (p(alpha - 1) + r). Throws DegenerateDenominator when the
/// denominator is not positive.
Rational rate_bound_eq5(const Rational& R, const Rational& r, const Rational& p, const Rational& alpha);

struct DistanceBound {
  double value;
  /// value <= 0: the bound says nothing. Never clamped.
  bool vacuous;
};

/// (delta - gamma sqrt(delta / theta)) / (1 - gamma). Throws BadParameters
/// unless theta > 0 and 0 <= gamma < 1.
DistanceBound dist_bound_eq6(double delta, double theta, double gamma);

/// gamma of a Ramanujan graph at the threshold: 2 sqrt(Delta - 1) / Delta.
double ramanujan_gamma(std::uint64_t delta);

/// Smallest prime power q2 > threshold whose exponent makes q2^alpha an
/// integer prime power.
std::uint64_t smallest_admissible_q2(const Rational& threshold, const Rational& alpha);

/// Linear-time decodable design point: theta = eps, Delta = ceil(4/eps^3),
/// q2 > c_q * Delta, p*Delta at the floor of the eps/(1-alpha) cap.
struct DesignPoint2 {
  Rational eps, R, alpha, c_q;
  std::uint64_t Delta = 0;
  std::uint64_t q2 = 0;
  std::uint64_t q1 = 0;
  // Constituent parameters as realised by MDS codes of length Delta.
  Rational theta;      // ceil(eps*Delta)/Delta
  Rational r;          // 1 - theta + 1/Delta
  Rational delta_rel;  // 1 - floor(R*Delta)/Delta + 1/Delta
  Rational p;          // floor(eps*Delta/(1-alpha))/Delta, capped by r and R
  // Rate chain.
  Rational rate_bound;          // rate bound at the realised r
  Rational rate_bound_nominal;  // rate bound at r = 1 - eps
  Rational rate_chain;          // (R - 2eps)/(1 - 2eps)
  Rational rate_target;         // R - eps
  // Distance.
  double gamma = 0;
  double dist_bound = 0;
  bool dist_vacuous = false;
  Rational dist_target;  // 1 - R - eps
  // Alphabet exponents (log_phi |Phi_u|).
  Rational phi_exp;         // 1 - p(1-alpha)/r
  Rational phi_exp_cap;     // 1 - eps/r, the p(1-alpha) = eps case
  Rational phi_exp_chain;   // 1 - eps/(1 + eps^3/4 - eps)
  Rational phi_exp_target;  // 1 - eps
  // Flags.
  bool rate_margin_ok = false;  // R > eps + 1/2
  bool p_cap_ok = false;        // p <= eps/(1-alpha)
  bool rate_chain_ok = false;
  bool dist_ok = false;
  bool phi_ok = false;
  std::vector<std::string> violations;
};

/// Evaluates everything and records failed conditions in `violations`.
DesignPoint2 evaluate_sec2(const Rational& eps, const Rational& R, const Rational& alpha, const Rational& c_q);
/// Same, but throws ConditionViolated naming the failing condition.
DesignPoint2 design_point_sec2(const Rational& eps, const Rational& R, const Rational& alpha, const Rational& c_q);

struct Comparison2 {
  bool rate_margin_ok = false;   // R > eps + 1/2
  Rational original_rate_bound;  // (R - eps)/(1 - eps)
  Rational original_floor;       // R - eps/2
  Rational modified_floor;       // R - eps
  Rational rate_loss;            // ((R - eps/2) - (R - eps)) / (R - eps/2)
  Rational rate_loss_closed;     // eps/(2R - eps)
  Rational loss_cap;             // eps/(1 + eps)
  bool original_exceeds_floor = false;
  bool loss_below_cap = false;
  bool cap_below_eps = false;
  long double alphabet_ratio = 0;  // 1 - q2^(-Delta eps)
  double log10_complement = 0;     // log10(q2^(-Delta eps))
};

/// Never throws; rate_margin_ok records whether R > eps + 1/2 holds.
Comparison2 compare_sec2e(const Rational& eps, const Rational& R, std::uint64_t Delta, std::uint64_t q2);

/// Linear-time encodable construction with R = R1 = R2.
struct DesignPoint3 {
  Rational eps, R, r0, r_m, kappa, Delta1, p, alpha;
  Rational s;       // p(1 - alpha)
  Rational Delta2;  // (1 - r0) Delta1 / (r_m R)
  bool delta2_integral = false;
  Rational excess;           // (1 - r0)/(r_m R)
  Rational Gamma_exp;        // 1 - s + excess, in units of Delta1 log q2
  Rational gamma_exp;        // 1 + excess
  Rational exp_ratio;        // Gamma_exp / gamma_exp
  Rational exp_ratio_bound;  // 1 - R/(R + eps) s
  Rational exp_range_low;    // 1 - eps^2/((R + eps)(1 + eps - R))
  Rational exp_range_high;   // 1 - 4 R eps^2/((R + eps)(1 + eps)^2)
  Rational rate;             // (R - s)Delta1 / ((1 - s)Delta1 + Delta2)
  Rational rate_bound_enc;   // (R - s)/(1 - s + eps/R)
  Rational quad_residual;    // s R^2 - s(1 + eps) R + eps^2
  Rational s_cap;            // eps^2/(R(1 + eps - R))
  Rational discriminant;     // s^2 (1 + eps)^2 - 4 s eps^2
  Rational s_floor;          // 4 eps^2/(1 + eps)^2
  std::optional<double> R_upper;
  std::optional<double> R_lower;
  Rational gap;           // R/(1 + eps/R) - (R - s)/(1 - s + eps/R)
  Rational gap_closed;    // (s(1 - R) + s eps/R)/((1 + eps/R)(1 - s + eps/R))
  Rational rel_loss;      // gap / (R/(1 + eps/R))
  Rational rel_loss_cap;  // s/R
  bool rm_ge_kappa = false;
  bool r0_ok = false;           // 1 - r0 < kappa eps
  bool p_ok = false;            // 0 <= p <= R
  bool s_in_interval = false;   // s_floor <= s <= s_cap
  bool R_threshold_ok = false;  // R outside the open root interval, at kRootTolerance
  bool residual_ok = false;     // quad_residual >= 0
  bool rate_ok = false;         // rate_bound_enc >= R - eps and rate > R - eps
  bool exp_ok = false;          // Gamma_exp < gamma_exp (s > 0)
  bool gap_ok = false;          // gap > 0 and gap == gap_closed
  bool rel_loss_ok = false;     // rel_loss < s/R
  std::vector<std::string> violations;
};

DesignPoint3 evaluate_sec3(const Rational& eps, const Rational& R, const Rational& r0, const Rational& r_m,
                           const Rational& kappa, const Rational& Delta1, const Rational& p, const Rational& alpha);
/// Throws ConstraintViolated naming the failing constraint.
DesignPoint3 sec3_tradeoff(const Rational& eps, const Rational& R, const Rational& r0, const Rational& r_m,
                           const Rational& kappa, const Rational& Delta1, const Rational& p, const Rational& alpha);

struct Grid2 {
  std::vector<Rational> eps;
  std::vector<Rational> R;
  std::vector<Rational> alpha;
  Rational c_q{1};
};

struct Grid3 {
  std::vector<Rational> eps;
  std::vector<Rational> R;
  std::vector<Rational> p;
  std::vector<Rational> alpha;
  std::vector<Rational> r0;
  std::vector<Rational> r_m;
  Rational kappa{1, 4};
  Rational Delta1{1000};
};

std::vector<DesignPoint2> sweep(const Grid2& grid);
std::vector<DesignPoint3> sweep(const Grid3& grid);

Table table_sec2(const std::vector<DesignPoint2>& points);
Table table_sec3(const std::vector<DesignPoint3>& points);

}  // namespace mixmds

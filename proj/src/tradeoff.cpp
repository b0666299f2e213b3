#include "mixmds/tradeoff.hpp"

#include <algorithm>
#include <cmath>

#include "mixmds/error.hpp"
#include "mixmds/galois.hpp"

namespace mixmds {
namespace {

const Rational kZero{0};
const Rational kOne{1};

bool is_prime(std::uint64_t x) {
  if (x < 2) return false;
  for (std::uint64_t d = 2; d * d <= x; ++d) {
    if (x % d == 0) return false;
  }
  return true;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += ';';
    out += s;
  }
  return out;
}

Cell num(const Rational& x) { return x.to_double(); }
Cell num(std::uint64_t x) { return static_cast<std::int64_t>(x); }
Cell opt(const std::optional<double>& x) { return x ? Cell{*x} : Cell{std::string()}; }

}  // namespace

Rational rate_bound_eq5(const Rational& R, const Rational& r, const Rational& p, const Rational& alpha) {
  Rational denom = p * (alpha - kOne) + r;
  if (denom <= kZero) throw Error(Errc::DegenerateDenominator, "p(alpha - 1) + r must be positive");
  return kOne + (R - kOne) / denom;
}

DistanceBound dist_bound_eq6(double delta, double theta, double gamma) {
  if (!(theta > 0) || !(gamma >= 0) || !(gamma < 1)) {
    throw Error(Errc::BadParameters, "distance bound requires theta > 0 and 0 <= gamma < 1");
  }
  double value = (delta - gamma * std::sqrt(delta / theta)) / (1 - gamma);
  return {value, value <= 0};
}

double ramanujan_gamma(std::uint64_t delta) {
  return 2.0 * std::sqrt(static_cast<double>(delta) - 1.0) / static_cast<double>(delta);
}

std::uint64_t smallest_admissible_q2(const Rational& threshold, const Rational& alpha) {
  if (alpha <= kZero || alpha >= kOne) throw Error(Errc::BadParameters, "alpha must lie in (0, 1)");
  const auto step = static_cast<unsigned>(alpha.den());  // q2 = P^(step*j)
  const auto lower = static_cast<unsigned __int128>(std::max<Rational::int_type>(threshold.floor(), 0)) + 1;
  constexpr unsigned __int128 kCap = static_cast<unsigned __int128>(1) << 62;
  unsigned __int128 best = 0;
  for (std::uint64_t prime = 2;; ++prime) {
    if (!is_prime(prime)) continue;
    unsigned __int128 base = 1;
    for (unsigned i = 0; i < step && base <= kCap; ++i) base *= prime;
    if (base > kCap) break;
    if (best != 0 && base >= best) break;
    unsigned __int128 q = base;
    while (q < lower && q <= kCap) q *= base;
    if (q <= kCap && (best == 0 || q < best)) best = q;
    if (base >= lower) break;
  }
  if (best == 0) throw Error(Errc::Overflow, "no admissible field size below 2^62");
  return static_cast<std::uint64_t>(best);
}

DesignPoint2 evaluate_sec2(const Rational& eps, const Rational& R, const Rational& alpha, const Rational& c_q) {
  if (eps <= kZero || eps > kOne) throw Error(Errc::BadParameters, "eps must lie in (0, 1]");
  if (R <= kZero || R > kOne) throw Error(Errc::BadParameters, "R must lie in (0, 1]");
  if (c_q < kOne) throw Error(Errc::BadParameters, "c_q must be at least 1 so that q2 > Delta");

  DesignPoint2 d;
  d.eps = eps;
  d.R = R;
  d.alpha = alpha;
  d.c_q = c_q;
  d.Delta = static_cast<std::uint64_t>((Rational(4) / (eps * eps * eps)).ceil());
  const Rational Delta(static_cast<Rational::int_type>(d.Delta));
  d.q2 = smallest_admissible_q2(c_q * Delta, alpha);
  {
    auto pp = prime_power_decompose(d.q2);
    std::uint64_t q1 = 1;
    const auto e1 = static_cast<unsigned>((Rational(pp->second) * alpha).num());
    for (unsigned i = 0; i < e1; ++i) q1 *= pp->first;
    d.q1 = q1;
  }

  const Rational theta_syms((eps * Delta).ceil());
  d.theta = theta_syms / Delta;
  d.r = (Delta - theta_syms + kOne) / Delta;
  const Rational R_syms((R * Delta).floor());
  d.delta_rel = (Delta - R_syms + kOne) / Delta;
  Rational p_syms((eps * Delta / (kOne - alpha)).floor());
  p_syms = std::min({p_syms, d.r * Delta, R_syms});
  d.p = p_syms / Delta;

  d.rate_margin_ok = R > eps + Rational(1, 2);
  d.p_cap_ok = d.p <= eps / (kOne - alpha);
  if (!d.rate_margin_ok) d.violations.emplace_back("R > eps + 1/2");
  if (!d.p_cap_ok) d.violations.emplace_back("p <= eps/(1 - alpha)");

  d.rate_bound = rate_bound_eq5(R, d.r, d.p, alpha);
  d.rate_target = R - eps;
  if (kOne - Rational(2) * eps > kZero) {
    d.rate_bound_nominal = rate_bound_eq5(R, kOne - eps, d.p, alpha);
    d.rate_chain = (R - Rational(2) * eps) / (kOne - Rational(2) * eps);
    d.rate_chain_ok = d.rate_bound >= d.rate_bound_nominal && d.rate_bound_nominal >= d.rate_chain &&
                      d.rate_chain > d.rate_target;
  } else {
    d.violations.emplace_back("eps < 1/2");
  }
  if (!d.rate_chain_ok) d.violations.emplace_back("rate chain");

  d.gamma = ramanujan_gamma(d.Delta);
  auto db = dist_bound_eq6(d.delta_rel.to_double(), d.theta.to_double(), d.gamma);
  d.dist_bound = db.value;
  d.dist_vacuous = db.vacuous;
  d.dist_target = kOne - R - eps;
  d.dist_ok = d.dist_bound - d.dist_target.to_double() > kRootTolerance;
  if (!d.dist_ok) d.violations.emplace_back("distance > 1 - R - eps");

  d.phi_exp = kOne - d.p * (kOne - alpha) / d.r;
  d.phi_exp_cap = kOne - eps / d.r;
  d.phi_exp_chain = kOne - eps / (kOne + eps * eps * eps / Rational(4) - eps);
  d.phi_exp_target = kOne - eps;
  d.phi_ok = d.phi_exp_cap <= d.phi_exp_chain && d.phi_exp_chain <= d.phi_exp_target && d.phi_exp <= kOne &&
             d.phi_exp >= d.phi_exp_cap;
  if (!d.phi_ok) d.violations.emplace_back("alphabet exponent chain");
  return d;
}

DesignPoint2 design_point_sec2(const Rational& eps, const Rational& R, const Rational& alpha, const Rational& c_q) {
  auto d = evaluate_sec2(eps, R, alpha, c_q);
  if (!d.rate_margin_ok) throw Error(Errc::ConditionViolated, "condition R > eps + 1/2 fails");
  if (!d.p_cap_ok) throw Error(Errc::ConditionViolated, "condition p <= eps/(1 - alpha) fails");
  return d;
}

Comparison2 compare_sec2e(const Rational& eps, const Rational& R, std::uint64_t Delta, std::uint64_t q2) {
  Comparison2 c;
  c.rate_margin_ok = R > eps + Rational(1, 2);
  const Rational half_eps = eps / Rational(2);
  c.original_rate_bound = (R - eps) / (kOne - eps);
  c.original_floor = R - half_eps;
  c.modified_floor = R - eps;
  c.rate_loss = (c.original_floor - c.modified_floor) / c.original_floor;
  c.rate_loss_closed = eps / (Rational(2) * R - eps);
  c.loss_cap = eps / (kOne + eps);
  c.original_exceeds_floor = c.original_rate_bound > c.original_floor;
  c.loss_below_cap = c.rate_loss_closed < c.loss_cap;
  c.cap_below_eps = c.loss_cap < eps;
  const long double exponent = static_cast<long double>(Delta) * eps.to_long_double();
  const long double ln_q2 = std::log(static_cast<long double>(q2));
  c.alphabet_ratio = -std::expm1(-exponent * ln_q2);
  c.log10_complement = static_cast<double>(-exponent * std::log10(static_cast<long double>(q2)));
  return c;
}

DesignPoint3 evaluate_sec3(const Rational& eps, const Rational& R, const Rational& r0, const Rational& r_m,
                           const Rational& kappa, const Rational& Delta1, const Rational& p, const Rational& alpha) {
  if (eps <= kZero) throw Error(Errc::BadParameters, "eps must be positive");
  if (R <= kZero || R > kOne) throw Error(Errc::BadParameters, "R must lie in (0, 1]");
  if (r_m <= kZero || Delta1 <= kZero) throw Error(Errc::BadParameters, "r_m and Delta1 must be positive");
  if (alpha <= kZero || alpha >= kOne) throw Error(Errc::BadParameters, "alpha must lie in (0, 1)");

  DesignPoint3 d;
  d.eps = eps;
  d.R = R;
  d.r0 = r0;
  d.r_m = r_m;
  d.kappa = kappa;
  d.Delta1 = Delta1;
  d.p = p;
  d.alpha = alpha;

  d.rm_ge_kappa = r_m >= kappa;
  d.r0_ok = kOne - r0 < kappa * eps;
  d.p_ok = p >= kZero && p <= R;
  if (!d.rm_ge_kappa) d.violations.emplace_back("r_m >= kappa");
  if (!d.r0_ok) d.violations.emplace_back("1 - r0 < kappa*eps");
  if (!d.p_ok) d.violations.emplace_back("0 <= p <= R");

  const Rational eps_over_R = eps / R;
  d.s = p * (kOne - alpha);
  d.excess = (kOne - r0) / (r_m * R);
  d.Delta2 = d.excess * Delta1;
  d.delta2_integral = d.Delta2.is_integer();

  d.Gamma_exp = kOne - d.s + d.excess;
  d.gamma_exp = kOne + d.excess;
  d.exp_ratio = d.Gamma_exp / d.gamma_exp;
  d.exp_ratio_bound = kOne - R / (R + eps) * d.s;
  d.exp_range_low = kOne - eps * eps / ((R + eps) * (kOne + eps - R));
  d.exp_range_high = kOne - Rational(4) * R * eps * eps / ((R + eps) * (kOne + eps) * (kOne + eps));

  d.rate = (R - d.s) * Delta1 / ((kOne - d.s) * Delta1 + d.Delta2);
  d.rate_bound_enc = (R - d.s) / (kOne - d.s + eps_over_R);
  d.quad_residual = d.s * R * R - d.s * (kOne + eps) * R + eps * eps;
  d.s_cap = eps * eps / (R * (kOne + eps - R));
  d.discriminant = d.s * d.s * (kOne + eps) * (kOne + eps) - Rational(4) * d.s * eps * eps;
  d.s_floor = Rational(4) * eps * eps / ((kOne + eps) * (kOne + eps));
  d.s_in_interval = d.s_floor <= d.s && d.s <= d.s_cap;

  if (d.s > kZero && d.discriminant >= kZero) {
    const double one_eps = (kOne + eps).to_double();
    const double radicand = one_eps * one_eps - 4.0 * (eps * eps / d.s).to_double();
    const double root = std::sqrt(std::max(radicand, 0.0));
    d.R_upper = (one_eps + root) / 2.0;
    d.R_lower = (one_eps - root) / 2.0;
    const double Rd = R.to_double();
    d.R_threshold_ok = Rd >= *d.R_upper - kRootTolerance || Rd <= *d.R_lower + kRootTolerance;
  } else {
    // No real roots (or s = 0): the rate-margin quadratic is positive for every R.
    d.R_threshold_ok = true;
  }
  d.residual_ok = d.quad_residual >= kZero;
  d.rate_ok = d.rate_bound_enc >= R - eps && d.rate > R - eps;

  d.gap = R / (kOne + eps_over_R) - (R - d.s) / (kOne - d.s + eps_over_R);
  d.gap_closed = (d.s * (kOne - R) + d.s * eps_over_R) / ((kOne + eps_over_R) * (kOne - d.s + eps_over_R));
  d.rel_loss = d.gap / (R / (kOne + eps_over_R));
  d.rel_loss_cap = d.s / R;

  const bool positive_s = d.s > kZero;
  d.exp_ok = positive_s ? d.Gamma_exp < d.gamma_exp : d.Gamma_exp == d.gamma_exp;
  d.gap_ok = d.gap == d.gap_closed && (positive_s ? d.gap > kZero : d.gap == kZero);
  d.rel_loss_ok = positive_s ? d.rel_loss < d.rel_loss_cap : d.rel_loss == kZero;
  return d;
}

DesignPoint3 sec3_tradeoff(const Rational& eps, const Rational& R, const Rational& r0, const Rational& r_m,
                           const Rational& kappa, const Rational& Delta1, const Rational& p, const Rational& alpha) {
  auto d = evaluate_sec3(eps, R, r0, r_m, kappa, Delta1, p, alpha);
  if (!d.rm_ge_kappa) throw Error(Errc::ConstraintViolated, "constraint r_m >= kappa fails");
  if (!d.r0_ok) throw Error(Errc::ConstraintViolated, "constraint 1 - r0 < kappa*eps fails");
  if (!d.p_ok) throw Error(Errc::ConstraintViolated, "constraint 0 <= p <= R fails");
  return d;
}

std::vector<DesignPoint2> sweep(const Grid2& grid) {
  std::vector<DesignPoint2> out;
  for (const auto& eps : grid.eps) {
    for (const auto& R : grid.R) {
      for (const auto& alpha : grid.alpha) out.push_back(evaluate_sec2(eps, R, alpha, grid.c_q));
    }
  }
  return out;
}

std::vector<DesignPoint3> sweep(const Grid3& grid) {
  std::vector<DesignPoint3> out;
  for (const auto& eps : grid.eps) {
    for (const auto& R : grid.R) {
      for (const auto& p : grid.p) {
        for (const auto& alpha : grid.alpha) {
          for (const auto& r0 : grid.r0) {
            for (const auto& r_m : grid.r_m) {
              out.push_back(evaluate_sec3(eps, R, r0, r_m, grid.kappa, grid.Delta1, p, alpha));
            }
          }
        }
      }
    }
  }
  return out;
}

Table table_sec2(const std::vector<DesignPoint2>& points) {
  Table t;
  t.columns = {"eps",        "R",           "r",          "p",           "alpha",         "Delta",
               "q2",         "rate_bound",  "dist_bound", "phi_exp",     "q1",            "theta",
               "delta",      "rate_chain",  "rate_target", "gamma",      "dist_target",   "dist_vacuous",
               "phi_exp_cap", "rate_margin_ok",      "p_cap_ok",      "rate_chain_ok", "dist_ok",     "phi_ok",
               "violations", "rate_bound_exact", "phi_exp_exact"};
  for (const auto& d : points) {
    t.add_row({num(d.eps), num(d.R), num(d.r), num(d.p), num(d.alpha), num(d.Delta), num(d.q2), num(d.rate_bound),
               d.dist_bound, num(d.phi_exp), num(d.q1), num(d.theta), num(d.delta_rel), num(d.rate_chain),
               num(d.rate_target), d.gamma, num(d.dist_target), d.dist_vacuous, num(d.phi_exp_cap), d.rate_margin_ok, d.p_cap_ok,
               d.rate_chain_ok, d.dist_ok, d.phi_ok, join(d.violations), d.rate_bound.str(), d.phi_exp.str()});
  }
  return t;
}

Table table_sec3(const std::vector<DesignPoint3>& points) {
  Table t;
  t.columns = {"eps",         "R",          "p",          "alpha",        "s",          "r0",
               "r_m",         "kappa",      "Delta1",     "Delta2",       "Gamma_exp",  "gamma_exp",
               "exp_ratio",   "exp_ratio_bound", "rate",  "rate_bound_enc",  "quad_residual", "s_cap",
               "s_floor",   "R_upper",  "R_lower",  "gap",          "rel_loss",   "rel_loss_cap",
               "s_in_interval", "R_threshold_ok", "residual_ok", "rate_ok",  "exp_ok",     "gap_ok",
               "rel_loss_ok", "violations"};
  for (const auto& d : points) {
    t.add_row({num(d.eps), num(d.R), num(d.p), num(d.alpha), num(d.s), num(d.r0), num(d.r_m), num(d.kappa),
               num(d.Delta1), num(d.Delta2), num(d.Gamma_exp), num(d.gamma_exp), num(d.exp_ratio),
               num(d.exp_ratio_bound), num(d.rate), num(d.rate_bound_enc), num(d.quad_residual), num(d.s_cap),
               num(d.s_floor), opt(d.R_upper), opt(d.R_lower), num(d.gap), num(d.rel_loss), num(d.rel_loss_cap),
               d.s_in_interval, d.R_threshold_ok, d.residual_ok, d.rate_ok, d.exp_ok, d.gap_ok, d.rel_loss_ok,
               join(d.violations)});
  }
  return t;
}

}  // namespace mixmds

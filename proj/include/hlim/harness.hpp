#pragma once

#include <string>
#include <vector>

#include "hlim/diagnostics.hpp"
#include "hlim/state.hpp"
#include "hlim/stepper.hpp"

namespace hlim {

/// Difference norms of V = v_eps - v and W = w_eps - w at one output time.
struct DiffSample {
  double t = 0.0;
  double v_l2 = 0.0;          // ||V||_2
  double eps_w_l2 = 0.0;      // eps ||W||_2
  double grad_v = 0.0;        // ||grad V||_2
  double eps_grad_w = 0.0;    // eps ||grad W||_2
  double lap_v = 0.0;         // ||Delta V||_2
  double eps_lap_w = 0.0;     // eps ||Delta W||_2
  double w_l2 = 0.0;          // ||W||_2
  double v_h1 = 0.0;          // ||V||_{H1}
};

DiffSample difference_sample(double t, const HVector& v_eps, const SpectralField& w_eps, const HVector& v,
                             const SpectralField& w, double eps);

struct DiffReport {
  double eps = 1.0;
  std::vector<DiffSample> samples;
  bool failed = false;
  double last_valid_time = 0.0;
  std::string failure;
  // Per-output energy samples of both runs, the worst step defects (before
  // re-projection) and the worst invariants of the output states.
  std::vector<EnergySample> pe_energy, sns_energy;
  StepDefects pe_defects, sns_defects;
  InvariantReport pe_invariants, sns_invariants;
};

struct PairConfig {
  Grid grid = Grid::cube(32);
  InitialDataRecipe recipe;
  double t_final = 1.0;
  double dt = 5e-4;
  std::size_t output_every = 1;
  double cfl_safety = 0.5;
};

/// PE and SNS advanced in lockstep from the same v0 at identical dt, with
/// W = w_eps - diagnostic_w(v).  A blow-up of either run returns a partial
/// report flagged failed.
DiffReport run_pair(const PairConfig& cfg, double eps);

enum class NormLevel { l2, h1 };

struct DiffSummary {
  double sup = 0.0;       // sup_t ||(V, eps W)||, L2 or H1 by level
  double integral = 0.0;  // int ||grad (V, eps W)||^2 dt, L2 resp. H1
  double w_sup = 0.0;     // sup_t ||W||_2 (H1 level)
  double total() const { return sup * sup + integral; }
};

DiffSummary difference_summary(const DiffReport& report, NormLevel which);

/// Norm ids used in rates.csv, in row order.
const std::vector<std::string>& norm_ids();
/// The error reported for a norm id: a sup norm, or the square root of a
/// sup-plus-integral total so that every id scales like eps.
double norm_error(const DiffReport& report, const std::string& norm_id);

struct RateFit {
  std::string norm_id;
  std::vector<double> eps, error;
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // rms of the log-space residuals
};

/// Least squares of log(error) against log(eps).  Needs at least three
/// strictly decreasing eps values; a zero error throws DegenerateFitError.
RateFit fit_rate(const std::string& norm_id, std::vector<double> eps, std::vector<double> error);
RateFit fit_rate(const std::vector<DiffReport>& reports, const std::string& norm_id);

struct Exclusion {
  std::string norm_id;
  double eps = 0.0;
  double error = 0.0;
  double floor = 0.0;
};

struct SweepResult {
  std::vector<DiffReport> reports;  // in the order of the eps list
  std::vector<std::pair<std::string, double>> floor;  // per norm id
  std::vector<RateFit> fits;                           // per norm id; slope NaN if unavailable
  std::vector<Exclusion> exclusions;
};

/// Pair runs over the eps list (concurrently), the discretisation floor from
/// PE at dt against PE at dt/2, exclusion of points within 10x of the floor,
/// and the fits.  Results do not depend on scheduling.
SweepResult run_sweep(const PairConfig& cfg, const std::vector<double>& eps_list, bool parallel = true);

inline constexpr double kFloorFactor = 10.0;

}  // namespace hlim

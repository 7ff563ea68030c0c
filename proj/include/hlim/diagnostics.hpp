#pragma once

#include <span>
#include <string>
#include <vector>

#include "hlim/state.hpp"

namespace hlim {

enum class Unit { norm, energy, rate };
const char* to_string(Unit u) noexcept;

struct NamedValue {
  std::string name;
  double value = 0.0;
  Unit unit = Unit::norm;
};

/// Diagnostics of one snapshot.  Column order is fixed by the producer.
struct BudgetRecord {
  double t = 0.0;
  std::vector<NamedValue> values;
  std::vector<NamedValue> residuals;

  /// Value or residual by name; throws InputError if absent.
  double get(const std::string& name) const;
  bool has(const std::string& name) const noexcept;
};

/// ||v||_2, ||v||_4, ||d_z v||_2, ||grad v||_2, ||Delta v||_2, ||grad Delta v||_2,
/// ||grad d_z v||_2, || |v| |grad v| ||_2, ||d_t v||_2 and ||grad d_t v||_2 (d_t v is
/// the full discrete tendency).
BudgetRecord norm_suite(const PeState& state);

/// The PE set for v plus ||w||_2 and the eps-weighted w norms (L2, grad, Delta,
/// grad Delta, d_t).  Residuals: the divergence and the relative odd part of p.
BudgetRecord norm_suite(const SnsState& state);

/// One point of an energy budget: E(t) and the dissipation rate D(t) with
/// dE/dt = -2 D for exact solutions.
struct EnergySample {
  double t = 0.0;
  double energy = 0.0;
  double dissipation = 0.0;
};

EnergySample pe_energy_sample(const BudgetRecord& r);
EnergySample sns_energy_sample(const BudgetRecord& r, double eps);

struct PeEnergyAudit {
  std::vector<double> t;
  std::vector<double> identity_residual;  // E(t) + 2 int_0^t D - E(0)
  std::vector<double> relative_residual;  // identity_residual / E(0)
  std::vector<double> decay_slack;        // exp(-2 lambda1 t) E(0) - E(t)
  std::vector<double> decay_ratio;        // E(t) / (exp(-2 lambda1 t) E(0))
  double max_relative_residual = 0.0;
  double max_decay_ratio = 0.0;
};

/// Trapezoidal time integration over the samples.  Throws InputError for
/// fewer than two samples or non-increasing times.
PeEnergyAudit energy_audit_pe(std::span<const EnergySample> samples, double lambda1);

struct SnsEnergyAudit {
  std::vector<double> t;
  std::vector<double> slack;           // E(0) - E(t) - 2 int_0^t D
  std::vector<double> relative_slack;  // slack / E(0)
  double min_relative_slack = 0.0;
};

SnsEnergyAudit energy_audit_sns(std::span<const EnergySample> samples);

/// Running a-priori budgets (sup over time plus trapezoidal time integrals).
class BudgetMonitor {
 public:
  explicit BudgetMonitor(bool sns = false) : sns_(sns) {}

  /// Appends the budget columns to `record` and returns it.
  BudgetRecord add(BudgetRecord record);

  const std::vector<BudgetRecord>& records() const noexcept { return records_; }
  /// Largest ratio of any budget or monitored norm to its value at t = 0.
  double max_growth() const noexcept { return max_growth_; }
  static const std::vector<std::string>& budget_names();

 private:
  bool sns_;
  std::vector<BudgetRecord> records_;
  std::vector<double> sup_, integral_, last_integrand_, initial_;
  double last_t_ = 0.0;
  double max_growth_ = 0.0;
};

}  // namespace hlim

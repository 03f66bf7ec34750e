#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qphase/state_families.hpp"

namespace qphase {

/// One swept parameter: inclusive [start, stop] walked in steps of
/// `step` (values are start + i*step, no accumulation drift).
struct SweepAxis {
  std::string name;
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;
};

/// A sweep: base family parameters, one or two axes, the truncation
/// budget, and which higher antibunching orders to tabulate.
struct SweepConfig {
  FamilyParams base = BinomialParams{0.5, 1};
  std::vector<SweepAxis> axes;
  double epsilon = kDefaultEpsilon;
  long nmax_cap = kDefaultNmaxCap;
  std::vector<int> hoa_orders{2, 3};
  std::string output_path;
};

enum class RowStatus { Ok, PhaseUndefined, DomainError };

std::string_view row_status_name(RowStatus s);

/// One grid point.  Metric fields are meaningful only when status == Ok.
struct SweepRow {
  std::vector<double> params;  // all family params, CSV column order
  RowStatus status = RowStatus::Ok;
  double n_bar = 0.0;
  double var_n = 0.0;
  double mean_a = 0.0;
  double total_phase_noise = 0.0;
  double u_value = 0.0;
  double d_u = 0.0;
  double antibunch = 0.0;
  std::vector<double> hoa;  // aligned with SweepConfig::hoa_orders
};

struct SweepTable {
  std::string family;
  std::vector<std::string> header;  // full CSV header cells
  std::vector<SweepRow> rows;
};

/// Evaluate every grid point in lexicographic axis order.  Per-point
/// failures become status rows; the sweep itself never aborts.
SweepTable run_sweep(const SweepConfig& config);

/// Fixed-schema CSV: family,<params...>,n_bar,var_n,mean_a,T,U,d_u,
/// antibunch,hoa2,hoa3,status with floats at 12 significant digits.
/// Byte-deterministic for identical config and build.
std::string to_csv(const SweepTable& table);

void write_csv(const SweepTable& table, const std::string& path);

/// Preset sweeps 1..5 covering the five families (binomial over (p,M),
/// generalized binomial over (alpha,beta), photon-added over (alpha,m),
/// negative binomial over (p,M), hypergeometric over p).  Axis ranges
/// are documented choices, not reconstructions.
SweepConfig figure_preset(int id);

/// Parse a JSON sweep configuration (see README for the schema).
SweepConfig load_sweep_config(std::istream& in);
SweepConfig load_sweep_config_file(const std::string& path);

/// Placeholder parameter record for a family named on the command line
/// or in a config file; accepts the short aliases gbs/nbs/hs/pacs.
FamilyParams default_family_params(std::string_view family);

/// The axis values start + i*step for i = 0..floor((stop-start)/step).
std::vector<double> axis_values(const SweepAxis& axis);

}  // namespace qphase

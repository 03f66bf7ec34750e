// Command-line front end: single-state reports, parameter sweeps, preset
// figure data sets, and closed-form verification.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qphase/closed_forms.hpp"
#include "qphase/errors.hpp"
#include "qphase/phase_metrics.hpp"
#include "qphase/sweep.hpp"

namespace {

using namespace qphase;

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

struct ParamFlags {
  std::optional<double> p, alpha, beta, L;
  std::optional<int> M, N, m;
};

void add_param_flags(CLI::App* cmd, ParamFlags& f) {
  cmd->add_option("--p", f.p, "success probability p");
  cmd->add_option("--alpha", f.alpha, "alpha parameter");
  cmd->add_option("--beta", f.beta, "beta parameter");
  cmd->add_option("--L", f.L, "hypergeometric L parameter");
  cmd->add_option("--M", f.M, "M parameter");
  cmd->add_option("--N", f.N, "N parameter");
  cmd->add_option("--m", f.m, "number of added photons");
}

template <class T>
T require(const std::optional<T>& v, const char* flag) {
  if (!v) throw ParamError(std::string("missing required flag --") + flag);
  return *v;
}

FamilyParams params_from_flags(const std::string& family,
                               const ParamFlags& f) {
  FamilyParams base = default_family_params(family);
  return std::visit(
      [&](const auto& tag) -> FamilyParams {
        using T = std::decay_t<decltype(tag)>;
        if constexpr (std::is_same_v<T, BinomialParams>) {
          return BinomialParams{require(f.p, "p"), require(f.M, "M")};
        } else if constexpr (std::is_same_v<T, GeneralizedBinomialParams>) {
          return GeneralizedBinomialParams{require(f.alpha, "alpha"),
                                           require(f.beta, "beta"),
                                           require(f.N, "N")};
        } else if constexpr (std::is_same_v<T, NegativeBinomialParams>) {
          return NegativeBinomialParams{require(f.p, "p"), require(f.M, "M")};
        } else if constexpr (std::is_same_v<T, HypergeometricParams>) {
          return HypergeometricParams{require(f.L, "L"), require(f.M, "M"),
                                      require(f.p, "p")};
        } else if constexpr (std::is_same_v<T, PhotonAddedCoherentParams>) {
          return PhotonAddedCoherentParams{require(f.alpha, "alpha"),
                                           require(f.m, "m")};
        } else {
          return CoherentParams{require(f.alpha, "alpha")};
        }
      },
      base);
}

SweepAxis parse_axis(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) {
    throw ConfigError("axis must look like name=start:stop:step");
  }
  SweepAxis axis;
  axis.name = text.substr(0, eq);
  const std::string range = text.substr(eq + 1);
  if (std::sscanf(range.c_str(), "%lf:%lf:%lf", &axis.start, &axis.stop,
                  &axis.step) != 3) {
    throw ConfigError("axis must look like name=start:stop:step");
  }
  return axis;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw IoError("cannot open output file: " + out_path);
  out << text;
  if (!out) throw IoError("write failed: " + out_path);
}

// ---- report ---------------------------------------------------------

std::string render_report_human(const StateSpec& spec, const FockState& state,
                                const TruncationReport& trunc,
                                const PhaseReport& r, const WitnessSet& w) {
  std::ostringstream out;
  out << "family            " << family_name(spec.params) << '\n';
  const auto names = family_param_names(spec.params);
  const auto values = family_param_values(spec.params);
  for (std::size_t i = 0; i < names.size(); ++i) {
    out << "param " << names[i] << "           "
        << std::string(names[i].size() < 6 ? 6 - names[i].size() : 0, ' ')
        << fmt12(values[i]) << '\n';
  }
  out << "n_max             " << state.n_max() << '\n'
      << "residual_mass     " << fmt12(state.residual_mass()) << '\n'
      << "n_bar             " << fmt12(r.n_bar) << '\n'
      << "mean_a            " << fmt12(amplitude_moment(state, 1)) << '\n'
      << "cos_mean          " << fmt12(r.cos_mean) << '\n'
      << "sin_mean          " << fmt12(r.sin_mean) << '\n'
      << "var_c             " << fmt12(r.var_c) << '\n'
      << "var_s             " << fmt12(r.var_s) << '\n'
      << "T                 " << fmt12(r.total_phase_noise) << '\n'
      << "b                 " << fmt12(r.b_factor) << '\n'
      << "U                 " << fmt12(r.u_value) << '\n'
      << "d_u               " << fmt12(r.d_u) << '\n'
      << "amplitude_noise   " << fmt12(r.amplitude_noise) << '\n'
      << "var_n             " << fmt12(photon_variance(state)) << '\n'
      << "antibunch         " << fmt12(w.antibunch) << '\n';
  for (const auto& [l, value] : w.hoa) {
    out << "hoa" << l << "              " << fmt12(value) << '\n';
  }
  return out.str();
}

nlohmann::json report_json(const StateSpec& spec, const FockState& state,
                           const TruncationReport& trunc, const PhaseReport& r,
                           const WitnessSet& w) {
  nlohmann::json j;
  j["family"] = family_name(spec.params);
  const auto names = family_param_names(spec.params);
  const auto values = family_param_values(spec.params);
  for (std::size_t i = 0; i < names.size(); ++i) j["params"][names[i]] = values[i];
  j["truncation"] = {{"n_max", state.n_max()},
                     {"residual_mass", state.residual_mass()},
                     {"tail_bound", trunc.tail_bound_used}};
  j["phase"] = {{"n_bar", r.n_bar},
                {"cos_mean", r.cos_mean},
                {"sin_mean", r.sin_mean},
                {"var_c", r.var_c},
                {"var_s", r.var_s},
                {"T", r.total_phase_noise},
                {"b", r.b_factor},
                {"U", r.u_value},
                {"d_u", r.d_u},
                {"amplitude_noise", r.amplitude_noise}};
  j["witnesses"]["antibunch"] = w.antibunch;
  for (const auto& [l, value] : w.hoa) {
    j["witnesses"]["hoa"][std::to_string(l)] = value;
  }
  return j;
}

std::string render_report_csv(const StateSpec& spec, const FockState& state,
                              const PhaseReport& r, const WitnessSet& w,
                              const std::vector<int>& orders) {
  SweepTable table;
  table.family = std::string(family_name(spec.params));
  table.header = {"family"};
  for (auto& n : family_param_names(spec.params)) table.header.push_back(n);
  for (const char* metric :
       {"n_bar", "var_n", "mean_a", "T", "U", "d_u", "antibunch"}) {
    table.header.emplace_back(metric);
  }
  for (int l : orders) table.header.push_back("hoa" + std::to_string(l));
  table.header.emplace_back("status");
  SweepRow row;
  row.params = family_param_values(spec.params);
  row.status = RowStatus::Ok;
  row.n_bar = r.n_bar;
  row.var_n = photon_variance(state);
  row.mean_a = amplitude_moment(state, 1);
  row.total_phase_noise = r.total_phase_noise;
  row.u_value = r.u_value;
  row.d_u = r.d_u;
  row.antibunch = w.antibunch;
  for (int l : orders) row.hoa.push_back(w.hoa.at(l));
  table.rows.push_back(std::move(row));
  return to_csv(table);
}

int run_report(const StateSpec& spec, const std::vector<int>& orders,
               const std::string& format, const std::string& out_path) {
  const auto [state, trunc] = build_state(spec);
  const PhaseReport report = bp_phase_report(state);
  const WitnessSet witnesses = witness_set(state, orders);
  std::string text;
  if (format == "human") {
    text = render_report_human(spec, state, trunc, report, witnesses);
  } else if (format == "csv") {
    text = render_report_csv(spec, state, report, witnesses, orders);
  } else {
    text = report_json(spec, state, trunc, report, witnesses).dump(2) + "\n";
  }
  emit(text, out_path);
  return 0;
}

// ---- verify ---------------------------------------------------------

int run_verify(const StateSpec& spec, double tol, const std::string& format,
               const std::string& out_path) {
  const auto reports = cross_check_all(spec, tol);
  std::ostringstream out;
  if (format == "structured") {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : reports) {
      j.push_back({{"family", r.family},
                   {"params", r.params},
                   {"quantity", r.quantity},
                   {"closed_value", r.closed_value},
                   {"oracle_value", r.oracle_value},
                   {"abs_diff", r.abs_diff},
                   {"tolerance", r.tolerance},
                   {"verdict", verdict_name(r.verdict)}});
    }
    out << j.dump(2) << '\n';
  } else {
    for (const auto& r : reports) {
      out << r.family << ' ' << r.params << "  " << r.quantity
          << "  closed=" << fmt12(r.closed_value)
          << "  oracle=" << fmt12(r.oracle_value)
          << "  abs_diff=" << fmt12(r.abs_diff) << "  "
          << verdict_name(r.verdict) << '\n';
    }
  }
  emit(out.str(), out_path);
  int exit_code = 0;
  for (const auto& r : reports) {
    if (r.verdict == Verdict::Mismatch) exit_code = std::max(exit_code, 3);
    if (r.verdict == Verdict::ClosedFormUndefined) exit_code = 4;
  }
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fock-space phase-fluctuation metrics for intermediate states"};
  app.require_subcommand(1);

  std::string family, format = "human", out_path, config_path;
  double epsilon = kDefaultEpsilon;
  long nmax_cap = kDefaultNmaxCap;
  double tol = 1e-8;
  int figure_id = 0;
  std::vector<int> hoa_orders{2, 3};
  std::vector<std::string> axis_specs;
  ParamFlags flags;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--epsilon", epsilon, "truncation tolerance");
    cmd->add_option("--nmax-cap", nmax_cap, "basis size hard cap");
    cmd->add_option("--out", out_path, "output file (default stdout)");
    cmd->add_option("--format", format, "human, csv, or structured")
        ->check(CLI::IsMember({"human", "csv", "structured"}));
  };

  CLI::App* report = app.add_subcommand("report", "metrics of a single state");
  report->add_option("--family", family, "state family")->required();
  add_param_flags(report, flags);
  report->add_option("--hoa", hoa_orders, "higher antibunching orders")
      ->delimiter(',');
  add_common(report);

  CLI::App* sweep = app.add_subcommand("sweep", "grid sweep to CSV");
  sweep->add_option("--config", config_path, "JSON sweep configuration");
  sweep->add_option("--family", family, "state family");
  add_param_flags(sweep, flags);
  sweep->add_option("--axis", axis_specs, "swept axis name=start:stop:step")
      ->expected(-1);
  sweep->add_option("--hoa", hoa_orders, "higher antibunching orders")
      ->delimiter(',');
  add_common(sweep);

  CLI::App* figure = app.add_subcommand("figure", "preset sweep data sets");
  figure->add_option("id", figure_id, "preset id 1..5")->required();
  add_common(figure);

  CLI::App* verify = app.add_subcommand("verify", "closed form vs oracle");
  verify->add_option("--family", family, "state family")->required();
  add_param_flags(verify, flags);
  verify->add_option("--tol", tol, "match tolerance");
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (report->parsed()) {
      StateSpec spec{params_from_flags(family, flags), epsilon, nmax_cap};
      return run_report(spec, hoa_orders, format, out_path);
    }
    if (verify->parsed()) {
      StateSpec spec{params_from_flags(family, flags), epsilon, nmax_cap};
      return run_verify(spec, tol, format, out_path);
    }
    if (figure->parsed()) {
      SweepConfig cfg = figure_preset(figure_id);
      if (!figure->get_option("--epsilon")->empty()) cfg.epsilon = epsilon;
      if (!figure->get_option("--nmax-cap")->empty()) cfg.nmax_cap = nmax_cap;
      if (!out_path.empty()) cfg.output_path = out_path;
      const SweepTable table = run_sweep(cfg);
      write_csv(table, cfg.output_path);
      std::cout << "wrote " << cfg.output_path << " (" << table.rows.size()
                << " rows)\n";
      return 0;
    }
    if (sweep->parsed()) {
      SweepConfig cfg;
      if (!config_path.empty()) {
        cfg = load_sweep_config_file(config_path);
        if (!family.empty() &&
            family_name(default_family_params(family)) !=
                family_name(cfg.base)) {
          throw ConfigError("--family conflicts with the config file");
        }
      } else {
        if (family.empty()) {
          throw ConfigError("sweep needs --config or --family");
        }
        cfg.base = default_family_params(family);
      }
      // flag overrides on top of the file values
      auto apply_if = [&](const std::optional<double>& v, const char* name) {
        if (v) cfg.base = with_param(cfg.base, name, *v);
      };
      apply_if(flags.p, "p");
      apply_if(flags.alpha, "alpha");
      apply_if(flags.beta, "beta");
      apply_if(flags.L, "L");
      if (flags.M) cfg.base = with_param(cfg.base, "M", *flags.M);
      if (flags.N) cfg.base = with_param(cfg.base, "N", *flags.N);
      if (flags.m) cfg.base = with_param(cfg.base, "m", *flags.m);
      if (!axis_specs.empty()) {
        cfg.axes.clear();
        for (const auto& text : axis_specs) cfg.axes.push_back(parse_axis(text));
      }
      if (!sweep->get_option("--epsilon")->empty()) cfg.epsilon = epsilon;
      if (!sweep->get_option("--nmax-cap")->empty()) cfg.nmax_cap = nmax_cap;
      if (!sweep->get_option("--hoa")->empty()) cfg.hoa_orders = hoa_orders;
      if (!out_path.empty()) cfg.output_path = out_path;
      const SweepTable table = run_sweep(cfg);
      if (cfg.output_path.empty()) {
        std::cout << to_csv(table);
      } else {
        write_csv(table, cfg.output_path);
        std::cout << "wrote " << cfg.output_path << " (" << table.rows.size()
                  << " rows)\n";
      }
      return 0;
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 5;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

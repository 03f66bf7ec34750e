#include "qphase/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qphase/errors.hpp"
#include "qphase/moments.hpp"
#include "qphase/phase_metrics.hpp"

namespace qphase {

namespace {

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void validate_axis(const SweepAxis& axis) {
  if (!(axis.step > 0.0)) throw ConfigError("axis step must be positive");
  if (!(axis.start < axis.stop)) {
    throw ConfigError("axis start must be below stop");
  }
  if (axis.name.empty()) throw ConfigError("axis needs a parameter name");
}

}  // namespace

std::string_view row_status_name(RowStatus s) {
  switch (s) {
    case RowStatus::Ok: return "ok";
    case RowStatus::PhaseUndefined: return "phase_undefined";
    default: return "domain_error";
  }
}

std::vector<double> axis_values(const SweepAxis& axis) {
  validate_axis(axis);
  const auto count =
      static_cast<long>(std::floor((axis.stop - axis.start) / axis.step +
                                   1e-9)) +
      1;
  std::vector<double> values;
  values.reserve(count);
  for (long i = 0; i < count; ++i) values.push_back(axis.start + i * axis.step);
  return values;
}

SweepTable run_sweep(const SweepConfig& config) {
  if (config.axes.empty() || config.axes.size() > 2) {
    throw ConfigError("a sweep takes one or two axes");
  }
  for (int l : config.hoa_orders) {
    if (l < 2) throw ConfigError("hoa orders must be >= 2");
  }
  // surface bad axis names before evaluating anything
  for (const auto& axis : config.axes) {
    validate_axis(axis);
    (void)with_param(config.base, axis.name, axis.start);
  }

  SweepTable table;
  table.family = std::string(family_name(config.base));
  table.header.emplace_back("family");
  for (auto& name : family_param_names(config.base)) table.header.push_back(name);
  for (const char* metric :
       {"n_bar", "var_n", "mean_a", "T", "U", "d_u", "antibunch"}) {
    table.header.emplace_back(metric);
  }
  for (int l : config.hoa_orders) table.header.push_back("hoa" + std::to_string(l));
  table.header.emplace_back("status");

  const auto outer = axis_values(config.axes[0]);
  const std::vector<double> inner =
      config.axes.size() == 2 ? axis_values(config.axes[1])
                              : std::vector<double>{0.0};

  for (double a : outer) {
    for (double b : inner) {
      SweepRow row;
      row.hoa.assign(config.hoa_orders.size(), 0.0);
      try {
        FamilyParams point = with_param(config.base, config.axes[0].name, a);
        if (config.axes.size() == 2) {
          point = with_param(point, config.axes[1].name, b);
        }
        row.params = family_param_values(point);
        StateSpec spec{point, config.epsilon, config.nmax_cap};
        const auto [state, trunc] = build_state(spec);
        const PhaseReport report = bp_phase_report(state);
        row.n_bar = report.n_bar;
        row.var_n = photon_variance(state);
        row.mean_a = amplitude_moment(state, 1);
        row.total_phase_noise = report.total_phase_noise;
        row.u_value = report.u_value;
        row.d_u = report.d_u;
        row.antibunch = antibunching_witness(state);
        for (std::size_t i = 0; i < config.hoa_orders.size(); ++i) {
          row.hoa[i] = hoa_witness(state, config.hoa_orders[i]);
        }
        row.status = RowStatus::Ok;
      } catch (const PhaseUndefined&) {
        row.status = RowStatus::PhaseUndefined;
      } catch (const ConfigError&) {
        throw;  // malformed sweep, not a per-point failure
      } catch (const Error&) {
        row.status = RowStatus::DomainError;
      }
      if (row.params.empty()) {
        // parameter substitution itself failed; report the attempted values
        row.params = family_param_values(config.base);
      }
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

std::string to_csv(const SweepTable& table) {
  std::ostringstream out;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out << ',';
    out << table.header[i];
  }
  out << '\n';
  const std::size_t metric_cells = table.header.size() - 2 -
                                   (table.rows.empty()
                                        ? 0
                                        : table.rows.front().params.size());
  for (const auto& row : table.rows) {
    out << table.family;
    for (double p : row.params) out << ',' << fmt12(p);
    if (row.status == RowStatus::Ok) {
      out << ',' << fmt12(row.n_bar) << ',' << fmt12(row.var_n) << ','
          << fmt12(row.mean_a) << ',' << fmt12(row.total_phase_noise) << ','
          << fmt12(row.u_value) << ',' << fmt12(row.d_u) << ','
          << fmt12(row.antibunch);
      for (double h : row.hoa) out << ',' << fmt12(h);
    } else {
      for (std::size_t i = 0; i < metric_cells; ++i) out << ',';
    }
    out << ',' << row_status_name(row.status) << '\n';
  }
  return out.str();
}

void write_csv(const SweepTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output file: " + path);
  out << to_csv(table);
  if (!out) throw IoError("write failed: " + path);
}

SweepConfig figure_preset(int id) {
  SweepConfig cfg;
  switch (id) {
    case 1:  // binomial d_u over (M, p)
      cfg.base = BinomialParams{0.5, 2};
      cfg.axes = {{"M", 2.0, 20.0, 2.0}, {"p", 0.02, 0.98, 0.02}};
      break;
    case 2:  // generalized binomial d_u over (alpha, beta) at N = 10
      cfg.base = GeneralizedBinomialParams{0.0, 0.0, 10};
      cfg.axes = {{"alpha", 0.0, 10.0, 0.5}, {"beta", 0.0, 10.0, 0.5}};
      break;
    case 3:  // photon-added coherent d_u over (m, alpha)
      cfg.base = PhotonAddedCoherentParams{1.0, 0};
      cfg.axes = {{"m", 0.0, 3.0, 1.0}, {"alpha", 0.1, 2.0, 0.05}};
      break;
    case 4:  // negative binomial d_u over (M, p)
      cfg.base = NegativeBinomialParams{0.5, 0};
      cfg.axes = {{"M", 0.0, 5.0, 1.0}, {"p", 0.2, 0.9, 0.02}};
      break;
    case 5:  // hypergeometric d_u over p at L = 50, M = 5
      cfg.base = HypergeometricParams{50.0, 5, 0.5};
      cfg.axes = {{"p", 0.1, 0.9, 0.02}};
      break;
    default:
      throw UnknownFigure("figure id must be 1..5, got " + std::to_string(id));
  }
  cfg.output_path = "figure" + std::to_string(id) + ".csv";
  return cfg;
}

FamilyParams default_family_params(std::string_view family) {
  if (family == "binomial" || family == "bs") return BinomialParams{0.5, 2};
  if (family == "generalized_binomial" || family == "generalized-binomial" ||
      family == "gbs") {
    return GeneralizedBinomialParams{1.0, 1.0, 5};
  }
  if (family == "negative_binomial" || family == "negative-binomial" ||
      family == "nbs") {
    return NegativeBinomialParams{0.5, 1};
  }
  if (family == "hypergeometric" || family == "hs") {
    return HypergeometricParams{20.0, 5, 0.5};
  }
  if (family == "photon_added_coherent" || family == "photon-added-coherent" ||
      family == "pacs") {
    return PhotonAddedCoherentParams{1.0, 0};
  }
  if (family == "coherent") return CoherentParams{1.0};
  throw ConfigError("unknown state family: " + std::string(family));
}

SweepConfig load_sweep_config(std::istream& in) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config parse failure: ") + e.what());
  }
  try {
    if (!j.contains("family")) throw ConfigError("config needs a family");
    SweepConfig cfg;
    cfg.base = default_family_params(j.at("family").get<std::string>());
    std::vector<std::string> assigned;
    if (j.contains("params")) {
      for (auto& [key, value] : j.at("params").items()) {
        cfg.base = with_param(cfg.base, key, value.get<double>());
        assigned.push_back(key);
      }
    }
    if (!j.contains("axes") || !j.at("axes").is_array() ||
        j.at("axes").empty()) {
      throw ConfigError("config needs a non-empty axes array");
    }
    for (const auto& axis : j.at("axes")) {
      cfg.axes.push_back(SweepAxis{axis.at("name").get<std::string>(),
                                   axis.at("start").get<double>(),
                                   axis.at("stop").get<double>(),
                                   axis.at("step").get<double>()});
      assigned.push_back(cfg.axes.back().name);
    }
    for (const auto& name : family_param_names(cfg.base)) {
      if (std::find(assigned.begin(), assigned.end(), name) ==
          assigned.end()) {
        throw ConfigError("parameter '" + name +
                          "' has neither a fixed value nor an axis");
      }
    }
    cfg.epsilon = j.value("epsilon", kDefaultEpsilon);
    cfg.nmax_cap = j.value("nmax_cap", kDefaultNmaxCap);
    if (j.contains("hoa_orders")) {
      cfg.hoa_orders = j.at("hoa_orders").get<std::vector<int>>();
    }
    cfg.output_path = j.value("out", std::string{});
    return cfg;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
}

SweepConfig load_sweep_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  return load_sweep_config(in);
}

}  // namespace qphase

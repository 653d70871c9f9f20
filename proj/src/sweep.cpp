#include "udwqfim/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

namespace udwqfim {

namespace {

const std::set<std::string> kAxisNames = {"T", "omega", "delta0", "t",
                                          "s", "kappa", "mu", "tau"};
const std::set<std::string> kModelParams = {"T", "omega", "delta0"};
const std::set<std::string> kChannelParams = {"tau", "mu", "s", "v", "t",
                                              "kappa", "p0", "px", "py", "pz"};

const std::vector<std::string> kKnownOutputs = {
    "var_T_sim", "var_D_sim", "var_w_sim", "var_T_ind", "var_D_ind",
    "var_w_ind", "gamma",     "fisher",    "trace_residual",
    "min_eigenvalue", "commutator_norm"};

double parse_double(const std::string& key, const std::string& text) {
  try {
    size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("value of '" + key + "' is not a number: '" + text + "'");
  }
}

int parse_int(const std::string& key, const std::string& text) {
  try {
    size_t pos = 0;
    const int v = std::stoi(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("value of '" + key + "' is not an integer: '" + text + "'");
  }
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

}  // namespace

ChannelKind channel_kind_from_name(const std::string& name) {
  if (name == "none") return ChannelKind::None;
  if (name == "dephasing") return ChannelKind::Dephasing;
  if (name == "ad") return ChannelKind::AD;
  if (name == "pf") return ChannelKind::PF;
  if (name == "pd") return ChannelKind::PD;
  if (name == "correlated_pauli") return ChannelKind::CorrelatedPauli;
  throw ConfigError("unknown channel kind '" + name + "'");
}

std::string channel_kind_name(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::None: return "none";
    case ChannelKind::Dephasing: return "dephasing";
    case ChannelKind::AD: return "ad";
    case ChannelKind::PF: return "pf";
    case ChannelKind::PD: return "pd";
    case ChannelKind::CorrelatedPauli: return "correlated_pauli";
  }
  return "?";
}

double SweepAxis::value(int i) const {
  if (count == 1) return start;
  return start + (stop - start) * static_cast<double>(i) / (count - 1);
}

std::map<std::string, std::string> parse_kv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto be = line.find_first_not_of(" \t\r");
    if (be == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) +
                        " is not 'key = value': '" + line + "'");
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      const auto e = s.find_last_not_of(" \t\r");
      return s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("config line " + std::to_string(lineno) + " has an empty key");
    }
    kv[key] = value;
  }
  return kv;
}

SweepConfig SweepConfig::from_kv(const std::map<std::string, std::string>& kv) {
  SweepConfig cfg;
  std::set<std::string> consumed;
  auto get = [&](const std::string& key) -> const std::string* {
    auto it = kv.find(key);
    if (it == kv.end()) return nullptr;
    consumed.insert(key);
    return &it->second;
  };

  for (const char* slot : {"x", "y"}) {
    const std::string base = std::string("grid.") + slot + ".";
    const std::string* name = get(base + "name");
    const std::string* start = get(base + "start");
    const std::string* stop = get(base + "stop");
    const std::string* count = get(base + "count");
    if (!name && !start && !stop && !count) continue;
    if (!name || !start || !stop || !count) {
      throw ConfigError("grid." + std::string(slot) +
                        " needs all of name/start/stop/count");
    }
    SweepAxis axis;
    axis.name = *name;
    if (!kAxisNames.count(axis.name)) {
      throw ConfigError("unknown sweep axis '" + axis.name + "'");
    }
    axis.start = parse_double(base + "start", *start);
    axis.stop = parse_double(base + "stop", *stop);
    axis.count = parse_int(base + "count", *count);
    if (axis.count < 2) throw ConfigError("axis '" + axis.name + "' needs count >= 2");
    cfg.axes.push_back(axis);
  }
  if (cfg.axes.empty()) throw ConfigError("no sweep axis configured (grid.x.*)");
  if (cfg.axes.size() == 2 && cfg.axes[0].name == cfg.axes[1].name) {
    throw ConfigError("the two sweep axes must differ");
  }

  for (const std::string& p : kModelParams) {
    if (const std::string* v = get("fixed." + p)) {
      cfg.fixed[p] = parse_double("fixed." + p, *v);
    }
  }

  cfg.channel = ChannelKind::None;
  if (const std::string* v = get("channel.kind")) cfg.channel = channel_kind_from_name(*v);
  for (const std::string& p : kChannelParams) {
    if (const std::string* v = get("channel." + p)) {
      cfg.channel_params[p] = parse_double("channel." + p, *v);
    }
  }

  if (const std::string* v = get("estimate")) {
    for (const std::string& name : split_list(*v)) {
      cfg.estimate.push_back(axis_from_name(name));
    }
  } else {
    cfg.estimate = {Axis::T, Axis::Delta0};
  }
  if (cfg.estimate.empty()) throw ConfigError("estimate must name at least one axis");
  for (size_t i = 0; i < cfg.estimate.size(); ++i) {
    for (size_t j = i + 1; j < cfg.estimate.size(); ++j) {
      if (cfg.estimate[i] == cfg.estimate[j]) {
        throw ConfigError("estimate lists an axis twice");
      }
    }
  }

  if (const std::string* v = get("outputs")) {
    cfg.outputs = split_list(*v);
  }
  if (cfg.outputs.empty() || (cfg.outputs.size() == 1 && cfg.outputs[0] == "default")) {
    cfg.outputs.clear();
    for (Axis a : cfg.estimate) cfg.outputs.push_back("var_" + axis_short_name(a) + "_sim");
    for (Axis a : cfg.estimate) cfg.outputs.push_back("var_" + axis_short_name(a) + "_ind");
    cfg.outputs.push_back("gamma");
  }
  for (const std::string& o : cfg.outputs) {
    if (std::find(kKnownOutputs.begin(), kKnownOutputs.end(), o) == kKnownOutputs.end()) {
      throw ConfigError("unknown output column '" + o + "'");
    }
    if (o.rfind("var_", 0) == 0) {
      const std::string a = o.substr(4, o.find('_', 4) - 4);
      bool estimated = false;
      for (Axis ax : cfg.estimate) estimated = estimated || axis_short_name(ax) == a;
      if (!estimated) {
        throw ConfigError("output '" + o + "' refers to an axis not in estimate");
      }
    }
  }

  if (const std::string* v = get("format")) {
    if (*v != "csv" && *v != "json") throw ConfigError("format must be csv or json");
    cfg.format = *v;
  }
  if (const std::string* v = get("workers")) {
    cfg.workers = parse_int("workers", *v);
    if (cfg.workers < 1) throw ConfigError("workers must be >= 1");
  }

  for (const auto& [key, value] : kv) {
    if (!consumed.count(key)) throw ConfigError("unknown config key '" + key + "'");
  }

  // Sweep axes must not collide with fixed values, and the model
  // parameters must all be determined.
  for (const SweepAxis& axis : cfg.axes) {
    if (cfg.fixed.count(axis.name)) {
      throw ConfigError("axis '" + axis.name + "' is also fixed");
    }
    if (cfg.channel_params.count(axis.name)) {
      throw ConfigError("axis '" + axis.name + "' is also a fixed channel parameter");
    }
  }
  for (const std::string& p : kModelParams) {
    bool swept = false;
    for (const SweepAxis& axis : cfg.axes) swept = swept || axis.name == p;
    if (!swept && !cfg.fixed.count(p)) {
      throw ConfigError("model parameter '" + p + "' is neither swept nor fixed");
    }
  }

  // Channel parameter completeness, counting swept axes as available.
  auto available = [&](const std::string& p) {
    if (cfg.channel_params.count(p)) return true;
    for (const SweepAxis& axis : cfg.axes)
      if (axis.name == p) return true;
    return false;
  };
  switch (cfg.channel) {
    case ChannelKind::None:
      break;
    case ChannelKind::Dephasing:
      if (!available("kappa") && !(available("tau") && available("mu") && available("t"))) {
        throw ConfigError("dephasing channel needs kappa, or tau+mu and a time");
      }
      break;
    case ChannelKind::AD:
      if (!available("s") && !(cfg.channel_params.count("v") && available("t"))) {
        throw ConfigError("ad channel needs s, or v and a time");
      }
      break;
    case ChannelKind::PF:
    case ChannelKind::PD:
      if (!available("s")) throw ConfigError("pf/pd channel needs s");
      break;
    case ChannelKind::CorrelatedPauli:
      for (const char* p : {"p0", "px", "py", "pz"}) {
        if (!cfg.channel_params.count(p)) {
          throw ConfigError("correlated_pauli channel needs p0..pz");
        }
      }
      if (!available("mu")) throw ConfigError("correlated_pauli channel needs mu");
      break;
  }
  return cfg;
}

namespace {

// The channel resolved at one grid point, as a linear map on 4x4 matrices.
std::function<Matrix4(const Matrix4&)> resolve_channel(
    ChannelKind kind, const std::map<std::string, double>& params) {
  auto param = [&params](const std::string& name) -> std::optional<double> {
    auto it = params.find(name);
    if (it == params.end()) return std::nullopt;
    return it->second;
  };
  auto require = [&](const std::string& name) {
    const auto v = param(name);
    if (!v) throw ConfigError("channel parameter '" + name + "' missing");
    return *v;
  };

  switch (kind) {
    case ChannelKind::None:
      return [](const Matrix4& m) { return m; };
    case ChannelKind::Dephasing: {
      double k;
      if (const auto direct = param("kappa")) {
        k = *direct;
      } else {
        const MemoryKernelSpec spec(require("tau"), require("mu"));
        k = kappa(require("t"), spec);
      }
      return [k](const Matrix4& m) { return dephasing_map(m, k); };
    }
    case ChannelKind::AD:
    case ChannelKind::PF:
    case ChannelKind::PD: {
      double s;
      if (const auto direct = param("s")) {
        s = *direct;
      } else {
        s = strength_from_time(require("v"), require("t"));
      }
      const KrausFamily fam = kind == ChannelKind::AD   ? kraus_ad(s)
                              : kind == ChannelKind::PF ? kraus_pf(s)
                                                        : kraus_pd(s);
      return [fam](const Matrix4& m) { return local_product_map(m, fam); };
    }
    case ChannelKind::CorrelatedPauli: {
      const CorrelatedPauliSpec spec(
          {require("p0"), require("px"), require("py"), require("pz")},
          require("mu"));
      return [spec](const Matrix4& m) { return correlated_pauli_map(m, spec); };
    }
  }
  throw ConfigError("unhandled channel kind");
}

}  // namespace

PointOutput evaluate_point(const PointConfig& cfg) {
  const ModelPoint p(cfg.T, cfg.omega, cfg.delta0);
  const auto channel = resolve_channel(cfg.channel, cfg.channel_params);

  const DensityMatrix rho0 = stationary_state(p);
  const DensityMatrix rho = DensityMatrix::from_matrix(channel(rho0.matrix()));

  TangentSet tg = tangent_set(p, cfg.estimate);
  for (Matrix4& d : tg.derivatives) d = channel(d);

  PointOutput out;
  out.rho = rho.matrix();
  out.trace_residual = rho.trace_residual();
  out.min_eigenvalue = rho.min_eigenvalue();
  out.report = qfim_report(rho, tg);
  out.bounds = crb(out.report.fisher.fisher, tg.axes, out.report.fisher.unbounded);
  for (int i = 0; i < out.report.compat.commutator_norms.rows(); ++i) {
    for (int j = 0; j < out.report.compat.commutator_norms.cols(); ++j) {
      out.max_commutator_norm =
          std::max(out.max_commutator_norm, out.report.compat.commutator_norms(i, j));
    }
  }
  return out;
}

namespace {

struct ColumnPlan {
  std::vector<std::string> names;  // numeric columns in order
  // Fill one row. Throws only on programmer error; point-level failures
  // are caught by the caller.
  void fill(const PointOutput& out, const std::vector<Axis>& estimate,
            std::vector<double>& row, size_t offset) const;
  std::vector<std::string> outputs;
};

void ColumnPlan::fill(const PointOutput& out, const std::vector<Axis>& estimate,
                      std::vector<double>& row, size_t offset) const {
  auto axis_index = [&](const std::string& short_name) {
    for (size_t i = 0; i < estimate.size(); ++i) {
      if (axis_short_name(estimate[i]) == short_name) return static_cast<int>(i);
    }
    return -1;
  };
  size_t c = offset;
  for (const std::string& o : outputs) {
    if (o == "gamma") {
      row[c++] = out.bounds.gamma_defined ? out.bounds.gamma
                                          : std::numeric_limits<double>::quiet_NaN();
    } else if (o == "trace_residual") {
      row[c++] = out.trace_residual;
    } else if (o == "min_eigenvalue") {
      row[c++] = out.min_eigenvalue;
    } else if (o == "commutator_norm") {
      row[c++] = out.max_commutator_norm;
    } else if (o == "fisher") {
      const auto& f = out.report.fisher.fisher;
      for (int i = 0; i < f.rows(); ++i)
        for (int j = i; j < f.cols(); ++j) row[c++] = f(i, j);
    } else if (o.rfind("var_", 0) == 0) {
      const auto us = o.find('_', 4);
      const int idx = axis_index(o.substr(4, us - 4));
      const bool sim = o.substr(us + 1) == "sim";
      row[c++] = sim ? out.bounds.var_sim[idx] : out.bounds.var_ind[idx];
    }
  }
}

}  // namespace

SweepResult run_sweep(const SweepConfig& cfg) {
  const int nx = cfg.axes[0].count;
  const int ny = cfg.axes.size() > 1 ? cfg.axes[1].count : 1;
  const int total = nx * ny;

  // Column layout: swept axes, fixed model parameters, fixed channel
  // parameters, then the requested outputs ("fisher" expands to the upper
  // triangle) and the flags column.
  SweepResult result;
  ColumnPlan plan;
  plan.outputs = cfg.outputs;
  for (const SweepAxis& axis : cfg.axes) result.columns.push_back(axis.name);
  std::vector<std::string> fixed_names;
  for (const auto& [name, value] : cfg.fixed) fixed_names.push_back(name);
  for (const auto& [name, value] : cfg.channel_params) fixed_names.push_back(name);
  for (const std::string& n : fixed_names) result.columns.push_back(n);

  for (const std::string& o : cfg.outputs) {
    if (o == "fisher") {
      for (size_t i = 0; i < cfg.estimate.size(); ++i) {
        for (size_t j = i; j < cfg.estimate.size(); ++j) {
          result.columns.push_back("fisher_" + axis_short_name(cfg.estimate[i]) + "_" +
                                   axis_short_name(cfg.estimate[j]));
        }
      }
    } else {
      result.columns.push_back(o);
    }
  }
  const size_t ncols = result.columns.size();
  result.columns.push_back("flags");

  result.values.assign(total, std::vector<double>());
  result.flags.assign(total, "");

  const size_t param_offset = cfg.axes.size();
  const size_t output_offset = param_offset + fixed_names.size();

  auto compute_row = [&](int index) {
    const int ix = index / ny;
    const int iy = index % ny;
    std::vector<double> row(ncols, std::numeric_limits<double>::quiet_NaN());

    PointConfig pc;
    pc.channel = cfg.channel;
    pc.channel_params = cfg.channel_params;
    pc.estimate = cfg.estimate;
    std::map<std::string, double> model;
    for (const auto& [name, value] : cfg.fixed) model[name] = value;

    for (size_t a = 0; a < cfg.axes.size(); ++a) {
      const double v = cfg.axes[a].value(a == 0 ? ix : iy);
      row[a] = v;
      if (kModelParams.count(cfg.axes[a].name)) {
        model[cfg.axes[a].name] = v;
      } else {
        pc.channel_params[cfg.axes[a].name] = v;
      }
    }
    {
      size_t c = param_offset;
      for (const std::string& n : fixed_names) {
        auto fit = cfg.fixed.find(n);
        row[c++] = fit != cfg.fixed.end() ? fit->second : cfg.channel_params.at(n);
      }
    }
    pc.T = model.count("T") ? model["T"] : 0.0;
    pc.omega = model.count("omega") ? model["omega"] : 0.0;
    pc.delta0 = model.count("delta0") ? model["delta0"] : 0.0;

    std::string flags;
    auto add_flag = [&flags](const std::string& f) {
      if (!flags.empty()) flags += ";";
      flags += f;
    };
    try {
      const PointOutput out = evaluate_point(pc);
      plan.fill(out, cfg.estimate, row, output_offset);
      for (size_t i = 0; i < out.report.fisher.unbounded.size(); ++i) {
        if (out.report.fisher.unbounded[i]) {
          add_flag("unbounded_" + axis_short_name(cfg.estimate[i]));
        }
      }
      if (out.bounds.singular) add_flag("singular_fisher");
      if (!out.bounds.gamma_defined) add_flag("gamma_undefined");
    } catch (const DomainError&) {
      add_flag("domain_error");
    } catch (const ContractError&) {
      add_flag("contract_error");
    }
    result.values[index] = std::move(row);
    result.flags[index] = flags;
  };

  const int workers = std::max(1, std::min<int>(cfg.workers, total));
  if (workers == 1) {
    for (int i = 0; i < total; ++i) compute_row(i);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w]() {
        for (int i = w; i < total; i += workers) compute_row(i);
      });
    }
    for (std::thread& th : pool) th.join();
  }
  return result;
}

std::string format_value(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void emit_csv(const SweepResult& result, std::ostream& os) {
  for (size_t c = 0; c < result.columns.size(); ++c) {
    if (c) os << ",";
    os << result.columns[c];
  }
  os << "\n";
  for (size_t r = 0; r < result.values.size(); ++r) {
    for (const double v : result.values[r]) os << format_value(v) << ",";
    os << result.flags[r] << "\n";
  }
}

void emit_json(const SweepResult& result, std::ostream& os) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (size_t r = 0; r < result.values.size(); ++r) {
    nlohmann::ordered_json row = nlohmann::ordered_json::object();
    for (size_t c = 0; c < result.values[r].size(); ++c) {
      const double v = result.values[r][c];
      if (std::isfinite(v)) {
        row[result.columns[c]] = v;
      } else {
        row[result.columns[c]] = format_value(v);
      }
    }
    row["flags"] = result.flags[r];
    rows.push_back(std::move(row));
  }
  os << rows.dump(2) << "\n";
}

void emit_to_file(const SweepResult& result, const std::string& format,
                  const std::string& path) {
  auto write = [&](std::ostream& os) {
    if (format == "json") {
      emit_json(result, os);
    } else {
      emit_csv(result, os);
    }
  };
  if (path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write(out);
  if (!out) throw IoError("failed while writing '" + path + "'");
}

}  // namespace udwqfim

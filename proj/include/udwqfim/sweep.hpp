#ifndef UDWQFIM_SWEEP_HPP
#define UDWQFIM_SWEEP_HPP

#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "udwqfim/bounds.hpp"
#include "udwqfim/channels.hpp"

// Grid evaluation over the model/channel parameters and dataset emission.
// Configurations are flat dotted key-value maps (file lines "key = value",
// command-line flags of the same names); every grid point runs the pure
// pipeline state -> channel -> tangents -> QFIM -> bounds, so rows are
// independent and may be computed by any number of workers with
// byte-identical output.

namespace udwqfim {

enum class ChannelKind { None, Dephasing, AD, PF, PD, CorrelatedPauli };

ChannelKind channel_kind_from_name(const std::string& name);
std::string channel_kind_name(ChannelKind kind);

struct SweepAxis {
  std::string name;  // T, omega, delta0, t, s, kappa, mu, tau
  double start = 0.0;
  double stop = 0.0;
  int count = 0;

  double value(int i) const;
};

struct SweepConfig {
  std::vector<SweepAxis> axes;                  // one or two; first is outer
  std::map<std::string, double> fixed;          // model parameters not swept
  ChannelKind channel = ChannelKind::None;
  std::map<std::string, double> channel_params; // tau, mu, s, v, t, kappa, p0..pz
  std::vector<Axis> estimate;                   // nonempty
  std::vector<std::string> outputs;             // requested output columns
  std::string format = "csv";
  int workers = 1;

  // Build and validate from a flat dotted key-value map; throws
  // ConfigError on anything inconsistent.
  static SweepConfig from_kv(const std::map<std::string, std::string>& kv);
};

// key = value lines, '#' comments. Throws IoError when unreadable.
std::map<std::string, std::string> parse_kv_file(const std::string& path);

// One-point pipeline configuration (also used by the sweep loop).
struct PointConfig {
  double T = 0.0;
  double omega = 0.0;
  double delta0 = 0.0;
  ChannelKind channel = ChannelKind::None;
  std::map<std::string, double> channel_params;
  std::vector<Axis> estimate;
};

struct PointOutput {
  Matrix4 rho;                 // evolved state
  double trace_residual = 0.0;
  double min_eigenvalue = 0.0;
  QfimReport report;
  BoundsReport bounds;
  double max_commutator_norm = 0.0;
};

PointOutput evaluate_point(const PointConfig& cfg);

struct SweepResult {
  std::vector<std::string> columns;         // numeric columns; "flags" appended last
  std::vector<std::vector<double>> values;  // row-major, one entry per numeric column
  std::vector<std::string> flags;           // per-row flag tokens, ';'-joined
};

SweepResult run_sweep(const SweepConfig& cfg);

// 12 significant digits; the literal tokens "inf"/"-inf"/"nan" for
// non-finite values.
std::string format_value(double v);

void emit_csv(const SweepResult& result, std::ostream& os);
void emit_json(const SweepResult& result, std::ostream& os);
// Writes in the requested format; path "-" means stdout.
void emit_to_file(const SweepResult& result, const std::string& format,
                  const std::string& path);

}  // namespace udwqfim

#endif

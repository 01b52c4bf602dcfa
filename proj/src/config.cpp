#include "accsim/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "accsim/errors.hpp"

namespace accsim {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError("config: " + where + ": " + what);
}

void require_keys(const json& obj, const std::string& where,
                  const std::set<std::string>& required, const std::set<std::string>& optional) {
  if (!obj.is_object()) fail(where, "expected an object");
  for (const auto& item : obj.items()) {
    if (!required.count(item.key()) && !optional.count(item.key()))
      fail(where, "unknown key '" + item.key() + "'");
  }
  for (const auto& key : required)
    if (!obj.contains(key)) fail(where, "missing key '" + key + "'");
}

double get_number(const json& obj, const std::string& where, const std::string& key) {
  const auto& v = obj.at(key);
  if (!v.is_number()) fail(where, "'" + key + "' must be a number");
  return v.get<double>();
}

std::vector<double> get_number_list(const json& obj, const std::string& where,
                                    const std::string& key) {
  const auto& v = obj.at(key);
  if (!v.is_array()) fail(where, "'" + key + "' must be an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) fail(where, "'" + key + "' must contain only numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

InitialProfile parse_initial_density(const json& obj, double half_length) {
  const std::string where = "initial_density";
  InitialProfile init;
  if (obj.contains("constant")) {
    require_keys(obj, where, {"constant"}, {});
    init.breakpoints = {-half_length, half_length};
    init.values = {get_number(obj, where, "constant")};
    return init;
  }
  require_keys(obj, where, {"segments"}, {"smooth_epsilon"});
  const auto& segs = obj.at("segments");
  if (!segs.is_array() || segs.empty()) fail(where, "'segments' must be a non-empty array");
  init.breakpoints.push_back(-half_length);
  for (const auto& seg : segs) {
    require_keys(seg, where + ".segments[]", {"from", "to", "value"}, {});
    const double from = get_number(seg, where, "from");
    const double to = get_number(seg, where, "to");
    const double value = get_number(seg, where, "value");
    if (from != init.breakpoints.back())
      fail(where, "segments must tile [-L, L] contiguously");
    if (!(to > from)) fail(where, "segment 'to' must exceed 'from'");
    if (!(value >= 0.0 && value <= 1.0)) fail(where, "density values must lie in [0, 1]");
    init.breakpoints.push_back(to);
    init.values.push_back(value);
  }
  if (init.breakpoints.back() != half_length) fail(where, "segments must end at L");
  if (obj.contains("smooth_epsilon")) {
    init.smooth_epsilon = get_number(obj, where, "smooth_epsilon");
    if (!(init.smooth_epsilon > 0)) fail(where, "'smooth_epsilon' must be positive");
  }
  return init;
}

}  // namespace

SimConfig parse_config(const std::string& text, const std::string& origin) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("config: " + origin + ": " + e.what());
  }

  require_keys(root, origin,
               {"domain", "time", "road", "initial_density", "accidents", "sampling"},
               {"mollifier", "output"});

  SimConfig cfg;
  PathConfig& path = cfg.path;

  {
    const auto& domain = root.at("domain");
    require_keys(domain, "domain", {"half_length", "cells"}, {});
    const double half_length = get_number(domain, "domain", "half_length");
    const double cells = get_number(domain, "domain", "cells");
    if (!(half_length > 0)) fail("domain", "'half_length' must be positive");
    if (cells < 3 || cells != std::floor(cells)) fail("domain", "'cells' must be an integer >= 3");
    path.grid = Grid::make(half_length, static_cast<int>(cells));
  }

  {
    const auto& time = root.at("time");
    require_keys(time, "time", {"horizon", "dt_ref"}, {"cfl_factor", "acceptance_ratio"});
    path.horizon = get_number(time, "time", "horizon");
    path.dt_ref = get_number(time, "time", "dt_ref");
    path.cfl_factor = time.contains("cfl_factor") ? get_number(time, "time", "cfl_factor") : 1.0;
    path.acceptance_ratio =
        time.contains("acceptance_ratio") ? get_number(time, "time", "acceptance_ratio") : 1.0;
  }

  {
    const auto& road = root.at("road");
    require_keys(road, "road", {"breakpoints", "capacities"}, {"capacity_floor"});
    path.road.breakpoints = get_number_list(road, "road", "breakpoints");
    path.road.values = get_number_list(road, "road", "capacities");
    const double floor_value =
        road.contains("capacity_floor") ? get_number(road, "road", "capacity_floor") : 1e-6;
    path.road.validate(floor_value);
    if (path.road.breakpoints.front() != -path.grid.half_length ||
        path.road.breakpoints.back() != path.grid.half_length)
      fail("road", "breakpoints must span the domain [-L, L]");
  }

  if (root.contains("mollifier")) {
    const auto& moll = root.at("mollifier");
    require_keys(moll, "mollifier", {"mode"}, {"epsilon"});
    const std::string mode = moll.at("mode").get<std::string>();
    if (mode == "sharp") {
      path.mollifier.mode = MollifierMode::kSharp;
    } else if (mode == "smooth") {
      path.mollifier.mode = MollifierMode::kSmooth;
      if (!moll.contains("epsilon")) fail("mollifier", "smooth mode needs 'epsilon'");
    } else {
      fail("mollifier", "mode must be 'sharp' or 'smooth'");
    }
    if (moll.contains("epsilon")) path.mollifier.epsilon = get_number(moll, "mollifier", "epsilon");
  }

  path.initial_profile =
      parse_initial_density(root.at("initial_density"), path.grid.half_length);
  path.initial_density = cell_means(*path.initial_profile, path.grid);

  {
    const auto& acc = root.at("accidents");
    require_keys(acc, "accidents", {"beta", "rates", "size", "capacity_drop"}, {});
    path.beta = get_number(acc, "accidents", "beta");

    const auto& rates = acc.at("rates");
    require_keys(rates, "accidents.rates", {"flux", "upjump", "resolution"}, {});
    path.rates.flux = get_number(rates, "accidents.rates", "flux");
    path.rates.upjump = get_number(rates, "accidents.rates", "upjump");
    path.rates.resolution = get_number(rates, "accidents.rates", "resolution");

    const auto& size = acc.at("size");
    require_keys(size, "accidents.size", {"min", "max"}, {});
    path.size_dist.min = get_number(size, "accidents.size", "min");
    path.size_dist.max = get_number(size, "accidents.size", "max");

    const auto& drop = acc.at("capacity_drop");
    require_keys(drop, "accidents.capacity_drop", {"values", "weights"}, {});
    path.drop_dist.values = get_number_list(drop, "accidents.capacity_drop", "values");
    path.drop_dist.weights = get_number_list(drop, "accidents.capacity_drop", "weights");
  }

  {
    const auto& sampling = root.at("sampling");
    require_keys(sampling, "sampling", {"seed"},
                 {"samples", "threads", "engine", "rate_bound", "check_scheme_bounds"});
    const auto& seed = sampling.at("seed");
    if (!seed.is_number_unsigned()) fail("sampling", "'seed' must be a non-negative integer");
    cfg.seed = seed.get<std::uint64_t>();
    if (sampling.contains("samples")) {
      const double s = get_number(sampling, "sampling", "samples");
      if (s < 1 || s != std::floor(s)) fail("sampling", "'samples' must be an integer >= 1");
      cfg.samples = static_cast<int>(s);
    }
    if (sampling.contains("threads")) {
      const double t = get_number(sampling, "sampling", "threads");
      if (t < 0 || t != std::floor(t)) fail("sampling", "'threads' must be an integer >= 0");
      cfg.threads = static_cast<int>(t);
    }
    if (sampling.contains("engine")) {
      const std::string engine = sampling.at("engine").get<std::string>();
      if (engine == "approximate")
        path.engine = JumpEngine::kApproximate;
      else if (engine == "exact")
        path.engine = JumpEngine::kExact;
      else
        fail("sampling", "engine must be 'approximate' or 'exact'");
    }
    if (sampling.contains("rate_bound"))
      path.rate_bound = get_number(sampling, "sampling", "rate_bound");
    if (sampling.contains("check_scheme_bounds")) {
      if (!sampling.at("check_scheme_bounds").is_boolean())
        fail("sampling", "'check_scheme_bounds' must be a boolean");
      path.check_scheme_bounds = sampling.at("check_scheme_bounds").get<bool>();
    }
  }

  if (root.contains("output")) {
    const auto& output = root.at("output");
    require_keys(output, "output", {}, {"directory", "snapshot_times", "histogram_bins"});
    if (output.contains("directory"))
      cfg.output.directory = output.at("directory").get<std::string>();
    if (output.contains("snapshot_times"))
      path.snapshot_times = get_number_list(output, "output", "snapshot_times");
    if (output.contains("histogram_bins")) {
      const double b = get_number(output, "output", "histogram_bins");
      if (b < 1 || b != std::floor(b)) fail("output", "'histogram_bins' must be an integer >= 1");
      cfg.output.histogram_bins = static_cast<int>(b);
    }
  }

  validate(cfg);
  return cfg;
}

SimConfig load_config(const std::filesystem::path& file) {
  std::ifstream is(file);
  if (!is) throw ConfigError("config: cannot read " + file.string());
  std::stringstream buffer;
  buffer << is.rdbuf();
  return parse_config(buffer.str(), file.string());
}

void validate(const SimConfig& cfg) {
  const PathConfig& path = cfg.path;
  if (!(path.horizon >= 0)) fail("time", "'horizon' must be >= 0");
  if (!(path.dt_ref > 0)) fail("time", "'dt_ref' must be positive");
  if (!(path.cfl_factor > 0 && path.cfl_factor <= 1))
    fail("time", "'cfl_factor' must lie in (0, 1]");
  if (!(path.acceptance_ratio > 0 && path.acceptance_ratio <= 1))
    fail("time", "'acceptance_ratio' must lie in (0, 1]");
  if (!(path.beta >= 0 && path.beta <= 1)) fail("accidents", "'beta' must lie in [0, 1]");
  if (!(path.rates.flux > 0 && path.rates.upjump > 0 && path.rates.resolution > 0))
    fail("accidents.rates", "all rates must be positive");
  if (!(path.size_dist.min > 0) || !(path.size_dist.max >= path.size_dist.min))
    fail("accidents.size", "need 0 < min <= max");
  if (path.drop_dist.values.empty() ||
      path.drop_dist.values.size() != path.drop_dist.weights.size())
    fail("accidents.capacity_drop", "'values' and 'weights' must be non-empty and match");
  double weight_sum = 0;
  for (double w : path.drop_dist.weights) {
    if (!(w > 0)) fail("accidents.capacity_drop", "weights must be positive");
    weight_sum += w;
  }
  if (std::abs(weight_sum - 1.0) > 1e-12)
    fail("accidents.capacity_drop", "weights must sum to 1");
  for (double c : path.drop_dist.values)
    if (!(c >= 0 && c < 1)) fail("accidents.capacity_drop", "drops must lie in [0, 1)");
  if (path.mollifier.mode == MollifierMode::kSmooth && !(path.mollifier.epsilon > 0))
    fail("mollifier", "'epsilon' must be positive in smooth mode");
  if (path.rate_bound && !(*path.rate_bound > 0))
    fail("sampling", "'rate_bound' must be positive");
  for (double v : path.initial_density)
    if (!(v >= 0 && v <= 1)) fail("initial_density", "density values must lie in [0, 1]");
  for (double t : path.snapshot_times)
    if (!(t >= 0 && t <= path.horizon))
      fail("output", "snapshot times must lie within [0, horizon]");
  if (cfg.samples < 1) fail("sampling", "'samples' must be >= 1");
  if (cfg.threads < 0) fail("sampling", "'threads' must be >= 0");
  if (cfg.output.histogram_bins < 1) fail("output", "'histogram_bins' must be >= 1");
}

}  // namespace accsim

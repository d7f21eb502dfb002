#include "bfsi/config_io.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace bfsi {

using json = nlohmann::ordered_json;

std::string format_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

constexpr const char* kCsvHeader =
    "t,h,g,E,P,A1,A2,V_eps,diss,cum_diss,cum_gu,cum_u,cum_spring,c1,c2";

[[noreturn]] void key_error(const std::string& path, const std::string& what) {
  throw DomainError(path + ": " + what);
}

void reject_unknown(const json& obj, const std::string& path,
                    std::initializer_list<const char*> known) {
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (const char* k : known)
      if (item.key() == k) ok = true;
    if (!ok) key_error(path + "." + item.key(), "unknown key");
  }
}

double get_num(const json& obj, const std::string& path, const char* key,
               std::optional<double> fallback = {}) {
  if (!obj.contains(key)) {
    if (fallback) return *fallback;
    key_error(path + "." + key, "missing required key");
  }
  const json& v = obj.at(key);
  if (!v.is_number()) key_error(path + "." + key, "expected a number");
  return v.get<double>();
}

int get_int(const json& obj, const std::string& path, const char* key,
            std::optional<int> fallback = {}) {
  if (!obj.contains(key)) {
    if (fallback) return *fallback;
    key_error(path + "." + key, "missing required key");
  }
  const json& v = obj.at(key);
  if (!v.is_number_integer()) key_error(path + "." + key, "expected an integer");
  return v.get<int>();
}

std::vector<double> get_array(const json& obj, const std::string& path,
                              const char* key) {
  if (!obj.contains(key) || !obj.at(key).is_array())
    key_error(path + "." + key, "expected an array of numbers");
  std::vector<double> out;
  for (const json& v : obj.at(key)) {
    if (!v.is_number()) key_error(path + "." + key, "expected a number");
    out.push_back(v.get<double>());
  }
  return out;
}

ProfileDescriptor parse_profile(const json& obj, const std::string& path) {
  if (!obj.is_object() || !obj.contains("type"))
    key_error(path, "expected an object with a \"type\" key");
  const std::string type = obj.at("type").get<std::string>();
  if (type == "zero") {
    reject_unknown(obj, path, {"type"});
    return ZeroProfile{};
  }
  if (type == "sine") {
    reject_unknown(obj, path, {"type", "amplitude", "mode"});
    return SineMode{get_num(obj, path, "amplitude"),
                    get_int(obj, path, "mode", 1)};
  }
  if (type == "bump") {
    reject_unknown(obj, path, {"type", "amplitude", "center", "width"});
    return Bump{get_num(obj, path, "amplitude"), get_num(obj, path, "center"),
                get_num(obj, path, "width")};
  }
  if (type == "samples") {
    reject_unknown(obj, path, {"type", "y", "v"});
    return Samples{get_array(obj, path, "y"), get_array(obj, path, "v")};
  }
  key_error(path + ".type", "unknown profile type \"" + type + "\"");
}

InputSignal parse_signal(const json& obj, const std::string& path) {
  if (!obj.is_object() || !obj.contains("type"))
    key_error(path, "expected an object with a \"type\" key");
  const std::string type = obj.at("type").get<std::string>();
  if (type == "zero") {
    reject_unknown(obj, path, {"type"});
    return ZeroSignal{};
  }
  if (type == "expdecay") {
    reject_unknown(obj, path, {"type", "a", "lambda"});
    return ExpDecay{get_num(obj, path, "a"), get_num(obj, path, "lambda")};
  }
  if (type == "rectpulse") {
    reject_unknown(obj, path, {"type", "a", "t0", "t1"});
    return RectPulse{get_num(obj, path, "a"), get_num(obj, path, "t0"),
                     get_num(obj, path, "t1")};
  }
  if (type == "powertail") {
    reject_unknown(obj, path, {"type", "a", "p"});
    return PowerTail{get_num(obj, path, "a"), get_num(obj, path, "p")};
  }
  if (type == "sampled") {
    reject_unknown(obj, path, {"type", "times", "values"});
    return SampledSignal{get_array(obj, path, "times"),
                         get_array(obj, path, "values")};
  }
  key_error(path + ".type", "unknown signal type \"" + type + "\"");
}

json profile_to_json(const ProfileDescriptor& p) {
  json j;
  std::visit(
      [&j](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ZeroProfile>) {
          j["type"] = "zero";
        } else if constexpr (std::is_same_v<T, SineMode>) {
          j["type"] = "sine";
          j["amplitude"] = v.amplitude;
          j["mode"] = v.mode;
        } else if constexpr (std::is_same_v<T, Bump>) {
          j["type"] = "bump";
          j["amplitude"] = v.amplitude;
          j["center"] = v.center;
          j["width"] = v.width;
        } else {
          j["type"] = "samples";
          j["y"] = v.y;
          j["v"] = v.v;
        }
      },
      p);
  return j;
}

json signal_to_json(const InputSignal& s) {
  json j;
  std::visit(
      [&j](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ZeroSignal>) {
          j["type"] = "zero";
        } else if constexpr (std::is_same_v<T, ExpDecay>) {
          j["type"] = "expdecay";
          j["a"] = v.a;
          j["lambda"] = v.lambda;
        } else if constexpr (std::is_same_v<T, RectPulse>) {
          j["type"] = "rectpulse";
          j["a"] = v.a;
          j["t0"] = v.t0;
          j["t1"] = v.t1;
        } else if constexpr (std::is_same_v<T, PowerTail>) {
          j["type"] = "powertail";
          j["a"] = v.a;
          j["p"] = v.p;
        } else {
          j["type"] = "sampled";
          j["times"] = v.times;
          j["values"] = v.values;
        }
      },
      s);
  return j;
}

} // namespace

ConfigBundle parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DomainError(std::string("config parse error: ") + e.what());
  }
  if (!root.is_object()) throw DomainError("config: expected a JSON object");
  reject_unknown(root, "config", {"system", "grid", "solver", "signal"});

  ConfigBundle bundle;
  if (root.contains("system")) {
    const json& sys = root.at("system");
    reject_unknown(sys, "system", {"K", "h1", "h0", "g0", "v0"});
    bundle.params.spring_gain = get_num(sys, "system", "K", 0.0);
    bundle.params.target = get_num(sys, "system", "h1", 0.0);
    bundle.params.initial_position = get_num(sys, "system", "h0", 0.0);
    bundle.params.initial_velocity = get_num(sys, "system", "g0", 0.0);
    if (sys.contains("v0"))
      bundle.params.initial_profile = parse_profile(sys.at("v0"), "system.v0");
  }
  if (root.contains("grid")) {
    const json& grid = root.at("grid");
    reject_unknown(grid, "grid", {"nL", "nR"});
    bundle.grid.nl = get_int(grid, "grid", "nL", 200);
    bundle.grid.nr = get_int(grid, "grid", "nR", 200);
  }
  if (root.contains("solver")) {
    const json& sol = root.at("solver");
    reject_unknown(sol, "solver",
                   {"dt_max", "cfl", "t_end", "sample_stride",
                    "boundary_guard", "eps_override"});
    bundle.config.dt_max = get_num(sol, "solver", "dt_max", 1e-3);
    bundle.config.cfl = get_num(sol, "solver", "cfl", 0.4);
    bundle.config.t_end = get_num(sol, "solver", "t_end", 20.0);
    bundle.config.sample_stride = get_int(sol, "solver", "sample_stride", 10);
    bundle.config.boundary_guard =
        get_num(sol, "solver", "boundary_guard", kDefaultBoundaryGuard);
    if (sol.contains("eps_override"))
      bundle.config.eps_override = get_num(sol, "solver", "eps_override");
  }
  if (root.contains("signal"))
    bundle.signal = parse_signal(root.at("signal"), "signal");

  try {
    validate(bundle.params);
    validate(bundle.config);
    validate(bundle.signal);
    make_grid(bundle.grid.nl, bundle.grid.nr);
  } catch (const DomainError& e) {
    throw DomainError(std::string("config: ") + e.what());
  }
  return bundle;
}

ConfigBundle load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string config_to_json(const ConfigBundle& bundle) {
  json root;
  root["system"] = {{"K", bundle.params.spring_gain},
                    {"h1", bundle.params.target},
                    {"h0", bundle.params.initial_position},
                    {"g0", bundle.params.initial_velocity},
                    {"v0", profile_to_json(bundle.params.initial_profile)}};
  root["grid"] = {{"nL", bundle.grid.nl}, {"nR", bundle.grid.nr}};
  json sol = {{"dt_max", bundle.config.dt_max},
              {"cfl", bundle.config.cfl},
              {"t_end", bundle.config.t_end},
              {"sample_stride", bundle.config.sample_stride},
              {"boundary_guard", bundle.config.boundary_guard}};
  if (bundle.config.eps_override)
    sol["eps_override"] = *bundle.config.eps_override;
  root["solver"] = sol;
  root["signal"] = signal_to_json(bundle.signal);
  return root.dump(2);
}

void write_trajectory(const Trajectory& traj, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write trajectory: " + path);
  out << kCsvHeader << '\n';
  for (const SampleRecord& s : traj.samples) {
    out << format_double(s.t) << ',' << format_double(s.h) << ','
        << format_double(s.g) << ',' << format_double(s.energy) << ','
        << format_double(s.p) << ',' << format_double(s.a1) << ','
        << format_double(s.a2) << ',' << format_double(s.v_eps) << ','
        << format_double(s.diss) << ',' << format_double(s.cum_diss) << ','
        << format_double(s.cum_gu) << ',' << format_double(s.cum_u) << ','
        << format_double(s.cum_spring) << ',' << format_double(s.c1) << ','
        << format_double(s.c2) << '\n';
  }
  if (!out) throw std::runtime_error("failed while writing: " + path);
}

Trajectory read_trajectory(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read trajectory: " + path);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader)
    throw std::runtime_error("bad trajectory header in " + path);
  Trajectory traj;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    SampleRecord s;
    double* fields[] = {&s.t,       &s.h,      &s.g,      &s.energy,
                        &s.p,       &s.a1,     &s.a2,     &s.v_eps,
                        &s.diss,    &s.cum_diss, &s.cum_gu, &s.cum_u,
                        &s.cum_spring, &s.c1,  &s.c2};
    const char* ptr = line.data();
    const char* end = line.data() + line.size();
    for (std::size_t f = 0; f < 15; ++f) {
      const auto res = std::from_chars(ptr, end, *fields[f]);
      if (res.ec != std::errc{})
        throw std::runtime_error("bad number in trajectory row: " + line);
      ptr = res.ptr;
      if (f < 14) {
        if (ptr == end || *ptr != ',')
          throw std::runtime_error("bad trajectory row: " + line);
        ++ptr;
      }
    }
    traj.samples.push_back(s);
  }
  return traj;
}

namespace {

json number_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

json optional_to_json(const std::optional<double>& v) {
  if (v && std::isfinite(*v)) return *v;
  return nullptr;
}

json constants_to_json(const StabilityConstants& c) {
  json j;
  j["C_global"] = c.c_global;
  j["alpha"] = optional_to_json(c.alpha);
  j["eps"] = c.eps;
  j["eta"] = optional_to_json(c.eta);
  j["alpha_local"] = c.alpha_local;
  j["u_l2"] = c.u_l2;
  j["u_l1"] = number_or_null(c.u_l1);
  j["measured_alpha"] = optional_to_json(c.measured_alpha);
  return j;
}

StabilityConstants constants_from_json(const json& j) {
  StabilityConstants c;
  c.c_global = j.at("C_global").get<double>();
  if (!j.at("alpha").is_null()) c.alpha = j.at("alpha").get<double>();
  c.eps = j.at("eps").get<double>();
  if (!j.at("eta").is_null()) c.eta = j.at("eta").get<double>();
  c.alpha_local = j.at("alpha_local").get<double>();
  c.u_l2 = j.at("u_l2").get<double>();
  c.u_l1 = j.at("u_l1").is_null()
               ? std::numeric_limits<double>::infinity()
               : j.at("u_l1").get<double>();
  if (!j.at("measured_alpha").is_null())
    c.measured_alpha = j.at("measured_alpha").get<double>();
  return c;
}

CheckStatus status_from_string(const std::string& s) {
  if (s == "pass") return CheckStatus::pass;
  if (s == "fail") return CheckStatus::fail;
  if (s == "na") return CheckStatus::na;
  throw std::runtime_error("bad check status: " + s);
}

} // namespace

std::string report_to_string(const Report& report) {
  json root;
  root["constants"] =
      report.constants ? constants_to_json(*report.constants) : json::object();
  json checks = json::array();
  for (const CheckResult& c : report.checks) {
    json jc;
    jc["name"] = c.name;
    jc["margin"] = optional_to_json(c.margin);
    jc["time"] = optional_to_json(c.time);
    jc["status"] = to_string(c.status);
    jc["gating"] = c.gating;
    checks.push_back(std::move(jc));
  }
  root["checks"] = std::move(checks);
  if (report.fit) {
    root["fit"] = {{"rate", report.fit->rate},
                   {"window", {report.fit->window_lo, report.fit->window_hi}},
                   {"residual", report.fit->residual}};
  } else {
    root["fit"] = nullptr;
  }
  root["meta"] = {{"tool", "bfsi"}, {"version", "1.0.0"},
                  {"name", report.name}};
  return root.dump(2) + "\n";
}

void write_report(const Report& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write report: " + path);
  out << report_to_string(report);
  if (!out) throw std::runtime_error("failed while writing: " + path);
}

Report parse_report(const std::string& text) {
  const json root = json::parse(text);
  Report report;
  if (!root.at("constants").empty())
    report.constants = constants_from_json(root.at("constants"));
  for (const json& jc : root.at("checks")) {
    CheckResult c;
    c.name = jc.at("name").get<std::string>();
    if (!jc.at("margin").is_null()) c.margin = jc.at("margin").get<double>();
    if (!jc.at("time").is_null()) c.time = jc.at("time").get<double>();
    c.status = status_from_string(jc.at("status").get<std::string>());
    c.gating = jc.at("gating").get<bool>();
    report.checks.push_back(std::move(c));
  }
  if (!root.at("fit").is_null()) {
    DecayFit fit;
    fit.rate = root.at("fit").at("rate").get<double>();
    fit.window_lo = root.at("fit").at("window").at(0).get<double>();
    fit.window_hi = root.at("fit").at("window").at(1).get<double>();
    fit.residual = root.at("fit").at("residual").get<double>();
    report.fit = fit;
  }
  report.name = root.at("meta").at("name").get<std::string>();
  return report;
}

Report read_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read report: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_report(buf.str());
}

bool report_gating_pass(const Report& report) {
  return all_gating_pass(report.checks);
}

} // namespace bfsi

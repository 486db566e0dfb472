#include "dac/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dac/errors.hpp"

namespace dac {

namespace {

using nlohmann::ordered_json;

ordered_json vector_json(const Eigen::VectorXd& v) {
  ordered_json a = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

template <class T>
void put_optional(ordered_json& j, const char* key, const std::optional<T>& v) {
  if (v) {
    j[key] = *v;
  } else {
    j[key] = nullptr;
  }
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string analysis_json(const RunConfig& cfg, const Digraph& g, const StructureReport& structure,
                          const std::optional<Spectrum>& spectrum, const std::optional<CtDelayReport>& ct,
                          const std::optional<DtDelayReport>& dt) {
  ordered_json j;
  j["mode"] = to_string(cfg.mode);
  j["graph"] = cfg.graph_preset.empty() ? cfg.graph_path.string() : cfg.graph_preset;
  j["n"] = g.size();
  ordered_json params;
  params["beta"] = cfg.beta;
  if (cfg.mode == Mode::Ct) {
    params["tau"] = cfg.tau;
  } else {
    params["delta"] = cfg.delta;
    params["d"] = cfg.d;
  }
  j["params"] = params;

  ordered_json st;
  st["strongly_connected"] = structure.strongly_connected;
  st["weight_balanced"] = structure.weight_balanced;
  st["undirected"] = structure.undirected;
  st["scwb"] = structure.scwb();
  st["in_degrees"] = vector_json(structure.in_degrees);
  st["out_degrees"] = vector_json(structure.out_degrees);
  st["d_max"] = structure.d_max;
  j["structure"] = st;

  if (spectrum) {
    ordered_json sp;
    ordered_json eigs = ordered_json::array();
    for (Eigen::Index i = 0; i < spectrum->laplacian_eigs.size(); ++i) {
      eigs.push_back({spectrum->laplacian_eigs(i).real(), spectrum->laplacian_eigs(i).imag()});
    }
    sp["laplacian_eigs"] = eigs;
    sp["sym_eigs"] = vector_json(spectrum->sym_eigs);
    sp["lambda2_hat"] = spectrum->lambda2_hat;
    sp["lambdaN_hat"] = spectrum->lambdaN_hat;
    j["spectrum"] = sp;
  }
  if (ct) {
    ordered_json c;
    c["tau_bar"] = ct->tau_bar;
    c["tau_degree_bound"] = ct->tau_degree_bound;
    c["per_eigenvalue_taus"] = ct->per_eigenvalue_taus;
    put_optional(c, "tau", ct->tau);
    c["admissible"] = ct->tau && *ct->tau < ct->tau_bar;
    put_optional(c, "rho_tau", ct->rho_tau);
    put_optional(c, "k_tau", ct->k_tau);
    put_optional(c, "gamma", ct->gamma);
    put_optional(c, "tracking_bound", ct->tracking_bound);
    j["ct"] = c;
  }
  if (dt) {
    ordered_json d;
    d["d_hat"] = dt->d_hat;
    d["d_hat_min"] = dt->d_hat_min;
    d["d_bar"] = dt->d_bar;
    d["max_admissible_d"] = dt->max_admissible_d;
    d["d_degree_bound"] = dt->d_degree_bound;
    d["stepsize_range_upper"] = dt->stepsize_range_upper;
    put_optional(d, "d", dt->d);
    d["admissible"] = dt->d && *dt->d <= dt->max_admissible_d;
    put_optional(d, "spectral_radius", dt->spectral_radius);
    put_optional(d, "omega_bar", dt->omega_bar);
    put_optional(d, "k_bar", dt->k_bar);
    put_optional(d, "gamma", dt->gamma);
    put_optional(d, "tracking_bound", dt->tracking_bound);
    j["dt"] = d;
  }
  return dump(j);
}

std::string summary_json(const RunSummary& s) {
  ordered_json j;
  j["mode"] = to_string(s.mode);
  j["beta"] = s.beta;
  if (s.mode == Mode::Ct) {
    j["tau"] = s.tau;
    j["h"] = s.h;
  } else {
    j["delta"] = s.delta;
    j["d"] = s.d;
  }
  j["horizon"] = s.horizon;
  j["samples"] = s.samples;
  j["seed"] = s.seed;
  j["classification"] = to_string(s.classification);
  j["steady_error"] = s.steady_error;
  j["gamma"] = s.gamma;
  j["admissible"] = s.admissible;
  if (s.mode == Mode::Ct) {
    put_optional(j, "tau_bar", s.delay_bound);
    put_optional(j, "rho_tau", s.rate);
    put_optional(j, "k_tau", s.gain);
  } else {
    std::optional<int> max_d;
    if (s.delay_bound) max_d = static_cast<int>(*s.delay_bound);
    put_optional(j, "max_admissible_d", max_d);
    put_optional(j, "omega_bar", s.rate);
    put_optional(j, "k_bar", s.gain);
  }
  put_optional(j, "tracking_bound", s.tracking_bound);
  if (s.tracking_bound) {
    j["bound_holds"] = s.steady_error <= *s.tracking_bound;
  } else {
    j["bound_holds"] = nullptr;
  }
  return dump(j);
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  const Eigen::Index n = traj.x.cols();
  out << 't';
  for (Eigen::Index i = 1; i <= n; ++i) out << ",x_" << i;
  for (Eigen::Index i = 1; i <= n; ++i) out << ",e_" << i;
  out << '\n';
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const auto row = static_cast<Eigen::Index>(k);
    out << format_double(traj.times[k]);
    for (Eigen::Index i = 0; i < n; ++i) out << ',' << format_double(traj.x(row, i));
    for (Eigen::Index i = 0; i < n; ++i) out << ',' << format_double(traj.errors(row, i));
    out << '\n';
  }
}

std::string trajectory_csv(const Trajectory& traj) {
  std::ostringstream out;
  write_trajectory_csv(out, traj);
  return out.str();
}

Trajectory read_trajectory_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InputError("trajectory csv: empty input");
  long columns = 1;
  for (char c : line) columns += c == ',';
  if (line.rfind("t,", 0) != 0 || columns < 5 || (columns - 1) % 2 != 0) {
    throw InputError("trajectory csv: bad header");
  }
  const long n = (columns - 1) / 2;
  std::vector<std::vector<double>> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<double> values;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      const std::size_t comma = std::min(line.find(',', pos), line.size());
      const std::string field = line.substr(pos, comma - pos);
      char* end = nullptr;
      const double v = std::strtod(field.c_str(), &end);
      if (field.empty() || end != field.c_str() + field.size()) {
        throw InputError("trajectory csv: line " + std::to_string(line_no) + ": bad number '" + field + "'");
      }
      values.push_back(v);
      pos = comma + 1;
    }
    if (static_cast<long>(values.size()) != columns) {
      throw InputError("trajectory csv: line " + std::to_string(line_no) + ": expected " +
                       std::to_string(columns) + " fields");
    }
    rows.push_back(std::move(values));
  }
  Trajectory traj;
  const auto count = static_cast<Eigen::Index>(rows.size());
  traj.times.resize(rows.size());
  traj.x.resize(count, n);
  traj.errors.resize(count, n);
  for (Eigen::Index k = 0; k < count; ++k) {
    traj.times[k] = rows[k][0];
    for (long i = 0; i < n; ++i) {
      traj.x(k, i) = rows[k][1 + i];
      traj.errors(k, i) = rows[k][1 + n + i];
    }
  }
  traj.steady_error = steady_error(traj.errors);
  return traj;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw InputError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw InputError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw InputError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

}  // namespace dac

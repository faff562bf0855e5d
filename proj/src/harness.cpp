#include "geokin/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "geokin/geodesic.hpp"
#include "geokin/ray_transform.hpp"
#include "geokin/recovery.hpp"
#include "geokin/spectral.hpp"

namespace geokin::harness {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string unquote(std::string v) {
  if (v.size() >= 2 && ((v.front() == '"' && v.back() == '"') ||
                        (v.front() == '\'' && v.back() == '\'')))
    return v.substr(1, v.size() - 2);
  return v;
}

double now_ms() {
  using namespace std::chrono;
  return duration<double, std::milli>(steady_clock::now().time_since_epoch()).count();
}

std::string num_str(double v) {
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

Config Config::parse_string(const std::string& text, const std::string& origin) {
  Config c;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error(origin + ":" + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string val = unquote(trim(line.substr(eq + 1)));
    if (key.empty())
      throw config_error(origin + ":" + std::to_string(lineno) + ": empty key");
    c.kv_[key] = val;
  }
  return c;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_string(buf.str(), path);
}

std::string Config::str(const std::string& key, const std::string& def) const {
  auto it = kv_.find(key);
  return it == kv_.end() ? def : it->second;
}

double Config::num(const std::string& key, double def) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return def;
  size_t pos = 0;
  double v = std::stod(it->second, &pos);
  if (pos != it->second.size())
    throw config_error("key '" + key + "': not a number: " + it->second);
  return v;
}

int Config::integer(const std::string& key, int def) const {
  double v = num(key, def);
  int i = static_cast<int>(std::llround(v));
  if (i != v) throw config_error("key '" + key + "': not an integer");
  return i;
}

MetricField metric_from_config(const Config& cfg) {
  int n = cfg.integer("dim", 2);
  DomainBall d{Vec(n), cfg.num("domain.radius", 1.0), cfg.num("domain.padding", 0.2)};
  if (d.radius <= 0 || d.padding <= 0) throw config_error("domain parameters must be positive");
  std::string name = cfg.str("metric", "euclidean");
  if (name == "euclidean") return euclidean_metric(n, d);
  if (name == "bump")
    return bump_metric(n, d, cfg.num("bump.amplitude", 0.3), cfg.integer("bump.exponent", 7));
  throw config_error("unknown metric: " + name);
}

SourceField source_from_config(const Config& cfg) {
  int n = cfg.integer("dim", 2);
  std::string name = cfg.str("source", "bump");
  double c22 = cfg.num("source.c22", 1.0);
  if (name == "zero") c22 = 0.0;
  else if (name != "bump") throw config_error("unknown source: " + name);
  Vec center(n);
  center[0] = cfg.num("source.center.x1", 0.0);
  center[1] = cfg.num("source.center.x2", 0.0);
  std::array<std::array<double, kMaxDim - 1>, kMaxDim - 1> c{};
  c[0][0] = c22;
  if (n == 3) {
    c[1][1] = cfg.num("source.c33", name == "zero" ? 0.0 : c22);
    c[0][1] = c[1][0] = cfg.num("source.c23", 0.0);
  }
  return make_bump_source(n, c, cfg.num("source.radius", 1.0),
                          cfg.integer("source.exponent", 6), center);
}

std::string emit_report(const SuiteReport& r, const std::string& format) {
  std::ostringstream out;
  if (format == "csv") {
    out << "name,ref,value,threshold,pass,expected_fail,wall_ms,detail\n";
    for (const auto& c : r.checks) {
      std::string detail = c.detail;
      for (char& ch : detail)
        if (ch == ',') ch = ';';
      out << c.name << "," << c.ref << "," << num_str(c.value) << "," << num_str(c.threshold)
          << "," << (c.pass ? "true" : "false") << "," << (c.expected_fail ? "true" : "false")
          << "," << num_str(c.wall_ms) << "," << detail << "\n";
    }
    return out.str();
  }
  if (format != "text") throw config_error("unknown report format: " + format);
  for (const auto& c : r.checks) {
    char line[512];
    std::snprintf(line, sizeof line, "%-4s %-58s [%s] value=%.6g%s\n",
                  c.pass ? "PASS" : "FAIL", c.name.c_str(), c.ref.c_str(), c.value,
                  c.expected_fail ? " (known-unattainable threshold, see README)" : "");
    out << line;
    if (!c.pass && !c.detail.empty()) out << "       " << c.detail << "\n";
  }
  out << (r.pass() ? "OVERALL PASS\n" : "OVERALL FAIL\n");
  return out.str();
}

namespace {

const char* criterion_ref(int id) {
  switch (id) {
    case 1: return "(3.2)-(3.3)";
    case 2: return "(3.4)";
    case 3: return "(2.2)";
    case 4: return "(3.5)";
    case 5: return "Lemma 1 / Remark 1";
    case 6: return "(4.1)-(4.6)";
    case 7: return "Lemma 3 / (A.14)-(A.16)";
    case 8: return "(6.2)-(6.3)";
    case 9: return "Theorem 1";
    case 10: return "Lemmas 4-5";
    default: return "";
  }
}

void append_criterion(SuiteReport& rep, const checks::Criterion& cr, double wall,
                      const char* ref_override = nullptr) {
  bool first = true;
  for (const auto& ck : cr.checks) {
    SuiteCheck sc;
    sc.name = (cr.id ? "c" + std::to_string(cr.id) + ": " : std::string()) + ck.name;
    sc.ref = ref_override ? ref_override : criterion_ref(cr.id);
    sc.value = ck.value;
    sc.pass = ck.pass;
    sc.expected_fail = cr.expected_fail;
    sc.detail = ck.detail;
    sc.wall_ms = first ? wall : 0.0;  // timed at criterion granularity
    first = false;
    rep.checks.push_back(std::move(sc));
  }
}

template <typename F>
void run_criterion(SuiteReport& rep, F&& f) {
  double t0 = now_ms();
  checks::Criterion cr = f();
  append_criterion(rep, cr, now_ms() - t0);
}

void write_csv(SuiteReport& rep, const std::string& path, const std::string& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path, std::ios::binary);  // binary: LF line endings everywhere
  if (!out) throw config_error("cannot write " + path);
  out << header << "\n";
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << num_str(row[i]);
    out << "\n";
  }
  rep.artifacts.push_back(path);
}

void artifact_geodesic(const Config& cfg, const std::string& dir, SuiteReport& rep) {
  MetricField m = metric_from_config(cfg);
  int n = m.n;
  Vec x(n), xi(n);
  x[0] = cfg.num("ray.x1", 0.0);
  x[1] = cfg.num("ray.x2", -0.5);
  xi[0] = cfg.num("ray.xi1", 0.3);
  xi[1] = cfg.num("ray.xi2", 1.0);
  double step = cfg.num("ray.step", 1e-3 * m.domain.radius);
  GeodesicPath p = shoot(m, x, xi, step);
  std::vector<std::vector<double>> rows;
  for (const auto& s : p.samples) {
    std::vector<double> row{s.t};
    for (int i = 0; i < n; ++i) row.push_back(s.z[i]);
    for (int i = 0; i < n; ++i) row.push_back(s.zdot[i]);
    rows.push_back(std::move(row));
  }
  std::string hdr = "t";
  for (int i = 1; i <= n; ++i) hdr += ",z" + std::to_string(i);
  for (int i = 1; i <= n; ++i) hdr += ",zdot" + std::to_string(i);
  write_csv(rep, dir + "/geodesic.csv", hdr, rows);
}

void artifact_forward(const Config& cfg, const std::string& dir, SuiteReport& rep) {
  MetricField m = metric_from_config(cfg);
  SourceField a = source_from_config(cfg);
  double step = cfg.num("ray.step", 1e-3 * m.domain.radius);
  if (m.n != 2) return;  // boundary lattice below is a circle
  int nb = cfg.integer("grid.boundary_count", 12);
  double R = m.domain.radius;
  std::vector<std::vector<double>> rows;
  for (int k = 0; k < nb; ++k) {
    double tk = 2 * std::numbers::pi * k / nb;
    Vec x = m.domain.center + R * Vec(std::cos(tk), std::sin(tk));
    for (int j = 0; j < nb; ++j) {
      if (j == k) continue;
      double tj = 2 * std::numbers::pi * j / nb;
      Vec y = m.domain.center + R * Vec(std::cos(tj), std::sin(tj));
      Vec xi = m.unit(x, y - x);
      rows.push_back({x[0], x[1], xi[0], xi[1], forward_ray(m, a, x, xi, step)});
    }
  }
  write_csv(rep, dir + "/forward.csv", "x1,x2,xi1,xi2,u", rows);
}

void artifact_spectrum(const Config& cfg, const std::string& dir, SuiteReport& rep) {
  MetricField m = metric_from_config(cfg);
  SourceField a = source_from_config(cfg);
  double Xi = cfg.num("grid.Xi", 64.0);
  int N = cfg.integer("grid.N", 1024);
  double step = cfg.num("grid.sweep_step", 1e-2 * m.domain.radius);
  Vec x(m.n), xip(m.n - 1);
  x[0] = cfg.num("spectrum.x1", 0.0);
  x[1] = cfg.num("spectrum.x2", -0.1);
  xip[0] = cfg.num("spectrum.xiprime", 0.5);
  std::vector<double> u = sweep_xi1_par(m, a, x, xip, Xi, N, step);
  SpectralGrid sg = fourier_xi1(u, Xi, Taper::cosine);
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < N; ++i) rows.push_back({sg.eta[i], sg.p(i), sg.q(i)});
  write_csv(rep, dir + "/spectrum.csv", "eta,p,q", rows);
}

void artifact_recover(const Config& cfg, const std::string& dir, SuiteReport& rep) {
  MetricField m = metric_from_config(cfg);
  SourceField a = source_from_config(cfg);
  std::vector<Vec> centers;
  if (cfg.has("recover.centers")) {
    // "x1,x2;x1,x2;..." offsets from the domain center
    std::istringstream in(cfg.str("recover.centers", ""));
    std::string tok;
    while (std::getline(in, tok, ';')) {
      Vec c = m.domain.center;
      std::istringstream pt(tok);
      std::string comp;
      for (int i = 0; i < m.n && std::getline(pt, comp, ','); ++i) c[i] += std::stod(comp);
      centers.push_back(c);
    }
    if (centers.empty()) throw config_error("recover.centers: no points parsed");
  } else {
    double lim = cfg.num("recover.lattice_extent", 0.3);
    int cnt = cfg.integer("recover.lattice_count", 3);
    for (int i = 0; i < cnt; ++i)
      for (int j = 0; j < cnt; ++j) {
        double fx = cnt == 1 ? 0.0 : -lim + 2 * lim * i / (cnt - 1);
        double fy = cnt == 1 ? 0.0 : -lim + 2 * lim * j / (cnt - 1);
        centers.push_back(m.domain.center + Vec(fx, fy));
      }
  }
  double eps = cfg.num("recover.eps", 0.05);
  std::string estname = cfg.str("recover.estimator", "kinetic");
  Estimator est = estname == "spectral" ? Estimator::spectral
                  : estname == "both"   ? Estimator::both
                  : estname == "kinetic" ? Estimator::kinetic
                  : throw config_error("unknown estimator: " + estname);
  RecoveredField f = recover_field(m, a, centers, eps, est);
  std::vector<std::vector<double>> rows;
  int nbk = m.n - 1;
  for (size_t c = 0; c < centers.size(); ++c) {
    std::vector<double> row;
    for (int i = 0; i < m.n; ++i) row.push_back(centers[c][i]);
    for (int i = 0; i < nbk; ++i)
      for (int j = i; j < nbk; ++j) row.push_back(f.ahat[c].at(i, j));
    rows.push_back(std::move(row));
  }
  std::string hdr;
  for (int i = 1; i <= m.n; ++i) hdr += (i > 1 ? "," : "") + ("c" + std::to_string(i));
  for (int i = 2; i <= m.n; ++i)
    for (int j = i; j <= m.n; ++j)
      hdr += ",a" + std::to_string(i) + std::to_string(j);
  write_csv(rep, dir + "/recover.csv", hdr, rows);
}

// jump extraction on a synthetic step: exact for polynomial sides
checks::Criterion lemma6_synthetic() {
  checks::Criterion cr{0, "jump extraction on synthetic step"};
  int N = 256;
  std::vector<double> eta = eta_grid(8.0, N);
  std::vector<double> g(N);
  for (int i = 0; i < N; ++i) {
    double e = eta[i];
    g[i] = (e > 0 ? 1.0 : 0.0) + 0.2 * e + 0.1 * e * e;
  }
  JumpEstimate J = jump_extract(eta, g);
  double err = std::abs(J.delta - 1.0);
  char buf[96];
  std::snprintf(buf, sizeof buf, "recovered jump %.12g (true 1, tol 1e-9)", J.delta);
  cr.checks.push_back({"synthetic unit step", err < 1e-9, J.delta, buf});
  return cr;
}

// one-sided smoothness of d_eta q away from eta = 0: low-degree fits on each
// side of the window leave only a small residual
checks::Criterion lemma3_one_sided(const Config& cfg) {
  checks::Criterion cr{0, "one-sided continuity of the odd spectrum"};
  MetricField m = metric_from_config(cfg);
  SourceField a = source_from_config(cfg);
  double Xi = 32.0;
  int N = 512;
  Vec x(m.n);
  x[0] = 0.0;
  x[1] = -0.1;
  Vec xip(m.n - 1);
  xip[0] = 0.5;
  std::vector<double> u = sweep_xi1_par(m, a, x, xip, Xi, N, 2e-2 * m.domain.radius);
  SpectralGrid sg = fourier_xi1(u, Xi, Taper::cosine);
  std::vector<double> q(N);
  double qmax = 0.0;
  for (int i = 0; i < N; ++i) {
    q[i] = sg.q(i);
    qmax = std::max(qmax, std::abs(q[i]));
  }
  JumpEstimate J = jump_extract(sg.eta, q);
  double rel = (J.resid_plus + J.resid_minus) / std::max(qmax, 1e-300);
  char buf[96];
  std::snprintf(buf, sizeof buf, "one-sided fit residual %.3g of max |q| (tol 0.1)", rel);
  cr.checks.push_back({"one-sided fit residual", rel < 0.1, rel, buf});
  return cr;
}

}  // namespace

SuiteReport run_experiment(const Config& cfg, const std::string& suite,
                           const std::string& out_dir, uint64_t seed) {
  SuiteReport rep;
  std::filesystem::create_directories(out_dir);
  bool all = suite == "all";
  bool geod = all || suite == "geodesic";
  bool forw = all || suite == "forward";
  bool kin = all || suite == "kinetic" || suite == "kinetic-check";
  bool spec = all || suite == "spectrum";
  bool lem = all || suite == "lemmas" || suite == "lemma-check";
  bool reco = all || suite == "recover";
  bool uniq = all || suite == "uniqueness";
  if (!(geod || forw || kin || spec || lem || reco || uniq))
    throw config_error("unknown suite: " + suite);

  // dependency order: geodesic -> forward -> spectrum -> recover
  if (geod) {
    run_criterion(rep, [&] { return checks::c1_euclidean_exactness(seed); });
    run_criterion(rep, [&] { return checks::c2_homogeneity(seed); });
    artifact_geodesic(cfg, out_dir, rep);
  }
  if (forw) {
    run_criterion(rep, [&] { return checks::c3_forward_oracle(); });
    artifact_forward(cfg, out_dir, rep);
  }
  if (kin) run_criterion(rep, [&] { return checks::c4_kinetic_residual(); });
  if (spec) {
    run_criterion(rep, [&] { return checks::c6_spectral_identities(); });
    artifact_spectrum(cfg, out_dir, rep);
  }
  if (lem) {
    if (!geod) run_criterion(rep, [&] { return checks::c2_homogeneity(seed); });
    if (!kin) run_criterion(rep, [&] { return checks::c4_kinetic_residual(); });
    run_criterion(rep, [&] { return checks::c5_lemma1_contrast(); });
    run_criterion(rep, [&] { return checks::c7_characteristic(seed); });
    double t0 = now_ms();
    append_criterion(rep, lemma3_one_sided(cfg), now_ms() - t0, "Lemma 3");
    t0 = now_ms();
    append_criterion(rep, lemma6_synthetic(), now_ms() - t0, "Lemma 6");
    run_criterion(rep, [&] { return checks::c10_lemma45_limits(); });
  }
  if (reco) {
    run_criterion(rep, [&] { return checks::c8_jump_scaling(); });
    artifact_recover(cfg, out_dir, rep);
  }
  if (uniq) run_criterion(rep, [&] { return checks::c9_uniqueness(); });

  std::ofstream txt(out_dir + "/report.txt", std::ios::binary);
  txt << emit_report(rep, "text");
  std::ofstream csv(out_dir + "/report.csv", std::ios::binary);
  csv << emit_report(rep, "csv");
  rep.artifacts.push_back(out_dir + "/report.txt");
  rep.artifacts.push_back(out_dir + "/report.csv");
  return rep;
}

}  // namespace geokin::harness

// pfchain: command-line front end for the chain laboratory. One subcommand per
// experiment; each run validates its configuration up front, writes a single
// CSV or JSON table with a versioned schema comment, and (when writing to a
// file) drops a manifest with the effective-config hash, program version and
// wall time. Exit codes: 0 ok, 2 bad configuration, 3 numerical
// non-convergence or a failed identity check, 4 resource cap exceeded.

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "pf/analytics.hpp"
#include "pf/dmrg.hpp"
#include "pf/domainwall.hpp"
#include "pf/edgemode.hpp"
#include "pf/exact.hpp"
#include "pf/fock.hpp"
#include "pf/groundstate.hpp"
#include "pf/linop.hpp"
#include "pf/model.hpp"
#include "pf/spectra.hpp"
#include "pf/util.hpp"

namespace {

using json = nlohmann::json;
using namespace pf;

constexpr const char* kProgram = "pfchain";
constexpr const char* kVersion = "1.0.0";

enum ExitCode : int { kOk = 0, kConfig = 2, kNumeric = 3, kResource = 4 };

int fail_config(const std::string& msg) {
  std::fprintf(stderr, "%s: config error: %s\n", kProgram, msg.c_str());
  return kConfig;
}

int fail_resource(const std::string& msg) {
  std::fprintf(stderr, "%s: resource cap: %s\n", kProgram, msg.c_str());
  return kResource;
}

// ---- output plumbing --------------------------------------------------

struct Sink {
  std::FILE* f = stdout;
  bool own = false;

  ~Sink() {
    if (own) std::fclose(f);
  }
  bool open(const std::string& path) {
    if (path.empty() || path == "-") return true;
    f = std::fopen(path.c_str(), "w");
    if (!f) return false;
    own = true;
    return true;
  }
};

struct Common {
  std::string out;       // empty or "-": stdout
  std::string manifest;  // empty: <out>.manifest.json; "none": skip
  int threads = 0;
};

void add_common(CLI::App* sub, Common& c) {
  sub->fallthrough();  // lets --config and other parent options follow the subcommand
  sub->add_option("-o,--out", c.out, "output path ('-' or empty: stdout)");
  sub->add_option("--manifest", c.manifest,
                  "manifest path (default <out>.manifest.json, 'none' disables)");
  sub->add_option("--threads", c.threads, "worker threads, 0 = auto; PF_THREADS overrides")
      ->check(CLI::Range(0, 256));
}

void schema_line(std::FILE* f, const char* name, int version, const char* cols) {
  std::fprintf(f, "# schema: %s v%d\n# program: %s %s\n%s\n", name, version, kProgram,
               kVersion, cols);
}

// manifest next to the output file; skipped for stdout runs unless --manifest
int write_manifest(const CLI::App& app, const std::string& command, const Common& c,
                   const char* schema, double wall, int code) {
  if (c.manifest == "none") return code;
  std::string path = c.manifest;
  if (path.empty()) {
    if (c.out.empty() || c.out == "-") return code;
    path = c.out + ".manifest.json";
  }
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(fnv1a(app.config_to_str(true, false))));
  json m;
  m["program"] = kProgram;
  m["version"] = kVersion;
  m["command"] = command;
  m["schema"] = schema;
  m["config_hash"] = hash;
  m["wall_seconds"] = wall;
  m["output"] = (c.out.empty() || c.out == "-") ? "-" : c.out;
  m["exit_code"] = code;
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) {
    std::fprintf(stderr, "%s: cannot write manifest %s\n", kProgram, path.c_str());
    return code == kOk ? kConfig : code;
  }
  const std::string s = m.dump(2) + "\n";
  std::fwrite(s.data(), 1, s.size(), f);
  std::fclose(f);
  return code;
}

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

json mat3_json(const Eigen::Matrix3cd& m) {
  json rows = json::array();
  for (int r = 0; r < 3; ++r) {
    json row = json::array();
    for (int c = 0; c < 3; ++c) row.push_back(cplx_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

void dump_json(std::FILE* f, const json& j) {
  const std::string s = j.dump(2) + "\n";
  std::fwrite(s.data(), 1, s.size(), f);
}

// ---- verify: exact operator identities --------------------------------

struct VerifyCfg {
  Common c;
  int L = 3;
  double phi = 0.7;
};

int run_verify(const VerifyCfg& v, std::FILE* f) {
  const int L = v.L;
  struct Row {
    std::string name;
    bool ok;
    double residual;  // 0/1 for exact checks
  };
  std::vector<Row> rows;
  auto exact_row = [&](std::string name, bool ok) {
    rows.push_back({std::move(name), ok, ok ? 0.0 : 1.0});
  };
  auto numeric_row = [&](std::string name, double res, double tol) {
    rows.push_back({std::move(name), res <= tol, res});
  };

  const Cyclotomic w = Cyclotomic::omega(1);
  const Cyclotomic w2 = Cyclotomic::omega(2);
  const Cyclotomic third(mpq_class(1, 3));
  const Cyclotomic two_thirds(mpq_class(2, 3));
  const CycSparse one = ex_identity(L);

  // edge-operator relations over the whole chain
  {
    std::vector<CycSparse> g;
    for (int a = 1; a <= 2 * L; ++a) g.push_back(ex_parafermion(L, a));
    bool cube = true, sq = true, comm = true;
    for (const auto& ga : g) {
      cube = cube && (ga * ga * ga == one);
      sq = sq && (ga.dagger() == ga * ga);
    }
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = i + 1; j < g.size(); ++j)
        comm = comm && (g[i] * g[j] == w * (g[j] * g[i]));
    exact_row("gamma_a^3 = 1, all 2L edge operators", cube);
    exact_row("gamma_a^dag = gamma_a^2", sq);
    exact_row("gamma_a gamma_b = w gamma_b gamma_a, a < b", comm);
  }

  // mode-operator identities per site
  {
    bool def1 = true, def2 = true, nil = true, cross = true, number = true;
    bool inv = true, bilin = true, numgam = true, stringdef = true;
    for (int j = 1; j <= L; ++j) {
      const CycSparse C = ex_fock_annihilator(L, j);
      const CycSparse Cd = C.dagger();
      const CycSparse C2 = C * C, Cd2 = Cd * Cd;
      const CycSparse N = ex_number(L, j);
      const CycSparse g1 = ex_parafermion(L, 2 * j - 1);
      const CycSparse g2 = ex_parafermion(L, 2 * j);
      const CycSparse g1d = g1.dagger(), g2d = g2.dagger();
      const CycSparse tau = ex_clock_tau(L, j);  // diag w^{n_j}

      def1 = def1 && (g1 == w * (C + Cd2));
      def2 = def2 && (g2 == C * tau + Cd2);
      nil = nil && (C * C2).is_zero();
      number = number && (N == Cd * C + Cd2 * C2);
      stringdef = stringdef && (C == ex_phase_string(L, j) * ex_lower(L, j));

      inv = inv && (C == (two_thirds * w2) * g1 - third * g2 - (third * w2) * (g1d * g2d));
      inv = inv && (Cd == (two_thirds * w) * g1d - third * g2d - (third * w) * (g2 * g1));
      inv = inv && (C2 == (third * w) * g1d + third * g2d + (third * w) * (g2 * g1));
      inv = inv && (Cd2 == (third * w2) * g1 + third * g2 + (third * w2) * (g1d * g2d));

      bilin = bilin &&
              (Cd * C == two_thirds * one - (third * w) * (g1d * g2) - (third * w2) * (g2d * g1));
      bilin = bilin &&
              (Cd2 * C2 == third * one + (third * w2) * (g1d * g2) + (third * w) * (g2d * g1));
      // i sqrt(3) = w - w^2 exactly
      numgam = numgam && (N == one + (third * (w2 - w)) * (g1d * g2) +
                                   (third * (w - w2)) * (g2d * g1));
    }
    for (int j = 1; j <= L; ++j)
      for (int k = j + 1; k <= L; ++k) {
        const CycSparse Cj = ex_fock_annihilator(L, j), Ck = ex_fock_annihilator(L, k);
        cross = cross && (Cj * Ck == w * (Ck * Cj));
      }
    exact_row("gamma_{2j-1} = w (C_j + C_j^dag2)", def1);
    exact_row("gamma_{2j} = C_j w^{N_j} + C_j^dag2", def2);
    exact_row("C_j^3 = 0", nil);
    exact_row("C_j C_k = w C_k C_j, j < k", cross);
    exact_row("N_j = C^dag C + C^dag2 C^2", number);
    exact_row("C_j carries the phase string of sites < j", stringdef);
    exact_row("C, C^dag, C^2, C^dag2 recovered from edge bilinears", inv);
    exact_row("C^dag C and C^dag2 C^2 from edge bilinears", bilin);
    exact_row("N_j = 1 - (i sqrt3/3)(g1d g2 - g2d g1)", numgam);
  }

  // clock operators and the global charge
  {
    bool weyl = true;
    for (int j = 1; j <= L; ++j) {
      const CycSparse s = ex_clock_sigma(L, j), t = ex_clock_tau(L, j);
      weyl = weyl && (s * s * s == one) && (t * t * t == one) && (s * t == w * (t * s));
    }
    const CycSparse Q = ex_charge(L);
    bool qrel = (Q * Q * Q == one);
    for (int a = 1; a <= 2 * L; ++a) {
      const CycSparse ga = ex_parafermion(L, a);
      qrel = qrel && (Q * ga == w * (ga * Q));
    }
    exact_row("sigma^3 = tau^3 = 1, sigma tau = w tau sigma", weyl);
    exact_row("Q^3 = 1 and Q gamma_a = w gamma_a Q", qrel);
  }

  // numeric symmetry checks on the chain Hamiltonian
  {
    const ModelParams p = solvable_params(L, v.phi);
    const LinOp H = build_H(p);
    double max_im = 0;
    for (int k = 0; k < H.mat.outerSize(); ++k)
      for (SpMat::InnerIterator it(H.mat, k); it; ++it)
        max_im = std::max(max_im, std::abs(it.value().imag()));
    numeric_row("H real in the occupation basis", max_im, 1e-12);
    numeric_row("H = H^dag", max_abs((H - H.dagger()).mat), 1e-12);
    const LinOp Q = build_charge(L);
    numeric_row("[H, Q] = 0", max_abs((H * Q - Q * H).mat), 1e-12);
  }

  int failures = 0;
  for (const auto& r : rows) {
    if (!r.ok) ++failures;
    if (r.residual == 0.0 || r.residual == 1.0)
      std::fprintf(f, "%-4s  %-9s  %s\n", r.ok ? "ok" : "FAIL", "exact", r.name.c_str());
    else
      std::fprintf(f, "%-4s  %-9.2e  %s\n", r.ok ? "ok" : "FAIL", r.residual, r.name.c_str());
  }
  std::fprintf(f, "%d checks, %d failures (L = %d, phi = %s)\n",
               static_cast<int>(rows.size()), failures, L, fmt_g(v.phi).c_str());
  return failures == 0 ? kOk : kNumeric;
}

// ---- ed: charge-sector spectra -----------------------------------------

struct EdCfg {
  Common c;
  std::vector<int> L{4};
  std::vector<double> phi{0.0};
  int levels = 6;
  bool no_boundary = false;
  double J = 1.0;
};

int run_ed(const EdCfg& e, std::FILE* f) {
  for (int L : e.L)
    if (L > 12) return fail_resource("ed handles L <= 12 (sector Lanczos beyond that is untested)");
  schema_line(f, "sector-spectra", 1, "phi,L,q,m,energy");
  for (double phi : e.phi)
    for (int L : e.L) {
      const int levels = static_cast<int>(
          std::min<std::uint64_t>(static_cast<std::uint64_t>(e.levels), pow3(L - 1)));
      const ModelParams p = solvable_params(L, phi, e.J, !e.no_boundary);
      const SpectrumTable t = sector_spectra(p, levels);
      for (int q = 0; q < 3; ++q)
        for (int m = 0; m < levels; ++m)
          std::fprintf(f, "%s,%d,%d,%d,%s\n", fmt_g(phi).c_str(), L, q, m,
                       fmt_g(t.level(m, q)).c_str());
    }
  return kOk;
}

// ---- gs-check: parent zero modes and state representations -------------

struct GsCfg {
  Common c;
  std::vector<int> L{4, 5, 6};
  std::vector<double> phi{-1.0, 0.5, 2.0};
};

int run_gs_check(const GsCfg& g, std::FILE* f) {
  for (int L : g.L)
    if (L > 10) return fail_resource("gs-check builds dense vectors; L <= 10");
  json out = json::array();
  for (int L : g.L)
    for (double phi : g.phi) {
      json rec;
      rec["L"] = L;
      rec["phi"] = phi;

      const NormTable nt = norm_constants(L, phi);
      rec["log_norm"] = {nt.log_norm[0], nt.log_norm[1], nt.log_norm[2]};

      const ModelParams p = solvable_params(L, phi);
      const LinOp H = build_H(p);
      const LinOp P = build_parent(L, phi);
      LinOp D = P - H;
      const double offset = D.mat.coeff(0, 0).real();
      rec["parent_offset"] = offset;
      rec["parent_identity_residual"] = max_abs((D - offset * identity_op(L)).mat);

      double res_max = 0, edev_max = 0, fid_mps = 0, fid_fac = 0;
      for (int i = 0; i < 3; ++i) {
        const GroundState gs = build_gs_vector(L, phi, i);
        res_max = std::max(res_max, (P.mat * gs.amp).norm());
        const double e = (gs.amp.adjoint() * (H.mat * gs.amp))(0, 0).real();
        edev_max = std::max(edev_max, std::abs(e + offset));
        fid_mps = std::max(fid_mps,
                           1.0 - representation_fidelity(gs, build_gs_mps(L, phi, i)));
        fid_fac = std::max(fid_fac,
                           1.0 - representation_fidelity(gs, factorized_form(L, phi, i)));
      }
      rec["parent_residual_max"] = res_max;
      rec["energy_dev_max"] = edev_max;
      rec["infidelity_mps_max"] = fid_mps;
      rec["infidelity_factorized_max"] = fid_fac;
      out.push_back(rec);
    }
  dump_json(f, out);
  return kOk;
}

// ---- correlators / entanglement -----------------------------------------

struct CorrCfg {
  Common c;
  int L = 120;
  std::vector<double> phi{-1.0, 0.5, 2.0};
  int i = 0;
};

int run_correlators(const CorrCfg& cc, std::FILE* f) {
  if (cc.L > 4000) return fail_resource("correlators: L <= 4000");
  schema_line(f, "correlators", 1, "phi,i,ell,G_re,G_im,G_abs,F_re,F_im,F_abs");
  for (double phi : cc.phi)
    for (int ell = 1; ell <= cc.L; ++ell) {
      const cplx G = corr_G(cc.L, phi, cc.i, ell);
      const cplx F = F_func(cc.L, phi, cc.i, ell);
      std::fprintf(f, "%s,%d,%d,%s,%s,%s,%s,%s,%s\n", fmt_g(phi).c_str(), cc.i, ell,
                   fmt_g(G.real()).c_str(), fmt_g(G.imag()).c_str(),
                   fmt_g(std::abs(G)).c_str(), fmt_g(F.real()).c_str(),
                   fmt_g(F.imag()).c_str(), fmt_g(std::abs(F)).c_str());
    }
  return kOk;
}

struct EntCfg {
  Common c;
  int L = 120;
  std::vector<double> phi{0.5, 1.0, 2.0};
  int i = 0;
};

int run_entanglement(const EntCfg& ec, std::FILE* f) {
  if (ec.L > 4000) return fail_resource("entanglement: L <= 4000");
  schema_line(f, "entanglement", 1, "phi,i,ell,lambda0,lambda1,lambda2,entropy");
  for (double phi : ec.phi)
    for (int ell = 1; ell < ec.L; ++ell) {
      const EntSpectrum s = ent_spectrum(ec.L, phi, ec.i, ell);
      std::fprintf(f, "%s,%d,%d,%s,%s,%s,%s\n", fmt_g(phi).c_str(), ec.i, ell,
                   fmt_g(s.lambda[0]).c_str(), fmt_g(s.lambda[1]).c_str(),
                   fmt_g(s.lambda[2]).c_str(), fmt_g(s.entropy).c_str());
    }
  return kOk;
}

// ---- edge-mode --------------------------------------------------------

struct EdgeCfg {
  Common c;
  int L = 4;
  std::vector<double> alphas{0.01, 0.02, 0.04};
  std::vector<double> phis{0.0, 0.0125, 0.025, 0.05, 0.1};
  int vj_L = 3;
};

int run_edge(const EdgeCfg& e, std::FILE* f) {
  if (e.L > 6 || e.vj_L > 6) return fail_resource("edge-mode: dense operator products need L <= 6");
  json out;

  const AlgebraScaling sc = chi1_algebra_scaling(e.L, e.alphas);
  out["algebra_scaling"] = {{"L", e.L},
                            {"alpha", sc.alpha},
                            {"cube_residual", sc.cube_residual},
                            {"conj_residual", sc.conj_residual},
                            {"cube_slope", sc.cube_slope},
                            {"conj_slope", sc.conj_slope}};

  json tables = json::array();
  for (double phi : e.phis) {
    const GsMatrixTables t = gs_matrix_elements(e.L, phi);
    tables.push_back({{"phi", phi},
                      {"alpha", cplx_json(t.alpha)},
                      {"chi1", mat3_json(t.chi1)},
                      {"chi2", mat3_json(t.chi2)},
                      {"cyclic_dev1", t.cyclic_dev1},
                      {"cyclic_dev2", t.cyclic_dev2},
                      {"off_cyclic1", t.off_cyclic1},
                      {"off_cyclic2", t.off_cyclic2}});
  }
  out["ground_manifold"] = tables;

  const VjReport vj = vj_eigenoperator_check(e.vj_L);
  out["eigenoperators"] = {{"L", e.vj_L},
                           {"vj_residual", vj.vj_residual},
                           {"eps", vj.eps},
                           {"closure", mat3_json(vj.closure)},
                           {"closure_residual", vj.closure_residual},
                           {"closure_eigs", json::array({cplx_json(vj.closure_eigs[0]),
                                                         cplx_json(vj.closure_eigs[1]),
                                                         cplx_json(vj.closure_eigs[2])})}};
  dump_json(f, out);
  return kOk;
}

// ---- dmrg -------------------------------------------------------------

struct DmrgCfg {
  Common c;
  int L = 8;
  std::vector<double> phi{0.5};
  int chi = 60;
  int sweeps = 40;
  double tol = 1e-10;
  double cutoff = 1e-12;
  bool ground_only = false;
};

constexpr const char* kDmrgCols = "phi,L,chi_max,q,e0,e1,gap,converged,max_trunc";

// one grid point: three sector grounds, optionally three first excited;
// rows share the global gap column. carry, when non-null, seeds the
// excited-state sweeps once use_carry is set and keeps the converged states
// for the next point (continuation across a phi grid).
int dmrg_point(std::FILE* f, double phi, int L, const DmrgCfg& d,
               std::array<QnMps, 3>* carry, bool use_carry = false) {
  DmrgOptions opt;
  opt.chi_max = d.chi;
  opt.max_sweeps = d.sweeps;
  opt.tol = d.tol;
  opt.cutoff = d.cutoff;
  const ModelParams p = solvable_params(L, phi);

  std::array<double, 3> e0{}, e1{};
  std::array<bool, 3> conv0{}, conv1{{true, true, true}};
  std::array<double, 3> trunc{};
  for (int q = 0; q < 3; ++q) {
    const VarMps gs = dmrg_ground(p, q, opt);
    e0[q] = gs.energy;
    conv0[q] = gs.converged;
    trunc[q] = gs.max_truncation;
    e1[q] = std::nan("");
    if (!d.ground_only) {
      const VarMps ex = (carry && use_carry) ? dmrg_excited(p, gs, (*carry)[q], opt)
                                             : dmrg_excited(p, gs, opt);
      e1[q] = ex.energy;
      conv1[q] = ex.converged;
      trunc[q] = std::max(trunc[q], ex.max_truncation);
      if (carry) (*carry)[q] = ex.mps;
    }
  }
  double gap = std::nan("");
  if (!d.ground_only)
    gap = *std::min_element(e1.begin(), e1.end()) - *std::min_element(e0.begin(), e0.end());
  bool all_conv = true;
  for (int q = 0; q < 3; ++q) {
    all_conv = all_conv && conv0[q] && conv1[q];
    std::fprintf(f, "%s,%d,%d,%d,%s,%s,%s,%d,%s\n", fmt_g(phi).c_str(), L, d.chi, q,
                 fmt_g(e0[q]).c_str(), fmt_g(e1[q]).c_str(), fmt_g(gap).c_str(),
                 conv0[q] && conv1[q] ? 1 : 0, fmt_g(trunc[q]).c_str());
  }
  return all_conv ? kOk : kNumeric;
}

int run_dmrg(const DmrgCfg& d, std::FILE* f) {
  if (d.L > 256 || d.chi > 512) return fail_resource("dmrg: L <= 256 and chi <= 512");
  schema_line(f, "dmrg-gap", 1, kDmrgCols);
  int code = kOk;
  for (double phi : d.phi) code = std::max(code, dmrg_point(f, phi, d.L, d, nullptr));
  return code;
}

// ---- figure tables -----------------------------------------------------

struct Fig2Cfg {
  Common c;
  std::vector<double> phi{-1.0, 0.5, 2.0};
  int L = 120;
  double xi_min = -3.0, xi_max = 3.0;
  int xi_points = 121;
};

int run_figure2(const Fig2Cfg& fc, std::FILE* f) {
  if (fc.L > 4000) return fail_resource("figure2: L <= 4000");
  schema_line(f, "correlation-overview", 1, "panel,phi,x,value");
  auto row = [&](const char* panel, double phi, double x, double v) {
    std::fprintf(f, "%s,%s,%s,%s\n", panel, fmt_g(phi).c_str(), fmt_g(x).c_str(),
                 fmt_g(v).c_str());
  };
  // two-point correlator magnitude vs separation
  for (double phi : fc.phi)
    for (int ell = 1; ell <= fc.L; ++ell)
      row("G", phi, ell, std::abs(corr_G(fc.L, phi, 0, ell)));
  // sector density imbalance vs chain length
  for (double phi : fc.phi)
    for (int L = 2; L <= fc.L; L += 2)
      row("ndiff", phi, L, std::abs(density(L, phi, 0) - density(L, phi, 2)));
  // correlation length across the coupling line
  for (int k = 0; k < fc.xi_points; ++k) {
    const double phi = fc.xi_points == 1
                           ? fc.xi_min
                           : fc.xi_min + k * (fc.xi_max - fc.xi_min) / (fc.xi_points - 1);
    row("xi", phi, phi, xi(phi));
  }
  // sector-mixing amplitude vs position
  for (double phi : fc.phi)
    for (int ell = 1; ell <= fc.L; ++ell)
      row("F", phi, ell, std::abs(F_func(fc.L, phi, 0, ell)));
  return kOk;
}

struct Fig3Cfg {
  Common c;
  std::vector<double> phi{0.5, 1.0, 2.0};
  double lambda_phi = 2.0;
  int L = 120;
};

int run_figure3_top(const Fig3Cfg& fc, std::FILE* f) {
  if (fc.L > 4000) return fail_resource("figure3-top: L <= 4000");
  schema_line(f, "entanglement-overview", 1, "panel,phi,ell,key,value");
  for (int ell = 1; ell < fc.L; ++ell) {
    const EntSpectrum s = ent_spectrum(fc.L, fc.lambda_phi, 0, ell);
    for (int p = 0; p < 3; ++p)
      std::fprintf(f, "lambda,%s,%d,p%d,%s\n", fmt_g(fc.lambda_phi).c_str(), ell, p,
                   fmt_g(s.lambda[p]).c_str());
  }
  for (double phi : fc.phi)
    for (int ell = 1; ell < fc.L; ++ell)
      std::fprintf(f, "entropy,%s,%d,S,%s\n", fmt_g(phi).c_str(), ell,
                   fmt_g(ent_spectrum(fc.L, phi, 0, ell).entropy).c_str());
  return kOk;
}

struct F3GapCfg {
  Common c;
  double phi_min = -2.0, phi_max = 3.0;
  int points = 13;
  int L = 48;
  int chi = 60;
  int sweeps = 40;
  double tol = 1e-5;
  double cutoff = 1e-10;
};

int run_figure3_gap(const F3GapCfg& fc, std::FILE* f) {
  if (fc.L > 256 || fc.chi > 512) return fail_resource("figure3-gap: L <= 256 and chi <= 512");
  schema_line(f, "dmrg-gap", 1, kDmrgCols);
  DmrgCfg d;
  d.L = fc.L;
  d.chi = fc.chi;
  d.sweeps = fc.sweeps;
  d.tol = fc.tol;
  d.cutoff = fc.cutoff;
  std::array<QnMps, 3> carry{};
  int code = kOk;
  for (int k = 0; k < fc.points; ++k) {
    const double phi = fc.points == 1
                           ? fc.phi_min
                           : fc.phi_min + k * (fc.phi_max - fc.phi_min) / (fc.points - 1);
    code = std::max(code, dmrg_point(f, phi, fc.L, d, &carry, k > 0));
    std::fflush(f);
  }
  return code;
}

// ---- inset: wall splitting scaling --------------------------------------

struct InsetCfg {
  Common c;
  std::vector<double> phi{1e-4, 1e-3, 1e-2};
  int Lmax = 400;
};

int run_inset(const InsetCfg& ic, std::FILE* f) {
  if (ic.Lmax > 1200) return fail_resource("inset: Lmax <= 1200");
  schema_line(f, "wall-splitting", 1, "phi,L,m,delta");
  std::vector<int> L1, L4;
  for (int L = 8; L <= std::min(44, ic.Lmax); L += 4) L1.push_back(L);
  for (int L = 60; L <= ic.Lmax; L += 40) L4.push_back(L);
  for (double phi : ic.phi) {
    if (!L1.empty())
      for (const DwScalingRow& r : dw_delta_scaling(phi, L1, 2, ic.c.threads))
        std::fprintf(f, "%s,%d,1,%s\n", fmt_g(phi).c_str(), r.L, fmt_g(r.delta[1]).c_str());
    if (!L4.empty())
      for (const DwScalingRow& r : dw_delta_scaling(phi, L4, 5, ic.c.threads))
        std::fprintf(f, "%s,%d,4,%s\n", fmt_g(phi).c_str(), r.L, fmt_g(r.delta[4]).c_str());
  }
  return kOk;
}

// merge "--opt -1,0.5,2" into "--opt=-1,0.5,2" so values that start with a
// negative number are not read as a flag cluster
std::vector<std::string> absorb_negative_values(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  std::vector<std::string> out;
  out.reserve(args.size());
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i + 1 < args.size() && args[i].size() > 2 && args[i].rfind("--", 0) == 0 &&
        args[i].find('=') == std::string::npos) {
      const std::string& next = args[i + 1];
      if (next.size() > 1 && next[0] == '-' &&
          (std::isdigit(static_cast<unsigned char>(next[1])) || next[1] == '.')) {
        out.push_back(args[i] + "=" + next);
        ++i;
        continue;
      }
    }
    out.push_back(args[i]);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for an open Z3 clock chain with a solvable coupling line"};
  app.set_version_flag("--version", std::string(kProgram) + " " + kVersion);
  app.set_config("--config", "", "read options from an ini file (sections per subcommand)");
  app.require_subcommand(1);

  int code = kOk;
  auto attach = [&](CLI::App* sub, Common& com, const char* schema, auto body) {
    sub->callback([&app, sub, &com, schema, &code, body]() {
      Stopwatch sw;
      Sink sink;
      if (!sink.open(com.out)) {
        std::fprintf(stderr, "%s: cannot open output %s\n", kProgram, com.out.c_str());
        code = kConfig;
        return;
      }
      const int rc = body(sink.f);
      code = write_manifest(app, sub->get_name(), com, schema, sw.seconds(), rc);
    });
  };

  VerifyCfg vc;
  {
    auto* s = app.add_subcommand("verify-algebra",
                                 "exact operator-identity and symmetry checks");
    s->add_option("--L", vc.L, "chain length")->check(CLI::Range(2, 5));
    s->add_option("--phi", vc.phi, "coupling for the numeric symmetry rows");
    add_common(s, vc.c);
    attach(s, vc.c, "verify-algebra", [&vc](std::FILE* f) { return run_verify(vc, f); });
  }

  EdCfg ec;
  {
    auto* s = app.add_subcommand("ed", "charge-sector spectra by exact diagonalization");
    s->add_option("--L", ec.L, "chain lengths")->delimiter(',')->check(CLI::Range(2, 20));
    s->add_option("--phi", ec.phi, "couplings on the solvable line")->delimiter(',');
    s->add_option("--levels", ec.levels, "levels per sector")->check(CLI::Range(1, 200));
    s->add_option("--J", ec.J, "bond coupling");
    s->add_flag("--no-boundary", ec.no_boundary, "drop the boundary correction");
    add_common(s, ec.c);
    attach(s, ec.c, "sector-spectra", [&ec](std::FILE* f) { return run_ed(ec, f); });
  }

  GsCfg gc;
  {
    auto* s = app.add_subcommand("gs-check",
                                 "parent-Hamiltonian zero modes and state representations");
    s->add_option("--L", gc.L, "chain lengths")->delimiter(',')->check(CLI::Range(2, 14));
    s->add_option("--phi", gc.phi, "couplings")->delimiter(',');
    add_common(s, gc.c);
    attach(s, gc.c, "gs-check", [&gc](std::FILE* f) { return run_gs_check(gc, f); });
  }

  CorrCfg cc;
  {
    auto* s = app.add_subcommand("correlators", "closed-form ground-state correlators");
    s->add_option("--L", cc.L, "chain length")->check(CLI::Range(2, 1000000));
    s->add_option("--phi", cc.phi, "couplings")->delimiter(',');
    s->add_option("--i", cc.i, "ground-state sector")->check(CLI::Range(0, 2));
    add_common(s, cc.c);
    attach(s, cc.c, "correlators", [&cc](std::FILE* f) { return run_correlators(cc, f); });
  }

  EntCfg nc;
  {
    auto* s = app.add_subcommand("entanglement", "closed-form entanglement spectrum and entropy");
    s->add_option("--L", nc.L, "chain length")->check(CLI::Range(2, 1000000));
    s->add_option("--phi", nc.phi, "couplings")->delimiter(',');
    s->add_option("--i", nc.i, "ground-state sector")->check(CLI::Range(0, 2));
    add_common(s, nc.c);
    attach(s, nc.c, "entanglement", [&nc](std::FILE* f) { return run_entanglement(nc, f); });
  }

  EdgeCfg xc;
  {
    auto* s = app.add_subcommand("edge-mode", "perturbative edge-mode algebra and matrix elements");
    s->add_option("--L", xc.L, "chain length for the algebra scaling")->check(CLI::Range(3, 8));
    s->add_option("--alpha", xc.alphas, "alpha sweep for the residual slopes")->delimiter(',');
    s->add_option("--phi", xc.phis, "couplings for the ground-manifold tables")->delimiter(',');
    s->add_option("--vj-L", xc.vj_L, "chain length for the commutator closure")
        ->check(CLI::Range(2, 6));
    add_common(s, xc.c);
    attach(s, xc.c, "edge-mode", [&xc](std::FILE* f) { return run_edge(xc, f); });
  }

  DmrgCfg dc;
  {
    auto* s = app.add_subcommand("dmrg", "variational MPS ground and first excited states");
    s->add_option("--L", dc.L, "chain length")->check(CLI::Range(2, 4096));
    s->add_option("--phi", dc.phi, "couplings")->delimiter(',');
    s->add_option("--chi", dc.chi, "bond-dimension cap")->check(CLI::Range(1, 4096));
    s->add_option("--sweeps", dc.sweeps, "max full sweep cycles")->check(CLI::Range(1, 500));
    s->add_option("--tol", dc.tol, "energy convergence tolerance");
    s->add_option("--cutoff", dc.cutoff, "discarded-weight cutoff");
    s->add_flag("--ground-only", dc.ground_only, "skip the excited-state runs");
    add_common(s, dc.c);
    attach(s, dc.c, "dmrg-gap", [&dc](std::FILE* f) { return run_dmrg(dc, f); });
  }

  Fig2Cfg f2;
  {
    auto* s = app.add_subcommand(
        "figure2", "correlation overview table: G, density imbalance, xi, F panels");
    s->add_option("--phi", f2.phi, "couplings for the G/ndiff/F panels")->delimiter(',');
    s->add_option("--L", f2.L, "chain length")->check(CLI::Range(4, 1000000));
    s->add_option("--xi-min", f2.xi_min, "xi panel: lowest coupling");
    s->add_option("--xi-max", f2.xi_max, "xi panel: highest coupling");
    s->add_option("--xi-points", f2.xi_points, "xi panel: grid size")->check(CLI::Range(1, 100000));
    add_common(s, f2.c);
    attach(s, f2.c, "correlation-overview", [&f2](std::FILE* f) { return run_figure2(f2, f); });
  }

  Fig3Cfg f3;
  {
    auto* s = app.add_subcommand(
        "figure3-top", "entanglement overview table: spectrum and entropy panels");
    s->add_option("--phi", f3.phi, "couplings for the entropy panel")->delimiter(',');
    s->add_option("--lambda-phi", f3.lambda_phi, "coupling for the spectrum panel");
    s->add_option("--L", f3.L, "chain length")->check(CLI::Range(4, 1000000));
    add_common(s, f3.c);
    attach(s, f3.c, "entanglement-overview",
           [&f3](std::FILE* f) { return run_figure3_top(f3, f); });
  }

  F3GapCfg fg;
  {
    auto* s = app.add_subcommand("figure3-gap", "DMRG gap across a coupling grid");
    s->add_option("--phi-min", fg.phi_min, "grid start");
    s->add_option("--phi-max", fg.phi_max, "grid end");
    s->add_option("--points", fg.points, "grid size")->check(CLI::Range(1, 200));
    s->add_option("--L", fg.L, "chain length")->check(CLI::Range(2, 4096));
    s->add_option("--chi", fg.chi, "bond-dimension cap")->check(CLI::Range(1, 4096));
    s->add_option("--sweeps", fg.sweeps, "max full sweep cycles")->check(CLI::Range(1, 500));
    s->add_option("--tol", fg.tol, "energy convergence tolerance");
    s->add_option("--cutoff", fg.cutoff, "discarded-weight cutoff");
    add_common(s, fg.c);
    attach(s, fg.c, "dmrg-gap", [&fg](std::FILE* f) { return run_figure3_gap(fg, f); });
  }

  InsetCfg ic;
  {
    auto* s = app.add_subcommand(
        "inset", "wall-splitting size scaling: exponential (m=1) and polynomial (m=4)");
    s->add_option("--phi", ic.phi, "couplings")->delimiter(',');
    s->add_option("--Lmax", ic.Lmax, "largest chain length")->check(CLI::Range(8, 100000));
    add_common(s, ic.c);
    attach(s, ic.c, "wall-splitting", [&ic](std::FILE* f) { return run_inset(ic, f); });
  }

  const std::vector<std::string> args = absorb_negative_values(argc, argv);
  std::vector<const char*> ptrs;
  ptrs.reserve(args.size());
  for (const auto& a : args) ptrs.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(ptrs.size()), ptrs.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "%s: %s\n", kProgram, e.what());
    return kNumeric;
  }
  return code;
}

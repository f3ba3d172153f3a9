#include <array>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "casurf/errors.hpp"
#include "casurf/expression.hpp"
#include "casurf/generators.hpp"
#include "casurf/io.hpp"
#include "casurf/numerics.hpp"
#include "casurf/surface.hpp"
#include "casurf/verify.hpp"
#include "json.hpp"

namespace {

using casurf::ClassificationReport;
using casurf::ConfigError;
using casurf::Family;
using casurf::GeneratorSpec;
using casurf::GridGeometry;
using casurf::Immersion;
using casurf::ModelMismatch;
using casurf::ParamRect;
using nlohmann::ordered_json;

struct SpecFlags {
  std::string config, family, warp, theta, alpha, t0, m, b0;
  std::string base_t, base_v, domain, grid, mode;
};

void add_spec_flags(CLI::App* cmd, SpecFlags& f) {
  cmd->add_option("--config", f.config, "key = value config file");
  cmd->add_option("--family", f.family,
                  "type_i | type_ii | type_iii | rotational | minimal_power | "
                  "harmonic_exp");
  cmd->add_option("--warp", f.warp,
                  "exp | constant:a | linear:a,b | power:m | table:PATH");
  cmd->add_option("--theta-deg", f.theta, "constant angle in degrees");
  cmd->add_option("--alpha", f.alpha, "profile expression in v (type_i)");
  cmd->add_option("--t0", f.t0, "slice height (type_iii)");
  cmd->add_option("--m", f.m, "power-law exponent in (0,1) (minimal_power)");
  cmd->add_option("--b0", f.b0, "cylinder radius (rotational at 90 degrees)");
  cmd->add_option("--base-t", f.base_t, "lower limit of the 1/f integrals");
  cmd->add_option("--base-v", f.base_v, "lower limit of the alpha integrals");
  cmd->add_option("--domain", f.domain, "parameter rectangle u0,u1,v0,v1");
  cmd->add_option("--grid", f.grid, "sample resolution NUxNV");
  cmd->add_option("--mode", f.mode, "analytic | fd derivative mode");
}

casurf::io::KeyValues merged_config(const SpecFlags& f) {
  casurf::io::KeyValues kv;
  if (!f.config.empty()) kv = casurf::io::parse_config_file(f.config);
  const auto put = [&kv](const char* key, const std::string& v) {
    if (!v.empty()) kv[key] = v;
  };
  put("family", f.family);
  put("warp", f.warp);
  put("theta_deg", f.theta);
  put("alpha", f.alpha);
  put("t0", f.t0);
  put("m", f.m);
  put("b0", f.b0);
  put("base_t", f.base_t);
  put("base_v", f.base_v);
  put("domain", f.domain);
  put("grid", f.grid);
  put("mode", f.mode);
  return kv;
}

bool fd_mode(const casurf::io::KeyValues& kv) {
  const auto it = kv.find("mode");
  if (it == kv.end() || it->second.empty() || it->second == "analytic") {
    return false;
  }
  if (it->second == "fd" || it->second == "finite_difference") return true;
  throw ConfigError("mode must be 'analytic' or 'fd', got '" + it->second +
                    "'");
}

bool rotational_family(Family f) {
  return f == Family::Rotational || f == Family::MinimalPower ||
         f == Family::HarmonicExp;
}

void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open output file '" + path + "'");
  out << body;
}

void emit_report(const ordered_json& j, const std::string& path) {
  const std::string body = j.dump(2) + "\n";
  std::cout << body;
  if (!path.empty()) write_text_file(path, body);
}

ordered_json classification_json(const ClassificationReport& r) {
  ordered_json j;
  j["verdict"] = r.verdict;
  j["theta_hat"] = r.theta_hat;
  j["theta_stddev"] = r.theta_stddev;
  j["umbilic_max"] = r.umbilic_max;
  j["alpha_residual"] = r.alpha_residual;
  j["alpha_nodes"] = r.alpha_nodes;
  j["alpha_values"] = r.alpha_values;
  j["mode"] = r.mode == casurf::DerivativeMode::Analytic
                  ? "analytic"
                  : "finite_difference";
  j["grid"] = {{"nu", r.nu}, {"nv", r.nv}};
  return j;
}

int cmd_generate(const SpecFlags& flags, const std::string& out_path,
                 const std::string& jsonl_path, const std::string& samples_path,
                 const std::string& model) {
  const auto kv = merged_config(flags);
  const GeneratorSpec spec = casurf::io::spec_from_config(kv);
  Immersion im = casurf::make_surface(spec);
  if (fd_mode(kv)) im = im.with_finite_differences();

  const bool half = model == "half_space";
  if (half && !im.space().warping().is_exp()) {
    throw ModelMismatch(
        "the half-space model needs the exponential warping; pick --model "
        "raw or --warp exp");
  }

  const GridGeometry gg =
      casurf::sweep_grid(im, spec.grid, {}, !jsonl_path.empty());

  casurf::io::ExportOptions eo;
  eo.half_space = half;
  eo.exclude_axis = rotational_family(spec.family);
  eo.flip_winding = (gg.points.front().cos_theta < 0.0) != half;

  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw ConfigError("cannot open output file '" + out_path + "'");
    casurf::io::write_obj(out, im.space(), gg, eo);
  }
  if (!jsonl_path.empty()) {
    std::ofstream out(jsonl_path);
    if (!out) throw ConfigError("cannot open output file '" + jsonl_path + "'");
    casurf::io::write_jsonl(out, im.space(), gg, eo);
  }
  if (!samples_path.empty()) {
    std::ofstream out(samples_path);
    if (!out) {
      throw ConfigError("cannot open output file '" + samples_path + "'");
    }
    casurf::io::write_samples(out, gg);
  }

  std::vector<double> th;
  th.reserve(gg.points.size());
  for (const auto& p : gg.points) th.push_back(p.theta);
  const casurf::num::Stats st = casurf::num::stats(th);

  ordered_json j;
  j["family"] = casurf::family_name(spec.family);
  j["warp"] = im.space().warping().family();
  j["grid"] = {{"nu", spec.grid.nu}, {"nv", spec.grid.nv}};
  j["model"] = half ? "half_space" : "raw";
  j["theta"] = {{"mean", st.mean}, {"stddev", st.stddev}};
  if (!out_path.empty()) j["mesh"] = out_path;
  if (!jsonl_path.empty()) j["records"] = jsonl_path;
  if (!samples_path.empty()) j["samples"] = samples_path;
  emit_report(j, "");
  return 0;
}

int cmd_verify(const SpecFlags& flags, std::string suite,
               const std::string& report_path, const std::string& tol_exact,
               const std::string& tol_fd, const std::string& tol_quadrature,
               const std::string& seed) {
  const auto kv = merged_config(flags);
  if (const auto it = kv.find("suite"); it != kv.end() && suite.empty()) {
    suite = it->second;
  }
  if (suite.empty()) suite = "all";
  const GeneratorSpec spec = casurf::io::spec_from_config(kv);

  casurf::SuiteOptions so;
  so.grid = spec.grid;
  if (!tol_exact.empty()) so.tol_exact = std::stod(tol_exact);
  if (!tol_fd.empty()) so.tol_fd = std::stod(tol_fd);
  if (!tol_quadrature.empty()) so.tol_quadrature = std::stod(tol_quadrature);
  if (!seed.empty()) so.seed = std::stoull(seed);

  casurf::VerificationReport rep;
  if (fd_mode(kv)) {
    const Immersion im = casurf::make_surface(spec).with_finite_differences();
    rep = casurf::run_suite(suite, im, so);
  } else {
    rep = casurf::run_suite(suite, spec, so);
  }
  emit_report(rep.to_json(), report_path);
  return rep.pass ? 0 : 1;
}

int cmd_classify(const SpecFlags& flags, const std::string& expression,
                 const std::string& samples_in, const std::string& report_path) {
  const auto kv = merged_config(flags);
  const GeneratorSpec spec = casurf::io::spec_from_config(kv);

  std::optional<Immersion> im;
  if (!expression.empty() && !samples_in.empty()) {
    throw ConfigError("pass either --expression or --samples-in, not both");
  }
  if (!expression.empty()) {
    const auto parts = casurf::parse_immersion_triple(expression);
    const double t0 = spec.t0;
    std::array<casurf::Expression, 3> du, dv, duu, duv, dvv;
    for (int c = 0; c < 3; ++c) {
      du[c] = parts[c].derivative('u');
      dv[c] = parts[c].derivative('v');
      duu[c] = du[c].derivative('u');
      duv[c] = du[c].derivative('v');
      dvv[c] = dv[c].derivative('v');
    }
    const auto point = [parts, t0](double u, double v) -> casurf::AmbientPoint {
      return {parts[0].eval(u, v, t0), parts[1].eval(u, v, t0),
              parts[2].eval(u, v, t0)};
    };
    const auto vec = [t0](const std::array<casurf::Expression, 3>& e,
                          const casurf::AmbientPoint& p, double u, double v) {
      return casurf::AmbientVector(p, e[0].eval(u, v, t0), e[1].eval(u, v, t0),
                                   e[2].eval(u, v, t0));
    };
    const ParamRect dom =
        spec.domain ? *spec.domain : ParamRect{-1.0, 1.0, -1.0, 1.0};
    Immersion built(casurf::WarpedSpace(spec.warping), point, dom);
    built.with_first_derivatives(
        [point, vec, du](double u, double v) {
          return vec(du, point(u, v), u, v);
        },
        [point, vec, dv](double u, double v) {
          return vec(dv, point(u, v), u, v);
        });
    built.with_second_derivatives(
        [point, vec, duu](double u, double v) {
          return vec(duu, point(u, v), u, v);
        },
        [point, vec, duv](double u, double v) {
          return vec(duv, point(u, v), u, v);
        },
        [point, vec, dvv](double u, double v) {
          return vec(dvv, point(u, v), u, v);
        });
    im = std::move(built);
  } else if (!samples_in.empty()) {
    const auto sg = casurf::io::read_samples_file(samples_in);
    im = casurf::io::immersion_from_samples(casurf::WarpedSpace(spec.warping),
                                            sg);
  } else {
    im = casurf::make_surface(spec);
  }
  if (fd_mode(kv)) im = im->with_finite_differences();

  const ClassificationReport rep = casurf::classify(*im, spec.grid);
  emit_report(classification_json(rep), report_path);
  return 0;
}

int cmd_report(const SpecFlags& flags, const std::string& report_path) {
  const auto kv = merged_config(flags);
  const GeneratorSpec spec = casurf::io::spec_from_config(kv);
  Immersion im = casurf::make_surface(spec);
  if (fd_mode(kv)) im = im.with_finite_differences();

  const GridGeometry gg = casurf::sweep_grid(im, spec.grid, {}, true);
  std::vector<double> th, hs, ks;
  th.reserve(gg.points.size());
  for (const auto& p : gg.points) {
    th.push_back(p.theta);
    hs.push_back(p.mean_curvature);
    ks.push_back(p.gauss_curvature);
  }
  double rg = 0.0, rc = 0.0, rl = 0.0;
  std::size_t interior = 0;
  for (const auto& r : gg.residuals) {
    if (std::isnan(r.gauss)) continue;
    rg = std::max(rg, r.gauss);
    rc = std::max(rc, r.codazzi);
    rl = std::max(rl, r.laplacian);
    ++interior;
  }
  const auto sth = casurf::num::stats(th);
  const auto sh = casurf::num::stats(hs);
  const auto sk = casurf::num::stats(ks);

  ordered_json j;
  j["config"] = casurf::io::parse_config_text(casurf::io::config_from_spec(spec));
  j["mode"] = im.mode() == casurf::DerivativeMode::Analytic
                  ? "analytic"
                  : "finite_difference";
  j["theta"] = {{"mean", sth.mean}, {"stddev", sth.stddev},
                {"min", sth.min},   {"max", sth.max}};
  j["mean_curvature"] = {{"min", sh.min}, {"max", sh.max}};
  j["gauss_curvature"] = {{"min", sk.min}, {"max", sk.max}};
  j["residual_max"] = {{"gauss", rg}, {"codazzi", rc}, {"laplacian", rl},
                       {"interior_nodes", interior}};
  emit_report(j, report_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "constant-angle surfaces in warped products: generate, verify, "
      "classify, report (set CASURF_THREADS to bound the sweep parallelism)"};
  app.require_subcommand(1);

  SpecFlags gen_flags, ver_flags, cls_flags, rep_flags;

  auto* gen = app.add_subcommand(
      "generate", "build a surface, export mesh / records / samples");
  add_spec_flags(gen, gen_flags);
  std::string gen_out, gen_jsonl, gen_samples, gen_model = "raw";
  gen->add_option("-o,--out", gen_out, "OBJ mesh output path");
  gen->add_option("--jsonl", gen_jsonl, "per-node geometry records (JSON lines)");
  gen->add_option("--samples", gen_samples, "sampled-immersion text output");
  gen->add_option("--model", gen_model, "raw | half_space vertex coordinates")
      ->check(CLI::IsMember({"raw", "half_space"}));

  auto* ver = app.add_subcommand("verify", "run a verification suite");
  add_spec_flags(ver, ver_flags);
  std::string ver_suite, ver_report, ver_te, ver_tf, ver_tq, ver_seed;
  ver->add_option("--suite", ver_suite,
                  "constant_angle | principal_direction | frame_connection | "
                  "gauss_codazzi | umbilical | flat_cone | minimal | harmonic "
                  "| compare_oracles | classification_roundtrip | all");
  ver->add_option("--report", ver_report, "also write the JSON report here");
  ver->add_option("--tol-exact", ver_te, "tolerance for closed-form laws");
  ver->add_option("--tol-fd", ver_tf, "tolerance for derivative-based laws");
  ver->add_option("--tol-quadrature", ver_tq, "tolerance for integral laws");
  ver->add_option("--seed", ver_seed, "sampling seed for random planes");

  auto* cls = app.add_subcommand(
      "classify", "measure an immersion and name its family");
  add_spec_flags(cls, cls_flags);
  std::string cls_expr, cls_samples, cls_report;
  cls->add_option("--expression", cls_expr,
                  "immersion as '(t(u,v), x(u,v), y(u,v))' in the expression "
                  "grammar (vars u, v, t0)");
  cls->add_option("--samples-in", cls_samples, "sampled-immersion text file");
  cls->add_option("--report", cls_report, "also write the JSON verdict here");

  auto* rep = app.add_subcommand("report", "print a geometry summary");
  add_spec_flags(rep, rep_flags);
  std::string rep_report;
  rep->add_option("--report", rep_report, "also write the JSON summary here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) {
      return cmd_generate(gen_flags, gen_out, gen_jsonl, gen_samples,
                          gen_model);
    }
    if (ver->parsed()) {
      return cmd_verify(ver_flags, ver_suite, ver_report, ver_te, ver_tf,
                        ver_tq, ver_seed);
    }
    if (cls->parsed()) {
      return cmd_classify(cls_flags, cls_expr, cls_samples, cls_report);
    }
    if (rep->parsed()) {
      return cmd_report(rep_flags, rep_report);
    }
  } catch (const casurf::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

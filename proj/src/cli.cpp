#include "orbitforge/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "orbitforge/candidate.hpp"
#include "orbitforge/error.hpp"
#include "orbitforge/gallery.hpp"
#include "orbitforge/qc_map.hpp"
#include "orbitforge/qr_checks.hpp"
#include "orbitforge/realizer.hpp"
#include "orbitforge/report.hpp"
#include "orbitforge/svg.hpp"
#include "orbitforge/taylor.hpp"

namespace orbitforge::cli {

namespace {

struct IoOptions {
  std::string input = "-";
  std::string output = "-";
  long precision_override = 0;  // 0 = keep the file's precision
  bool fast = false;            // hardware-double width (53 bits)
  std::string eq_tol;           // decimal overrides, empty = derived
  std::string rel_tol;
};

Precision precision_cap_from_env(Precision fallback) {
  const char* env = std::getenv("ORBITFORGE_PRECISION_CAP");
  if (!env || !*env) return fallback;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 53) return fallback;
  return static_cast<Precision>(v);
}

void add_io(CLI::App* cmd, IoOptions& io, bool with_tolerances = true) {
  cmd->add_option("--input,-i", io.input, "input path or - for stdin")
      ->capture_default_str();
  cmd->add_option("--output,-o", io.output, "output path or - for stdout")
      ->capture_default_str();
  cmd->add_option("--precision-bits", io.precision_override,
                  "re-parse input at this precision");
  cmd->add_flag("--fast", io.fast,
                "hardware-double width (53 bits); reports are marked");
  if (with_tolerances) {
    cmd->add_option("--tol", io.eq_tol, "equality tolerance (decimal)");
    cmd->add_option("--rel-tol", io.rel_tol, "relative tolerance (decimal)");
  }
}

std::string read_all(const std::string& path, std::istream& in) {
  if (path == "-") {
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) fail(Errc::out_of_range, "cannot open input file '" + path + "'");
  std::ostringstream buf;
  buf << file.rdbuf();
  return buf.str();
}

void write_all(const std::string& path, std::ostream& out,
               const std::string& bytes) {
  if (path == "-") {
    out << bytes;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) fail(Errc::out_of_range, "cannot open output file '" + path + "'");
  file << bytes;
}

struct LoadedSequence {
  OrbitSequence seq;
  std::string digest;
  ToleranceConfig tol;
  std::string precision_mode;
};

LoadedSequence load_sequence(const IoOptions& io, std::istream& in) {
  LoadedSequence loaded;
  std::string bytes = read_all(io.input, in);
  loaded.digest = content_digest(bytes);

  nlohmann::json doc = nlohmann::json::parse(bytes);
  if (io.fast) doc["precision_bits"] = 53L;
  else if (io.precision_override > 0) doc["precision_bits"] = io.precision_override;
  loaded.seq = OrbitSequence::from_json(doc);
  loaded.precision_mode = io.fast ? "fast" : "extended";

  loaded.tol = ToleranceConfig::for_precision(loaded.seq.precision_bits);
  if (!io.eq_tol.empty())
    loaded.tol.eq_tol = BigFloat::from_string(io.eq_tol, loaded.seq.precision_bits);
  if (!io.rel_tol.empty())
    loaded.tol.rel_tol =
        BigFloat::from_string(io.rel_tol, loaded.seq.precision_bits);
  loaded.tol.validate();
  return loaded;
}

int emit(const IoOptions& io, std::ostream& out, const std::string& verdict,
         const std::string& digest, nlohmann::json body,
         const std::string& precision_mode = "") {
  nlohmann::json report = make_report(verdict, digest, std::move(body));
  if (!precision_mode.empty()) report["precision_mode"] = precision_mode;
  write_all(io.output, out, report.dump(2) + "\n");
  return exit_code_for_verdict(verdict);
}

BigComplex parse_point_flag(const std::string& text, Precision prec) {
  auto comma = text.find(',');
  if (comma == std::string::npos)
    fail(Errc::parse_error, "expected 're,im' but got '" + text + "'");
  return BigComplex::from_strings(text.substr(0, comma), text.substr(comma + 1),
                                  prec);
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  return out;
}

BaseFunction parse_base_function(const std::string& text, Precision prec) {
  if (text.empty() || text == "0") return BaseFunction::zero(prec);
  nlohmann::json j = nlohmann::json::parse(text);
  const std::string kind = j.value("kind", "polynomial");
  if (kind == "polynomial") {
    std::vector<BigComplex> coeffs;
    for (const auto& c : j.at("coefficients")) {
      coeffs.push_back(BigComplex::from_strings(c.at(0).get<std::string>(),
                                                c.at(1).get<std::string>(),
                                                prec));
    }
    if (coeffs.empty()) coeffs.push_back(BigComplex::zero(prec));
    return BaseFunction::polynomial(std::move(coeffs));
  }
  if (kind == "exponential") {
    const auto& c = j.at("c");
    return BaseFunction::exponential_shift(BigComplex::from_strings(
        c.at(0).get<std::string>(), c.at(1).get<std::string>(), prec));
  }
  fail(Errc::parse_error, "unknown base-function kind '" + kind + "'");
}

std::optional<QCHypotheses> hypotheses_from_json(const nlohmann::json& j) {
  if (j.is_null()) return std::nullopt;
  QCHypotheses hyp;
  const auto& p = j.at("params");
  hyp.params.mu = p.at("mu").get<double>();
  hyp.params.nu = p.at("nu").get<double>();
  hyp.params.log2_C = p.at("log2_C").get<double>();
  hyp.params.n0 = p.at("n0").get<std::size_t>();
  hyp.D = j.at("D").get<double>();
  return hyp;
}

struct LoadedMap {
  PiecewiseQCMap map;
  std::string digest;
};

LoadedMap load_map(const IoOptions& io, std::istream& in) {
  std::string bytes = read_all(io.input, in);
  nlohmann::json doc = nlohmann::json::parse(bytes);
  const nlohmann::json& desc = doc.contains("body") ? doc.at("body") : doc;
  if (!desc.contains("sequence"))
    fail(Errc::parse_error, "not a map descriptor: missing 'sequence'");
  OrbitSequence seq = OrbitSequence::from_json(desc.at("sequence"));
  std::optional<QCHypotheses> hyp =
      hypotheses_from_json(desc.value("hypotheses", nlohmann::json()));
  return {build_qc_map(seq, hyp), content_digest(bytes)};
}

nlohmann::json audit_body(const PiecewiseQCMap& map) {
  const Precision prec = map.precision();
  BigFloat rel_tol =
      BigFloat::pow2(20 - static_cast<long>(prec), prec);
  nlohmann::json body;
  body["realization"] = verify_orbit_realization(map, rel_tol).to_json();
  body["circle_identity"] = verify_circle_identity(map, 16, rel_tol).to_json();
  nlohmann::json seams = nlohmann::json::array();
  bool seams_ok = true;
  for (std::size_t n = 0; n + 3 < map.sequence().size(); ++n) {
    SeamCheck check = verify_boundary_continuity(map, n, 16, rel_tol);
    seams_ok = seams_ok && check.pass;
    seams.push_back(check.to_json());
  }
  body["seams"] = seams;
  bool periodic = true;
  for (const auto& a : map.annuli())
    periodic = periodic && periodicity_audit(a, prec);
  body["log_periodicity"] = periodic;
  DilatationReport dil = dilatation_report(map);
  body["dilatation"] = dil.to_json();

  bool pass = body["realization"]["verdict"] == "pass" &&
              body["circle_identity"]["verdict"] == "pass" && seams_ok &&
              periodic && dil.bound_ok;
  body["all_pass"] = pass;
  return body;
}

// --- subcommand runners -------------------------------------------------

int run_validate(const IoOptions& io, std::istream& in, std::ostream& out) {
  LoadedSequence loaded = load_sequence(io, in);
  ConsistencyReport report =
      check_candidate_consistency(loaded.seq, loaded.tol);
  return emit(io, out, report.pass ? "pass" : "fail", loaded.digest,
              report.to_json(), loaded.precision_mode);
}

int run_classify(const IoOptions& io, std::istream& in, std::ostream& out) {
  LoadedSequence loaded = load_sequence(io, in);
  OrbitClass cls = classify_orbit(loaded.seq, loaded.tol);
  return emit(io, out, "info", loaded.digest, cls.to_json(),
              loaded.precision_mode);
}

int run_degree_hint(const IoOptions& io, std::istream& in, std::ostream& out) {
  LoadedSequence loaded = load_sequence(io, in);
  DegreeHint hint = polynomial_degree_hint(loaded.seq);
  return emit(io, out, "info", loaded.digest, hint.to_json(),
              loaded.precision_mode);
}

int run_realize_poly(const IoOptions& io, const std::string& base_text,
                     std::istream& in, std::ostream& out) {
  LoadedSequence loaded = load_sequence(io, in);
  const Precision prec = loaded.seq.precision_bits;
  PeriodicOrbitSpec spec =
      PeriodicOrbitSpec::from_sequence(loaded.seq, loaded.tol);
  BaseFunction base = parse_base_function(base_text, prec);
  Realizer f = build_periodic_realizer(spec, base, prec);
  RealizationCheck check = verify_realization(f, loaded.seq, loaded.tol);

  nlohmann::json body;
  if (f.expanded()) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& c : f.coefficients()) {
      auto [re, im] = c.to_strings();
      coeffs.push_back({re, im});
    }
    body["coefficients"] = coeffs;
    body["degree"] = f.degree();
  } else {
    body["coefficients"] = nullptr;
    body["form"] = "closed-form evaluator (transcendental base)";
  }
  body["node_residual"] = f.node_residual().to_string();
  body["conditioning_warning"] =
      f.conditioning_warning() ? nlohmann::json(*f.conditioning_warning())
                               : nlohmann::json(nullptr);
  body["verification"] = check.to_json();
  return emit(io, out, check.pass ? "pass" : "fail", loaded.digest, body,
              loaded.precision_mode);
}

struct ProbeFlags {
  std::string accum;
  std::string limit;
  long max_coeffs = 8;
  long window = 6;
  double conv_tol = 0.01;
  long probe_precision = 256;
};

int run_probe_taylor(const IoOptions& io, const ProbeFlags& flags,
                     std::istream& in, std::ostream& out) {
  LoadedSequence loaded = load_sequence(io, in);
  const Precision prec = loaded.seq.precision_bits;

  ProbeConfig cfg;
  cfg.max_coeffs = static_cast<std::size_t>(flags.max_coeffs);
  cfg.window = static_cast<std::size_t>(flags.window);
  cfg.conv_tol = flags.conv_tol;
  cfg.precision_bits = static_cast<Precision>(flags.probe_precision);
  cfg.precision_cap = precision_cap_from_env(4096);

  AccumulationData data =
      flags.accum.empty()
          ? AccumulationData::from_orbit_auto(loaded.seq, cfg.window)
          : AccumulationData::from_orbit(
                loaded.seq, parse_point_flag(flags.accum, prec),
                parse_point_flag(flags.limit.empty() ? flags.accum : flags.limit,
                                 prec));

  nlohmann::json body;
  OrderEstimate order = estimate_order(data, cfg);
  body["order"] = order.to_json();
  if (order.p) {
    TaylorEstimate est = run_probe(data, cfg);
    if (est.trustworthy >= 3) {
      RadiusEstimate radius = radius_probe(est);
      est.radius_flag = radius.flag;
      if (radius.flag == RadiusFlag::Finite) est.radius = radius.value;
    }
    body["estimate"] = est.to_json();
  } else {
    body["estimate"] = nullptr;
  }
  return emit(io, out, "info", loaded.digest, body, loaded.precision_mode);
}

int run_check_qr(const IoOptions& io, const QRParams& params, std::istream& in,
                 std::ostream& out) {
  LoadedSequence loaded = load_sequence(io, in);
  QRConditionReport report = check_necessary(loaded.seq, params);
  nlohmann::json body = report.to_json();
  body["params"] = params.to_json();
  return emit(io, out, report.pass() ? "pass" : "fail", loaded.digest, body,
              loaded.precision_mode);
}

int run_derive_holder(const IoOptions& io, const QRParams& params,
                      std::istream& in, std::ostream& out) {
  LoadedSequence loaded = load_sequence(io, in);
  HolderExponents exps = derive_holder(params, loaded.seq);
  HolderReport verify = verify_holder(loaded.seq, exps);
  nlohmann::json body;
  body["params"] = params.to_json();
  body["exponents"] = exps.to_json();
  body["verify"] = verify.to_json();
  return emit(io, out, verify.pass ? "pass" : "fail", loaded.digest, body,
              loaded.precision_mode);
}

struct ScanFlags {
  std::string alphas = "0.5,1.0";
  std::string log2_cs = "0,3.322";
  std::string pairs = "three-stride";
  std::string disc = "0.001";
};

int run_scan_holder(const IoOptions& io, const ScanFlags& flags,
                    std::istream& in, std::ostream& out) {
  LoadedSequence loaded = load_sequence(io, in);
  const Precision prec = loaded.seq.precision_bits;
  HolderScanResult result = holder_violation_scan(
      loaded.seq, parse_double_list(flags.alphas),
      parse_double_list(flags.log2_cs), pair_selector_from_string(flags.pairs),
      BigFloat::from_string(flags.disc, prec));
  return emit(io, out, "info", loaded.digest, result.to_json(),
              loaded.precision_mode);
}

struct QCFlags {
  double mu = 0.0;
  double nu = 0.0;
  std::string C;
  double D = 0.0;
  long n0 = 0;
  bool unchecked = false;

  std::optional<QCHypotheses> hypotheses() const {
    if (unchecked) return std::nullopt;
    if (mu == 0.0 && nu == 0.0 && C.empty() && D == 0.0) return std::nullopt;
    if (mu <= 0.0 || nu <= 0.0 || C.empty() || D <= 0.0)
      fail(Errc::parse_error,
           "supply all of --mu, --nu, --C, --D (or --unchecked)");
    QCHypotheses hyp;
    hyp.params.mu = mu;
    hyp.params.nu = nu;
    hyp.params.log2_C = std::log2(std::stod(C));
    hyp.params.n0 = static_cast<std::size_t>(n0);
    hyp.D = D;
    return hyp;
  }
};

void add_qc_flags(CLI::App* cmd, QCFlags& flags) {
  cmd->add_option("--mu", flags.mu, "ratio exponent mu");
  cmd->add_option("--nu", flags.nu, "ratio exponent nu");
  cmd->add_option("--C", flags.C, "ratio constant C > 1");
  cmd->add_option("--D", flags.D, "contraction bound D in (0,1)");
  cmd->add_option("--n0", flags.n0, "first checked index");
  cmd->add_flag("--unchecked", flags.unchecked,
                "diagnostic build without hypothesis validation");
}

int run_build_qc(const IoOptions& io, const QCFlags& flags, std::istream& in,
                 std::ostream& out) {
  LoadedSequence loaded = load_sequence(io, in);
  PiecewiseQCMap map = build_qc_map(loaded.seq, flags.hypotheses());
  return emit(io, out, "pass", loaded.digest, map.to_json(),
              loaded.precision_mode);
}

int run_eval_qc(const IoOptions& io, const std::string& at, std::istream& in,
                std::ostream& out) {
  LoadedMap loaded = load_map(io, in);
  BigComplex z = parse_point_flag(at, loaded.map.precision());
  BigComplex w = loaded.map.evaluate(z);
  auto [zre, zim] = z.to_strings();
  auto [wre, wim] = w.to_strings();
  nlohmann::json body;
  body["at"] = {zre, zim};
  body["value"] = {wre, wim};
  return emit(io, out, "info", loaded.digest, body);
}

int run_audit_qc(const IoOptions& io, std::istream& in, std::ostream& out) {
  LoadedMap loaded = load_map(io, in);
  nlohmann::json body = audit_body(loaded.map);
  bool pass = body["all_pass"].get<bool>();
  return emit(io, out, pass ? "pass" : "fail", loaded.digest, body);
}

int run_plot_qc(const IoOptions& io, const std::string& svg_path,
                const std::string& palette, std::istream& in,
                std::ostream& out) {
  LoadedMap loaded = load_map(io, in);
  nlohmann::json body = audit_body(loaded.map);
  const std::string verdict = body["all_pass"].get<bool>() ? "pass" : "fail";
  std::string svg = plot_qc(loaded.map, PlotStyle{palette}, verdict);
  write_all(svg_path, out, svg);
  body["svg_digest"] = content_digest(svg);
  body["svg_path"] = svg_path;
  return emit(io, out, verdict, loaded.digest, body);
}

int run_plot_orbit(const IoOptions& io, const std::string& svg_path,
                   const std::string& palette, std::istream& in,
                   std::ostream& out) {
  LoadedSequence loaded = load_sequence(io, in);
  ConsistencyReport report =
      check_candidate_consistency(loaded.seq, loaded.tol);
  const std::string verdict = report.pass ? "pass" : "fail";
  std::string svg = plot_orbit(loaded.seq, PlotStyle{palette}, verdict);
  write_all(svg_path, out, svg);
  nlohmann::json body = report.to_json();
  body["svg_digest"] = content_digest(svg);
  body["svg_path"] = svg_path;
  return emit(io, out, verdict, loaded.digest, body, loaded.precision_mode);
}

struct GalleryFlags {
  std::string id = "Ex3_1";
  GeneratorParams params;
  bool schedule = false;
};

int run_gallery(const IoOptions& io, GalleryFlags& flags, std::ostream& out) {
  flags.params.precision_cap = precision_cap_from_env(flags.params.precision_cap);
  if (flags.params.precision_bits == 0 && io.precision_override > 0)
    flags.params.precision_bits = static_cast<Precision>(io.precision_override);
  GalleryId id = gallery_id_from_string(flags.id);
  if (flags.schedule) {
    if (id != GalleryId::Ex3_4)
      fail(Errc::parse_error, "--schedule applies to Ex3_4 only");
    SigmaSchedule schedule = ex3_4_sigma_schedule(flags.params);
    write_all(io.output, out,
              make_report("info", content_digest(flags.id), schedule.to_json())
                      .dump(2) +
                  "\n");
    return 0;
  }
  OrbitSequence seq = generate(id, flags.params);
  write_all(io.output, out, seq.to_json_text() + "\n");
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err) {
  CLI::App app{"candidate-orbit toolkit: consistency, classification, "
               "realizers, germ recovery, and distortion checks"};
  app.require_subcommand(1);

  IoOptions io;
  std::string base_function = "0";
  ProbeFlags probe;
  QRParams qr;
  std::string qr_C;
  ScanFlags scan;
  QCFlags qc;
  std::string at_point = "0,0";
  std::string svg_path = "plot.svg";
  std::string palette;
  GalleryFlags gal;
  long gal_count = 10;
  long gal_precision = 0;

  auto* validate = app.add_subcommand("validate", "candidate-orbit consistency");
  add_io(validate, io);

  auto* classify = app.add_subcommand("classify", "orbit class of the prefix");
  add_io(classify, io);

  auto* hint = app.add_subcommand("degree-hint",
                                  "integer log-modulus ratio test");
  add_io(hint, io);

  auto* realize = app.add_subcommand("realize-poly",
                                     "explicit realizer of a periodic prefix");
  add_io(realize, io);
  realize->add_option("--base-function", base_function,
                      "0, or JSON {kind:polynomial|exponential, ...}")
      ->capture_default_str();

  auto* probe_cmd = app.add_subcommand("probe-taylor",
                                       "recover the forced power-series germ");
  add_io(probe_cmd, io);
  probe_cmd->add_option("--accum", probe.accum, "accumulation point re,im");
  probe_cmd->add_option("--limit", probe.limit, "value limit re,im");
  probe_cmd->add_option("--max-coeffs", probe.max_coeffs, "K")->capture_default_str();
  probe_cmd->add_option("--window", probe.window, "tail window")->capture_default_str();
  probe_cmd->add_option("--conv-tol", probe.conv_tol, "convergence tolerance")
      ->capture_default_str();
  probe_cmd->add_option("--probe-precision", probe.probe_precision,
                        "starting probe precision")->capture_default_str();

  auto add_qr_params = [&](CLI::App* cmd) {
    cmd->add_option("--mu", qr.mu, "mu > 0")->capture_default_str();
    cmd->add_option("--nu", qr.nu, "nu > 0")->capture_default_str();
    cmd->add_option("--C", qr_C, "constant C >= 1 (decimal)");
    cmd->add_option("--log2-C", qr.log2_C, "log2 of C")->capture_default_str();
    cmd->add_option("--n0", qr.n0, "first checked index")->capture_default_str();
  };

  auto* check_qr = app.add_subcommand("check-qr",
                                      "two-sided modulus-ratio conditions");
  add_io(check_qr, io);
  add_qr_params(check_qr);

  auto* derive = app.add_subcommand("derive-holder",
                                    "power-bound exponents from ratio params");
  add_io(derive, io);
  add_qr_params(derive);

  auto* scan_cmd = app.add_subcommand("scan-holder",
                                      "search for Holder-bound violations");
  add_io(scan_cmd, io);
  scan_cmd->add_option("--alphas", scan.alphas, "comma list")->capture_default_str();
  scan_cmd->add_option("--log2-cs", scan.log2_cs, "comma list of log2 C")
      ->capture_default_str();
  scan_cmd->add_option("--pairs", scan.pairs,
                       "three-stride | adjacent | all-pairs")
      ->capture_default_str();
  scan_cmd->add_option("--disc", scan.disc, "disc radius (decimal)")
      ->capture_default_str();

  auto* build = app.add_subcommand("build-qc", "piecewise annulus realizer");
  add_io(build, io);
  add_qc_flags(build, qc);

  auto* eval = app.add_subcommand("eval-qc", "evaluate a built map");
  add_io(eval, io);
  eval->add_option("--at", at_point, "point re,im")->capture_default_str();

  auto* audit = app.add_subcommand("audit-qc", "run all map verifications");
  add_io(audit, io);

  auto* plot_qc_cmd = app.add_subcommand("plot-qc", "SVG of a built map");
  add_io(plot_qc_cmd, io);
  plot_qc_cmd->add_option("--svg", svg_path, "SVG output path")->capture_default_str();
  plot_qc_cmd->add_option("--palette", palette, "palette name");

  auto* plot_orbit_cmd = app.add_subcommand("plot-orbit", "SVG of a sequence");
  add_io(plot_orbit_cmd, io);
  plot_orbit_cmd->add_option("--svg", svg_path, "SVG output path")
      ->capture_default_str();
  plot_orbit_cmd->add_option("--palette", palette, "palette name");

  auto* gallery_cmd = app.add_subcommand("gallery", "built-in sequence corpus");
  gallery_cmd->add_option("--id", gal.id, "sequence id")->capture_default_str();
  gallery_cmd->add_option("--count", gal_count, "prefix length")->capture_default_str();
  gallery_cmd->add_option("--output,-o", io.output, "output path or -")
      ->capture_default_str();
  gallery_cmd->add_option("--precision-bits", gal_precision,
                          "generation precision (0 = auto)");
  gallery_cmd->add_option("--ex3-2-base", gal.params.ex3_2_base, "offset base b")
      ->capture_default_str();
  gallery_cmd->add_option("--ex3-3-a", gal.params.ex3_3_a, "exponent base a")
      ->capture_default_str();
  gallery_cmd->add_option("--delta-log2", gal.params.ex3_4_delta_log2,
                          "perturbation budget, log2")->capture_default_str();
  gallery_cmd->add_option("--eps", gal.params.qrclever_eps, "angle offset")
      ->capture_default_str();
  gallery_cmd->add_option("--s", gal.params.qrclever_s, "branch radius")
      ->capture_default_str();
  gallery_cmd->add_option("--z0", gal.params.qrclever_z0, "starting point")
      ->capture_default_str();
  gallery_cmd->add_flag("--schedule", gal.schedule,
                        "emit the Ex3_4 activation schedule instead");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (check_qr->parsed() || derive->parsed()) {
      if (!qr_C.empty()) qr.log2_C = std::log2(std::stod(qr_C));
    }
    if (validate->parsed()) return run_validate(io, in, out);
    if (classify->parsed()) return run_classify(io, in, out);
    if (hint->parsed()) return run_degree_hint(io, in, out);
    if (realize->parsed()) return run_realize_poly(io, base_function, in, out);
    if (probe_cmd->parsed()) return run_probe_taylor(io, probe, in, out);
    if (check_qr->parsed()) return run_check_qr(io, qr, in, out);
    if (derive->parsed()) return run_derive_holder(io, qr, in, out);
    if (scan_cmd->parsed()) return run_scan_holder(io, scan, in, out);
    if (build->parsed()) return run_build_qc(io, qc, in, out);
    if (eval->parsed()) return run_eval_qc(io, at_point, in, out);
    if (audit->parsed()) return run_audit_qc(io, in, out);
    if (plot_qc_cmd->parsed())
      return run_plot_qc(io, svg_path, palette, in, out);
    if (plot_orbit_cmd->parsed())
      return run_plot_orbit(io, svg_path, palette, in, out);
    if (gallery_cmd->parsed()) {
      gal.params.count = static_cast<std::size_t>(gal_count);
      if (gal_precision > 0)
        gal.params.precision_bits = static_cast<Precision>(gal_precision);
      return run_gallery(io, gal, out);
    }
    err << "usage error: no subcommand\n";
    return 2;
  } catch (const nlohmann::json::parse_error& e) {
    err << "input parse error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    if (e.code() == Errc::parse_error) {
      err << "input parse error: " << e.what() << "\n";
      return 2;
    }
    nlohmann::json body;
    body["error"] = errc_name(e.code());
    body["message"] = e.what();
    write_all(io.output, out, make_report("fail", "", body).dump(2) + "\n");
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace orbitforge::cli

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "spectra/counting_bounds.hpp"
#include "spectra/cuboid_spectra.hpp"
#include "spectra/errors.hpp"
#include "spectra/fem.hpp"
#include "spectra/io.hpp"
#include "spectra/reference_spectra.hpp"
#include "spectra/shape_opt.hpp"
#include "spectra/svg.hpp"
#include "spectra/weyl_lab.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace spectra;

namespace {

constexpr const char* kVersion = "0.1.0";

struct RunContext {
  std::string out_dir = "out";
  unsigned seed = 0;
  int jobs = 1;
  std::string command_line;
  std::vector<std::string> outputs;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void write(const std::string& name, const std::string& content) {
    fs::create_directories(out_dir);
    const fs::path path = fs::path(out_dir) / name;
    std::ofstream f(path);
    if (!f) throw ValidationError("cannot write " + path.string());
    f << content;
    outputs.push_back(path.string());
  }

  void finalize() {
    json manifest;
    manifest["command_line"] = command_line;
    std::uint64_t h = 1469598103934665603ull;
    for (char c : command_line) {
      h ^= static_cast<unsigned char>(c);
      h *= 1099511628211ull;
    }
    manifest["config_hash"] = h;
    manifest["seed"] = seed;
    manifest["tool_version"] = kVersion;
    manifest["wall_time_s"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    manifest["outputs"] = outputs;
    write("manifest.json", manifest.dump(2) + "\n");
  }
};

std::vector<double> parse_doubles(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  return out;
}

std::vector<std::int64_t> parse_ints(const std::string& csv) {
  std::vector<std::int64_t> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoll(tok));
  return out;
}

std::vector<geom::AxisBC> parse_axis_bcs(const std::string& csv) {
  std::vector<geom::AxisBC> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok == "D" || tok == "d") out.push_back(geom::AxisBC::DirichletBoth);
    else if (tok == "N" || tok == "n") out.push_back(geom::AxisBC::NeumannBoth);
    else if (tok == "Z" || tok == "z") out.push_back(geom::AxisBC::Mixed);
    else throw ValidationError("unknown axis bc '" + tok + "' (use D,N,Z)");
  }
  return out;
}

geom::Signature parse_signature(const std::string& csv) {
  const auto v = parse_ints(csv);
  if (v.size() != 3) throw ValidationError("--signature must be a,b,c");
  return {static_cast<int>(v[0]), static_cast<int>(v[1]), static_cast<int>(v[2])};
}

opt::Constraint parse_constraint(const std::string& s) {
  if (s == "volume") return opt::Constraint::Volume;
  if (s == "perimeter") return opt::Constraint::Perimeter;
  if (s == "diameter") return opt::Constraint::Diameter;
  throw ValidationError("unknown constraint '" + s + "'");
}

fem::FemBC parse_fem_bc(const std::string& s) {
  if (s == "dirichlet") return fem::FemBC::Dirichlet;
  if (s == "neumann") return fem::FemBC::Neumann;
  if (s == "zaremba") return fem::FemBC::Zaremba;
  throw ValidationError("unknown bc '" + s + "'");
}

geom::Shape load_shape(const std::string& file) {
  std::ifstream f(file);
  if (!f) throw ValidationError("cannot read shape file " + file);
  json j;
  f >> j;
  return io::shape_from_json(j);
}

std::string optimization_json(const opt::OptimizationResult& r) {
  json j;
  j["objective"] = r.objective;
  j["k"] = r.k;
  j["constraint"] = opt::to_string(r.constraint);
  j["status"] = opt::to_string(r.status);
  j["shape"] = io::shape_to_json(r.shape);
  json trace = json::array();
  for (const auto& t : r.trace)
    trace.push_back({{"step", t.step},
                     {"objective", t.objective},
                     {"feasibility", t.feasibility}});
  j["trace"] = trace;
  return j.dump(2) + "\n";
}

std::string trace_csv(const opt::OptimizationResult& r) {
  std::ostringstream out;
  out.precision(17);
  out << "step,objective,feasibility\n";
  for (const auto& t : r.trace)
    out << t.step << "," << t.objective << "," << t.feasibility << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// reproduce sections

struct Criterion {
  std::string name;
  bool pass = false;
  std::string detail;
};

void print_criteria(const std::vector<Criterion>& rows) {
  for (const auto& c : rows)
    std::cout << (c.pass ? "PASS" : "FAIL") << "  " << c.name
              << (c.detail.empty() ? "" : "  (" + c.detail + ")") << "\n";
}

std::vector<Criterion> reproduce_2_3(RunContext& ctx) {
  std::vector<Criterion> rows;
  std::ostringstream table;
  table.precision(12);
  table << "k,a_star,bound\n";
  const std::vector<std::int64_t> ks = {25, 50, 100, 200, 400};
  std::vector<double> aspects;
  bool all_below = true;
  for (std::int64_t k : ks) {
    const double ratio = opt::cuboid_aspect_sweep({0, 0, 2}, k, opt::Constraint::Volume);
    const double a = std::sqrt(std::min(ratio, 1.0 / ratio));  // short side
    const double kd = static_cast<double>(k);
    const double gap = 4.0 - geom::kPi;
    const double bound =
        4.0 / (gap * std::sqrt(kd - 0.25) +
               std::sqrt(gap * gap * (kd - 0.25) - 16.0));
    aspects.push_back(a);
    all_below = all_below && a < bound;
    table << k << "," << a << "," << bound << "\n";
  }
  ctx.write("degeneracy_aspects.csv", table.str());
  rows.push_back({"a*_k below the degeneracy bound for k in {25..400}", all_below, ""});
  bool decreasing = true;
  for (std::size_t i = 0; i + 1 < aspects.size(); ++i)
    decreasing = decreasing && aspects[i + 1] < aspects[i];
  rows.push_back({"a*_k strictly decreasing", decreasing, ""});
  return rows;
}

std::vector<Criterion> reproduce_4_1(RunContext& ctx) {
  std::vector<Criterion> rows;
  const auto table = weyl::disjoint_balls_check({100, 1000, 10000, 100000});
  std::ostringstream csv;
  csv.precision(12);
  csv << "k,mu_kplus1,lambda_k,lambda1_ball_times_k,weyl\n";
  bool zero_block = true, above = true, equals = true;
  for (const auto& r : table) {
    csv << r.k << "," << r.mu_kplus1 << "," << r.lambda_k << ","
        << r.lambda1_ball_k << "," << r.weyl_value << "\n";
    zero_block = zero_block && r.zero_block;
    above = above && r.dirichlet_above_weyl;
    equals = equals && std::abs(r.lambda_k - r.lambda1_ball_k) <=
                           1e-12 * r.lambda1_ball_k;
  }
  ctx.write("disjoint_balls.csv", csv.str());
  rows.push_back({"Neumann zero block mu_{k+1} = 0", zero_block, ""});
  rows.push_back({"lambda_k equals lambda_1(ball) * k", equals, ""});
  rows.push_back({"lambda_k above the Weyl value", above, ""});
  return rows;
}

std::vector<Criterion> reproduce_4_2(RunContext& ctx) {
  std::vector<Criterion> rows;
  for (int d : {2, 3}) {
    const auto table = weyl::degenerate_cuboid_check(d, {100, 1000, 10000, 100000});
    std::ostringstream csv;
    csv.precision(12);
    csv << "k,lambda_k,mu_k,dirichlet_threshold,weyl\n";
    bool dir = true, neu = true;
    for (const auto& r : table) {
      csv << r.k << "," << r.lambda_k << "," << r.mu_k << ","
          << r.dirichlet_threshold << "," << r.weyl << "\n";
      dir = dir && r.dirichlet_above;
      neu = neu && r.neumann_below;
    }
    ctx.write("degenerate_cuboids_d" + std::to_string(d) + ".csv", csv.str());
    rows.push_back({"d=" + std::to_string(d) + " Dirichlet inequality chain", dir, ""});
    rows.push_back({"d=" + std::to_string(d) + " Neumann inequality chain", neu, ""});
  }
  return rows;
}

std::vector<Criterion> reproduce_5(RunContext& ctx) {
  std::vector<Criterion> rows;
  const auto n2 = bounds::n2_certificate();
  std::ostringstream csv;
  csv.precision(12);
  csv << "k,lhs,holds\n";
  for (const auto& r : n2.table)
    csv << r.k << "," << r.lhs << "," << (r.holds ? 1 : 0) << "\n";
  ctx.write("n2_scan.csv", csv.str());
  ctx.write("n2_certificate.json",
            io::certificate_to_json(n2.certificate).dump(2) + "\n");
  rows.push_back({"threshold in [6000, 6500]",
                  n2.threshold >= 6000 && n2.threshold <= 6500,
                  "k = " + std::to_string(n2.threshold)});
  const double lhs_at =
      56.0 * std::sqrt(2.0 * static_cast<double>(n2.threshold)) + 8.0 * geom::kPi;
  const double lhs_before =
      56.0 * std::sqrt(2.0 * static_cast<double>(n2.threshold - 1)) +
      8.0 * geom::kPi;
  rows.push_back({"defining inequality holds at k, fails at k-1",
                  lhs_at < static_cast<double>(n2.threshold) &&
                      lhs_before >= static_cast<double>(n2.threshold - 1),
                  ""});
  rows.push_back({"report flags deviation from the printed 6222",
                  n2.certificate.note.find("6222") != std::string::npos, ""});
  return rows;
}

std::vector<Criterion> reproduce_6_fig5(RunContext& ctx) {
  std::vector<Criterion> rows;
  const std::vector<double> ls = {0.5, 1.0, 2.0, 4.0};
  std::vector<double> areas;
  std::ostringstream csv;
  csv.precision(12);
  csv << "L,area,perimeter,symmetric\n";
  std::vector<opt::OptimizationResult> results;
  for (std::size_t i = 0; i < ls.size(); ++i) {
    const geom::ProfileDomain* warm =
        i == 0 ? nullptr : &std::get<geom::ProfileDomain>(results.back().shape);
    results.push_back(opt::isoperimetric_profile(ls[i], 128, {}, warm));
    const auto& dom = std::get<geom::ProfileDomain>(results.back().shape);
    double asym = 0.0;
    for (std::size_t j = 0; j < dom.xs().size(); ++j)
      asym = std::max(asym, std::abs(dom.h_plus()[j] + dom.h_minus()[j]));
    areas.push_back(dom.area());
    csv << ls[i] << "," << dom.area() << "," << dom.perimeter() << ","
        << (asym == 0.0 ? 1 : 0) << "\n";
    std::ostringstream name;
    name << "isoperimetric_L" << ls[i] << ".svg";
    std::ostringstream caption;
    caption.precision(6);
    caption << "O_{2,L} isoperimetric optimum, L = " << ls[i]
            << ", area = " << dom.area();
    ctx.write(name.str(), svg::render_shape(results.back().shape, caption.str()));
  }
  ctx.write("isoperimetric_table.csv", csv.str());
  bool monotone = true;
  for (std::size_t i = 0; i + 1 < areas.size(); ++i)
    monotone = monotone && areas[i + 1] >= areas[i] - 1e-12;
  rows.push_back({"area monotone nondecreasing in L", monotone, ""});
  bool feasible = true;
  for (const auto& r : results) {
    const auto& dom = std::get<geom::ProfileDomain>(r.shape);
    feasible = feasible && std::abs(dom.perimeter() - 1.0) <= 1e-9;
  }
  rows.push_back({"perimeter = 1 within 1e-9 and valid profile domains", feasible, ""});
  return rows;
}

int run_reproduce(RunContext& ctx, const std::string& section) {
  std::vector<Criterion> rows;
  if (section == "all") {
    // Independent sections; --jobs bounds the concurrency.
    const std::vector<std::string> sections = {"2.3", "4.1", "4.2", "5", "6-fig5"};
    std::vector<std::future<std::vector<Criterion>>> futures;
    std::size_t next = 0;
    while (next < sections.size() || !futures.empty()) {
      while (next < sections.size() &&
             static_cast<int>(futures.size()) < std::max(1, ctx.jobs)) {
        const std::string s = sections[next++];
        futures.push_back(std::async(std::launch::async, [&ctx, s] {
          RunContext sub = ctx;
          sub.out_dir = ctx.out_dir + "/" + s;
          auto r = s == "2.3" ? reproduce_2_3(sub)
                   : s == "4.1" ? reproduce_4_1(sub)
                   : s == "4.2" ? reproduce_4_2(sub)
                   : s == "5" ? reproduce_5(sub)
                              : reproduce_6_fig5(sub);
          return r;
        }));
      }
      auto done = futures.back().get();
      futures.pop_back();
      rows.insert(rows.end(), done.begin(), done.end());
    }
  } else if (section == "2.3") rows = reproduce_2_3(ctx);
  else if (section == "4.1") rows = reproduce_4_1(ctx);
  else if (section == "4.2") rows = reproduce_4_2(ctx);
  else if (section == "5") rows = reproduce_5(ctx);
  else if (section == "6-fig5") rows = reproduce_6_fig5(ctx);
  else throw ValidationError("unknown section '" + section + "'");

  print_criteria(rows);
  std::ostringstream summary;
  summary << "criterion,pass,detail\n";
  int failures = 0;
  for (const auto& c : rows) {
    summary << '"' << c.name << "\"," << (c.pass ? 1 : 0) << ",\"" << c.detail
            << "\"\n";
    if (!c.pass) ++failures;
  }
  ctx.write("summary.csv", summary.str());
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectra-lab: Laplace eigenvalue geometry workbench"};
  app.require_subcommand(1);
  // fem-solve uses --h for the mesh size, so help keeps only its long form.
  app.set_help_flag("--help", "print help");

  RunContext ctx;
  for (int i = 0; i < argc; ++i) {
    if (i) ctx.command_line += ' ';
    ctx.command_line += argv[i];
  }
  app.add_option("--out", ctx.out_dir, "output directory");
  app.add_option("--seed", ctx.seed, "RNG seed for optimizer starts");
  app.add_option("--jobs", ctx.jobs, "max concurrent independent runs");

  std::string cs_sides = "1,1", cs_bc = "D,D";
  std::int64_t cs_k = 10;
  auto* cs = app.add_subcommand("cuboid-spectrum", "exact cuboid eigenvalues");
  cs->add_option("--sides", cs_sides, "comma-separated side lengths");
  cs->add_option("--bc", cs_bc, "per-axis bc: D,N,Z");
  cs->add_option("--k", cs_k, "number of eigenvalues");

  std::string co_sig = "2,0,0", co_constraint = "perimeter";
  std::int64_t co_k = 1;
  int co_d = 2;
  auto* co = app.add_subcommand("cuboid-optimize", "minimize zeta_k over cuboids");
  co->add_option("--signature", co_sig, "a,b,c");
  co->add_option("--k", co_k, "eigenvalue index");
  co->add_option("--constraint", co_constraint, "volume|perimeter|diameter");
  co->add_option("--d", co_d, "dimension");

  std::string bc_shape;
  double bc_alpha = 0.0;
  std::int64_t bc_k = 0;
  int bc_n = 1;
  auto* bco = app.add_subcommand("bounds-check", "certified counting/eigenvalue bounds");
  bco->add_option("--shape", bc_shape, "shape JSON file")->required();
  bco->add_option("--alpha", bc_alpha, "counting threshold");
  bco->add_option("--k", bc_k, "eigenvalue index for inverted bounds");
  bco->add_option("--n", bc_n, "cube-packing refinement");

  auto* n2c = app.add_subcommand("n2-certificate", "existence-threshold scan");

  std::string fs_domain, fs_bc = "dirichlet";
  int fs_k = 6;
  double fs_h = 0.05;
  auto* fso = app.add_subcommand("fem-solve", "P1 eigenvalues on a 2-d domain");
  fso->add_option("--domain", fs_domain, "shape JSON file")->required();
  fso->add_option("--bc", fs_bc, "dirichlet|neumann|zaremba");
  fso->add_option("--k", fs_k, "number of eigenvalues");
  fso->add_option("--h", fs_h, "target mesh size");

  std::string op_class = "cuboid", op_sig = "0,0,2", op_constraint = "volume",
              op_bc = "dirichlet";
  std::int64_t op_k = 1;
  int op_d = 2, op_n = 4, op_m = 64;
  double op_L = 2.0;
  auto* op = app.add_subcommand("optimize", "shape optimizers");
  op->add_option("--class", op_class, "cuboid|polygon|profile");
  op->add_option("--signature", op_sig, "a,b,c (cuboid)");
  op->add_option("--k", op_k, "eigenvalue index");
  op->add_option("--constraint", op_constraint, "cuboid constraint");
  op->add_option("--d", op_d, "cuboid dimension");
  op->add_option("--n-gon", op_n, "polygon vertex count");
  op->add_option("--bc", op_bc, "polygon bc: dirichlet|neumann");
  op->add_option("--L", op_L, "profile Lipschitz bound");
  op->add_option("--m", op_m, "profile grid segments");

  double iso_L = 2.0;
  int iso_m = 128;
  auto* iso = app.add_subcommand("isoperimetric", "area maximization over O_{2,L}");
  iso->add_option("--L", iso_L, "Lipschitz bound");
  iso->add_option("--m", iso_m, "grid segments");

  std::string wf_family = "shrinking-squares", wf_bc = "dirichlet",
              wf_ks = "100,1000,10000";
  int wf_d = 2, wf_k = 3;
  auto* wf = app.add_subcommand("weyl", "Weyl-law stability experiments");
  wf->add_option("--family", wf_family,
                 "shrinking-squares|degenerate-cuboids|disjoint-balls|"
                 "disjoint-unions|radiator");
  wf->add_option("--bc", wf_bc, "dirichlet|neumann");
  wf->add_option("--d", wf_d, "dimension (degenerate-cuboids)");
  wf->add_option("--ks", wf_ks, "comma-separated k schedule");
  wf->add_option("--k", wf_k, "eigenvalue count (radiator)");

  std::string rp_section = "4.2";
  auto* rp = app.add_subcommand("reproduce", "per-section experiment bundles");
  rp->add_option("--section", rp_section, "2.3|4.1|4.2|5|6-fig5|all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help path
    json err;
    err["error"] = {{"type", "usage"}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return 2;
  }

  if (const char* env = std::getenv("SPECTRA_LAB_OUT")) ctx.out_dir = env;

  int exit_code = 0;
  try {
    if (cs->parsed()) {
      const geom::Cuboid box(parse_doubles(cs_sides), parse_axis_bcs(cs_bc));
      const auto spec = cuboid::spectrum_prefix(box, cs_k);
      ctx.write("spectrum.csv", io::spectrum_to_csv(spec));
      ctx.write("spectrum.json", io::spectrum_to_json(spec).dump(2) + "\n");
    } else if (co->parsed()) {
      opt::CuboidOptOptions options;
      options.seed = ctx.seed;
      const auto result = opt::optimize_cuboid(
          parse_signature(co_sig), co_k, parse_constraint(co_constraint), co_d,
          options);
      ctx.write("optimize_cuboid.json", optimization_json(result));
      ctx.write("trace.csv", trace_csv(result));
      if (co_d == 2)
        ctx.write("shape.svg",
                  svg::render_shape(result.shape,
                                    "optimal cuboid, objective = " +
                                        std::to_string(result.objective)));
    } else if (bco->parsed()) {
      const geom::Shape shape = load_shape(bc_shape);
      const geom::QuermassData q = geom::quermass(shape);
      json out = json::array();
      if (bc_alpha > 0.0) {
        out.push_back(io::certificate_to_json(
            bounds::neumann_count_upper(q, bc_alpha, bc_n)));
        out.push_back(io::certificate_to_json(
            bounds::dirichlet_count_lower(q, bc_alpha, bc_n)));
      }
      if (bc_k > 0) {
        // Refinement defaults to the k-dependent heuristic unless given.
        const int n_eig =
            bco->count("--n") ? bc_n : bounds::default_refinement(bc_k);
        out.push_back(io::certificate_to_json(
            bounds::neumann_eig_lower(q, bc_k, n_eig)));
        out.push_back(io::certificate_to_json(
            bounds::dirichlet_eig_upper(q, bc_k, n_eig)));
      }
      if (out.empty())
        throw ValidationError("bounds-check: give --alpha and/or --k");
      ctx.write("certificates.json", out.dump(2) + "\n");
    } else if (n2c->parsed()) {
      const auto n2 = bounds::n2_certificate();
      std::ostringstream csv;
      csv.precision(12);
      csv << "k,lhs,holds\n";
      for (const auto& r : n2.table)
        csv << r.k << "," << r.lhs << "," << (r.holds ? 1 : 0) << "\n";
      ctx.write("n2_scan.csv", csv.str());
      ctx.write("n2_certificate.json",
                io::certificate_to_json(n2.certificate).dump(2) + "\n");
    } else if (fso->parsed()) {
      const geom::Shape shape = load_shape(fs_domain);
      const fem::FemBC bc = parse_fem_bc(fs_bc);
      fem::Mesh mesh;
      if (const auto* poly = std::get_if<geom::ConvexPolygon>(&shape))
        mesh = fem::triangulate(*poly, fs_h, bc);
      else if (const auto* dom = std::get_if<geom::ProfileDomain>(&shape))
        mesh = fem::triangulate(*dom, fs_h, bc);
      else
        throw UnsupportedShape("fem-solve: domain must be a polygon or profile");
      const cuboid::Spectrum spec = fem::solve_eigs_mesh(mesh, bc, fs_k);
      ctx.write("spectrum.csv", io::spectrum_to_csv(spec));
      ctx.write("spectrum.json", io::spectrum_to_json(spec).dump(2) + "\n");
      ctx.write("mesh.json", io::mesh_to_json(mesh).dump() + "\n");
    } else if (op->parsed()) {
      opt::OptimizationResult result;
      if (op_class == "cuboid") {
        opt::CuboidOptOptions options;
        options.seed = ctx.seed;
        result = opt::optimize_cuboid(parse_signature(op_sig), op_k,
                                      parse_constraint(op_constraint), op_d,
                                      options);
      } else if (op_class == "polygon") {
        opt::PolygonOptOptions options;
        options.seed = ctx.seed;
        result = opt::optimize_polygon(op_n, parse_fem_bc(op_bc),
                                       static_cast<int>(op_k), options);
      } else if (op_class == "profile") {
        opt::ZarembaProfileOptions options;
        options.seed = ctx.seed;
        result = opt::optimize_profile_zaremba(op_L, op_k, op_m, options);
      } else {
        throw ValidationError("optimize: unknown --class '" + op_class + "'");
      }
      ctx.write("optimize.json", optimization_json(result));
      ctx.write("trace.csv", trace_csv(result));
      if (!std::holds_alternative<geom::Cuboid>(result.shape) || op_d == 2)
        ctx.write("shape.svg",
                  svg::render_shape(result.shape,
                                    "objective = " + std::to_string(result.objective)));
    } else if (iso->parsed()) {
      const auto result = opt::isoperimetric_profile(iso_L, iso_m);
      ctx.write("isoperimetric.json", optimization_json(result));
      ctx.write("shape.svg",
                svg::render_shape(result.shape,
                                  "area = " + std::to_string(result.objective)));
    } else if (wf->parsed()) {
      const auto ks = parse_ints(wf_ks);
      std::ostringstream csv;
      csv.precision(12);
      std::vector<svg::Series> series;
      if (wf_family == "shrinking-squares") {
        const auto table = weyl::shrinking_squares_ratio(
            wf_bc == "neumann" ? cuboid::IntervalBC::Neumann
                               : cuboid::IntervalBC::Dirichlet,
            ks);
        csv << "k,eigenvalue,weyl,ratio\n";
        svg::Series s{table.bc, {}, {}};
        for (const auto& r : table.rows) {
          csv << r.k << "," << r.eigenvalue << "," << r.weyl_value << ","
              << r.ratio << "\n";
          s.x.push_back(static_cast<double>(r.k));
          s.y.push_back(r.ratio);
        }
        series.push_back(s);
      } else if (wf_family == "degenerate-cuboids") {
        const auto table = weyl::degenerate_cuboid_check(wf_d, ks);
        csv << "k,lambda,mu,dirichlet_threshold,weyl\n";
        svg::Series sl{"lambda/weyl", {}, {}}, sm{"mu/weyl", {}, {}};
        for (const auto& r : table) {
          csv << r.k << "," << r.lambda_k << "," << r.mu_k << ","
              << r.dirichlet_threshold << "," << r.weyl << "\n";
          sl.x.push_back(static_cast<double>(r.k));
          sl.y.push_back(r.lambda_k / r.weyl);
          sm.x.push_back(static_cast<double>(r.k));
          sm.y.push_back(r.mu_k / r.weyl);
        }
        series.push_back(sl);
        series.push_back(sm);
      } else if (wf_family == "disjoint-balls") {
        const auto table = weyl::disjoint_balls_check(ks);
        csv << "k,mu_kplus1,lambda_k,weyl\n";
        svg::Series s{"lambda/weyl", {}, {}};
        for (const auto& r : table) {
          csv << r.k << "," << r.mu_kplus1 << "," << r.lambda_k << ","
              << r.weyl_value << "\n";
          s.x.push_back(static_cast<double>(r.k));
          s.y.push_back(r.lambda_k / r.weyl_value);
        }
        series.push_back(s);
      } else if (wf_family == "disjoint-unions") {
        const auto table = weyl::disjoint_union_family(ks);
        csv << "k,components,area,mu_union,lambda_union,mu_square,ratio,"
               "dirichlet_ratio\n";
        svg::Series s{"mu_union/mu_square", {}, {}};
        svg::Series sd{"lambda_union/mu_square", {}, {}};
        for (const auto& r : table) {
          csv << r.k << "," << r.components << "," << r.area << ","
              << r.mu_union << "," << r.lambda_union << "," << r.mu_square
              << "," << r.ratio << "," << r.dirichlet_ratio << "\n";
          s.x.push_back(static_cast<double>(r.k));
          s.y.push_back(r.ratio);
          sd.x.push_back(static_cast<double>(r.k));
          sd.y.push_back(r.dirichlet_ratio);
        }
        series.push_back(s);
        series.push_back(sd);
      } else if (wf_family == "radiator") {
        const auto report =
            weyl::radiator_experiment(wf_k, 3, {0.1, 0.05, 0.025}, 0.00625);
        csv << "eps";
        for (int j = 1; j <= report.k; ++j) csv << ",lambda_" << j;
        for (int j = 1; j <= report.k; ++j) csv << ",mu_" << j;
        csv << "\n";
        svg::Series s{"lambda_k vs eps", {}, {}};
        for (const auto& row : report.rows) {
          csv << row.eps;
          for (double v : row.dirichlet) csv << "," << v;
          for (double v : row.neumann) csv << "," << v;
          csv << "\n";
          s.x.push_back(row.eps);
          s.y.push_back(row.dirichlet.back());
        }
        csv << "decoupled";
        for (double v : report.decoupled) csv << "," << v;
        csv << "\n";
        series.push_back(s);
      } else {
        throw ValidationError("weyl: unknown family '" + wf_family + "'");
      }
      ctx.write("weyl_" + wf_family + ".csv", csv.str());
      ctx.write("weyl_" + wf_family + ".svg",
                svg::render_chart(series, wf_family, 560, /*log_x=*/true));
    } else if (rp->parsed()) {
      exit_code = run_reproduce(ctx, rp_section);
    }
    ctx.finalize();
  } catch (const ValidationError& e) {
    json err;
    err["error"] = {{"type", "validation"}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    json err;
    err["error"] = {{"type", "numerical"}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return 3;
  }
  return exit_code;
}

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qks/densities.hpp"
#include "qks/errors.hpp"
#include "qks/io.hpp"
#include "qks/kernels.hpp"
#include "qks/negativity.hpp"
#include "qks/polyfam.hpp"
#include "qks/verify.hpp"

namespace {

using namespace qks;

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kNumerical = 3 };

struct Globals {
  std::string format = "json";
  std::string output;
  int precision = 12;
  std::optional<int> max_terms;
};

QContext make_context(double q, const Globals& g) {
  QContext c = QContext::from_env(q);
  if (g.max_terms) c = c.with_max_terms(*g.max_terms);
  return c;
}

std::vector<double> grid(const std::string& text) {
  return linspace(parse_grid(text));
}

void add_report(Record& r, const TruncationReport& t, const std::string& p = "") {
  r.add(p + "value", t.value)
      .add(p + "terms_used", static_cast<long long>(t.terms_used))
      .add(p + "tail_estimate", t.tail_estimate);
}

class Output {
 public:
  explicit Output(const Globals& g)
      : format_(parse_output_format(g.format)), precision_(g.precision) {
    if (!g.output.empty()) {
      file_ = std::make_unique<std::ofstream>(g.output, std::ios::binary);
      if (!*file_) throw ParamError("cannot open '" + g.output + "' for writing");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  void write(const std::vector<Record>& rows) {
    write_records(stream(), rows, format_, precision_);
  }
  OutputFormat format() const { return format_; }

 private:
  OutputFormat format_;
  int precision_;
  std::unique_ptr<std::ofstream> file_;
};

struct PolyArgs {
  std::string family = "hermite-q";
  int n = 0;
  double q = 0.5;
  std::string x = "0";
  double y = 0.0;
  double rho = 0.0;
};

int run_poly(const PolyArgs& a, const Globals& g) {
  const auto tag = parse_family(a.family);
  if (!tag) throw ParamError("unknown family '" + a.family + "'");
  const QContext c = make_context(a.q, g);
  std::vector<Record> rows;
  for (double x : grid(a.x)) {
    double v = 0.0;
    switch (*tag) {
      case FamilyTag::HermiteQ: v = hermite_q(a.n, x, c); break;
      case FamilyTag::ASC: v = asc_p(a.n, x, {a.y, a.rho}, c); break;
      case FamilyTag::ChebyshevU: v = chebyshev_u(a.n, x); break;
      case FamilyTag::BPoly: v = b_poly(a.n, x, c); break;
      case FamilyTag::RogersSzego: v = rogers_szego(a.n, x, c); break;
      case FamilyTag::ContinuousQHermite: v = cont_q_hermite(a.n, x, c); break;
    }
    Record r;
    r.add("family", family_name(*tag))
        .add("n", static_cast<long long>(a.n))
        .add("q", a.q)
        .add("x", x);
    if (*tag == FamilyTag::ASC) r.add("y", a.y).add("rho", a.rho);
    r.add("value", v);
    rows.push_back(std::move(r));
  }
  Output(g).write(rows);
  return kOk;
}

struct DensityArgs {
  std::string kind;
  double q = 0.5;
  std::string x = "0";
  double y = 0.0;
  double rho = 0.0;
  double x1 = 0.0, x2 = 0.0, rho13 = 0.0, rho23 = 0.0;
};

int run_density(const DensityArgs& a, const Globals& g) {
  const QContext c = make_context(a.q, g);
  std::vector<Record> rows;
  for (double x : grid(a.x)) {
    Record r;
    r.add("kind", a.kind).add("q", a.q).add("x", x);
    if (a.kind == "fn") {
      add_report(r, density_fn_report(x, c));
    } else if (a.kind == "fcn") {
      r.add("y", a.y).add("rho", a.rho);
      add_report(r, density_fcn_report(x, {a.y, a.rho}, c));
    } else {
      r.add("x1", a.x1).add("rho13", a.rho13).add("x2", a.x2).add("rho23",
                                                                  a.rho23);
      add_report(r, density_faw_report(x, a.x1, a.rho13, a.x2, a.rho23, c));
    }
    rows.push_back(std::move(r));
  }
  Output(g).write(rows);
  return kOk;
}

struct PointArgs {
  double q = 0.5;
  double rho12 = 0.2, rho13 = 0.5, rho23 = 0.4;
  std::string x1 = "0", x2 = "0", x3 = "0";
};

template <class F>
void for_each_point(const PointArgs& a, F&& f) {
  const auto g1 = grid(a.x1), g2 = grid(a.x2), g3 = grid(a.x3);
  for (double x1 : g1) {
    for (double x2 : g2) {
      for (double x3 : g3) f(x1, x2, x3);
    }
  }
}

int run_f3d(const PointArgs& a, const std::string& form_name,
            const Globals& g) {
  const QContext c = make_context(a.q, g);
  std::vector<F3dForm> forms;
  if (form_name == "all") {
    forms = {F3dForm::Direct, F3dForm::HC, F3dForm::ASC};
  } else {
    const auto f = parse_f3d_form(form_name);
    if (!f) throw ParamError("unknown form '" + form_name + "'");
    forms = {*f};
  }
  const CorrelationTriple corr{a.rho12, a.rho13, a.rho23};
  require_feasible(corr);
  std::vector<Record> rows;
  for_each_point(a, [&](double x1, double x2, double x3) {
    for (F3dForm form : forms) {
      Record r;
      r.add("form", std::string(f3d_form_name(form)))
          .add("q", a.q)
          .add("rho12", a.rho12)
          .add("rho13", a.rho13)
          .add("rho23", a.rho23)
          .add("x1", x1)
          .add("x2", x2)
          .add("x3", x3);
      add_report(r, f3d(x1, x2, x3, corr, c, form));
      rows.push_back(std::move(r));
    }
  });
  Output(g).write(rows);
  return kOk;
}

struct KernelArgs {
  std::string kind = "qk";
  int k = 0;
  int scan_grid = 0;
  std::optional<int> n_terms;
};

int run_kernel(const PointArgs& a, const KernelArgs& ka, const Globals& g) {
  const QContext c = make_context(a.q, g);
  std::vector<Record> rows;
  if (ka.scan_grid > 0) {
    if (ka.kind != "rho12-zero") {
      throw ParamError("--scan is available for --kind rho12-zero only");
    }
    const KernelScan s = scan_rho12_zero(a.rho13, a.rho23, ka.scan_grid, c);
    Record r;
    r.add("kind", ka.kind)
        .add("q", a.q)
        .add("rho13", a.rho13)
        .add("rho23", a.rho23)
        .add("points", static_cast<long long>(s.points))
        .add("negative_points", static_cast<long long>(s.negative_points))
        .add("min_value", s.min_value)
        .add("min_tail", s.min_tail)
        .add("argmin_x1", s.argmin[0])
        .add("argmin_x2", s.argmin[1])
        .add("argmin_x3", s.argmin[2]);
    rows.push_back(std::move(r));
    Output(g).write(rows);
    return kOk;
  }
  for_each_point(a, [&](double x1, double x2, double x3) {
    Record r;
    r.add("kind", ka.kind).add("q", a.q);
    KernelSides s;
    if (ka.kind == "qk") {
      r.add("k", static_cast<long long>(ka.k))
          .add("rho13", a.rho13)
          .add("rho23", a.rho23);
      s = qk_kernel(ka.k, x1, x2, x3, a.rho13, a.rho23, c);
    } else if (ka.kind == "rho12-zero") {
      r.add("rho13", a.rho13).add("rho23", a.rho23);
      s = kernel_rho12_zero(x1, x2, x3, a.rho13, a.rho23, c);
    } else if (ka.kind == "recentring") {
      r.add("rho12", a.rho12).add("rho13", a.rho13).add("rho23", a.rho23);
      s = kernel_recentring(x1, x2, x3, {a.rho12, a.rho13, a.rho23}, c);
    } else if (ka.kind == "aw") {
      // lhs: the expansion in x3 given (x1, x2); rhs: the closed density.
      r.add("rho13", a.rho13).add("rho23", a.rho23);
      s.lhs = aw_expansion(x3, x1, a.rho13, x2, a.rho23, c, ka.n_terms);
      s.rhs = density_faw_report(x3, x1, a.rho13, x2, a.rho23, c);
    } else if (ka.kind == "mehler") {
      // (x1, x2) with correlation rho12; x3 is ignored.
      r.add("rho", a.rho12);
      s.lhs = poisson_mehler(x1, x2, a.rho12, c);
      if (c.regime() == Regime::One) {
        s.rhs.value = mehler_closed_form(x1, x2, a.rho12);
      } else {
        s.rhs.value =
            density_fcn(x1, {x2, a.rho12}, c) / density_fn(x1, c);
      }
    } else {
      throw ParamError("unknown kernel kind '" + ka.kind + "'");
    }
    r.add("x1", x1).add("x2", x2).add("x3", x3);
    add_report(r, s.lhs, "lhs_");
    add_report(r, s.rhs, "rhs_");
    rows.push_back(std::move(r));
  });
  Output(g).write(rows);
  return kOk;
}

struct CheckArgs {
  std::string suite = "all";
  SuiteConfig config;
};

int run_check(const CheckArgs& a, const Globals& g) {
  const auto suite = parse_suite(a.suite);
  if (!suite) throw ParamError("unknown suite '" + a.suite + "'");
  const auto reports = run_suite(*suite, a.config);
  Output out(g);
  switch (out.format()) {
    case OutputFormat::Json:
      for (const auto& r : reports) out.stream() << report_json(r) << '\n';
      break;
    case OutputFormat::Pretty:
      write_summary_table(out.stream(), reports);
      break;
    case OutputFormat::Csv: {
      std::vector<Record> rows;
      for (const auto& r : reports) {
        Record rec;
        rec.add("identity_id", r.identity_id)
            .add("mode", std::string(mode_name(r.mode)))
            .add("status", std::string(status_name(r.status)))
            .add("max_abs_error", r.max_abs_error ? Field(*r.max_abs_error)
                                                  : Field(std::monostate{}))
            .add("cases", static_cast<long long>(r.cases))
            .add("witness", r.witness.value_or(""))
            .add("anchor", r.anchor)
            .add("note", r.note.value_or(""));
        rows.push_back(std::move(rec));
      }
      write_csv(out.stream(), rows);
      break;
    }
  }
  return all_passed(reports) ? kOk : kFailed;
}

struct NegativityArgs {
  double q = 0.5;
  double rho13 = 0.7745966692414834;  // sqrt(0.6)
  double rho23 = 0.7745966692414834;
  int grid = 21;
};

int run_negativity(const NegativityArgs& a, const Globals& g) {
  const QContext c = make_context(a.q, g);
  std::vector<Record> rows;
  for (const auto& cert : search_negative(a.q, a.rho13, a.rho23, a.grid, c)) {
    Record r;
    r.add("q", cert.q)
        .add("rho13", cert.rho13)
        .add("rho23", cert.rho23)
        .add("x1", cert.point[0])
        .add("x2", cert.point[1])
        .add("x3", cert.point[2])
        .add("sign_factor", cert.sign_factor_value)
        .add("f3d_value", cert.f3d_value)
        .add("f3d_tail", cert.f3d_tail)
        .add("neighborhood_radius", cert.neighborhood_radius);
    rows.push_back(std::move(r));
  }
  Output(g).write(rows);
  return kOk;
}

void add_point_options(CLI::App* cmd, PointArgs& p) {
  cmd->add_option("-q", p.q, "q in (-1, 1]")->capture_default_str();
  cmd->add_option("--rho12", p.rho12)->capture_default_str();
  cmd->add_option("--rho13", p.rho13)->capture_default_str();
  cmd->add_option("--rho23", p.rho23)->capture_default_str();
  cmd->add_option("--x1", p.x1, "value or lo:hi:n")->capture_default_str();
  cmd->add_option("--x2", p.x2, "value or lo:hi:n")->capture_default_str();
  cmd->add_option("--x3", p.x3, "value or lo:hi:n")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qks: q-polynomials, q-Normal densities, trivariate "
               "kernels and identity checks"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--format", g.format, "json | csv | pretty")
      ->check(CLI::IsMember({"json", "csv", "pretty"}))
      ->capture_default_str();
  app.add_option("--output,-o", g.output, "write to a file instead of stdout");
  app.add_option("--precision", g.precision, "digits in pretty mode")
      ->check(CLI::Range(1, 17))
      ->capture_default_str();
  app.add_option("--max-terms", g.max_terms,
                 "series term limit (overrides QKS_MAX_TERMS)")
      ->check(CLI::PositiveNumber);

  PolyArgs pa;
  auto* poly = app.add_subcommand("poly", "evaluate a polynomial family");
  poly->add_option("--family", pa.family,
                   "hermite-q | asc | chebyshev-u | b-poly | rogers-szego | "
                   "cont-q-hermite")
      ->capture_default_str();
  poly->add_option("-n", pa.n, "degree")->required()->check(CLI::NonNegativeNumber);
  poly->add_option("-q", pa.q)->capture_default_str();
  poly->add_option("-x", pa.x, "value or lo:hi:n")->capture_default_str();
  poly->add_option("--y", pa.y, "asc conditioning point")->capture_default_str();
  poly->add_option("--rho", pa.rho, "asc correlation")->capture_default_str();

  DensityArgs da;
  auto* density = app.add_subcommand("density", "f_N, f_CN or f_AW");
  density->add_option("kind", da.kind, "fn | fcn | faw")
      ->required()
      ->check(CLI::IsMember({"fn", "fcn", "faw"}));
  density->add_option("-q", da.q)->capture_default_str();
  density->add_option("-x", da.x, "value or lo:hi:n (x3 for faw)")
      ->capture_default_str();
  density->add_option("--y", da.y)->capture_default_str();
  density->add_option("--rho", da.rho)->capture_default_str();
  density->add_option("--x1", da.x1)->capture_default_str();
  density->add_option("--x2", da.x2)->capture_default_str();
  density->add_option("--rho13", da.rho13)->capture_default_str();
  density->add_option("--rho23", da.rho23)->capture_default_str();

  PointArgs fa;
  std::string form = "asc";
  auto* f3dcmd = app.add_subcommand("f3d", "trivariate density");
  add_point_options(f3dcmd, fa);
  f3dcmd->add_option("--form", form, "direct | hc | asc | all")
      ->capture_default_str();

  PointArgs ka_point;
  KernelArgs ka;
  auto* kernel = app.add_subcommand(
      "kernel", "two-sided kernel evaluations (lhs and rhs should agree)");
  add_point_options(kernel, ka_point);
  kernel->add_option("--kind", ka.kind,
                     "qk | rho12-zero | recentring | aw | mehler")
      ->capture_default_str();
  kernel->add_option("-k", ka.k, "rho12 = q^k rho13 rho23 for --kind qk")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  kernel->add_option("--n-terms", ka.n_terms, "partial sum length for aw")
      ->check(CLI::PositiveNumber);
  kernel->add_option("--scan", ka.scan_grid,
                     "grid minimum of the rho12 = 0 kernel on n^3 points")
      ->check(CLI::PositiveNumber);

  CheckArgs ca;
  auto* check = app.add_subcommand("check", "run identity suites");
  check->add_option("--suite", ca.suite,
                    "exact | quadrature | kernel | negativity | classical | all")
      ->capture_default_str();
  check->add_option("--exact-degree", ca.config.exact_degree)
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  check->add_option("--quadrature-degree", ca.config.quadrature_degree)
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  check->add_option("--nodes", ca.config.quadrature_nodes)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  check->add_option("--cube-nodes", ca.config.cube_nodes)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  check->add_option("--negativity-grid", ca.config.negativity_grid)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  NegativityArgs na;
  auto* neg = app.add_subcommand("negativity",
                                 "search for negative values of f_3D on "
                                 "rho12 = q rho13 rho23");
  neg->add_option("-q", na.q)->capture_default_str();
  neg->add_option("--rho13", na.rho13)->capture_default_str();
  neg->add_option("--rho23", na.rho23)->capture_default_str();
  neg->add_option("--grid", na.grid, "points per axis")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (poly->parsed()) return run_poly(pa, g);
    if (density->parsed()) return run_density(da, g);
    if (f3dcmd->parsed()) return run_f3d(fa, form, g);
    if (kernel->parsed()) return run_kernel(ka_point, ka, g);
    if (check->parsed()) return run_check(ca, g);
    if (neg->parsed()) return run_negativity(na, g);
  } catch (const InfeasibleCorrelation& e) {
    std::cerr << "qks: infeasible correlation: " << e.what() << '\n';
    return kNumerical;
  } catch (const NonConvergent& e) {
    std::cerr << "qks: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "qks: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

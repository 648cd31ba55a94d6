#include "coverspec/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "coverspec/aomoto.hpp"
#include "coverspec/dos.hpp"
#include "coverspec/eigvec.hpp"
#include "coverspec/errors.hpp"
#include "coverspec/girth_lifts.hpp"
#include "coverspec/graph_io.hpp"

namespace coverspec::cli {

namespace {

struct Common {
  std::string input;
  bool exact = false;
  bool numeric = false;
  double tol = 1e-8;
  std::uint64_t seed = 0;
  unsigned jobs = 0;
  std::string out;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("graph", c.input, "graph file")->required();
  auto* ex = sub->add_flag("--exact", c.exact, "exact output (default)");
  sub->add_flag("--numeric", c.numeric, "floating-point output")->excludes(ex);
  sub->add_option("--tol", c.tol, "numeric tolerance")->check(CLI::PositiveNumber);
  sub->add_option("--seed", c.seed, "random seed");
  sub->add_option("--jobs", c.jobs, "worker threads (0 = hardware)");
  sub->add_option("--out", c.out, "output path");
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x == 0 ? 0.0 : x);
  return buf;
}

void emit(const Common& c, const std::string& text, std::ostream& out) {
  if (c.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw Error("cannot write " + c.out);
  f << text;
}

std::string header(const std::string& cmd, const Common& c) {
  return "# " + cmd + " seed=" + std::to_string(c.seed) + "\n";
}

std::string certificate_line(const PointSpectrumCertificate& cert, const Multigraph& g, bool numeric) {
  if (!numeric) return to_string(cert, g);
  return "{lambda: " + fmt(cert.lambda.float_hint) + ", mass: " + fmt(to_double(cert.mass)) +
         ", index: " + std::to_string(cert.witness.index) + "}";
}

bool same_certificates(const PointSpectrumResult& a, const PointSpectrumResult& b) {
  if (a.certificates.size() != b.certificates.size()) return false;
  for (std::size_t i = 0; i < a.certificates.size(); ++i) {
    const auto& x = a.certificates[i];
    const auto& y = b.certificates[i];
    if (!(x.lambda == y.lambda) || x.mass != y.mass || x.witness.index != y.witness.index) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

int cmd_pointspec(const Common& c, bool oracle, std::ostream& out) {
  Multigraph g = read_graph_file(c.input);
  PointSpectrumOptions opt;
  opt.jobs = c.jobs;
  PointSpectrumResult r = point_spectrum(g, opt);
  std::ostringstream os;
  os << header("pointspec", c);
  os << "graph: " << g.vertex_count() << " vertices, " << g.pair_count() << " edge pairs\n";
  int code = kOk;
  if (r.finite_cover) {
    os << "finite cover: the graph is acyclic and is its own universal cover\n";
    os << "char poly: " << to_string(r.char_poly) << '\n';
    os << "spectrum:\n";
    for (const RealRoot& root : r.finite_spectrum) {
      os << "  " << (c.numeric ? fmt(root.value.float_hint) : to_string(root.value)) << " multiplicity "
         << root.multiplicity << '\n';
    }
  } else {
    os << "candidates examined: " << r.candidates_examined << '\n';
    if (r.certificates.empty()) {
      os << "point spectrum: empty\n";
    } else {
      for (const auto& cert : r.certificates) os << certificate_line(cert, g, c.numeric) << '\n';
    }
    if (oracle) {
      PointSpectrumOptions o = opt;
      o.oracle = true;
      bool agree = same_certificates(r, point_spectrum(g, o));
      os << "oracle: " << (agree ? "agree" : "DISAGREE") << '\n';
      if (!agree) code = kVerifyFailed;
    }
  }
  emit(c, os.str(), out);
  return code;
}

struct LiftArgs {
  bool doubling = false;
  std::size_t degree = 0;
  std::string spec;
  std::size_t max_vertices = kDefaultLiftBudget;
};

int cmd_lift(const Common& c, const LiftArgs& a, std::ostream& out, std::ostream& err) {
  Multigraph g = read_graph_file(c.input);
  Cover cover;
  std::string how;
  if (a.doubling) {
    cover = girth_doubling_lift(g, a.max_vertices);
    how = "girth-doubling";
  } else if (!a.spec.empty()) {
    std::ifstream f(a.spec);
    if (!f) throw Error("cannot read " + a.spec);
    std::stringstream buf;
    buf << f.rdbuf();
    LiftSpec spec = parse_lift_spec(buf.str(), g);
    if (spec.degree * g.vertex_count() > a.max_vertices) throw BudgetExceeded("lift exceeds the vertex budget");
    cover = {lift(g, spec), spec.degree, ""};
    how = "spec " + a.spec;
  } else {
    std::size_t n = a.degree ? a.degree : 2;
    if (n * g.vertex_count() > a.max_vertices) throw BudgetExceeded("lift exceeds the vertex budget");
    cover = {random_lift(g, n, c.seed), n, ""};
    how = "random";
  }
  std::string text = header("lift", c) + "# " + how + ", degree " + std::to_string(cover.degree) + "\n";
  if (!cover.note.empty()) text += "# " + cover.note + "\n";
  text += serialize_graph(cover.graph);

  Multigraph back = parse_graph_text(text);
  if (!(back == cover.graph) || !validate(back).ok()) {
    err << "lift: output does not round-trip\n";
    return kVerifyFailed;
  }
  emit(c, text, out);
  return kOk;
}

struct DosArgs {
  std::size_t degree = 200;
  std::size_t bins = 101;
  double range = 0;
};

int cmd_dos(const Common& c, const DosArgs& a, std::ostream& out) {
  Multigraph g = read_graph_file(c.input);
  if (a.degree * g.vertex_count() > kDefaultLiftBudget) throw BudgetExceeded("lift exceeds the vertex budget");
  Cover cover{random_lift(g, a.degree, c.seed), a.degree, ""};
  DosOptions opt;
  opt.bins = a.bins;
  opt.range = a.range;
  SpectralMeasureEstimate est = empirical_measure(cover, opt);

  std::ostringstream summary;
  summary << header("dos", c) << "# lift degree " << a.degree << ", dimension " << est.dimension << ", girth "
          << (est.girth ? std::to_string(*est.girth) : std::string("inf")) << '\n';
  std::ostringstream hist, atoms, plot;
  write_histogram_csv(hist, est.histogram);
  write_atoms_csv(atoms, est.atoms);
  write_histogram_gnuplot(plot, est.histogram);
  if (c.out.empty()) {
    out << summary.str() << hist.str() << '\n' << atoms.str();
    return kOk;
  }
  auto write = [](const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write " + path);
    f << text;
  };
  write(c.out + ".hist.csv", hist.str());
  write(c.out + ".atoms.csv", atoms.str());
  write(c.out + ".dat", summary.str() + plot.str());
  out << summary.str() << atoms.str();
  return kOk;
}

struct EigvecArgs {
  std::size_t degree = 1;
  std::string weighting;
};

UnitaryWeighting make_weighting(const Multigraph& g, const std::string& kind, std::size_t n, std::uint64_t seed) {
  if (kind == "trivial") return UnitaryWeighting::trivial(g, n);
  if (kind == "regular") return UnitaryWeighting::regular_representation(g, random_lift_spec(g, n, seed));
  if (kind == "permutation") return UnitaryWeighting::permutation(g, random_lift_spec(g, n, seed));
  if (kind == "random") return UnitaryWeighting::random(g, n, seed);
  throw PreconditionError("unknown weighting " + kind);
}

int cmd_eigvec(const Common& c, const EigvecArgs& a, std::ostream& out) {
  Multigraph g = read_graph_file(c.input);
  std::string kind = a.weighting.empty() ? (a.degree > 1 ? "regular" : "trivial") : a.weighting;
  UnitaryWeighting w = make_weighting(g, kind, a.degree, c.seed);
  PointSpectrumOptions opt;
  opt.jobs = c.jobs;
  PointSpectrumResult r = point_spectrum(g, opt);

  std::ostringstream rows, report;
  report << header("eigvec", c) << "# weighting " << kind << ", dimension " << w.dim << '\n';
  rows << "certificate,vector,vertex,fiber,re,im\n";
  int code = kOk;
  if (r.finite_cover) report << "# acyclic graph: no point spectrum on an infinite cover\n";
  if (!r.finite_cover && r.certificates.empty()) report << "# point spectrum: empty\n";
  for (std::size_t i = 0; i < r.certificates.size(); ++i) {
    const auto& cert = r.certificates[i];
    PhiKernel k = phi_kernel(g, cert.witness, cert.lambda, w);
    bool ok = k.max_residual <= c.tol && static_cast<std::size_t>(k.vectors.cols()) >= k.lower_bound;
    if (!ok) code = kVerifyFailed;
    report << "# certificate " << i << ": lambda " << fmt(cert.lambda.float_hint) << ", rank " << k.vectors.cols()
           << " (bound " << k.lower_bound << "), max residual " << fmt(k.max_residual) << (ok ? "" : "  FAIL")
           << '\n';
    auto n = static_cast<Eigen::Index>(w.dim);
    for (Eigen::Index j = 0; j < k.vectors.cols(); ++j) {
      for (VertexId v = 0; v < g.vertex_count(); ++v) {
        for (Eigen::Index f = 0; f < n; ++f) {
          auto z = k.vectors(v * n + f, j);
          rows << i << ',' << j << ',' << g.vertex(v).name << ',' << f << ',' << fmt(z.real()) << ','
               << fmt(z.imag()) << '\n';
        }
      }
    }
  }
  emit(c, report.str() + rows.str(), out);
  return code;
}

struct PerturbArgs {
  std::string epsilon = "1/10";
  std::size_t samples = 100;
  std::string scope = "all";
};

DeltaScope parse_scope(const std::string& s) {
  if (s == "all") return DeltaScope::AllInducedTrees;
  if (s == "candidates") return DeltaScope::CandidateTrees;
  throw PreconditionError("unknown scope " + s);
}

int cmd_perturb(const Common& c, const PerturbArgs& a, std::ostream& out) {
  Multigraph g = read_graph_file(c.input);
  ProbeOptions opt;
  opt.jobs = c.jobs;
  opt.scope = parse_scope(a.scope);
  PerturbationReport rep = perturbation_probe(g, parse_rational(a.epsilon), a.samples, c.seed, opt);
  emit(c, header("perturb", c) + to_string(rep), out);
  return kOk;
}

int cmd_moment(const Common& c, std::size_t k_max, std::size_t max_vertices, std::ostream& out) {
  Multigraph g = read_graph_file(c.input);
  MomentReport rep = moment_convergence_check(g, k_max, max_vertices);
  GaugeReport gauge = gauge_invariance_check(g, k_max);
  std::string text = header("moment", c) + to_string(rep) + "gauge: " + (gauge.ok ? "ok" : "MISMATCH") + "\n";
  for (const auto& m : gauge.mismatches) text += "  " + m + "\n";
  emit(c, text, out);
  return rep.ok && gauge.ok ? kOk : kVerifyFailed;
}

int cmd_verify(const Common& c, std::ostream& out) {
  Multigraph g = read_graph_file(c.input);
  std::ostringstream os;
  os << header("verify", c);
  bool all_ok = true;
  auto check = [&](const std::string& name, const std::function<std::string()>& body) {
    std::string detail;
    bool ok = true;
    try {
      detail = body();
      ok = detail.empty() || detail.rfind("skipped", 0) == 0;
    } catch (const BudgetExceeded& e) {
      detail = std::string("skipped (budget: ") + e.what() + ")";
    }
    all_ok = all_ok && ok;
    os << name << ": " << (ok ? "ok" : "FAIL") << (detail.empty() ? "" : "  " + detail) << '\n';
  };

  check("validate", [&]() -> std::string {
    auto rep = validate(g);
    return rep.ok() ? "" : rep.violations.front();
  });
  check("round trip", [&]() -> std::string { return parse_graph_text(serialize_graph(g)) == g ? "" : "differs"; });

  PointSpectrumOptions opt;
  opt.jobs = c.jobs;
  PointSpectrumResult r = point_spectrum(g, opt);
  check("pruned vs oracle", [&]() -> std::string {
    if (g.vertex_count() > 20) return "skipped (more than 20 vertices)";
    PointSpectrumOptions o = opt;
    o.oracle = true;
    return same_certificates(r, point_spectrum(g, o)) ? "" : "certificates differ";
  });
  check("mass identity", [&]() -> std::string {
    for (const auto& cert : r.certificates) {
      if (cert.mass != make_rational(cert.witness.index, static_cast<long>(g.vertex_count()))) return "mass != index/|V|";
    }
    return "";
  });
  LiftSpec spec = random_lift_spec(g, 3, c.seed);
  check("multiplicity", [&]() -> std::string {
    for (const auto& cert : r.certificates) {
      MultiplicityReport m = multiplicity_check(g, spec, cert, c.tol);
      if (!m.ok()) return "lambda " + fmt(m.lambda) + ": counts " + std::to_string(m.base_count) + ", " +
                          std::to_string(m.new_count);
    }
    return "";
  });
  check("eigenvectors", [&]() -> std::string {
    for (const auto& cert : r.certificates) {
      for (const UnitaryWeighting& w :
           {UnitaryWeighting::trivial(g), UnitaryWeighting::regular_representation(g, spec)}) {
        PhiKernel k = phi_kernel(g, cert.witness, cert.lambda, w);
        if (k.max_residual > 1e-9 || static_cast<std::size_t>(k.vectors.cols()) < k.lower_bound) {
          return "lambda " + fmt(cert.lambda.float_hint) + ": residual " + fmt(k.max_residual);
        }
      }
    }
    return "";
  });
  if (!r.finite_cover) {
    check("moments k<=6", [&]() -> std::string { return moment_convergence_check(g, 6).ok ? "" : "mismatch"; });
  }
  check("gauge k<=6", [&]() -> std::string { return gauge_invariance_check(g, 6).ok ? "" : "mismatch"; });
  os << "result: " << (all_ok ? "ok" : "FAIL") << '\n';
  emit(c, os.str(), out);
  return all_ok ? kOk : kVerifyFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Point spectrum and covers of periodic Jacobi operators"};
  app.require_subcommand(1);

  Common pc, lc, dc, ec, xc, vc, mc;
  bool oracle = false;
  LiftArgs la;
  DosArgs da;
  EigvecArgs ea;
  PerturbArgs xa;
  std::size_t k_max = 8;
  std::size_t moment_budget = kDefaultLiftBudget;

  auto* ps = app.add_subcommand("pointspec", "exact point spectrum with certificates");
  add_common(ps, pc);
  ps->add_flag("--oracle", oracle, "also run the brute-force enumeration and compare");

  auto* li = app.add_subcommand("lift", "write a finite cover");
  add_common(li, lc);
  auto* dbl = li->add_flag("--girth-doubling", la.doubling, "the 2^(m+1) girth-increasing lift");
  auto* deg = li->add_option("--degree", la.degree, "random lift of this degree")->excludes(dbl);
  li->add_option("--spec", la.spec, "lift specification file")->excludes(dbl)->excludes(deg);
  li->add_option("--max-vertices", la.max_vertices, "vertex budget");

  auto* ds = app.add_subcommand("dos", "density of states of a random lift");
  add_common(ds, dc);
  ds->add_option("--lift-degree", da.degree, "lift degree")->check(CLI::PositiveNumber);
  ds->add_option("--bins", da.bins, "histogram bins")->check(CLI::PositiveNumber);
  ds->add_option("--range", da.range, "histogram on [-range, range]");

  auto* ev = app.add_subcommand("eigvec", "eigenvectors built from the certificates");
  add_common(ev, ec);
  ev->add_option("--degree", ea.degree, "weighting dimension / lift degree")->check(CLI::PositiveNumber);
  ev->add_option("--weighting", ea.weighting, "trivial | regular | permutation | random");

  auto* pt = app.add_subcommand("perturb", "random perturbation probe");
  add_common(pt, xc);
  pt->add_option("--epsilon", xa.epsilon, "perturbation size (rational)");
  pt->add_option("--samples", xa.samples, "number of perturbations");
  pt->add_option("--scope", xa.scope, "delta radius scope: all | candidates");

  auto* vf = app.add_subcommand("verify", "run the invariant suite");
  add_common(vf, vc);

  auto* mo = app.add_subcommand("moment", "universal-cover moments against a large-girth lift");
  add_common(mo, mc);
  mo->add_option("--kmax", k_max, "highest moment");
  mo->add_option("--max-vertices", moment_budget, "vertex budget for the lift");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParseError;
  }

  try {
    if (*ps) return cmd_pointspec(pc, oracle, out);
    if (*li) return cmd_lift(lc, la, out, err);
    if (*ds) return cmd_dos(dc, da, out);
    if (*ev) return cmd_eigvec(ec, ea, out);
    if (*pt) return cmd_perturb(xc, xa, out);
    if (*vf) return cmd_verify(vc, out);
    if (*mo) return cmd_moment(mc, k_max, moment_budget, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParseError;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kBudget;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}

}  // namespace coverspec::cli

#include "lsa/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include "lsa/error.hpp"
#include "lsa/lsa.hpp"
#include "lsa/spec_file.hpp"

namespace lsa {

std::string csv_number(const Real& x) { return x.to_string(20); }

std::size_t CsvTable::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw ValidationError("CSV has no column '" + name + "'");
  return static_cast<std::size_t>(it - header.begin());
}

CsvTable parse_csv(const std::string& text) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  auto split = [](const std::string& l) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(l);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!l.empty() && l.back() == ',') cells.emplace_back();
    return cells;
  };
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (table.header.empty()) {
      table.header = split(line);
    } else {
      auto cells = split(line);
      if (cells.size() != table.header.size()) {
        throw ValidationError("CSV row " + std::to_string(table.rows.size() + 2) + " has " +
                              std::to_string(cells.size()) + " cells, expected " +
                              std::to_string(table.header.size()));
      }
      table.rows.push_back(std::move(cells));
    }
  }
  return table;
}

namespace {

struct Options {
  std::string input;
  std::vector<std::string> csv_inputs;
  Precision precision = kDefaultPrecision;
  std::string epsilon = "1/10";
  std::string delta0 = "99/100";
  std::size_t steps = 99;
  unsigned long max_degree = 50000;
  std::string strip_height;
  std::string out;
  std::string format;
  long q = 0;
  long min_q = 1;
  long max_q = 1000000;
  std::size_t count = 0;
  bool stable = false;
  std::string circle;
};

RealExpr parse_option(const std::string& text, const char* what) {
  try {
    return RealExpr::parse(text);
  } catch (const ParseError& e) {
    // Plain decimals stand for their exact value.
    try {
      return RealExpr::parse("dec:" + text);
    } catch (const ParseError&) {
    }
    throw ValidationError(std::string(what) + ": " + e.message());
  }
}

Rational parse_rational(const std::string& text, const char* what) {
  const auto r = is_rational(parse_option(text, what));
  if (!r.rational) throw ValidationError(std::string(what) + " must be rational");
  return *r.value;
}

Real parse_positive(const std::string& text, const char* what, Precision prec) {
  const Real v = eval_expr(parse_option(text, what), prec);
  if (!(v.sign() > 0)) throw ValidationError(std::string(what) + " must be positive");
  return v;
}

std::string tuple(const Integer& q, const std::vector<Integer>& k) {
  std::string s = "(" + q.get_str();
  for (const auto& v : k) s += "," + v.get_str();
  return s + ")";
}

StreamConfig stream_config(const Options& o) {
  StreamConfig c;
  c.delta0 = parse_rational(o.delta0, "--delta0");
  c.n_steps = o.steps;
  c.validate();
  return c;
}

// The lattice polynomial whose roots a command works with.
struct Target {
  DirichletPolynomial f_q;
  SparsePoly g;
  Real generator;
  Real period;
  Integer q;
  std::optional<LatticeApproximation> approx;
  std::optional<StabilityRegion> region;
};

SDA choose_sda(const DirichletPolynomial& f, const Options& o) {
  const auto ratios = f.weight_ratios();
  if (o.q > 0) {
    std::vector<Integer> k;
    for (const auto& x : ratios) {
      const Real v = eval_expr(x, o.precision + 64) * Real(Integer(o.q), o.precision + 64);
      k.push_back((v + Real(0.5, 64)).floor());
    }
    return make_sda(ratios, o.q, std::move(k), o.precision);
  }
  DioStream stream(ratios, stream_config(o), o.precision);
  while (auto s = stream.next()) {
    if (s->q > o.max_q) break;
    if (s->q >= o.min_q) return *s;
  }
  throw DomainError("no approximation with " + std::to_string(o.min_q) + " <= q <= " + std::to_string(o.max_q));
}

Target make_target(const DirichletPolynomial& f, const Options& o) {
  const Classification cl = classify(f);
  if (cl.lattice) {
    LatticeForm form = to_sparse_poly(f, o.precision);
    Real period = oscillatory_period(f.base_ratio(), cl.q, o.precision);
    return {f, std::move(form.g), std::move(form.generator), std::move(period), cl.q, std::nullopt, std::nullopt};
  }
  const SDA sda = choose_sda(f, o);
  LatticeApproximation approx = lattice_approximation(f, sda, o.precision);
  StabilityRegion region =
      stability_radius(f, sda, eval_expr(RealExpr::rational(parse_rational(o.epsilon, "--epsilon")), o.precision),
                       o.precision);
  return {approx.f_q, approx.g, approx.generator, approx.period, sda.q, approx, region};
}

RootSet target_roots(const Target& t, const Options& o) {
  if (t.g.degree() > o.max_degree) {
    throw ValidationError("degree k_N = " + std::to_string(t.g.degree()) + " exceeds --max-degree " +
                          std::to_string(o.max_degree));
  }
  const RootSet z = solve_sparse(t.g, default_tolerance(o.precision), o.precision);
  if (o.stable) {
    if (!t.approx) throw DomainError("--stable needs a nonlattice polynomial");
    return stable_roots(*t.approx, *t.region, z).roots;
  }
  const Real height = o.strip_height.empty() ? t.period : parse_positive(o.strip_height, "--strip-height", o.precision);
  return roots_to_dimensions(z, t.generator, height);
}

void require_format(const Options& o, std::initializer_list<const char*> allowed) {
  if (o.format.empty()) return;
  for (const char* a : allowed) {
    if (o.format == a) return;
  }
  throw ValidationError("unsupported --format '" + o.format + "' for this command");
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

void cmd_classify(const Options& o, std::ostream& out) {
  require_format(o, {"text-table"});
  const PolynomialSpec spec = load_polynomial_spec(o.input);
  const DirichletPolynomial& f = spec.f;
  const Classification cl = classify(f);
  const DimensionBounds b = dimension_bounds(f, o.precision);
  if (cl.lattice) {
    const std::string generator = cl.q == 1 ? f.base_ratio().to_string()
                                            : "(" + f.base_ratio().to_string() + ")^(1/" + cl.q.get_str() + ")";
    out << "lattice, generator " << generator << ", D = " << b.D.to_general(6) << "\n";
  } else {
    out << "nonlattice, rank " << cl.rank << ", " << (cl.generic ? "generic" : "nongeneric") << ", C = "
        << lsa_constant(f, o.precision).to_general(2) << "\n";
  }
  if (!spec.name.empty()) out << "name: " << spec.name << "\n";
  out << "kind: " << (cl.lattice ? "lattice" : "nonlattice") << "\n";
  out << "terms: " << f.size() << "\n";
  out << "rank: " << cl.rank << "\n";
  out << "generic: " << yes_no(cl.generic) << "\n";
  if (cl.lattice) {
    out << "q: " << cl.q.get_str() << "\n";
    std::string k;
    for (const auto& v : cl.k) k += (k.empty() ? "" : ",") + v.get_str();
    out << "k: (" << k << ")\n";
    out << "generator: " << csv_number(lattice_generator(f, cl.q, o.precision)) << "\n";
    out << "period: " << csv_number(oscillatory_period(f.base_ratio(), cl.q, o.precision)) << "\n";
  }
  out << "D_ell: " << csv_number(b.D_ell) << "\n";
  out << "D: " << csv_number(b.D) << "\n";
  if (!cl.lattice) out << "C: " << csv_number(lsa_constant(f, o.precision)) << "\n";
  if (spec.zeta) out << "single gap: " << yes_no(spec.zeta->single_gap) << "\n";
}

void cmd_dio(const Options& o, std::ostream& out) {
  require_format(o, {"text-table", "csv"});
  const PolynomialSpec spec = load_polynomial_spec(o.input);
  const DirichletPolynomial& f = spec.f;
  if (classify(f).lattice) throw DomainError("lattice: exact, no approximation needed");
  const Real epsilon(parse_rational(o.epsilon, "--epsilon"), o.precision);
  if (!(epsilon.sign() > 0)) throw ValidationError("--epsilon must be positive");
  DioStream stream(f.weight_ratios(), stream_config(o), o.precision);
  struct Row {
    SDA sda;
    Real period;
    Real radius;
  };
  std::vector<Row> rows;
  while (auto s = stream.next()) {
    if (s->q > o.max_q) break;
    if (s->q < o.min_q) continue;
    // The stream repeats an SDA while the reduced basis does not change.
    const bool seen = std::any_of(rows.begin(), rows.end(), [&](const auto& r) { return r.sda.q == s->q && r.sda.k == s->k; });
    if (seen) continue;
    Real period = oscillatory_period(f.base_ratio(), s->q, o.precision);
    Real radius = stability_radius(f, *s, epsilon, o.precision).radius;
    rows.push_back({*s, std::move(period), std::move(radius)});
    if (o.count > 0 && rows.size() >= o.count) break;
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.sda.Q > b.sda.Q; });
  if (o.format == "csv") {
    out << "Q,q";
    for (std::size_t j = 2; j <= f.size(); ++j) out << ",k_" << j;
    out << ",p_q,radius\n";
    for (const auto& r : rows) {
      out << csv_number(r.sda.Q) << "," << r.sda.q.get_str();
      for (const auto& k : r.sda.k) out << "," << k.get_str();
      out << "," << csv_number(r.period) << "," << csv_number(r.radius) << "\n";
    }
    return;
  }
  std::vector<std::array<std::string, 4>> cells{{"Q", "(q,k)", "p_q", "radius"}};
  for (const auto& r : rows) {
    std::string radius = r.radius.to_general(6);
    if (r.radius < r.period) radius += " < p_" + r.sda.q.get_str();
    cells.push_back({r.sda.Q.to_general(6), tuple(r.sda.q, r.sda.k), r.period.to_general(6), radius});
  }
  std::array<std::size_t, 4> width{};
  for (const auto& c : cells) {
    for (std::size_t i = 0; i < 4; ++i) width[i] = std::max(width[i], c[i].size());
  }
  for (const auto& c : cells) {
    std::string line;
    for (std::size_t i = 0; i < 4; ++i) {
      line += c[i];
      if (i < 3) line += std::string(width[i] - c[i].size() + 2, ' ');
    }
    out << line << "\n";
  }
}

void cmd_roots(const Options& o, std::ostream& out) {
  require_format(o, {"csv"});
  const PolynomialSpec spec = load_polynomial_spec(o.input);
  const Target t = make_target(spec.f, o);
  const RootSet roots = target_roots(t, o);
  out << "re,im,source_q,residual\n";
  for (const auto& r : roots.roots) {
    for (unsigned m = 0; m < r.multiplicity; ++m) {
      out << csv_number(r.value.re()) << "," << csv_number(r.value.im()) << "," << t.q.get_str() << ","
          << csv_number(r.residual) << "\n";
    }
  }
}

int cmd_refine(const Options& o, std::ostream& out, std::ostream& err) {
  require_format(o, {"csv"});
  const PolynomialSpec spec = load_polynomial_spec(o.input);
  const Target t = make_target(spec.f, o);
  const RootSet seeds = target_roots(t, o);
  if (seeds.roots.empty()) throw DomainError("no seeds in the requested region");
  RefineOptions options;
  options.precision = o.precision;
  const RefinementReport report = refine_roots(spec.f, seeds, options);
  out << "re,im,residual,seed_q,iterations\n";
  for (const auto& r : report.roots) {
    out << csv_number(r.value.re()) << "," << csv_number(r.value.im()) << "," << csv_number(r.residual) << ","
        << t.q.get_str() << "," << r.iterations << "\n";
  }
  std::map<SeedOutcome, std::size_t> tally;
  for (const auto& s : report.seeds) ++tally[s.outcome];
  err << "seeds: " << report.seeds.size() << ", converged: " << tally[SeedOutcome::Converged]
      << ", duplicate: " << tally[SeedOutcome::Duplicate]
      << ", critical point: " << tally[SeedOutcome::FailedCriticalPoint]
      << ", stagnant: " << tally[SeedOutcome::FailedStagnant] << ", distinct roots: " << report.roots.size()
      << ", merged: " << report.merges.size() << "\n";
  return report.converged() == 0 ? kExitNumericFailure : kExitSuccess;
}

std::string fixed2(double v) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(2);
  s << (v == 0 ? 0.0 : v);
  return s.str();
}

void cmd_plot(const Options& o, std::ostream& out) {
  require_format(o, {"svg"});
  struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points;
  };
  std::vector<Series> series;
  for (const auto& path : o.csv_inputs) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot read '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const CsvTable table = parse_csv(buffer.str());
    if (table.rows.empty()) throw ValidationError("'" + path + "' has no data rows");
    const std::size_t re = table.column("re"), im = table.column("im");
    std::optional<std::size_t> q;
    for (const char* name : {"source_q", "seed_q"}) {
      if (std::find(table.header.begin(), table.header.end(), name) != table.header.end()) q = table.column(name);
    }
    Series s;
    s.label = q ? "q = " + table.rows.front()[*q] : path;
    for (const auto& row : table.rows) {
      try {
        s.points.emplace_back(std::stod(row[re]), std::stod(row[im]));
      } catch (const std::exception&) {
        throw ValidationError("'" + path + "' has a non-numeric coordinate");
      }
    }
    series.push_back(std::move(s));
  }
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
  }
  const double padx = std::max((x1 - x0) * 0.05, 0.05), pady = std::max((y1 - y0) * 0.05, 0.5);
  x0 -= padx;
  x1 += padx;
  y0 -= pady;
  y1 += pady;
  const double W = 480, H = 720, L = 70, T = 20, R = 150, B = 50;
  auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * W; };
  auto py = [&](double y) { return T + (y1 - y) / (y1 - y0) * H; };
  static const char* kStyles[] = {"fill:#000000",
                                  "fill:none;stroke:#1f4e9c;stroke-width:1",
                                  "fill:none;stroke:#b2182b;stroke-width:1",
                                  "fill:#2ca02c",
                                  "fill:none;stroke:#6a3d9a;stroke-width:1"};
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << L + W + R << "\" height=\"" << T + H + B
      << "\" viewBox=\"0 0 " << L + W + R << " " << T + H + B << "\">\n";
  out << "<style>\n";
  for (std::size_t i = 0; i < series.size(); ++i) out << ".m" << i << "{" << kStyles[i % 5] << "}\n";
  out << ".axis{stroke:#000000;stroke-width:1;fill:none}\n.stability{stroke:#555555;stroke-dasharray:3,3;fill:none}\n"
         "text{font-family:sans-serif;font-size:12px}\n</style>\n";
  out << "<clipPath id=\"plot\"><rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W << "\" height=\"" << H
      << "\"/></clipPath>\n";
  out << "<rect class=\"axis\" x=\"" << L << "\" y=\"" << T << "\" width=\"" << W << "\" height=\"" << H << "\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double x = x0 + (x1 - x0) * i / 4, y = y0 + (y1 - y0) * i / 4;
    out << "<text x=\"" << fixed2(px(x)) << "\" y=\"" << T + H + 18 << "\" text-anchor=\"middle\">" << fixed2(x)
        << "</text>\n";
    out << "<text x=\"" << L - 6 << "\" y=\"" << fixed2(py(y) + 4) << "\" text-anchor=\"end\">" << fixed2(y)
        << "</text>\n";
  }
  out << "<text x=\"" << L + W / 2 << "\" y=\"" << T + H + 40 << "\" text-anchor=\"middle\">Re(s)</text>\n";
  out << "<text x=\"16\" y=\"" << T + H / 2 << "\" transform=\"rotate(-90 16 " << T + H / 2
      << ")\" text-anchor=\"middle\">Im(s)</text>\n";
  out << "<g clip-path=\"url(#plot)\">\n";
  if (!o.circle.empty()) {
    const double radius = parse_positive(o.circle, "--circle", 64).to_double();
    out << "<ellipse class=\"stability\" cx=\"" << fixed2(px(0)) << "\" cy=\"" << fixed2(py(0)) << "\" rx=\""
        << fixed2(radius / (x1 - x0) * W) << "\" ry=\"" << fixed2(radius / (y1 - y0) * H) << "\"/>\n";
  }
  for (std::size_t i = 0; i < series.size(); ++i) {
    out << "<g class=\"m" << i << "\">\n";
    for (const auto& [x, y] : series[i].points) {
      const std::string cx = fixed2(px(x)), cy = fixed2(py(y));
      if (i % 5 == 2) {
        out << "<path d=\"M" << cx << " " << fixed2(py(y) - 4) << "l4 4l-4 4l-4 -4z\"/>\n";
      } else {
        out << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"" << (i == 0 ? 1.5 : 3.5) << "\"/>\n";
      }
    }
    out << "</g>\n";
  }
  out << "</g>\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double y = T + 20 + 20.0 * static_cast<double>(i);
    out << "<g class=\"m" << i << "\"><circle cx=\"" << L + W + 20 << "\" cy=\"" << y - 4 << "\" r=\"3.5\"/></g>"
        << "<text x=\"" << L + W + 30 << "\" y=\"" << y << "\">" << series[i].label << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Complex dimensions of Dirichlet polynomials by lattice string approximation"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* c) {
    c->add_option("--precision", o.precision, "working precision in bits")->check(CLI::Range(64, 1 << 20));
    c->add_option("--out", o.out, "output file (default: standard output)");
    c->add_option("--format", o.format, "output format: csv, svg or text-table");
  };
  auto approximation = [&](CLI::App* c) {
    c->add_option("--epsilon", o.epsilon, "approximation error (rational)");
    c->add_option("--delta0", o.delta0, "initial delta of the approximation stream (rational)");
    c->add_option("--steps", o.steps, "number of delta decrements")->check(CLI::PositiveNumber);
    c->add_option("--min-q", o.min_q, "smallest denominator to report");
    c->add_option("--max-q", o.max_q, "stop once the denominator exceeds this");
  };
  auto roots_options = [&](CLI::App* c) {
    c->add_option("--q", o.q, "denominator of the lattice approximation (numerators are rounded)");
    c->add_option("--max-degree", o.max_degree, "refuse sparse polynomials above this degree");
    c->add_option("--strip-height", o.strip_height, "replicate roots up to this height (default: one period)");
    c->add_flag("--stable", o.stable, "keep only roots in the region of stability");
  };
  auto* classify_cmd = app.add_subcommand("classify", "lattice type, rank, dimension bounds, LSA constant");
  classify_cmd->add_option("file", o.input, "polynomial file")->required();
  common(classify_cmd);
  auto* dio_cmd = app.add_subcommand("dio", "table of simultaneous Diophantine approximations");
  dio_cmd->add_option("file", o.input, "polynomial file")->required();
  dio_cmd->add_option("--count", o.count, "stop after this many rows");
  common(dio_cmd);
  approximation(dio_cmd);
  auto* roots_cmd = app.add_subcommand("roots", "roots of a lattice approximation as CSV");
  roots_cmd->add_option("file", o.input, "polynomial file")->required();
  common(roots_cmd);
  approximation(roots_cmd);
  roots_options(roots_cmd);
  auto* refine_cmd = app.add_subcommand("refine", "Newton refinement of the true roots as CSV");
  refine_cmd->add_option("file", o.input, "polynomial file")->required();
  common(refine_cmd);
  approximation(refine_cmd);
  roots_options(refine_cmd);
  auto* plot_cmd = app.add_subcommand("plot", "SVG scatter plot of root CSV files");
  plot_cmd->add_option("csv", o.csv_inputs, "root CSV files")->required();
  plot_cmd->add_option("--circle", o.circle, "draw the region of stability with this radius");
  common(plot_cmd);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitSuccess : kExitInputError;
  }

  std::ostringstream buffer;
  int code = kExitSuccess;
  try {
    if (*classify_cmd) {
      cmd_classify(o, buffer);
    } else if (*dio_cmd) {
      cmd_dio(o, buffer);
    } else if (*roots_cmd) {
      cmd_roots(o, buffer);
    } else if (*refine_cmd) {
      code = cmd_refine(o, buffer, err);
    } else {
      cmd_plot(o, buffer);
    }
  } catch (const ParseError& e) {
    err << "error: " << o.input << ":" << e.what() << "\n";
    return kExitInputError;
  } catch (const NumericFailure& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumericFailure;
  } catch (const PrecisionExhausted& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumericFailure;
  } catch (const Indeterminate& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumericFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  if (o.out.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(o.out, std::ios::binary);
    if (!file) {
      err << "error: cannot write '" << o.out << "'\n";
      return kExitInputError;
    }
    file << buffer.str();
  }
  return code;
}

}  // namespace lsa

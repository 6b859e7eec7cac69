// Command-line front end: one subcommand per computation, CSV on stdout or
// --out, diagnostics on stderr. Exit codes: 2 usage, 3 contract, 4 numeric.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "moebius/arith_tables.hpp"
#include "moebius/circle_method.hpp"
#include "moebius/csv.hpp"
#include "moebius/errors.hpp"
#include "moebius/exp_sums.hpp"
#include "moebius/explicit_formula.hpp"
#include "moebius/parallel.hpp"
#include "moebius/partition_engine.hpp"
#include "moebius/svg.hpp"
#include "moebius/zeta_toolkit.hpp"

namespace {

using namespace moebius;

constexpr int kExitUsage = 2;
constexpr int kExitContract = 3;
constexpr int kExitNumeric = 4;

// Runs `emit` against the file at `path`, or stdout when the path is empty.
void with_output(const std::string& path, const std::function<void(std::ostream&)>& emit) {
  if (path.empty()) {
    emit(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ContractError("cannot write '" + path + "'");
  emit(out);
  if (!out) throw ContractError("write to '" + path + "' failed");
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ContractError("cannot write '" + path + "'");
  out << text;
}

ZeroTable zeros_from(const std::string& path) { return path.empty() ? bundled_zeros() : load_zeros(path); }

void warn(const std::vector<std::string>& messages) {
  for (const auto& m : messages) std::cerr << "warning: " << m << '\n';
}

struct Globals {
  unsigned threads = default_threads();
  std::string zeros_path;
};

class Cli {
 public:
  Cli() : app_("Moebius-convolution partitions, exponential sums and the zeta explicit formula", "moebius") {
    app_.require_subcommand(1);
    app_.fallthrough();
    app_.add_option("--threads", globals_.threads, "worker threads")->envname("MOEBIUS_THREADS");
    app_.add_option("--zeros", globals_.zeros_path, "zeta zeros file (default: bundled table)")
        ->envname("MOEBIUS_ZEROS_PATH");
    add_sieve();
    add_partitions();
    add_admissible();
    add_figure1();
    add_expsum();
    add_envelope();
    add_arcs();
    add_arcscan();
    add_pcauchy();
    add_zeros();
    add_rescoeff();
    add_phi1();
    add_phi2();
    add_figure34();
  }

  int run(int argc, char** argv) {
    try {
      app_.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
      return app_.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
      return app_.exit(e);
    } catch (const CLI::ParseError& e) {
      app_.exit(e);
      return kExitUsage;
    }
    try {
      for (auto* sub : app_.get_subcommands()) actions_.at(sub)();
      return 0;
    } catch (const ContractError& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kExitContract;
    } catch (const std::exception& e) {
      std::cerr << "numeric failure: " << e.what() << '\n';
      return kExitNumeric;
    }
  }

 private:
  CLI::App* command(const std::string& name, const std::string& help, std::function<void()> action) {
    auto* sub = app_.add_subcommand(name, help);
    actions_[sub] = std::move(action);
    return sub;
  }

  void add_sieve() {
    static std::string kind = "moebius";
    static std::int64_t limit = 0;
    static std::string out;
    auto* sub = command("sieve", "tabulate an arithmetic weight", [] {
      const auto table = sieve_table(parse_weight(kind), limit);
      with_output(out, [&](std::ostream& os) {
        CsvWriter csv(os, {"n", "value"});
        for (std::int64_t n = 1; n <= table.limit(); ++n) {
          csv << n << table[n];
          csv.end_row();
        }
      });
    });
    sub->add_option("--kind", kind, "weight name[:k]")->required();
    sub->add_option("--limit", limit, "largest n")->required();
    sub->add_option("--out", out, "CSV path");
  }

  void add_partitions() {
    static std::string weight = "moebius";
    static std::int64_t n = 0;
    static std::string out;
    auto* sub = command("partitions", "weighted partition numbers p_w(n)", [] {
      const auto series = partition_series(parse_weight(weight), n);
      with_output(out, [&](std::ostream& os) {
        CsvWriter csv(os, {"n", "p"});
        for (std::int64_t k = 0; k <= n; ++k) {
          csv << k << series.p[k];
          csv.end_row();
        }
      });
    });
    sub->add_option("--weight", weight, "weight name[:k]");
    sub->add_option("--n", n, "largest n")->required();
    sub->add_option("--out", out, "CSV path");
  }

  void add_admissible() {
    static std::int64_t n = 0;
    static bool all = false;
    static std::string out;
    auto* sub = command("admissible", "even/odd admissible partition counts", [] {
      const auto counts = admissible_counts(n);
      with_output(out, [&](std::ostream& os) {
        CsvWriter csv(os, {"n", "even", "odd", "total"});
        for (const auto& c : counts) {
          if (!all && c.n != n) continue;
          csv << c.n << c.even << c.odd << c.total;
          csv.end_row();
        }
      });
    });
    sub->add_option("--n", n, "n")->required();
    sub->add_flag("--all", all, "emit every m <= n");
    sub->add_option("--out", out, "CSV path");
  }

  void add_figure1() {
    static std::int64_t n = 400;
    static std::string out;
    static std::string svg;
    auto* sub = command("figure1", "log A(n) against log |p_mu(n)|", [] {
      const auto rows = growth_report(n);
      with_output(out, [&](std::ostream& os) {
        CsvWriter csv(os, {"n", "log_total", "log_abs_p_moebius", "odd_even_ratio"});
        for (const auto& r : rows) {
          csv << r.n << r.log_total;
          if (r.log_abs_p_moebius) csv << *r.log_abs_p_moebius;
          else csv << "";
          csv << r.odd_even_ratio;
          csv.end_row();
        }
      });
      if (!svg.empty()) {
        Series total{"log A(n)", "#1f77b4", {}, {}};
        Series signed_count{"log |p_mu(n)|", "#ff7f0e", {}, {}};
        for (const auto& r : rows) {
          total.x.push_back(static_cast<double>(r.n));
          total.y.push_back(r.log_total);
          if (r.log_abs_p_moebius) {
            signed_count.x.push_back(static_cast<double>(r.n));
            signed_count.y.push_back(*r.log_abs_p_moebius);
          }
        }
        const std::vector<Panel> panels{{"Admissible partitions", "n", "log", {total, signed_count}}};
        write_text(svg, render_svg(panels));
      }
    });
    sub->add_option("--n", n, "largest n");
    sub->add_option("--out", out, "CSV path");
    sub->add_option("--svg", svg, "SVG path");
  }

  void add_expsum() {
    static std::string weight = "moebius";
    static std::int64_t x = 0;
    static double alpha = 0;
    auto* sub = command("expsum", "S_w(X, alpha)", [] {
      const auto table = sieve_table(parse_weight(weight), x);
      const auto s = exp_sum(table, x, alpha);
      CsvWriter csv(std::cout, {"x", "alpha", "re", "im", "abs"});
      csv << x << alpha << s.real() << s.imag() << std::abs(s);
      csv.end_row();
    });
    sub->add_option("--weight", weight, "weight name[:k]");
    sub->add_option("--x", x, "X")->required();
    sub->add_option("--alpha", alpha, "alpha")->required();
  }

  void add_envelope() {
    static int k = 1;
    static std::string weight;
    static std::int64_t x_min = 1024;
    static std::int64_t x_max = 65536;
    static int samples = 200;
    static std::uint64_t seed = 1;
    static double epsilon = 0.05;
    static std::string out;
    auto* sub = command("envelope", "|S| against the bound envelope on a doubling grid", [this] {
      const auto env = envelope_for(weight.empty() ? (k == 1 ? WeightKind::moebius() : WeightKind::moebius_k(k))
                                                   : parse_weight(weight),
                                    epsilon);
      if (x_min < 2 || x_max < x_min) throw ContractError("envelope: need 2 <= xmin <= xmax");
      std::vector<std::int64_t> grid;
      for (std::int64_t v = x_min; v <= x_max; v *= 2) grid.push_back(v);
      const auto report = envelope_check(env, grid, samples, seed, globals_.threads);
      with_output(out, [&](std::ostream& os) {
        CsvWriter csv(os, {"X", "alpha", "a", "q", "abs_sum", "rhs", "ratio"});
        for (const auto& r : report.rows) {
          csv << r.x << r.alpha << r.a << r.q << r.abs_sum << r.rhs << r.ratio;
          csv.end_row();
        }
      });
      const auto& m = report.argmax;
      std::cerr << "max_ratio=" << format_double(report.max_ratio) << " at X=" << m.x
                << " alpha=" << format_double(m.alpha) << " q=" << m.q << '\n';
    });
    sub->add_option("--k", k, "convolution order of mu");
    sub->add_option("--weight", weight, "moebius_hat or moebius_tilde:2 instead of --k");
    sub->add_option("--xmin", x_min, "first X");
    sub->add_option("--xmax", x_max, "last X (doubling ladder)");
    sub->add_option("--samples", samples, "random alphas");
    sub->add_option("--seed", seed, "RNG seed")->envname("MOEBIUS_SEED");
    sub->add_option("--epsilon", epsilon, "epsilon in X^(a+epsilon)");
    sub->add_option("--out", out, "CSV path");
  }

  void add_arcs() {
    static double x = 0;
    static double a = 1;
    static bool allow = false;
    static std::string out;
    auto* sub = command("arcs", "major-arc decomposition", [] {
      const auto d = build_arcs(x, a, allow ? OverlapPolicy::Allow : OverlapPolicy::Reject);
      with_output(out, [&](std::ostream& os) {
        CsvWriter csv(os, {"q", "a", "center", "halfwidth", "lo", "hi"});
        for (const auto& arc : d.majors) {
          csv << arc.q << arc.a << arc.center << arc.halfwidth << arc.lo() << arc.hi();
          csv.end_row();
        }
      });
      std::cerr << "arcs=" << d.majors.size() << " major_measure=" << format_double(d.major_measure())
                << " minor_measure=" << format_double(d.minor_measure()) << '\n';
    });
    sub->add_option("--x", x, "X")->required();
    sub->add_option("--A", a, "A");
    sub->add_flag("--allow-overlap", allow, "keep intersecting arcs");
    sub->add_option("--out", out, "CSV path");
  }

  void add_arcscan() {
    static std::string weight = "mumu";
    static double x = 0;
    static double a = 1;
    static int samples = 32;
    static std::string out;
    auto* sub = command("arcscan", "max |Phi| on major and minor arcs", [] {
      const auto r = arc_bound_scan(parse_weight(weight), x, a, samples);
      with_output(out, [&](std::ostream& os) {
        CsvWriter csv(os, {"q", "a", "center", "halfwidth", "samples", "max_abs_phi"});
        for (const auto& row : r.rows) {
          csv << row.arc.q << row.arc.a << row.arc.center << row.arc.halfwidth << row.samples << row.max_abs_phi;
          csv.end_row();
        }
      });
      std::cerr << "grid=" << r.grid << " major_max=" << format_double(r.major_max)
                << " minor_max=" << format_double(r.minor_max) << " major_ratio=" << format_double(r.major_ratio)
                << " minor_ratio=" << format_double(r.minor_ratio) << '\n';
    });
    sub->add_option("--weight", weight, "signed weight name[:k]");
    sub->add_option("--x", x, "X")->required();
    sub->add_option("--A", a, "A");
    sub->add_option("--samples", samples, "grid points per narrowest arc");
    sub->add_option("--out", out, "CSV path");
  }

  void add_pcauchy() {
    static std::string weight = "moebius";
    static std::int64_t n = 0;
    static std::size_t points = 8192;
    static std::optional<double> a;
    static std::optional<double> radius;
    auto* sub = command("pcauchy", "p_w(n) from the Cauchy integral", [] {
      CauchyOptions o;
      o.points = points;
      o.a = a;
      o.radius_x = radius;
      const auto w = parse_weight(weight);
      const auto r = cauchy_estimate(w, n, o);
      const auto exact = partition_series(w, n).p[n];
      CsvWriter csv(std::cout, {"n", "re", "im", "rounded", "exact", "X"});
      csv << n << r.value.real() << r.value.imag() << static_cast<std::int64_t>(std::llround(r.value.real()))
          << exact << r.x;
      csv.end_row();
    });
    sub->add_option("--weight", weight, "weight name[:k]");
    sub->add_option("--n", n, "n")->required();
    sub->add_option("--points", points, "quadrature points (power of two)");
    sub->add_option("--A", a, "use X = sqrt(n) (log n)^(A/18)");
    sub->add_option("--radius", radius, "use this X directly");
  }

  void add_zeros() {
    static bool refine = false;
    static int count = 100;
    static std::string out;
    auto* sub = command("zeros", "ordinates of the nontrivial zeta zeros", [this] {
      ZeroTable table;
      if (refine) {
        table = compute_zeros(count);
      } else {
        table = zeros_from(globals_.zeros_path);
        table.ordinates = first_zeros(table, static_cast<std::size_t>(count));
      }
      with_output(out, [&](std::ostream& os) {
        os << "# ordinates gamma of zeta(1/2 + i gamma) = 0\n";
        for (double g : table.ordinates) os << format_double(g) << '\n';
      });
    });
    sub->add_flag("--refine", refine, "locate the zeros from Z(t) instead of reading the table");
    sub->add_option("--count", count, "number of zeros");
    sub->add_option("--out", out, "output path");
  }

  void add_rescoeff() {
    static int n = 3;
    auto* sub = command("rescoeff", "trivial-zero residue coefficients c1, c2, c3", [] {
      CsvWriter csv(std::cout, {"n", "c1", "c2", "c3"});
      for (int m = 1; m <= n; ++m) {
        const auto c = residue_coeffs(m);
        csv << m << c.c1 << c.c2 << c.c3;
        csv.end_row();
      }
    });
    sub->add_option("--n", n, "largest n");
  }

  void add_phi1() {
    static double x = 0;
    static std::optional<double> theta;
    static std::int64_t j = 120;
    static std::int64_t n = 800;
    auto* sub = command("phi1", "truncated arithmetic sum Phi_1", [] {
      const double t = theta ? *theta : theta_of(x);
      const auto v = phi1(x, t, j, n);
      CsvWriter csv(std::cout, {"x", "theta", "re", "im"});
      csv << x << t << v.real() << v.imag();
      csv.end_row();
    });
    sub->add_option("--x", x, "X")->required();
    sub->add_option("--theta", theta, "theta (default theta(X))");
    sub->add_option("--J", j, "J");
    sub->add_option("--N", n, "N");
  }

  void add_phi2() {
    static double x = 0;
    static std::optional<double> theta;
    static double height = 20;
    static std::optional<std::size_t> zeros_count;
    static int n = 10;
    auto* sub = command("phi2", "explicit-formula value Phi_2", [this] {
      const double t = theta ? *theta : theta_of(x);
      const auto zeros = zeros_from(globals_.zeros_path);
      const auto ordinates = zeros_count ? first_zeros(zeros, *zeros_count) : zeros_below(zeros, height);
      const auto terms = zero_terms(ordinates, globals_.threads);
      const auto r = phi2(EvalPoint::make(x, t), terms, n);
      warn(r.warnings);
      CsvWriter csv(std::cout, {"x", "theta", "re", "im", "zeros_used", "trivial_used"});
      csv << x << t << r.value.real() << r.value.imag() << r.zeros_used << r.trivial_used;
      csv.end_row();
    });
    sub->add_option("--x", x, "X")->required();
    sub->add_option("--theta", theta, "theta (default theta(X))");
    sub->add_option("--T", height, "zero height");
    sub->add_option("--zeros-count", zeros_count, "use the first K zeros instead of a height");
    sub->add_option("--N", n, "trivial-zero terms");
  }

  void add_figure34() {
    static CompareOptions o;
    static std::string out;
    static std::string svg;
    auto* sub = command("figure34", "Phi_1 against Phi_2 along theta = theta(X)", [this] {
      o.threads = globals_.threads;
      const auto report = compare_grid(o, zeros_from(globals_.zeros_path));
      warn(report.warnings);
      with_output(out, [&](std::ostream& os) {
        CsvWriter csv(os, {"X", "re_phi1", "im_phi1", "re_phi2", "im_phi2", "abs_diff"});
        for (const auto& r : report.rows) {
          csv << r.x << r.phi1.real() << r.phi1.imag() << r.phi2.real() << r.phi2.imag() << r.abs_diff;
          csv.end_row();
        }
      });
      if (!svg.empty()) {
        Series re1{"Re Phi1", "#1f77b4", {}, {}}, re2{"Re Phi2", "#e377c2", {}, {}};
        Series im1{"Im Phi1", "#1f77b4", {}, {}}, im2{"Im Phi2", "#e377c2", {}, {}};
        Series diff{"|Phi1 - Phi2|", "#2ca02c", {}, {}};
        for (const auto& r : report.rows) {
          for (auto* s : {&re1, &re2, &im1, &im2, &diff}) s->x.push_back(r.x);
          re1.y.push_back(r.phi1.real());
          re2.y.push_back(r.phi2.real());
          im1.y.push_back(r.phi1.imag());
          im2.y.push_back(r.phi2.imag());
          diff.y.push_back(r.abs_diff);
        }
        const std::vector<Panel> panels{{"Real part", "X", "Re", {re1, re2}},
                                        {"Imaginary part", "X", "Im", {im1, im2}},
                                        {"Difference", "X", "abs", {diff}}};
        write_text(svg, render_svg(panels));
      }
    });
    sub->add_option("--xmin", o.x_min, "first X");
    sub->add_option("--xmax", o.x_max, "last X");
    sub->add_option("--points", o.points, "grid points");
    sub->add_option("--J", o.j_max, "J for Phi_1");
    sub->add_option("--N1", o.n_max, "N for Phi_1");
    sub->add_option("--T", o.height, "zero height for Phi_2");
    sub->add_option("--zeros-count", o.zeros_count, "use the first K zeros instead of a height");
    sub->add_option("--N2", o.n_trivial, "trivial-zero terms for Phi_2");
    sub->add_option("--out", out, "CSV path");
    sub->add_option("--svg", svg, "SVG path");
  }

  CLI::App app_;
  Globals globals_;
  std::map<CLI::App*, std::function<void()>> actions_;
};

}  // namespace

int main(int argc, char** argv) {
  Cli cli;
  return cli.run(argc, argv);
}

// Command-line frontend: certification, certificate re-verification, slope
// curve sampling, polynomial identity suites and Riley evaluation.

#include <atomic>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "slopecert/slopecert.hpp"

namespace {

using namespace slopecert;

constexpr int exit_ok = 0;
constexpr int exit_failure = 1;  // certification/verification failure, out-of-range slope
constexpr int exit_usage = 2;    // invalid input

struct RangeSpec {
  long long lo = 0;
  long long hi = 0;
};

RangeSpec parse_range(const std::string& text) {
  const auto sep = text.find("..");
  if (sep == std::string::npos) {
    throw std::invalid_argument("range must be written lo..hi, got '" + text + "'");
  }
  RangeSpec r;
  try {
    std::size_t pos = 0;
    r.lo = std::stoll(text.substr(0, sep), &pos);
    if (pos != sep) throw std::invalid_argument("");
    r.hi = std::stoll(text.substr(sep + 2), &pos);
    if (pos != text.size() - sep - 2) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw std::invalid_argument("range must be written lo..hi, got '" + text + "'");
  }
  if (r.lo > r.hi) throw std::invalid_argument("empty range '" + text + "'");
  return r;
}

int run_certify(long long m, long long n, const std::string& slope_text, double tol,
                const std::string& out_path, int precision_bits) {
  const Slope slope = Slope::parse(slope_text);
  const Certificate cert = certify(m, n, slope, tol, precision_bits);
  if (!out_path.empty()) save_certificate(out_path, cert);
  std::cout << "certified K(" << m << ", " << n << ") slope " << slope.str() << " via "
            << branch_name(cert.branch) << " branch at " << cert.precision_bits << " bits\n";
  if (!cert.is_betti()) {
    std::cout << "  s = " << cert.s << "\n  t = " << cert.t << "\n"
              << "  residuals: riley " << cert.residuals->riley << ", relator "
              << cert.residuals->relator << ", longitude " << cert.residuals->longitude_offdiag
              << ", surgery " << cert.residuals->surgery_eq << ", det " << cert.residuals->det
              << "\n";
  } else {
    std::cout << "  r = 0 surgery: positive betti number, no numerics required\n";
  }
  if (!out_path.empty()) std::cout << "wrote " << out_path << "\n";
  return exit_ok;
}

int run_verify(const std::string& in_path, double tol, bool tol_given) {
  const Certificate cert = load_certificate(in_path);
  const double use_tol = tol_given ? tol : std::stod(cert.tolerance);
  const VerifyReport report = verify_certificate(cert, use_tol);
  for (const auto& c : report.checks) {
    std::cout << (c.pass ? "pass" : "FAIL") << "  " << c.name;
    if (!c.detail.empty()) std::cout << "  (" << c.detail << ")";
    std::cout << "\n";
  }
  if (!report.all_pass()) {
    std::cout << "certificate REJECTED\n";
    return exit_failure;
  }
  std::cout << "certificate valid\n";
  return exit_ok;
}

int run_curve(long long m, long long n, double s_min, double s_max, int points, bool linear,
              const std::string& out_path, int precision_bits) {
  if (!(s_min > 0) || !(s_min < s_max)) {
    throw std::invalid_argument("curve requires 0 < s-min < s-max");
  }
  if (points < 2) throw std::invalid_argument("curve requires at least 2 points");

  // Samples are independent solves; rows are assembled by index so the
  // output does not depend on scheduling.
  std::vector<std::string> rows(static_cast<std::size_t>(points));
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  const auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= points) return;
      try {
        const double frac = static_cast<double>(i) / (points - 1);
        const double s = linear ? s_min + (s_max - s_min) * frac
                                : s_min * std::pow(s_max / s_min, frac);
        rows[static_cast<std::size_t>(i)] = with_precision(precision_bits, [&](auto tag) {
          using Real = decltype(tag);
          const auto point = g_of<Real>(m, n, Real(s));
          std::ostringstream row;
          row << std::setprecision(17);
          row << static_cast<double>(point.rep.s) << ',' << static_cast<double>(point.rep.T)
              << ',' << static_cast<double>(point.rep.t) << ',' << static_cast<double>(point.A)
              << ',' << static_cast<double>(point.B) << ','
              << static_cast<double>(point.g_value) << '\n';
          return row.str();
        });
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned n_threads = std::min<unsigned>(hw, static_cast<unsigned>(points));
  std::vector<std::thread> threads;
  for (unsigned i = 1; i < n_threads; ++i) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  if (first_error) std::rethrow_exception(first_error);

  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + out_path);
  out << "s,T,t,A,B,g\n";
  for (const std::string& row : rows) out << row;
  std::cout << "wrote " << points << " samples to " << out_path << "\n";
  return exit_ok;
}

int run_identities(const std::string& range_text) {
  const RangeSpec range = parse_range(range_text);
  const IdentityReport report = check_identities(range.lo, range.hi);
  static const char* names[3] = {"f_m + g_{m-1} = g_m", "f_m + s g_m = f_{m+1}",
                                 "f_m^2 = s g_m g_{m-1} + 1"};
  for (int i = 0; i < 3; ++i) {
    std::cout << "identity (" << i + 1 << ") " << names[i] << ": " << report.pass[i] << " pass, "
              << report.fail[i] << " fail\n";
  }
  for (const auto& f : report.failures) std::cout << "  " << f.detail << "\n";
  // Closed forms against the recursion, coefficient by coefficient.
  long long cf_pass = 0, cf_fail = 0;
  for (long long m = std::max(0LL, range.lo); m <= range.hi; ++m) {
    if (closed_form_f(m) == poly_f(m) && closed_form_g(m) == poly_g(m)) {
      ++cf_pass;
    } else {
      ++cf_fail;
      std::cout << "  closed form mismatch at m = " << m << "\n";
    }
  }
  std::cout << "closed forms vs recursion: " << cf_pass << " pass, " << cf_fail << " fail\n";
  return report.all_pass() && cf_fail == 0 ? exit_ok : exit_failure;
}

int run_riley(long long m, long long n, double s, int precision_bits) {
  if (!(s > 0)) throw std::invalid_argument("riley requires s > 0");
  return with_precision(precision_bits, [&](auto tag) {
    using Real = decltype(tag);
    const Real sr(s);
    std::cout << std::setprecision(17);
    std::cout << "K(" << m << ", " << n << ") at s = " << s << "\n";
    std::cout << "  f_{m-1}(s) = " << static_cast<double>(eval_f(m - 1, sr))
              << ", g_{m-1}(s) = " << static_cast<double>(eval_g(m - 1, sr)) << "\n";
    std::cout << "  phi(s, s+2) = " << static_cast<double>(riley_eval(m, n, sr, sr + 2)) << "\n";
    const RileyBracket<Real> bracket = riley_bracket(m, n, sr);
    if (bracket.degenerate()) {
      std::cout << "  closed-form solution T = " << static_cast<double>(bracket.T_lo) << "\n";
    } else {
      std::cout << "  bracket [" << static_cast<double>(bracket.T_lo) << ", "
                << static_cast<double>(bracket.T_hi) << "]\n";
      std::cout << "  phi at bracket: " << static_cast<double>(riley_eval(m, n, sr, bracket.T_lo))
                << " .. " << static_cast<double>(riley_eval(m, n, sr, bracket.T_hi)) << "\n";
    }
    const SolvedPoint<Real> solved = solve_T(m, n, sr);
    std::cout << "  solved T = " << static_cast<double>(solved.rep.T)
              << ", t = " << static_cast<double>(solved.rep.t)
              << ", |phi| = " << static_cast<double>(solved.residual) << "\n";
    std::cout << "  tr W = " << static_cast<double>(trace_W(m, solved.rep.s, solved.rep.T))
              << "\n";
    return exit_ok;
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"slopecert: certified left-orderable surgery slopes on genus-one two-bridge knots"};
  app.require_subcommand(1);

  long long m = 0, n = 0;
  std::string slope_text, out_path, in_path, range_text;
  double tol = 1e-8;
  double s_value = 1.0, s_min = 1e-6, s_max = 1e6;
  int points = 100;
  bool linear = false;
  int precision_bits = env_precision_bits();

  auto* cmd_certify = app.add_subcommand("certify", "certify a surgery slope on K(m, n)");
  cmd_certify->add_option("--m", m, "twist parameter m (nonzero)")->required();
  cmd_certify->add_option("--n", n, "twist parameter n (nonzero)")->required();
  cmd_certify->add_option("--slope", slope_text, "surgery slope p/q")->required();
  cmd_certify->add_option("--tol", tol, "residual tolerance (default 1e-8)");
  cmd_certify->add_option("--out", out_path, "write the certificate to this file");
  cmd_certify->add_option("--precision-bits", precision_bits, "starting mantissa width");

  auto* cmd_verify = app.add_subcommand("verify", "re-verify a stored certificate");
  cmd_verify->add_option("--in", in_path, "certificate file")->required();
  auto* verify_tol = cmd_verify->add_option("--tol", tol, "tolerance (default: from the file)");

  auto* cmd_curve = app.add_subcommand("curve", "sample the slope function g over a range of s");
  cmd_curve->add_option("--m", m)->required();
  cmd_curve->add_option("--n", n)->required();
  cmd_curve->add_option("--s-min", s_min, "lower end of the s range (default 1e-6)");
  cmd_curve->add_option("--s-max", s_max, "upper end of the s range (default 1e6)");
  cmd_curve->add_option("--points", points, "number of samples (default 100)");
  cmd_curve->add_flag("--linear", linear, "sample on a linear grid instead of logarithmic");
  cmd_curve->add_option("--out", out_path, "CSV output path")->required();
  cmd_curve->add_option("--precision-bits", precision_bits, "starting mantissa width");

  auto* cmd_identities = app.add_subcommand("identities", "run the exact polynomial identity suite");
  cmd_identities->add_option("--m-range", range_text, "index range lo..hi")->required();

  auto* cmd_riley = app.add_subcommand("riley", "evaluate and solve Riley's equation at one s");
  cmd_riley->add_option("--m", m)->required();
  cmd_riley->add_option("--n", n)->required();
  cmd_riley->add_option("--s", s_value, "parameter s > 0")->required();
  cmd_riley->add_option("--precision-bits", precision_bits, "starting mantissa width");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    std::cerr << app.help();
    return exit_usage;
  }

  try {
    if (cmd_certify->parsed()) return run_certify(m, n, slope_text, tol, out_path, precision_bits);
    if (cmd_verify->parsed()) return run_verify(in_path, tol, verify_tol->count() > 0);
    if (cmd_curve->parsed())
      return run_curve(m, n, s_min, s_max, points, linear, out_path, precision_bits);
    if (cmd_identities->parsed()) return run_identities(range_text);
    if (cmd_riley->parsed()) return run_riley(m, n, s_value, precision_bits);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_failure;
  }
  return exit_usage;
}

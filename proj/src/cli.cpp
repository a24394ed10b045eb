#include "qes/cli.hpp"

#include "qes/perturb.hpp"
#include "qes/secular.hpp"
#include "qes/spectra.hpp"
#include "qes/sturmian.hpp"
#include "qes/verify.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <thread>

namespace qes::cli {

// ---------------------------------------------------------------------------
// serialization helpers

Json rational_json(const Rational &q) { return {{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}}; }

Rational rational_from_json(const Json &j) {
  Rational q(mpz_class(j.at("num").get<std::string>(), 10), mpz_class(j.at("den").get<std::string>(), 10));
  q.canonicalize();
  return q;
}

Json complex_json(const Complex &z) { return {{"re", z.real()}, {"im", z.imag()}}; }

Json polynomial_json(const RationalPolynomial &p, const std::string &var) {
  Json terms = Json::array();
  for (int k = 0; k <= p.degree(); ++k)
    if (p[k] != 0)
      terms.push_back({Json::array({k}), p[k].get_num().get_str(), p[k].get_den().get_str()});
  return {{"variables", Json::array({var})}, {"terms", terms}};
}

Json polynomial_json(const BivariatePolynomial &p) {
  Json terms = Json::array();
  for (const auto &[exps, q] : p.terms())
    terms.push_back({Json::array({exps.first, exps.second}), q.get_num().get_str(), q.get_den().get_str()});
  return {{"variables", Json::array({"X", "d"})}, {"terms", terms}};
}

namespace {

std::string num(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

std::string complex_text(const Complex &z) {
  return num(z.real()) + (std::signbit(z.imag()) ? " - " : " + ") + num(std::abs(z.imag())) + "i";
}

template <class T> std::string vector_text(const std::vector<T> &v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i)
    os << (i ? ", " : "") << v[i];
  os << ")";
  return os.str();
}

Json rational_array(const std::vector<Rational> &v) {
  Json out = Json::array();
  for (const auto &q : v)
    out.push_back(rational_json(q));
  return out;
}

Json complex_array(const std::vector<Complex> &v) {
  Json out = Json::array();
  for (const auto &z : v)
    out.push_back(complex_json(z));
  return out;
}

Json params_json(const ModelParams &p) {
  return {{"N", p.N()}, {"a", rational_json(p.a())}, {"c", rational_json(p.c())}, {"d", rational_json(p.d())}};
}

Rational parse_option(const std::string &name, const std::string &text) {
  try {
    return parse_rational(text);
  } catch (const std::exception &) {
    throw ConfigError("--" + name + ": not a number: " + text);
  }
}

struct Report {
  Json json;
  std::string pretty;
  std::string csv;
  bool pass = true;
};

// ---------------------------------------------------------------------------

Report spectrum(const RunConfig &cfg) {
  const auto p = resolve_params(cfg);
  const auto set = eigencharges(p, cfg.tol.value_or(kDefaultRealityTol));
  Report r;
  r.json = {{"subcommand", "spectrum"}, {"params", params_json(p)}, {"E", rational_json(energy(p))}};
  Json charges = Json::array();
  std::ostringstream pretty, csv;
  pretty << "N = " << p.N() << ", a = " << p.a() << ", c = " << p.c() << ", d = " << p.d() << ", E = " << energy(p)
         << "\n";
  csv << "index,re,im,real\n";
  for (std::size_t i = 0; i < set.charges.size(); ++i) {
    const auto &f = set.charges[i];
    charges.push_back({{"re", f.real()}, {"im", f.imag()}, {"real", static_cast<bool>(set.real[i])}});
    pretty << "f_" << i << " = " << complex_text(f) << (set.real[i] ? "  real" : "") << "\n";
    csv << i << "," << num(f.real()) << "," << num(f.imag()) << "," << (set.real[i] ? 1 : 0) << "\n";
  }
  r.json["charges"] = charges;
  r.json["all_real"] = set.all_real();
  r.json["real_count"] = set.real_count();
  r.pretty = pretty.str();
  r.csv = csv.str();
  return r;
}

Report secular(const RunConfig &cfg) {
  const auto p = resolve_params(cfg);
  const auto poly = char_poly_f(p);
  const auto reduced = reduced_secular(p.N());
  Report r;
  r.json = {{"subcommand", "secular"},
            {"params", params_json(p)},
            {"char_poly", polynomial_json(poly, "f")},
            {"reduced", polynomial_json(reduced)},
            {"reduced_text", reduced.to_table_string(p.N())}};
  r.pretty = "det Q(f) = " + to_string(poly, "f") + "\nreduced: " + reduced.to_table_string(p.N()) +
             "   (X = f + (N+2)d, h = d^2 - N - 3)\n";
  return r;
}

Report critical(const RunConfig &cfg) {
  const auto cs = critical_d(cfg.N, cfg.tol.value_or(1e-9));
  Report r;
  r.json = {{"subcommand", "critical-d"}, {"N", cfg.N}, {"d_critical", cs.d}, {"evaluations", cs.trace.size()}};
  r.pretty = "d_critical(" + std::to_string(cfg.N) + ") = " + num(cs.d) + "\n";
  std::ostringstream csv;
  csv << "d,all_real\n";
  for (const auto &pt : cs.trace)
    csv << num(pt.d) << "," << (pt.all_real ? 1 : 0) << "\n";
  r.csv = csv.str();
  return r;
}

Report sturmian(const RunConfig &cfg) {
  const auto p = resolve_params(cfg);
  Report r;
  r.json = {{"subcommand", "sturmian"}, {"params", params_json(p)}, {"E", rational_json(energy(p))}};
  std::ostringstream pretty;
  Json solutions = Json::array();

  auto add = [&](const Complex &f, bool real) {
    const auto h = right_coefficients<Complex>(p, f);
    const auto g = left_coefficients<Complex>(p, f);
    Json s = {{"f", complex_json(f)}, {"h", complex_array(h)}, {"g", complex_array(g)}};
    double residual = residual_norm(p, f, h);
    double left = left_residual_norm(p, f, g);
    double bound = cfg.tol.value_or(1e-8);
    if (real && !cfg.f) {
      const auto fw = polish_real_charge(char_poly_f(p), f.real());
      residual = residual_norm_wide(p, fw);
      left = left_residual_norm_wide(p, fw);
      bound = cfg.tol.value_or(1e-10);
    }
    const bool ok = residual <= bound && left <= bound;
    s["residual"] = residual;
    s["left_residual"] = left;
    s["pass"] = ok;
    r.pass = r.pass && ok;
    pretty << "f = " << complex_text(f) << "\n  h = (";
    for (std::size_t i = 0; i < h.size(); ++i)
      pretty << (i ? ", " : "") << complex_text(h[i]);
    pretty << ")\n  g = (";
    for (std::size_t i = 0; i < g.size(); ++i)
      pretty << (i ? ", " : "") << complex_text(g[i]);
    pretty << ")\n  residual " << num(residual) << ", left residual " << num(left) << (ok ? "" : "  FAIL") << "\n";
    return s;
  };

  if (cfg.f) {
    const Rational f = parse_option("f", *cfg.f);
    Json s = add(Complex(to_double(f), 0.0), true);
    s["h_exact"] = rational_array(right_coefficients<Rational>(p, f));
    s["g_exact"] = rational_array(left_coefficients<Rational>(p, f));
    solutions.push_back(s);
  } else {
    const auto set = eigencharges(p);
    for (std::size_t i = 0; i < set.charges.size(); ++i)
      solutions.push_back(add(set.charges[i], set.real[i]));
  }
  r.json["solutions"] = solutions;
  r.json["pass"] = r.pass;
  r.pretty = pretty.str();
  return r;
}

Report wavefunction(const RunConfig &cfg) {
  const auto p = resolve_params(cfg);
  Complex f;
  if (cfg.f) {
    f = to_double(parse_option("f", *cfg.f));
  } else {
    const auto set = eigencharges(p, cfg.tol.value_or(kDefaultRealityTol));
    if (cfg.level < 0 || cfg.level > p.N())
      throw ConfigError("--level must be in 0..N");
    f = set.charges[static_cast<std::size_t>(cfg.level)];
  }
  const double E = to_double(energy(p));
  const double x_max = cfg.x_max.value_or(std::sqrt(E) + 6.0);
  const int steps = cfg.steps.value_or(200);
  if (!(x_max > 0) || steps <= 0)
    throw ConfigError("--x-max and --steps must be positive");
  std::vector<double> xs;
  for (int i = 0; i <= steps; ++i)
    xs.push_back(-x_max + 2.0 * x_max * i / steps);
  const auto h = right_coefficients<Complex>(p, f);
  const auto psi = wavefunction_eval(p, h, xs);

  Report r;
  std::ostringstream csv;
  csv << "x,re,im,abs\n";
  Json samples = Json::array();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    csv << num(xs[i]) << "," << num(psi[i].real()) << "," << num(psi[i].imag()) << "," << num(std::abs(psi[i]))
        << "\n";
    samples.push_back({{"x", xs[i]}, {"re", psi[i].real()}, {"im", psi[i].imag()}});
  }
  r.csv = csv.str();
  r.json = {{"subcommand", "wavefunction"}, {"params", params_json(p)}, {"f", complex_json(f)},
            {"E", rational_json(energy(p))}, {"h", complex_array(h)},      {"samples", samples}};
  return r;
}

Report perturb(const RunConfig &cfg) {
  const auto s = rs_corrections(cfg.N, cfg.level, cfg.order);
  const auto level = unperturbed_spectrum(cfg.N)[static_cast<std::size_t>(cfg.level)];
  Report r;
  Json h = Json::array();
  for (const auto &hk : s.h)
    h.push_back(rational_array(hk));
  const auto radius = s.radius_estimate();
  r.json = {{"subcommand", "perturb"}, {"N", cfg.N},     {"level", cfg.level},
            {"order", cfg.order},      {"Y0", rational_json(level.Y0)}, {"Y", rational_array(s.Y)},
            {"h", h},                  {"g0", rational_array(level.g)},
            {"radius_estimate", radius ? Json(*radius) : Json(nullptr)}};
  std::ostringstream pretty;
  pretty << "N = " << cfg.N << ", level " << cfg.level << ", Y0 = " << level.Y0 << "\n";
  for (std::size_t k = 0; k < s.Y.size(); ++k)
    pretty << "Y^[" << k << "] = " << s.Y[k] << "   h^[" << k << "] = " << vector_text(s.h[k]) << "\n";
  pretty << "g0 = " << vector_text(level.g) << "\n";
  if (cfg.lambda) {
    const Rational lambda = parse_option("lambda", *cfg.lambda);
    if (lambda == 0)
      throw ConfigError("--lambda must be nonzero");
    const Rational sum = s.partial_sum(lambda);
    r.json["lambda"] = rational_json(lambda);
    r.json["partial_sum"] = to_double(sum);
    r.json["charge"] = to_double(Rational(PerturbationSeries::charge_from_Y(cfg.N, sum, lambda)));
    pretty << "partial sum at lambda = " << lambda << ": Y = " << num(to_double(sum)) << "\n";
  }
  r.pretty = pretty.str();
  return r;
}

// ---------------------------------------------------------------------------
// verify

Json lie_json(const LieDecomposition &lie) {
  return {{"convention", lie.convention == GeneratorConvention::Printed ? "printed" : "spin"},
          {"coefficients", rational_array(std::vector<Rational>(lie.coefficients.begin(), lie.coefficients.end()))},
          {"exact", lie.exact},
          {"residual", lie.residual.to_string()},
          {"matches_printed", lie.matches_printed},
          {"printed_residual", lie.printed_residual.to_string()}};
}

Report verify_shift(const RunConfig &cfg) {
  const double tol = cfg.tol.value_or(1e-9);
  Report r;
  if (cfg.samples > 0) {
    std::mt19937_64 rng(cfg.seed);
    auto rational = [&](long span) {
      const long den = 1 + static_cast<long>(rng() % 20);
      const long num = static_cast<long>(rng() % static_cast<unsigned long>(2 * span * den + 1)) - span * den;
      return make_rational(num, den);
    };
    double worst = 0;
    int failures = 0;
    for (int i = 0; i < cfg.samples; ++i) {
      const int N = static_cast<int>(rng() % 7);
      Rational a = rational(3), c = rational(6), delta = rational(3);
      while (c == 0 || c == delta)
        c = rational(6);
      const auto rep = shift_invariance_check(ModelParams(N, a, c), delta, tol);
      worst = std::max(worst, rep.distance);
      failures += rep.pass ? 0 : 1;
    }
    r.pass = failures == 0;
    r.json = {{"mode", "shift"},
              {"inputs", {{"samples", cfg.samples}, {"seed", cfg.seed}, {"tol", tol}}},
              {"pass", r.pass},
              {"metrics", {{"max_distance", worst}, {"failures", failures}}}};
    r.pretty = "shift invariance over " + std::to_string(cfg.samples) + " samples: max distance " + num(worst) +
               (r.pass ? "  PASS\n" : "  FAIL\n");
    return r;
  }
  const auto p = resolve_params(cfg);
  const Rational delta = parse_option("delta", cfg.delta);
  const auto rep = shift_invariance_check(p, delta, tol);
  r.pass = rep.pass;
  r.json = {{"mode", "shift"},
            {"inputs", {{"params", params_json(p)}, {"delta", rational_json(delta)}, {"tol", tol}}},
            {"pass", rep.pass},
            {"metrics",
             {{"distance", rep.distance},
              {"energy_consistent", rep.energy_consistent},
              {"charges_original", complex_array(rep.charges_original)},
              {"charges_shifted", complex_array(rep.charges_shifted)}}}};
  r.pretty = "shift by " + delta.get_str() + ": distance " + num(rep.distance) + (rep.pass ? "  PASS\n" : "  FAIL\n");
  return r;
}

Report verify_sl2(const RunConfig &cfg) {
  const auto p = resolve_params(cfg);
  if (p.a() != 0)
    throw ConfigError("verify sl2 needs a = 0");
  const int D = cfg.degree.value_or(p.N() + 3);
  const auto rep = sl2_commutator_check(p.N(), p.c(), D);
  const auto T = recurrence_operator(p.N(), p.c());
  const bool matches_q = T.matrix(p.N()) == build_Q<Rational>(p).dense();
  const auto printed = lie_decompose(p.N(), p.c(), GeneratorConvention::Printed);
  const auto spin = lie_decompose(p.N(), p.c(), GeneratorConvention::Spin);
  Report r;
  r.pass = rep.pass && matches_q;
  Json ops = Json::array(), mats = Json::array();
  for (int i = 0; i < 3; ++i) {
    ops.push_back(static_cast<bool>(rep.operator_identity[i]));
    mats.push_back(static_cast<bool>(rep.matrix_identity[i]));
  }
  r.json = {{"mode", "sl2"},
            {"inputs", {{"N", p.N()}, {"c", rational_json(p.c())}, {"D", D}}},
            {"pass", r.pass},
            {"metrics",
             {{"operator_identities", ops},
              {"matrix_identities", mats},
              {"exact_columns", rep.exact_columns},
              {"recurrence_operator", T.to_string()},
              {"recurrence_matrix_is_Q0", matches_q},
              {"decomposition_printed", lie_json(printed)},
              {"decomposition_spin", lie_json(spin)}}}};
  std::ostringstream pretty;
  pretty << "[J-, J0] = J-, [J-, J+] = 2J0, [J0, J+] = J+ : " << (rep.pass ? "hold" : "FAIL") << "\n";
  pretty << "T = " << T.to_string() << "\n";
  pretty << "matrix of T on degree <= N equals Q(0): " << (matches_q ? "yes" : "NO") << "\n";
  pretty << "spin generators: (" << spin.coefficients[0] << ", " << spin.coefficients[1] << ", "
         << spin.coefficients[2] << ", " << spin.coefficients[3] << ", " << spin.coefficients[4] << ")"
         << (spin.exact ? " exact" : " inexact") << "\n";
  pretty << "printed combination minus T: " << printed.printed_residual.to_string() << "\n";
  pretty << (r.pass ? "PASS\n" : "FAIL\n");
  r.pretty = pretty.str();
  return r;
}

Report verify_ode(const RunConfig &cfg) {
  const auto p = resolve_params(cfg);
  const double E = to_double(energy(p));
  const double tol = cfg.tol.value_or(1e-6);
  ShootOptions opts;
  opts.x_max = cfg.x_max.value_or(0);
  opts.steps = cfg.steps.value_or(0);

  std::vector<double> charges;
  if (cfg.f) {
    charges.push_back(to_double(parse_option("f", *cfg.f)));
  } else {
    const auto set = eigencharges(p);
    for (std::size_t i = 0; i < set.charges.size(); ++i)
      if (set.real[i])
        charges.push_back(set.charges[i].real());
  }
  Report r;
  Json results = Json::array();
  std::ostringstream pretty;
  for (double f : charges) {
    const auto shot = ode_shoot(p, f, E, opts);
    const double defect = std::abs(shot.defect);
    bool ok = defect < tol;
    Json m = {{"f", f},
              {"defect", complex_json(shot.defect)},
              {"abs_defect", defect},
              {"richardson_error", shot.richardson_error},
              {"x_max", shot.x_max},
              {"steps", shot.steps},
              {"stabilized", shot.stabilized}};
    pretty << "f = " << num(f) << ": |defect| = " << num(defect);
    if (!cfg.f) {
      const double below = std::abs(ode_shoot(p, f - 0.1, E, opts).defect);
      const double above = std::abs(ode_shoot(p, f + 0.1, E, opts).defect);
      const double contrast = std::min(below, above) / std::max(defect, 1e-300);
      m["perturbed_defects"] = {below, above};
      m["contrast"] = contrast;
      ok = ok && contrast >= 1e3;
      pretty << ", at f -+ 0.1: " << num(below) << ", " << num(above);
    }
    m["pass"] = ok;
    pretty << (ok ? "  ok\n" : "  FAIL\n");
    r.pass = r.pass && ok;
    results.push_back(m);
  }
  r.json = {{"mode", "ode"},
            {"inputs", {{"params", params_json(p)}, {"E", E}, {"tol", tol}}},
            {"pass", r.pass},
            {"metrics", {{"charges", results}}}};
  r.pretty = pretty.str();
  return r;
}

Report verify(const RunConfig &cfg) {
  if (cfg.mode == "shift")
    return verify_shift(cfg);
  if (cfg.mode == "sl2")
    return verify_sl2(cfg);
  if (cfg.mode == "ode")
    return verify_ode(cfg);
  throw ConfigError("verify mode must be shift, sl2 or ode");
}

Report table1(const RunConfig &) {
  Report r;
  Json rows = Json::array();
  std::ostringstream pretty;
  for (const auto &row : table1_check()) {
    rows.push_back({{"N", row.N},
                    {"match", row.match},
                    {"computed", row.computed.to_table_string(row.N)},
                    {"polynomial", polynomial_json(row.computed)}});
    pretty << "N = " << row.N << ":  " << row.computed.to_table_string(row.N) << (row.match ? "" : "   MISMATCH")
           << "\n";
    r.pass = r.pass && row.match;
  }
  pretty << (r.pass ? "PASS\n" : "FAIL\n");
  r.json = {{"subcommand", "table1"}, {"rows", rows}, {"pass", r.pass}};
  r.pretty = pretty.str();
  return r;
}

// ---------------------------------------------------------------------------
// sweep

Report sweep(const RunConfig &cfg) {
  if (!cfg.from || !cfg.to || !cfg.step)
    throw ConfigError("sweep needs --from, --to and --step");
  const Rational from = parse_option("from", *cfg.from), to = parse_option("to", *cfg.to),
                 step = parse_option("step", *cfg.step);
  if (step <= 0 || to < from)
    throw ConfigError("empty grid");
  const Rational span = (to - from) / step;
  mpz_class count;
  mpz_fdiv_q(count.get_mpz_t(), span.get_num_mpz_t(), span.get_den_mpz_t());
  count += 1;
  if (count > 1000000)
    throw ConfigError("grid larger than 10^6 points");
  const std::size_t n = count.get_ui();

  std::vector<Rational> grid;
  for (std::size_t i = 0; i < n; ++i)
    grid.push_back(from + step * static_cast<long>(i));

  std::vector<std::string> lines(n);
  std::vector<Json> rows(n);
  std::string header;
  std::function<void(std::size_t)> work;
  std::optional<PerturbationSeries> series;

  if (cfg.over == "d" || cfg.over == "c") {
    const Rational a = cfg.over == "c" && cfg.a ? parse_option("a", *cfg.a) : Rational(0);
    header = cfg.over;
    for (int k = 0; k <= cfg.N; ++k) {
      const auto s = std::to_string(k);
      header += ",f" + s + "_re,f" + s + "_im,f" + s + "_real";
    }
    work = [&, a](std::size_t i) {
      const ModelParams p(cfg.N, a, grid[i]);
      const auto set = eigencharges(p, cfg.tol.value_or(kDefaultRealityTol));
      std::ostringstream os;
      os << num(to_double(grid[i]));
      Json charges = Json::array();
      for (std::size_t k = 0; k < set.charges.size(); ++k) {
        os << "," << num(set.charges[k].real()) << "," << num(set.charges[k].imag()) << "," << (set.real[k] ? 1 : 0);
        charges.push_back({{"re", set.charges[k].real()}, {"im", set.charges[k].imag()},
                           {"real", static_cast<bool>(set.real[k])}});
      }
      lines[i] = os.str();
      rows[i] = {{cfg.over, to_double(grid[i])}, {"charges", charges}, {"all_real", set.all_real()}};
    };
  } else if (cfg.over == "lambda") {
    if (grid.front() <= 0)
      throw ConfigError("lambda grid must be positive");
    series = rs_corrections(cfg.N, cfg.level, cfg.order);
    header = "lambda,series,exact,abs_error";
    work = [&](std::size_t i) {
      const Rational c = 1 / grid[i];
      const double lambda = to_double(grid[i]);
      const double S = series->partial_sum(lambda);
      const auto f = polish_real_charge(char_poly_f(ModelParams(cfg.N, Rational(0), c)),
                                        to_double(c) * (S - cfg.N - 2));
      const double exact = static_cast<double>(f / to_double(c) + (cfg.N + 2));
      std::ostringstream os;
      os << num(lambda) << "," << num(S) << "," << num(exact) << "," << num(std::abs(exact - S));
      lines[i] = os.str();
      rows[i] = {{"lambda", lambda}, {"series", S}, {"exact", exact}, {"abs_error", std::abs(exact - S)}};
    };
  } else {
    throw ConfigError("--over must be d, c or lambda");
  }

  // workers pull grid indices; output order is the grid order
  const unsigned workers = std::max(1u, std::min<unsigned>(cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                                                          : std::thread::hardware_concurrency(),
                                                          static_cast<unsigned>(n)));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < n; i = next++)
          work(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto &t : pool)
    t.join();
  for (const auto &e : errors)
    if (e)
      std::rethrow_exception(e);

  Report r;
  std::ostringstream csv;
  csv << header << "\n";
  for (const auto &line : lines)
    csv << line << "\n";
  r.csv = csv.str();
  r.json = {{"subcommand", "sweep"}, {"over", cfg.over}, {"N", cfg.N}, {"rows", rows}};
  return r;
}

OutputFormat default_format(Subcommand s) {
  switch (s) {
  case Subcommand::Table1:
    return OutputFormat::Pretty;
  case Subcommand::Wavefunction:
  case Subcommand::Sweep:
    return OutputFormat::Csv;
  default:
    return OutputFormat::Json;
  }
}

Report dispatch(const RunConfig &cfg) {
  switch (cfg.subcommand) {
  case Subcommand::Spectrum:
    return spectrum(cfg);
  case Subcommand::Secular:
    return secular(cfg);
  case Subcommand::CriticalD:
    return critical(cfg);
  case Subcommand::Sturmian:
    return sturmian(cfg);
  case Subcommand::Wavefunction:
    return wavefunction(cfg);
  case Subcommand::Perturb:
    return perturb(cfg);
  case Subcommand::Verify:
    return verify(cfg);
  case Subcommand::Table1:
    return table1(cfg);
  case Subcommand::Sweep:
    return sweep(cfg);
  }
  throw ConfigError("unknown subcommand");
}

} // namespace

ModelParams resolve_params(const RunConfig &cfg) {
  if (cfg.N < 0)
    throw ConfigError("--N must be non-negative");
  const int given = (cfg.c ? 1 : 0) + (cfg.d ? 1 : 0) + (cfg.lambda ? 1 : 0);
  if (given > 1)
    throw ConfigError("--c, --d and --lambda are mutually exclusive");
  if (given == 0)
    throw ConfigError("one of --c, --d or --lambda is required");
  const Rational a = cfg.a ? parse_option("a", *cfg.a) : Rational(0);
  if ((cfg.d || cfg.lambda) && a != 0)
    throw ConfigError("--d and --lambda imply a = 0");
  if (cfg.lambda) {
    const Rational lambda = parse_option("lambda", *cfg.lambda);
    if (lambda == 0)
      throw ConfigError("--lambda must be nonzero");
    return ModelParams(cfg.N, Rational(0), Rational(1 / lambda));
  }
  if (cfg.d)
    return ModelParams(cfg.N, Rational(0), parse_option("d", *cfg.d));
  return ModelParams(cfg.N, a, parse_option("c", *cfg.c));
}

int run(const RunConfig &config, std::ostream &out, std::ostream &err) {
  try {
    const Report r = dispatch(config);
    const OutputFormat fmt = config.format.value_or(default_format(config.subcommand));
    switch (fmt) {
    case OutputFormat::Json:
      out << r.json.dump(2) << "\n";
      break;
    case OutputFormat::Csv:
      if (r.csv.empty())
        throw ConfigError("csv output is not available for this subcommand");
      out << r.csv;
      break;
    case OutputFormat::Pretty:
      if (r.pretty.empty())
        throw ConfigError("pretty output is not available for this subcommand");
      out << r.pretty;
      break;
    }
    return r.pass ? 0 : 1;
  } catch (const std::invalid_argument &e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error &e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int main_entry(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Quasi-exact Sturmian spectra of the PT-symmetric oscillator with a screened Coulomb core", "qes"};
  app.set_config("--config", "", "Read options from a TOML or INI file; command-line flags take precedence");
  app.require_subcommand(1, 1);

  RunConfig cfg;
  std::string format;
  app.add_option("--N", cfg.N, "Quasi-exact degree N")->capture_default_str();
  app.add_option("--a", cfg.a, "Imaginary linear coefficient a (rational, e.g. 1/2 or 0.5)");
  app.add_option("--c", cfg.c, "Screening c");
  app.add_option("--d", cfg.d, "Shift-invariant d = a + c, with a = 0");
  app.add_option("--lambda", cfg.lambda, "Inverse screening 1/c, with a = 0");
  app.add_option("--f", cfg.f, "Eigencharge to use instead of the computed ones");
  app.add_option("--level", cfg.level, "Level or charge index")->capture_default_str();
  app.add_option("--order", cfg.order, "Perturbation order")->capture_default_str();
  app.add_option("--tol", cfg.tol, "Tolerance (meaning depends on the command)");
  app.add_option("--x-max", cfg.x_max, "Integration or sampling half-width");
  app.add_option("--steps", cfg.steps, "Integration steps per side or sample count");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv", "pretty"}));
  app.add_option("--seed", cfg.seed, "Seed for randomized checks")->capture_default_str();
  app.add_option("--delta", cfg.delta, "Shift for verify shift")->capture_default_str();
  app.add_option("--samples", cfg.samples, "Random samples for verify shift");
  app.add_option("--degree", cfg.degree, "Monomial cutoff D for verify sl2");
  app.add_option("--over", cfg.over, "Sweep parameter")->check(CLI::IsMember({"d", "c", "lambda"}));
  app.add_option("--from", cfg.from, "Sweep start");
  app.add_option("--to", cfg.to, "Sweep end (inclusive)");
  app.add_option("--step", cfg.step, "Sweep step");
  app.add_option("--threads", cfg.threads, "Sweep worker threads (0 = all cores)");

  const std::vector<std::pair<std::string, Subcommand>> commands{
      {"spectrum", Subcommand::Spectrum},         {"secular", Subcommand::Secular},
      {"critical-d", Subcommand::CriticalD},      {"sturmian", Subcommand::Sturmian},
      {"wavefunction", Subcommand::Wavefunction}, {"perturb", Subcommand::Perturb},
      {"verify", Subcommand::Verify},             {"table1", Subcommand::Table1},
      {"sweep", Subcommand::Sweep}};
  const std::map<std::string, std::string> descriptions{
      {"spectrum", "Eigencharges of one parameter point"},
      {"secular", "Secular polynomial, plain and in reduced variables"},
      {"critical-d", "Smallest d beyond which all charges are real"},
      {"sturmian", "Right and left Sturmian coefficients with residuals"},
      {"wavefunction", "Sampled quasi-exact wavefunction (CSV)"},
      {"perturb", "Large-screening perturbation series for one level"},
      {"verify", "Independent checks: shift, sl2, ode"},
      {"table1", "Reduced secular equations for N = 0..5 against the reference"},
      {"sweep", "Grid over d, c or lambda (CSV)"}};
  std::vector<CLI::App *> subs;
  for (const auto &[name, kind] : commands) {
    auto *sub = app.add_subcommand(name, descriptions.at(name));
    sub->fallthrough();
    subs.push_back(sub);
  }
  subs[6]->add_option("mode", cfg.mode, "shift | sl2 | ode")->required()->check(CLI::IsMember({"shift", "sl2", "ode"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  for (std::size_t i = 0; i < commands.size(); ++i)
    if (subs[i]->parsed())
      cfg.subcommand = commands[i].second;
  if (format == "json")
    cfg.format = OutputFormat::Json;
  else if (format == "csv")
    cfg.format = OutputFormat::Csv;
  else if (format == "pretty")
    cfg.format = OutputFormat::Pretty;
  return run(cfg, out, err);
}

} // namespace qes::cli

#include "dispatch.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <random>

#include "CLI11.hpp"
#include "rarewalk/bijections.hpp"
#include "rarewalk/closed_form.hpp"
#include "rarewalk/enumerate.hpp"
#include "rarewalk/moments.hpp"
#include "rarewalk/montecarlo.hpp"
#include "rarewalk/parallel.hpp"
#include "report.hpp"

namespace rarewalk::cli {

namespace {

struct CommonOpts {
  std::string format = "csv";
  std::string out_path;
  unsigned threads = 0;
};

unsigned env_threads() {
  const char* raw = std::getenv("RAREWALK_THREADS");
  if (raw == nullptr) return 0;
  const long value = std::strtol(raw, nullptr, 10);
  return value > 0 ? static_cast<unsigned>(value) : 0;
}

void add_common(CLI::App* sub, CommonOpts& opts) {
  sub->add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub->add_option("--out", opts.out_path,
                  "Output file (relative paths honor RAREWALK_OUTDIR)");
  sub->add_option("--threads", opts.threads,
                  "Worker threads (0 = hardware; RAREWALK_THREADS overrides "
                  "the default)");
}

std::uint64_t fresh_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

int write_report(const Report& report, const CommonOpts& opts,
                 std::ostream& out, std::ostream& err) {
  const auto emit = [&](std::ostream& sink) {
    if (opts.format == "json")
      emit_json(report, sink);
    else
      emit_csv(report, sink);
  };
  if (opts.out_path.empty()) {
    emit(out);
    return 0;
  }
  std::string path = opts.out_path;
  const char* outdir = std::getenv("RAREWALK_OUTDIR");
  if (outdir != nullptr && !path.empty() && path.front() != '/')
    path = std::string(outdir) + "/" + path;
  std::ofstream file(path);
  if (!file) {
    err << "error: cannot open output file '" << path << "'\n";
    return 2;
  }
  emit(file);
  return 0;
}

std::string route_row_exact(const Rational& value) {
  return format_rational(value);
}

EventSpec make_event_spec(const std::string& kind, int t, int r) {
  if (kind == "c1") return EventSpec::c1(t);
  if (kind == "c2") return r > 0 ? EventSpec::c2(r, t) : EventSpec::c2(t);
  if (kind == "d1") return EventSpec::d1(t);
  if (kind == "d2") return EventSpec::d2(r, t);
  if (kind == "pos-strict") return EventSpec::positive_strict(t);
  if (kind == "nonneg") return EventSpec::non_negative(t);
  if (kind == "return-zero") return EventSpec::return_zero(t);
  throw std::invalid_argument("unknown event kind '" + kind + "'");
}

// Closed-form value for an event, when one exists.
Rational closed_form_event(const std::string& kind, int t, int r) {
  if (kind == "c1") return prob_C1(t);
  if (kind == "c2") return prob_C2(t - r);  // shift invariance in r
  if (kind == "d1") return prob_D1(t);
  if (kind == "d2") return prob_D2(t - r);
  if (kind == "pos-strict") return prob_D2(t);   // same event at r = 0
  if (kind == "nonneg") return prob_D1(t);       // time reversal
  if (kind == "return-zero") return prob_return_zero(t);
  throw std::invalid_argument("unknown event kind '" + kind + "'");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"rarely visited edge statistics of the simple random walk"};
  app.require_subcommand(1);

  int exit_code = 0;
  const unsigned default_threads = env_threads();

  // ---- expect ----------------------------------------------------------
  auto* expect = app.add_subcommand(
      "expect", "E[alpha(n)] by recursion, ladder sum, enumeration or MC");
  CommonOpts expect_opts;
  expect_opts.threads = default_threads;
  std::int64_t expect_n = 1;
  std::string expect_route = "both";
  std::uint64_t expect_replicas = 1000000;
  std::uint64_t expect_seed = 0;
  add_common(expect, expect_opts);
  expect->add_option("--n", expect_n, "Horizon n")->required();
  expect->add_option("--route", expect_route, "Evaluation route")
      ->check(CLI::IsMember({"recursion", "ladder", "both", "enum", "mc"}))
      ->capture_default_str();
  expect->add_option("--replicas", expect_replicas, "MC replicas")
      ->capture_default_str();
  auto* expect_seed_opt =
      expect->add_option("--seed", expect_seed, "Master seed (MC route)");
  expect->callback([&] {
    Report report;
    report.subcommand = "expect";
    report.add_meta("n", format_int(expect_n));
    report.columns = {"route", "exact", "value", "std_error"};
    if (expect_route == "recursion" || expect_route == "both") {
      const Rational v = expectation_alpha_recursion(expect_n);
      report.rows.push_back({"recursion", route_row_exact(v),
                             format_double(to_double(v)), ""});
    }
    if (expect_route == "ladder" || expect_route == "both") {
      const Rational v = expectation_alpha_ladder(expect_n);
      report.rows.push_back(
          {"ladder", route_row_exact(v), format_double(to_double(v)), ""});
    }
    if (expect_route == "both") {
      const bool agree = report.rows[0][1] == report.rows[1][1];
      report.add_meta("agree", format_bool(agree));
    }
    if (expect_route == "enum") {
      EnumConfig cfg;
      cfg.threads = expect_opts.threads;
      const Rational v =
          enum_expectation_alpha(static_cast<int>(expect_n), cfg);
      report.rows.push_back(
          {"enum", route_row_exact(v), format_double(to_double(v)), ""});
    }
    if (expect_route == "mc") {
      const std::uint64_t seed =
          expect_seed_opt->count() ? expect_seed : fresh_seed();
      const MeanEstimate est = estimate_expectation(
          expect_n, expect_replicas, seed, expect_opts.threads);
      report.add_meta("master_seed", format_uint(seed));
      report.add_meta("replicas", format_uint(expect_replicas));
      report.rows.push_back({"mc", "", format_double(est.mean),
                             format_double(est.std_error)});
    }
    report.add_meta("threads", format_uint(expect_opts.threads));
    exit_code = write_report(report, expect_opts, out, err);
  });

  // ---- enumerate -------------------------------------------------------
  auto* enumerate = app.add_subcommand(
      "enumerate", "Exact statistics by exhausting all 2^n paths");
  CommonOpts enum_opts;
  enum_opts.threads = default_threads;
  std::int64_t enum_n = 1;
  std::int64_t enum_k = 1;
  int enum_cap = 24;
  std::string enum_stat = "alpha-mean";
  add_common(enumerate, enum_opts);
  enumerate->add_option("--n", enum_n, "Path length")->required();
  enumerate->add_option("--stat", enum_stat, "Statistic")
      ->check(CLI::IsMember({"alpha-mean", "alpha-dist", "f1-mean", "moment"}))
      ->capture_default_str();
  enumerate->add_option("--k", enum_k, "Moment order (stat = moment)")
      ->capture_default_str();
  enumerate->add_option("--cap", enum_cap, "Soft cap before warning")
      ->capture_default_str();
  enumerate->callback([&] {
    EnumConfig cfg;
    cfg.soft_cap = enum_cap;
    cfg.threads = enum_opts.threads;
    Report report;
    report.subcommand = "enumerate";
    report.add_meta("n", format_int(enum_n));
    report.add_meta("stat", enum_stat);
    report.add_meta("threads", format_uint(enum_opts.threads));
    const int n = static_cast<int>(enum_n);
    if (enum_stat == "alpha-dist") {
      report.columns = {"alpha", "probability", "probability_float"};
      for (const auto& [value, prob] : enum_distribution_alpha(n, cfg))
        report.rows.push_back({format_int(value), format_rational(prob),
                               format_double(to_double(prob))});
    } else if (enum_stat == "moment") {
      report.columns = {"n", "k", "exact", "value"};
      const Rational v = enum_moment_alpha_k(n, static_cast<int>(enum_k), cfg);
      report.rows.push_back({format_int(enum_n), format_int(enum_k),
                             format_rational(v),
                             format_double(to_double(v))});
    } else {
      const Rational v = enum_stat == "f1-mean"
                             ? enum_expectation_f1(n, cfg)
                             : enum_expectation_alpha(n, cfg);
      report.columns = {"n", "stat", "exact", "value"};
      report.rows.push_back({format_int(enum_n), enum_stat,
                             format_rational(v),
                             format_double(to_double(v))});
    }
    exit_code = write_report(report, enum_opts, out, err);
  });

  // ---- events ----------------------------------------------------------
  auto* events = app.add_subcommand(
      "events", "Ladder-event probabilities and convergence reports");
  CommonOpts events_opts;
  events_opts.threads = default_threads;
  std::string events_kind = "c2";
  std::int64_t events_t = 1;
  std::int64_t events_r = 0;
  std::int64_t events_horizon = 32;
  std::int64_t events_tmax = 0;
  std::int64_t events_exact_horizon = kDefaultExactHorizon;
  bool events_table = false;
  bool events_check = false;
  add_common(events, events_opts);
  events->add_option("--kind", events_kind, "Event kind")
      ->check(CLI::IsMember({"c1", "c2", "d1", "d2", "pos-strict", "nonneg",
                             "return-zero"}))
      ->capture_default_str();
  events->add_option("--t", events_t, "Event horizon t");
  events->add_option("--r", events_r, "Earlier index r (c2/d2)");
  events->add_flag("--table", events_table, "Emit the event table");
  events->add_option("--horizon", events_horizon, "Table horizon")
      ->capture_default_str();
  auto* conv_opt = events->add_option(
      "--convergence", events_tmax, "Emit the convergence report up to t_max");
  events->add_option("--exact-horizon", events_exact_horizon,
                     "Largest t evaluated with exact rationals")
      ->capture_default_str();
  events->add_flag("--check-enum", events_check,
                   "Cross-check against exhaustive enumeration (t <= 24)");
  events->callback([&] {
    Report report;
    report.subcommand = "events";
    report.add_meta("threads", format_uint(events_opts.threads));
    if (conv_opt->count() > 0) {
      const ConvergenceReport conv =
          convergence_report(events_tmax, events_exact_horizon);
      report.add_meta("t_max", format_int(conv.t_max));
      report.add_meta("exact_horizon", format_int(conv.exact_horizon));
      report.add_meta("limit_t_c2", format_double(conv.limit_t_c2));
      report.add_meta("limit_sqrt_t_d1", format_double(conv.limit_sqrt_t_d1));
      report.add_meta("limit_sqrt_t_d2", format_double(conv.limit_sqrt_t_d2));
      report.add_meta("limit_t_c1", format_double(conv.limit_t_c1));
      report.columns = {"t", "t_c2", "sqrt_t_d1", "sqrt_t_d2", "t_c1"};
      for (const auto& row : conv.rows)
        report.rows.push_back({format_int(row.t), format_double(row.t_c2),
                               format_double(row.sqrt_t_d1),
                               format_double(row.sqrt_t_d2),
                               format_double(row.t_c1)});
    } else if (events_table) {
      const EventTable table = build_event_table(events_horizon);
      report.add_meta("horizon", format_int(table.horizon));
      report.columns = {"t",  "c2",     "c2_float", "d1",
                        "d1_float", "d2_gap", "d2_gap_float"};
      for (std::int64_t t = 0; t <= table.horizon; ++t) {
        const Rational& c2 = table.c2[t];
        const Rational& d1 = table.d1[t];
        const Rational& d2 = table.d2_gap[t];
        report.rows.push_back(
            {format_int(t), t >= 1 ? format_rational(c2) : "",
             t >= 1 ? format_double(to_double(c2)) : "", format_rational(d1),
             format_double(to_double(d1)), t >= 1 ? format_rational(d2) : "",
             t >= 1 ? format_double(to_double(d2)) : ""});
      }
    } else {
      const int t = static_cast<int>(events_t);
      const int r = static_cast<int>(events_r);
      const Rational value = closed_form_event(events_kind, t, r);
      report.columns = {"kind", "t", "r", "exact", "value"};
      std::vector<std::string> row{events_kind, format_int(events_t),
                                   format_int(events_r),
                                   format_rational(value),
                                   format_double(to_double(value))};
      if (events_check) {
        EnumConfig cfg;
        cfg.threads = events_opts.threads;
        const Rational oracle =
            enum_event_probability(make_event_spec(events_kind, t, r), -1, cfg);
        report.columns.push_back("oracle");
        report.columns.push_back("agree");
        row.push_back(format_rational(oracle));
        row.push_back(format_bool(oracle == value));
      }
      report.rows.push_back(std::move(row));
    }
    exit_code = write_report(report, events_opts, out, err);
  });

  // ---- moments ---------------------------------------------------------
  auto* moments = app.add_subcommand(
      "moments", "Binomial moments E[binom(alpha(n), k)] and growth report");
  CommonOpts moments_opts;
  moments_opts.threads = default_threads;
  std::int64_t moments_n = 1;
  std::int64_t moments_k = 1;
  std::string moments_mode = "auto";
  std::vector<std::int64_t> growth_ns;
  double growth_a = 0.5;
  double growth_eps = 0.1;
  add_common(moments, moments_opts);
  moments->add_option("--n", moments_n, "Horizon n");
  moments->add_option("--k", moments_k, "Subset size k")->capture_default_str();
  moments->add_option("--mode", moments_mode, "exact|float|auto")
      ->check(CLI::IsMember({"exact", "float", "auto"}))
      ->capture_default_str();
  auto* growth_opt =
      moments->add_option("--growth", growth_ns,
                          "Growth report over these n values (comma list)")
          ->delimiter(',');
  moments->add_option("--a", growth_a, "Growth coefficient a (k ~ a ln n)")
      ->capture_default_str();
  moments->add_option("--epsilon", growth_eps, "Band half-width epsilon")
      ->capture_default_str();
  moments->callback([&] {
    Report report;
    report.subcommand = "moments";
    report.add_meta("threads", format_uint(moments_opts.threads));
    if (growth_opt->count() > 0) {
      const GrowthReport growth =
          growth_band_report(growth_ns, growth_a, growth_eps);
      report.add_meta("a", format_double(growth.a));
      report.add_meta("epsilon", format_double(growth.epsilon));
      report.add_meta("band_low", format_double(growth.band_low));
      report.add_meta("band_high", format_double(growth.band_high));
      report.columns = {"n",           "k",
                        "e_alpha_k",   "lower_bound",
                        "upper_bound", "normalized_ratio"};
      for (const auto& row : growth.rows)
        report.rows.push_back(
            {format_int(row.n), format_int(row.k), format_double(row.e_alpha_k),
             format_double(row.lower_bound), format_double(row.upper_bound),
             format_double(row.normalized_ratio)});
    } else {
      const bool exact = moments_mode == "exact" ||
                         (moments_mode == "auto" &&
                          moments_n <= kMomentExactHorizon);
      report.columns = {"n", "k", "mode", "exact", "value"};
      if (exact) {
        const Rational v = expected_alpha_k_exact(moments_n, moments_k);
        report.rows.push_back({format_int(moments_n), format_int(moments_k),
                               "exact", format_rational(v),
                               format_double(to_double(v))});
      } else {
        const double v = expected_alpha_k_approx(moments_n, moments_k);
        report.rows.push_back({format_int(moments_n), format_int(moments_k),
                               "float", "", format_double(v)});
      }
    }
    exit_code = write_report(report, moments_opts, out, err);
  });

  // ---- bijection-check -------------------------------------------------
  auto* bijection = app.add_subcommand(
      "bijection-check", "Certify the flip and reflection path bijections");
  CommonOpts bijection_opts;
  bijection_opts.format = "json";
  bijection_opts.threads = default_threads;
  std::int64_t bijection_n_plus_1 = 8;
  add_common(bijection, bijection_opts);
  bijection->add_option("--n-plus-1", bijection_n_plus_1, "Horizon n+1")
      ->required();
  bijection->callback([&] {
    const InjectionReport result = verify_injection_sets(bijection_n_plus_1);
    Report report;
    report.subcommand = "bijection-check";
    report.add_meta("n_plus_1", format_int(result.n_plus_1));
    report.add_meta("all_pass", format_bool(result.all_pass));
    report.columns = {"claim", "count_left", "count_right", "pass", "detail"};
    for (const auto& claim : result.claims)
      report.rows.push_back({claim.name, format_uint(claim.count_left),
                             format_uint(claim.count_right),
                             format_bool(claim.pass), claim.detail});
    exit_code = write_report(report, bijection_opts, out, err);
    if (exit_code == 0 && !result.all_pass) exit_code = 1;
  });

  // ---- tail ------------------------------------------------------------
  auto* tail = app.add_subcommand(
      "tail", "Monte Carlo estimate of P(alpha(n) > a (ln n)^2)");
  CommonOpts tail_opts;
  tail_opts.threads = default_threads;
  std::int64_t tail_n = 1024;
  double tail_a = 0.25;
  std::uint64_t tail_replicas = 100000;
  std::uint64_t tail_seed = 0;
  add_common(tail, tail_opts);
  tail->add_option("--n", tail_n, "Horizon n")->required();
  tail->add_option("--a", tail_a, "Threshold coefficient a")
      ->capture_default_str();
  tail->add_option("--replicas", tail_replicas, "Replicas")
      ->capture_default_str();
  auto* tail_seed_opt = tail->add_option("--seed", tail_seed, "Master seed");
  tail->callback([&] {
    const std::uint64_t seed =
        tail_seed_opt->count() ? tail_seed : fresh_seed();
    const TailEstimate est =
        estimate_tail(tail_n, tail_a, tail_replicas, seed, tail_opts.threads);
    Report report;
    report.subcommand = "tail";
    report.add_meta("master_seed", format_uint(seed));
    report.add_meta("threads", format_uint(tail_opts.threads));
    report.columns = {"n",    "a",        "threshold", "hits",
                      "replicas", "p_hat", "ci_low",    "ci_high"};
    report.rows.push_back(
        {format_int(est.n), format_double(est.a), format_double(est.threshold),
         format_uint(est.hits), format_uint(est.replicas),
         format_double(est.p_hat), format_double(est.ci_low),
         format_double(est.ci_high)});
    exit_code = write_report(report, tail_opts, out, err);
  });

  // ---- tail-slope ------------------------------------------------------
  auto* slope = app.add_subcommand(
      "tail-slope", "Fitted slope of ln p_hat against ln n (target -2a)");
  CommonOpts slope_opts;
  slope_opts.threads = default_threads;
  std::vector<std::int64_t> slope_grid{1024, 16384, 262144};
  double slope_a = 0.25;
  std::uint64_t slope_replicas = 1000000;
  std::uint64_t slope_seed = 0;
  add_common(slope, slope_opts);
  slope->add_option("--n-grid", slope_grid, "Comma-separated n values")
      ->delimiter(',')
      ->capture_default_str();
  slope->add_option("--a", slope_a, "Threshold coefficient a")
      ->capture_default_str();
  slope->add_option("--replicas-per-n", slope_replicas, "Replicas per n")
      ->capture_default_str();
  auto* slope_seed_opt = slope->add_option("--seed", slope_seed, "Master seed");
  slope->callback([&] {
    const std::uint64_t seed =
        slope_seed_opt->count() ? slope_seed : fresh_seed();
    const TailSlopeReport result = tail_slope_report(
        slope_grid, slope_a, slope_replicas, seed, slope_opts.threads);
    Report report;
    report.subcommand = "tail-slope";
    report.add_meta("master_seed", format_uint(seed));
    report.add_meta("a", format_double(result.a));
    report.add_meta("target_slope", format_double(result.target_slope));
    report.add_meta("fitted_slope", format_double(result.fitted_slope));
    report.add_meta("points_in_fit",
                    format_uint(static_cast<std::uint64_t>(result.points_in_fit)));
    report.add_meta("replicas_per_n", format_uint(slope_replicas));
    report.add_meta("threads", format_uint(slope_opts.threads));
    report.columns = {"n",     "hits",   "replicas", "p_hat",      "ci_low",
                      "ci_high", "ln_n", "ln_p_hat", "used_in_fit"};
    for (const auto& row : result.rows)
      report.rows.push_back(
          {format_int(row.estimate.n), format_uint(row.estimate.hits),
           format_uint(row.estimate.replicas), format_double(row.estimate.p_hat),
           format_double(row.estimate.ci_low),
           format_double(row.estimate.ci_high), format_double(row.ln_n),
           format_double(row.ln_p_hat), format_bool(row.used_in_fit)});
    exit_code = write_report(report, slope_opts, out, err);
  });

  // ---- limsup ----------------------------------------------------------
  auto* limsup = app.add_subcommand(
      "limsup", "Per-replica maxima of alpha(n)/(ln n)^2 up to a horizon");
  CommonOpts limsup_opts;
  limsup_opts.threads = default_threads;
  std::int64_t limsup_horizon = 1000000;
  std::int64_t limsup_n_min = 2;
  std::uint64_t limsup_replicas = 100;
  std::uint64_t limsup_seed = 0;
  add_common(limsup, limsup_opts);
  limsup->add_option("--horizon", limsup_horizon, "Horizon N")
      ->capture_default_str();
  limsup->add_option("--n-min", limsup_n_min, "Smallest n tracked")
      ->capture_default_str();
  limsup->add_option("--replicas", limsup_replicas, "Replicas")
      ->capture_default_str();
  auto* limsup_seed_opt =
      limsup->add_option("--seed", limsup_seed, "Master seed");
  limsup->callback([&] {
    const std::uint64_t seed =
        limsup_seed_opt->count() ? limsup_seed : fresh_seed();
    const LimsupProbe probe = limsup_probe(
        limsup_horizon, limsup_n_min, limsup_replicas, seed,
        limsup_opts.threads);
    Report report;
    report.subcommand = "limsup";
    report.add_meta("master_seed", format_uint(seed));
    report.add_meta("horizon", format_int(probe.horizon));
    report.add_meta("n_min", format_int(probe.n_min));
    report.add_meta("replicas", format_uint(probe.replicas));
    report.add_meta("threads", format_uint(limsup_opts.threads));
    report.add_meta("bracket_low", format_double(1.0 / 128.0));
    report.add_meta("bracket_high", format_double(0.5));
    report.add_meta("mean", format_double(probe.mean));
    report.add_meta("q00", format_double(probe.q00));
    report.add_meta("q25", format_double(probe.q25));
    report.add_meta("q50", format_double(probe.q50));
    report.add_meta("q75", format_double(probe.q75));
    report.add_meta("q90", format_double(probe.q90));
    report.add_meta("q100", format_double(probe.q100));
    report.columns = {"replica", "max_ratio"};
    for (std::size_t i = 0; i < probe.per_replica_max.size(); ++i)
      report.rows.push_back({format_uint(static_cast<std::uint64_t>(i)),
                             format_double(probe.per_replica_max[i])});
    exit_code = write_report(report, limsup_opts, out, err);
  });

  // ---- sites -----------------------------------------------------------
  auto* sites = app.add_subcommand(
      "sites", "f1(n): sites visited exactly once (exact or MC)");
  CommonOpts sites_opts;
  sites_opts.threads = default_threads;
  std::int64_t sites_n = 1;
  std::string sites_route = "enum";
  std::uint64_t sites_replicas = 1000000;
  std::uint64_t sites_seed = 0;
  add_common(sites, sites_opts);
  sites->add_option("--n", sites_n, "Horizon n")->required();
  sites->add_option("--route", sites_route, "enum|mc")
      ->check(CLI::IsMember({"enum", "mc"}))
      ->capture_default_str();
  sites->add_option("--replicas", sites_replicas, "MC replicas")
      ->capture_default_str();
  auto* sites_seed_opt = sites->add_option("--seed", sites_seed, "Master seed");
  sites->callback([&] {
    Report report;
    report.subcommand = "sites";
    report.add_meta("threads", format_uint(sites_opts.threads));
    report.columns = {"n", "route", "exact", "value", "std_error"};
    if (sites_route == "enum") {
      EnumConfig cfg;
      cfg.threads = sites_opts.threads;
      const Rational v = enum_expectation_f1(static_cast<int>(sites_n), cfg);
      report.rows.push_back({format_int(sites_n), "enum", format_rational(v),
                             format_double(to_double(v)), ""});
    } else {
      const std::uint64_t seed =
          sites_seed_opt->count() ? sites_seed : fresh_seed();
      const MeanEstimate est =
          estimate_f1(sites_n, sites_replicas, seed, sites_opts.threads);
      report.add_meta("master_seed", format_uint(seed));
      report.add_meta("replicas", format_uint(sites_replicas));
      report.rows.push_back({format_int(sites_n), "mc", "",
                             format_double(est.mean),
                             format_double(est.std_error)});
    }
    exit_code = write_report(report, sites_opts, out, err);
  });

  // ---- biased ----------------------------------------------------------
  auto* biased = app.add_subcommand(
      "biased", "Exploratory statistics for the asymmetric walk");
  CommonOpts biased_opts;
  biased_opts.threads = default_threads;
  std::int64_t biased_n = 1024;
  double biased_p = 0.5;
  double biased_tail_a = 0.25;
  std::uint64_t biased_replicas = 100000;
  std::uint64_t biased_seed = 0;
  add_common(biased, biased_opts);
  biased->add_option("--n", biased_n, "Horizon n")->required();
  biased->add_option("--p", biased_p, "P(step = +1)")->required();
  biased->add_option("--tail-a", biased_tail_a, "Tail coefficient")
      ->capture_default_str();
  biased->add_option("--replicas", biased_replicas, "Replicas")
      ->capture_default_str();
  auto* biased_seed_opt =
      biased->add_option("--seed", biased_seed, "Master seed");
  biased->callback([&] {
    const std::uint64_t seed =
        biased_seed_opt->count() ? biased_seed : fresh_seed();
    const BiasedSummary summary = biased_walk_summary(
        biased_n, biased_p, biased_replicas, seed, biased_opts.threads,
        biased_tail_a);
    Report report;
    report.subcommand = "biased";
    report.add_meta("master_seed", format_uint(seed));
    report.add_meta("threads", format_uint(biased_opts.threads));
    report.add_meta("note", "exploratory; no closed-form reference for p != 1/2");
    report.columns = {"n",
                      "p",
                      "replicas",
                      "mean_alpha",
                      "se_alpha",
                      "mean_alpha_plus",
                      "mean_alpha_minus",
                      "mean_terminal",
                      "tail_a",
                      "tail_threshold",
                      "tail_hits",
                      "tail_p_hat",
                      "tail_ci_low",
                      "tail_ci_high"};
    report.rows.push_back(
        {format_int(summary.n), format_double(summary.p_up),
         format_uint(summary.replicas), format_double(summary.mean_alpha),
         format_double(summary.se_alpha),
         format_double(summary.mean_alpha_plus),
         format_double(summary.mean_alpha_minus),
         format_double(summary.mean_terminal), format_double(summary.tail_a),
         format_double(summary.tail.threshold), format_uint(summary.tail.hits),
         format_double(summary.tail.p_hat), format_double(summary.tail.ci_low),
         format_double(summary.tail.ci_high)});
    exit_code = write_report(report, biased_opts, out, err);
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    err << app.help();
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}

}  // namespace rarewalk::cli

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rarewalk/bijections.hpp"
#include "rarewalk/closed_form.hpp"
#include "rarewalk/enumerate.hpp"
#include "rarewalk/moments.hpp"
#include "rarewalk/montecarlo.hpp"
#include "rarewalk/version.hpp"
#include "rarewalk/walk.hpp"

namespace py = pybind11;
using namespace rarewalk;

namespace {

py::object fraction(const Rational& q) {
  static py::object ctor = py::module_::import("fractions").attr("Fraction");
  return ctor(to_fraction_string(q));
}

WalkPath make_path(const std::vector<int>& steps, std::int64_t start) {
  return WalkPath(steps, start);
}

std::vector<int> steps_of(const WalkPath& path) {
  std::vector<int> steps(path.length());
  for (std::size_t i = 0; i < steps.size(); ++i) steps[i] = path.step(i);
  return steps;
}

py::dict summary_dict(const ReplicaSummary& s) {
  py::dict d;
  d["alpha"] = s.alpha;
  d["alpha_plus"] = s.alpha_plus;
  d["alpha_minus"] = s.alpha_minus;
  d["f1"] = s.f1;
  d["terminal_position"] = s.terminal_position;
  d["checkpoints"] = s.checkpoint_values;
  return d;
}

py::dict mean_dict(const MeanEstimate& e) {
  py::dict d;
  d["n"] = e.n;
  d["replicas"] = e.replicas;
  d["master_seed"] = e.master_seed;
  d["mean"] = e.mean;
  d["std_error"] = e.std_error;
  return d;
}

py::dict tail_dict(const TailEstimate& e) {
  py::dict d;
  d["n"] = e.n;
  d["a"] = e.a;
  d["threshold"] = e.threshold;
  d["hits"] = e.hits;
  d["replicas"] = e.replicas;
  d["master_seed"] = e.master_seed;
  d["p_hat"] = e.p_hat;
  d["ci_low"] = e.ci_low;
  d["ci_high"] = e.ci_high;
  return d;
}

EventSpec spec_from_name(const std::string& kind, int t, int r) {
  if (kind == "c1") return EventSpec::c1(t);
  if (kind == "c2") return r > 0 ? EventSpec::c2(r, t) : EventSpec::c2(t);
  if (kind == "d1") return EventSpec::d1(t);
  if (kind == "d2") return EventSpec::d2(r, t);
  if (kind == "pos-strict") return EventSpec::positive_strict(t);
  if (kind == "nonneg") return EventSpec::non_negative(t);
  if (kind == "return-zero") return EventSpec::return_zero(t);
  throw std::invalid_argument("unknown event kind '" + kind + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Exact and Monte Carlo statistics of rarely visited edges of the "
      "simple random walk on Z";
  m.attr("__version__") = kVersion;

  // walk core
  m.def(
      "rare_edge_count",
      [](const std::vector<int>& steps, std::int64_t start) {
        const RareEdgeCounts c = rare_edge_count(make_path(steps, start));
        return py::make_tuple(c.alpha, c.alpha_plus, c.alpha_minus);
      },
      py::arg("steps"), py::arg("start") = 0,
      "(alpha, alpha_plus, alpha_minus) for a +/-1 step sequence");
  m.def(
      "rare_site_count",
      [](const std::vector<int>& steps, std::int64_t start) {
        return rare_site_count(make_path(steps, start));
      },
      py::arg("steps"), py::arg("start") = 0);
  m.def(
      "hitting_time",
      [](const std::vector<int>& steps, std::int64_t x,
         std::int64_t start) -> py::object {
        const auto k = hitting_time(make_path(steps, start), x);
        if (!k) return py::none();
        return py::int_(*k);
      },
      py::arg("steps"), py::arg("x"), py::arg("start") = 0);

  // exhaustive enumeration
  m.def(
      "enum_expectation_alpha",
      [](int n) { return fraction(enum_expectation_alpha(n)); }, py::arg("n"));
  m.def(
      "enum_distribution_alpha",
      [](int n) {
        py::dict d;
        for (const auto& [value, prob] : enum_distribution_alpha(n))
          d[py::int_(value)] = fraction(prob);
        return d;
      },
      py::arg("n"));
  m.def(
      "enum_moment_alpha_k",
      [](int n, int k) { return fraction(enum_moment_alpha_k(n, k)); },
      py::arg("n"), py::arg("k"));
  m.def(
      "enum_expectation_f1",
      [](int n) { return fraction(enum_expectation_f1(n)); }, py::arg("n"));
  m.def(
      "enum_event_probability",
      [](const std::string& kind, int t, int r, int n) {
        return fraction(enum_event_probability(spec_from_name(kind, t, r), n));
      },
      py::arg("kind"), py::arg("t"), py::arg("r") = 0, py::arg("n") = -1,
      "kind in {c1, c2, d1, d2, pos-strict, nonneg, return-zero}");

  // closed forms
  m.def("double_factorial",
        [](std::int64_t k) {
          static py::object pyint =
              py::module_::import("builtins").attr("int");
          return pyint(double_factorial(k).get_str());
        },
        py::arg("k"));
  m.def(
      "expectation_alpha_recursion",
      [](std::int64_t n) { return fraction(expectation_alpha_recursion(n)); },
      py::arg("n"));
  m.def(
      "expectation_alpha_ladder",
      [](std::int64_t n) { return fraction(expectation_alpha_ladder(n)); },
      py::arg("n"));
  m.def("prob_return_zero",
        [](std::int64_t n) { return fraction(prob_return_zero(n)); },
        py::arg("n"));
  m.def("prob_c1", [](std::int64_t t) { return fraction(prob_C1(t)); },
        py::arg("t"));
  m.def("prob_c2", [](std::int64_t t) { return fraction(prob_C2(t)); },
        py::arg("t"));
  m.def("prob_d1", [](std::int64_t t) { return fraction(prob_D1(t)); },
        py::arg("t"));
  m.def("prob_d2", [](std::int64_t gap) { return fraction(prob_D2(gap)); },
        py::arg("gap"));

  // moments
  m.def(
      "expected_alpha_k",
      [](std::int64_t n, std::int64_t k, bool exact) -> py::object {
        if (exact) return fraction(expected_alpha_k_exact(n, k));
        return py::float_(expected_alpha_k_approx(n, k));
      },
      py::arg("n"), py::arg("k"), py::arg("exact") = true);

  // bijections
  m.def(
      "flip_after_last_visit",
      [](const std::vector<int>& steps, std::int64_t start) {
        return steps_of(flip_after_last_visit(make_path(steps, start)));
      },
      py::arg("steps"), py::arg("start") = 0);
  m.def(
      "reflect_before_first_hit",
      [](const std::vector<int>& steps, std::int64_t start,
         std::int64_t level) {
        const WalkPath image =
            reflect_before_first_hit(make_path(steps, start), level);
        return py::make_tuple(image.start(), steps_of(image));
      },
      py::arg("steps"), py::arg("start") = 0, py::arg("level") = -1);
  m.def(
      "verify_injection_sets",
      [](std::int64_t n_plus_1) {
        const InjectionReport report = verify_injection_sets(n_plus_1);
        py::dict d;
        d["n_plus_1"] = report.n_plus_1;
        d["all_pass"] = report.all_pass;
        py::list claims;
        for (const auto& claim : report.claims) {
          py::dict c;
          c["claim"] = claim.name;
          c["count_left"] = claim.count_left;
          c["count_right"] = claim.count_right;
          c["pass"] = claim.pass;
          c["detail"] = claim.detail;
          claims.append(c);
        }
        d["claims"] = claims;
        return d;
      },
      py::arg("n_plus_1"));

  // Monte Carlo
  m.def(
      "simulate_replica",
      [](const std::vector<int>& steps) {
        return summary_dict(simulate_replica(steps));
      },
      py::arg("steps"));
  m.def(
      "simulate_replica_random",
      [](std::int64_t n, std::uint64_t master_seed, std::uint64_t replica,
         double p_up) {
        return summary_dict(
            simulate_replica_random(n, master_seed, replica, p_up));
      },
      py::arg("n"), py::arg("master_seed"), py::arg("replica") = 0,
      py::arg("p_up") = 0.5);
  m.def(
      "estimate_expectation",
      [](std::int64_t n, std::uint64_t replicas, std::uint64_t master_seed,
         unsigned threads) {
        return mean_dict(estimate_expectation(n, replicas, master_seed, threads));
      },
      py::arg("n"), py::arg("replicas"), py::arg("master_seed"),
      py::arg("threads") = 0);
  m.def(
      "estimate_f1",
      [](std::int64_t n, std::uint64_t replicas, std::uint64_t master_seed,
         unsigned threads) {
        return mean_dict(estimate_f1(n, replicas, master_seed, threads));
      },
      py::arg("n"), py::arg("replicas"), py::arg("master_seed"),
      py::arg("threads") = 0);
  m.def(
      "estimate_tail",
      [](std::int64_t n, double a, std::uint64_t replicas,
         std::uint64_t master_seed, unsigned threads) {
        return tail_dict(estimate_tail(n, a, replicas, master_seed, threads));
      },
      py::arg("n"), py::arg("a"), py::arg("replicas"), py::arg("master_seed"),
      py::arg("threads") = 0);
  m.def(
      "limsup_probe",
      [](std::int64_t horizon, std::int64_t n_min, std::uint64_t replicas,
         std::uint64_t master_seed, unsigned threads) {
        const LimsupProbe probe =
            limsup_probe(horizon, n_min, replicas, master_seed, threads);
        py::dict d;
        d["horizon"] = probe.horizon;
        d["n_min"] = probe.n_min;
        d["replicas"] = probe.replicas;
        d["master_seed"] = probe.master_seed;
        d["per_replica_max"] = probe.per_replica_max;
        d["mean"] = probe.mean;
        d["quantiles"] =
            py::make_tuple(probe.q00, probe.q25, probe.q50, probe.q75,
                           probe.q90, probe.q100);
        return d;
      },
      py::arg("horizon"), py::arg("n_min"), py::arg("replicas"),
      py::arg("master_seed"), py::arg("threads") = 0);
  m.def(
      "biased_walk_summary",
      [](std::int64_t n, double p_up, std::uint64_t replicas,
         std::uint64_t master_seed, unsigned threads, double tail_a) {
        const BiasedSummary s = biased_walk_summary(n, p_up, replicas,
                                                    master_seed, threads,
                                                    tail_a);
        py::dict d;
        d["n"] = s.n;
        d["p_up"] = s.p_up;
        d["replicas"] = s.replicas;
        d["master_seed"] = s.master_seed;
        d["mean_alpha"] = s.mean_alpha;
        d["se_alpha"] = s.se_alpha;
        d["mean_alpha_plus"] = s.mean_alpha_plus;
        d["mean_alpha_minus"] = s.mean_alpha_minus;
        d["mean_terminal"] = s.mean_terminal;
        d["tail"] = tail_dict(s.tail);
        return d;
      },
      py::arg("n"), py::arg("p_up"), py::arg("replicas"),
      py::arg("master_seed"), py::arg("threads") = 0,
      py::arg("tail_a") = 0.25);
}

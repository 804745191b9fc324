#include "alc/runner.hpp"

#include <atomic>
#include <chrono>
#include <thread>

#include "alc/conformal.hpp"
#include "alc/curvature.hpp"
#include "alc/errors.hpp"
#include "alc/mixed.hpp"
#include "alc/pointwise.hpp"
#include "alc/solver.hpp"

namespace alc {

namespace {

class JobRunner {
 public:
  JobRunner(const JobConfig& job, u64 seed, JobResult& out) : job_(job), seed_(seed), out_(out) {}

  void run() {
    const std::string& c = job_.command;
    if (c == "solve") solve_job();
    else if (c == "christoffel") christoffel_job();
    else if (c == "curvature") curvature_job(false);
    else if (c == "symmetries") curvature_job(true);
    else if (c == "conformal") conformal_job();
    else if (c == "mixed-trace") mixed_job();
    else if (c == "etale-check") etale_job();
    else throw ConfigError("unknown command '" + c + "'");
  }

 private:
  const JobConfig& job_;
  u64 seed_;
  JobResult& out_;

  void add(const Check& c) { out_.checks.push_back(c); }
  void add(const std::vector<Check>& cs) {
    for (const auto& c : cs) add(c);
  }
  void value(const std::string& k, const std::string& v) { out_.values.emplace_back(k, v); }

  bool pointwise() const {
    if (job_.engine == "pointwise") return true;
    if (job_.engine == "symbolic") return false;
    return job_.n >= 3;
  }

  PointwiseOptions point_options() const {
    PointwiseOptions o;
    o.points = job_.points;
    o.seed = seed_;
    return o;
  }

  CtxPtr base(int N) const {
    return job_.cyclotomic() ? BaseContext::make(job_.p, N, FieldSpec::cyclotomic(job_.m, job_.factor))
                             : BaseContext::make(job_.p, N);
  }

  std::vector<std::vector<CyclotomicInt>> exact_rows(const std::vector<std::vector<i64>>& coeffs) const {
    const int n = job_.n;
    std::vector<std::vector<CyclotomicInt>> rows(n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) rows[a].push_back(CyclotomicInt::from_coeffs(job_.m, coeffs[a * n + b]));
    return rows;
  }

  MetricTuple metric(int N) const {
    CtxPtr B = base(N);
    if (!job_.gauge.empty()) return vertical_setup(exact_rows(job_.q[0]), gauge(), B);
    std::vector<std::vector<CyclotomicInt>> ex;
    for (const auto& m : job_.q) {
      std::vector<CyclotomicInt> e;
      for (const auto& c : m) e.push_back(CyclotomicInt::from_coeffs(job_.m, c));
      ex.push_back(std::move(e));
    }
    return MetricTuple::from_exact(B, job_.n, ex);
  }

  VerticalGauge gauge() const { return VerticalGauge{job_.m, job_.gauge}; }

  void report_lambda(const Connection& c) {
    for (int i = 0; i < c.n(); ++i)
      for (int j = 0; j < c.n(); ++j)
        for (int k = 0; k < c.n(); ++k)
          value("Lambda_" + std::to_string(i + 1) + "(" + std::to_string(j + 1) + "," + std::to_string(k + 1) + ")",
                c.lambda(i)(j, k).str(10));
  }

  Check stability(const MetricTuple& q, const Connection& c) {
    Connection hi = solve(q, job_.N + 1);
    CheckBuilder st("precision-stability", "solve at N+1 truncated to N = solve at N");
    for (int i = 0; i < c.n(); ++i)
      for (int t = 0; t < c.n() * c.n(); ++t) {
        RingElem down = truncate(hi.lambda(i).a[t], job_.N);
        st.expect(down == c.lambda(i).a[t], [&] {
          return "Lambda_" + std::to_string(i + 1) + " entry " + std::to_string(t + 1) + ": " + down.str(10) +
                 " vs " + c.lambda(i).a[t].str(10);
        });
      }
    return st.done();
  }

  void solve_job() {
    MetricTuple q = metric(job_.N);
    if (pointwise()) {
      add(verify_connection_pointwise(q, job_.N, point_options()));
      return;
    }
    Connection c = solve(q, job_.N);
    add(verify_connection(c));
    add(stability(q, c));
    if (job_.n == 1 && !job_.cyclotomic()) {
      PadicScalar d = q.q[0].a[0];
      PadicScalar cf = n1_closed_form(d);
      CheckBuilder cb("n1-closed-form", "Lambda = (d^p/phi(d))^(1/2), branch = 1 mod p");
      RingElem want = RingElem::scalar(c.ring(), cf);
      cb.expect(c.lambda(0)(0, 0) == want, [&] { return "Lambda = " + c.lambda(0)(0, 0).str(10) + ", closed form " + cf.str(); });
      PadicScalar lf = n1_legendre_form(d);
      cb.expect(truncate(cf, 1) == truncate(lf, 1), [&] { return "Legendre form " + lf.str() + " differs mod p"; });
      add(cb.done());
      value("closed_form", cf.str());
    }
    value("iterations", std::to_string(c.frame().iterations));
    report_lambda(c);
  }

  void christoffel_job() {
    if (!job_.gauge.empty()) {
      add(verify_vertical_congruences(exact_rows(job_.q[0]), gauge(), base(job_.N)));
      return;
    }
    MetricTuple q = metric(job_.N);
    if (pointwise()) {
      add(verify_connection_pointwise(q, job_.N, point_options()));
      return;
    }
    Connection c = solve(q, job_.N);
    add(verify_connection(c));
    add(verify_congruence_christoffel(c));
  }

  void curvature_job(bool symmetries_only) {
    MetricTuple q = metric(std::max(job_.N, 2));
    if (pointwise()) {
      add(verify_curvature_pointwise(q, point_options()));
      return;
    }
    Connection c = solve(q, 2);
    CurvatureTensor ct = curvature(c);
    if (q.gauge_invariant()) add(riemann_and_checks(ct, c));
    else add(check_phi_antisymmetry(ct.Phi, ct.n));
    if (!symmetries_only) {
      add(verify_curvature_components(ct, c));
      if (job_.d) add(conformal_curvature_check(*job_.d, job_.p));
    }
    value("max_det_exponent", std::to_string(ct.max_k));
    for (int i = 0; i < ct.n; ++i)
      for (int j = i + 1; j < ct.n; ++j)
        for (int t = 0; t < ct.n * ct.n; ++t)
          value("Phi_" + std::to_string(i + 1) + std::to_string(j + 1) + "[" + std::to_string(t / ct.n + 1) + "," +
                    std::to_string(t % ct.n + 1) + "]",
                ct.phi(i, j).a[t].str(10));
  }

  void conformal_job() {
    const i64 d1 = *job_.d1, d2 = *job_.d2;
    ConformalData cd = solve_conformal(d1, d2, job_.p, job_.N);
    add(verify_conformal(cd));
    value("v1", cd.v1.str(10));
    value("v2", cd.v2.str(10));
    if (d1 == d2) {
      add(verify_conformal_delta_at_identity(cd));
      add(det_compat(cd));
      add(conformal_curvature_check(d1, job_.p));
      if (job_.p % 4 == 1) {
        DetPerpResult dp = det_perp_commutator(cd);
        value("sqrt_minus_one", dp.sqrt_minus_one.str());
        value("det_perp_commutator", dp.commutator.str(10));
        value("det_perp_commutator_terms", std::to_string(dp.commutator.terms()));
      }
    }
    if (!job_.grid.empty()) {
      CtxPtr B = BaseContext::make(job_.p, job_.N);
      std::vector<PadicScalar> g;
      for (i64 d : job_.grid) g.push_back(PadicScalar::from_int(B, d));
      add(verify_horizontality_grid(g, job_.N));
    }
  }

  void mixed_job() {
    const i64 d = *job_.d, p = job_.primes[0], pp = job_.primes[1];
    StarCurvature s = star_curvature_traces(d, p, pp);
    add(verify_star_curvature(s));
    const std::vector<std::string> ab{"alpha", "beta"};
    value("value_alpha", s.at_alpha.str(ab, 10));
    value("value_beta", s.at_beta.str(ab, 10));
    for (i64 q : {p, pp}) {
      MoebiusLifts m = moebius_lifts(d, q);
      add(verify_moebius(m));
      if (p == pp) break;
    }
    add(verify_trace_power(p, 8, seed_));
  }

  void etale_job() {
    EtalePresentation e = etale_presentation(job_.integer_metrics(), job_.p);
    add(section_check(e));
    value("metric_generators", std::to_string(e.metric_gens.size()));
    value("torsion_generators", std::to_string(e.torsion_gens.size()));
    std::vector<int> dims = job_.dims.empty() ? std::vector<int>{2, 3} : job_.dims;
    add(verify_d_determinant(dims, 20, seed_));
  }
};

}  // namespace

const char* status_name(JobStatus s) {
  switch (s) {
    case JobStatus::Pass: return "pass";
    case JobStatus::Fail: return "fail";
    case JobStatus::Error: return "error";
    case JobStatus::InternalError: return "internal-error";
  }
  return "?";
}

JobResult run_job(const JobConfig& job, u64 seed) {
  JobResult r;
  r.job = job;
  r.seed = job.seed.value_or(seed);
  auto t0 = std::chrono::steady_clock::now();
  try {
    JobRunner(job, r.seed, r).run();
    r.status = all_pass(r.checks) ? JobStatus::Pass : JobStatus::Fail;
  } catch (const ExactDivisionFailure& e) {
    r.status = JobStatus::InternalError;
    r.error = std::string("exact division failed: ") + e.what();
  } catch (const ConfigError& e) {
    r.status = JobStatus::Error;
    r.error = e.what();
  } catch (const Error& e) {
    r.status = JobStatus::Error;
    r.error = e.what();
  } catch (const std::exception& e) {
    r.status = JobStatus::InternalError;
    r.error = e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

RunResult run_config(const RunConfig& rc, u64 seed, int threads) {
  RunResult out;
  out.seed = seed;
  out.jobs.resize(rc.jobs.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i; (i = next.fetch_add(1)) < rc.jobs.size();) out.jobs[i] = run_job(rc.jobs[i], seed);
  };
  const int k = std::max(1, std::min<int>(threads, static_cast<int>(rc.jobs.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < k; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& j : out.jobs) {
    if (j.status == JobStatus::InternalError) out.exit_code = 3;
    else if (j.status != JobStatus::Pass && out.exit_code == 0) out.exit_code = 1;
  }
  return out;
}

}  // namespace alc

#include "alc/report.hpp"

#include <cstdio>

#include <json.hpp>

namespace alc {

using ojson = nlohmann::ordered_json;

std::string truncate_terms(const std::string& s, size_t max_monomials) {
  if (s.find("...") != std::string::npos) return s;
  // Top-level " + " / " - " separators outside brackets.
  size_t terms = 1, depth = 0;
  for (size_t i = 0; i + 2 < s.size(); ++i) {
    char c = s[i];
    if (c == '(' || c == '[') ++depth;
    else if ((c == ')' || c == ']') && depth) --depth;
    else if (depth == 0 && c == ' ' && (s[i + 1] == '+' || s[i + 1] == '-') && s[i + 2] == ' ') {
      if (++terms > max_monomials) return s.substr(0, i) + " + ...";
    }
  }
  return s;
}

namespace {

ojson echo(const JobConfig& j) {
  ojson e;
  e["command"] = j.command;
  if (j.command == "mixed-trace") e["primes"] = j.primes;
  else e["p"] = j.p;
  e["N"] = j.N;
  if (j.n) e["n"] = j.n;
  if (j.cyclotomic()) {
    e["field"] = "cyclotomic " + std::to_string(j.m);
    e["factor"] = j.factor;
  } else {
    e["field"] = "rational";
  }
  if (!j.gauge.empty()) e["gauge"] = j.gauge;
  if (!j.q.empty()) e["q"] = j.q;
  if (j.d) e["d"] = *j.d;
  if (j.d1) e["d1"] = *j.d1;
  if (j.d2) e["d2"] = *j.d2;
  if (!j.grid.empty()) e["grid"] = j.grid;
  if (!j.dims.empty()) e["dims"] = j.dims;
  e["engine"] = j.engine;
  e["points"] = j.points;
  return e;
}

}  // namespace

std::string render_report(const RunResult& r, const ReportOptions& opt) {
  ojson doc;
  doc["engine"] = kEngineName;
  doc["version"] = kEngineVersion;
  doc["seed"] = r.seed;
  ojson jobs = ojson::array();
  size_t checks = 0, passed = 0, failed_jobs = 0;
  for (const auto& j : r.jobs) {
    ojson rec;
    rec["name"] = j.job.name;
    rec["seed"] = j.seed;
    rec["config"] = echo(j.job);
    rec["status"] = status_name(j.status);
    if (!j.error.empty()) rec["error"] = j.error;
    if (opt.timing) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.3f", j.seconds);
      rec["seconds"] = buf;
    }
    ojson cs = ojson::array();
    for (const auto& c : j.checks) {
      ojson cr;
      cr["name"] = c.name;
      cr["anchor"] = c.anchor;
      cr["status"] = c.pass ? "pass" : "fail";
      if (!c.witness.empty()) cr["witness"] = truncate_terms(c.witness);
      if (!c.detail.empty()) cr["detail"] = c.detail;
      cs.push_back(std::move(cr));
      ++checks;
      if (c.pass) ++passed;
    }
    rec["checks"] = std::move(cs);
    ojson vals = ojson::object();
    for (const auto& [k, v] : j.values) vals[k] = truncate_terms(v);
    rec["values"] = std::move(vals);
    if (j.status != JobStatus::Pass) ++failed_jobs;
    jobs.push_back(std::move(rec));
  }
  doc["jobs"] = std::move(jobs);
  doc["summary"] = {{"jobs", r.jobs.size()},
                    {"failed_jobs", failed_jobs},
                    {"checks", checks},
                    {"passed", passed},
                    {"exit_code", r.exit_code}};
  return doc.dump(2) + "\n";
}

}  // namespace alc

#include "alc/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "alc/errors.hpp"

namespace alc {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

class Parser {
 public:
  explicit Parser(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(int line, const std::string& field, const std::string& msg) const {
    throw ConfigError(source_ + ":" + std::to_string(line) + ": " + field + ": " + msg);
  }

  i64 integer(int line, const std::string& field, const std::string& v) const {
    try {
      size_t pos = 0;
      long long x = std::stoll(v, &pos);
      if (pos != v.size()) throw std::invalid_argument(v);
      return x;
    } catch (const std::exception&) {
      fail(line, field, "expected an integer, got '" + v + "'");
    }
  }

  std::vector<i64> integers(int line, const std::string& field, const std::string& v) const {
    std::istringstream is(v);
    std::vector<i64> out;
    for (std::string tok; is >> tok;) out.push_back(integer(line, field, tok));
    if (out.empty()) fail(line, field, "expected at least one integer");
    return out;
  }

  // Entries: integers, or [c0,c1,...] coefficient lists.
  std::vector<std::vector<i64>> entries(int line, const std::string& field, const std::string& v) const {
    std::vector<std::vector<i64>> out;
    size_t i = 0;
    while (i < v.size()) {
      if (std::isspace(static_cast<unsigned char>(v[i]))) {
        ++i;
        continue;
      }
      if (v[i] == '[') {
        size_t j = v.find(']', i);
        if (j == std::string::npos) fail(line, field, "unterminated '['");
        std::string inner = v.substr(i + 1, j - i - 1);
        std::replace(inner.begin(), inner.end(), ',', ' ');
        out.push_back(integers(line, field, inner));
        i = j + 1;
      } else {
        size_t j = i;
        while (j < v.size() && !std::isspace(static_cast<unsigned char>(v[j]))) ++j;
        out.push_back({integer(line, field, v.substr(i, j - i))});
        i = j;
      }
    }
    return out;
  }

  RunConfig parse(const std::string& text) {
    RunConfig rc;
    std::istringstream is(text);
    std::string raw;
    int line = 0;
    enum { None, Run, Job } section = None;
    struct Pending {
      JobConfig job;
      std::map<std::string, std::pair<int, std::string>> kv;
    };
    std::vector<Pending> pending;
    while (std::getline(is, raw)) {
      ++line;
      std::string s = raw.substr(0, raw.find('#'));
      s = trim(s);
      if (s.empty()) continue;
      if (s.front() == '[') {
        if (s.back() != ']') fail(line, "section", "expected ']'");
        std::string h = trim(s.substr(1, s.size() - 2));
        if (h == "run") {
          section = Run;
        } else if (h.rfind("job", 0) == 0) {
          section = Job;
          Pending pj;
          pj.job.name = trim(h.substr(3));
          if (pj.job.name.empty()) pj.job.name = "job" + std::to_string(pending.size() + 1);
          pj.job.line = line;
          for (const auto& o : pending)
            if (o.job.name == pj.job.name) fail(line, "section", "duplicate job name '" + pj.job.name + "'");
          pending.push_back(std::move(pj));
        } else {
          fail(line, "section", "unknown section '" + h + "'");
        }
        continue;
      }
      size_t eq = s.find('=');
      if (eq == std::string::npos) fail(line, "line", "expected key = value");
      std::string key = trim(s.substr(0, eq)), val = trim(s.substr(eq + 1));
      if (key.empty()) fail(line, "line", "empty key");
      if (section == None) fail(line, key, "key outside of a section");
      if (section == Run) {
        if (key == "seed") {
          i64 v = integer(line, key, val);
          if (v < 0) fail(line, key, "seed must be non-negative");
          rc.seed = static_cast<u64>(v);
        } else if (key == "report") {
          rc.report = val;
        } else {
          fail(line, key, "unknown key in [run]");
        }
        continue;
      }
      auto& kv = pending.back().kv;
      if (kv.count(key)) fail(line, key, "duplicate key");
      kv[key] = {line, val};
    }
    for (auto& pj : pending) rc.jobs.push_back(build(pj.job, pj.kv));
    if (rc.jobs.empty()) fail(line, "config", "no [job] sections");
    return rc;
  }

 private:
  std::string source_;

  JobConfig build(JobConfig job, std::map<std::string, std::pair<int, std::string>>& kv) {
    auto take = [&](const std::string& k) -> std::optional<std::pair<int, std::string>> {
      auto it = kv.find(k);
      if (it == kv.end()) return std::nullopt;
      auto v = it->second;
      kv.erase(it);
      return v;
    };
    auto need = [&](const std::string& k) {
      auto v = take(k);
      if (!v) fail(job.line, k, "missing in job '" + job.name + "'");
      return *v;
    };
    auto cmd = need("command");
    job.command = cmd.second;
    const auto& cmds = known_commands();
    if (std::find(cmds.begin(), cmds.end(), job.command) == cmds.end())
      fail(cmd.first, "command", "unknown command '" + job.command + "'");

    if (auto v = take("field")) {
      std::istringstream is(v->second);
      std::string kind;
      is >> kind;
      if (kind == "rational") {
        job.m = 1;
      } else if (kind == "cyclotomic") {
        std::string rest;
        std::getline(is, rest);
        job.m = static_cast<int>(integer(v->first, "field", trim(rest)));
        if (job.m < 3) fail(v->first, "field", "cyclotomic conductor must be >= 3");
      } else {
        fail(v->first, "field", "expected 'rational' or 'cyclotomic <m>'");
      }
    }
    if (auto v = take("factor")) job.factor = static_cast<int>(integer(v->first, "factor", v->second));

    const bool mixed = job.command == "mixed-trace";
    if (mixed) {
      auto v = need("primes");
      job.primes = integers(v.first, "primes", v.second);
      if (job.primes.size() != 2) fail(v.first, "primes", "expected two primes p p'");
      for (i64 q : job.primes)
        if (q < 3 || !is_prime(q)) fail(v.first, "primes", "expected odd primes");
      job.p = job.primes[0];
    } else {
      auto v = need("p");
      job.p = integer(v.first, "p", v.second);
      if (job.p < 3 || !is_prime(job.p)) fail(v.first, "p", "p must be an odd prime");
      if (job.m > 1 && job.m % job.p == 0) fail(v.first, "p", "p must not divide the conductor");
    }
    if (auto v = take("N")) {
      job.N = static_cast<int>(integer(v->first, "N", v->second));
      if (job.N < 1 || job.N > 12) fail(v->first, "N", "precision must be in 1..12");
    }
    if (auto v = take("n")) {
      job.n = static_cast<int>(integer(v->first, "n", v->second));
      if (job.n < 1 || job.n > 4) fail(v->first, "n", "n must be in 1..4");
    }
    for (const char* k : {"d", "d1", "d2"})
      if (auto v = take(k)) {
        i64 x = integer(v->first, k, v->second);
        if (std::string(k) == "d") job.d = x;
        else if (std::string(k) == "d1") job.d1 = x;
        else job.d2 = x;
      }
    if (auto v = take("grid")) job.grid = integers(v->first, "grid", v->second);
    if (auto v = take("dims")) {
      for (i64 x : integers(v->first, "dims", v->second)) {
        if (x < 2 || x > 4) fail(v->first, "dims", "dimensions must be in 2..4");
        job.dims.push_back(static_cast<int>(x));
      }
    }
    if (auto v = take("engine")) {
      job.engine = v->second;
      if (job.engine != "symbolic" && job.engine != "pointwise" && job.engine != "auto")
        fail(v->first, "engine", "expected symbolic, pointwise or auto");
    }
    if (auto v = take("points")) {
      job.points = static_cast<int>(integer(v->first, "points", v->second));
      if (job.points < 1) fail(v->first, "points", "must be positive");
    }
    if (auto v = take("seed")) {
      i64 s = integer(v->first, "seed", v->second);
      if (s < 0) fail(v->first, "seed", "seed must be non-negative");
      job.seed = static_cast<u64>(s);
    }
    if (auto v = take("gauge")) {
      for (i64 a : integers(v->first, "gauge", v->second)) job.gauge.push_back(static_cast<int>(a));
      if (job.gauge.empty() || job.gauge[0] != 1) fail(v->first, "gauge", "a_1 must be 1 (sigma_1 = id)");
      if (job.m == 1) fail(v->first, "gauge", "gauge exponents need a cyclotomic field");
    }
    parse_metrics(job, take);

    if (!kv.empty()) fail(kv.begin()->second.first, kv.begin()->first, "unknown key");

    const std::string& c = job.command;
    if (c == "conformal") {
      if (!job.d1 || !job.d2) fail(job.line, "d1/d2", "conformal jobs need d1 and d2");
    } else if (c == "mixed-trace") {
      if (!job.d) fail(job.line, "d", "mixed-trace jobs need d");
    } else if (job.q.empty()) {
      fail(job.line, "q", "job '" + job.name + "' needs a metric");
    }
    if (!job.gauge.empty() && static_cast<int>(job.gauge.size()) != job.n)
      fail(job.line, "gauge", "expected n exponents");
    return job;
  }

  template <class Take>
  void parse_metrics(JobConfig& job, Take& take) {
    std::vector<std::pair<int, std::vector<std::vector<i64>>>> mats;
    auto single = take("q");
    if (single) mats.push_back({single->first, entries(single->first, "q", single->second)});
    for (int i = 1;; ++i) {
      auto v = take("q" + std::to_string(i));
      if (!v) break;
      if (single) fail(v->first, "q" + std::to_string(i), "give either q or q1..qn");
      mats.push_back({v->first, entries(v->first, "q" + std::to_string(i), v->second)});
    }
    if (mats.empty()) return;
    const size_t sz = mats[0].second.size();
    int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(sz))));
    if (static_cast<size_t>(n) * n != sz) fail(mats[0].first, "q", "entry count is not a square");
    if (job.n == 0) job.n = n;
    if (job.n != n) fail(mats[0].first, "q", "expected " + std::to_string(job.n * job.n) + " entries");
    if (!single && static_cast<int>(mats.size()) != n)
      fail(mats.back().first, "q", "expected q1..q" + std::to_string(n));
    for (auto& [line, ents] : mats) {
      if (ents.size() != sz) fail(line, "q", "all metrics must have the same size");
      for (auto& e : ents) {
        if (job.m == 1 && e.size() != 1) fail(line, "q", "coefficient lists need a cyclotomic field");
        while (e.size() > 1 && e.back() == 0) e.pop_back();
      }
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
          if (ents[a * n + b] != ents[b * n + a])
            fail(line, "q", "metric must be symmetric (entries (" + std::to_string(a + 1) + "," +
                                std::to_string(b + 1) + ") and (" + std::to_string(b + 1) + "," +
                                std::to_string(a + 1) + ") differ)");
    }
    const int copies = single ? n : 1;
    for (auto& [line, ents] : mats)
      for (int c = 0; c < copies; ++c) job.q.push_back(ents);
  }
};

}  // namespace

std::vector<std::vector<i64>> JobConfig::integer_metrics() const {
  std::vector<std::vector<i64>> out;
  for (const auto& m : q) {
    std::vector<i64> r;
    for (const auto& e : m) {
      if (e.size() != 1) throw ConfigError("job '" + name + "': metric has non-integer entries");
      r.push_back(e[0]);
    }
    out.push_back(std::move(r));
  }
  return out;
}

const std::vector<std::string>& known_commands() {
  static const std::vector<std::string> cmds{"solve",     "christoffel", "curvature",  "symmetries",
                                             "conformal", "mixed-trace", "etale-check"};
  return cmds;
}

RunConfig parse_config(const std::string& text, const std::string& source) { return Parser(source).parse(text); }

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

}  // namespace alc

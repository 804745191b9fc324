#pragma once

#include <string>
#include <utility>
#include <vector>

#include "alc/check.hpp"
#include "alc/config.hpp"

namespace alc {

enum class JobStatus { Pass, Fail, Error, InternalError };

struct JobResult {
  JobConfig job;
  u64 seed = 0;
  std::vector<Check> checks;
  std::vector<std::pair<std::string, std::string>> values;  // reported quantities, in insertion order
  JobStatus status = JobStatus::Pass;
  std::string error;
  double seconds = 0;
};

struct RunResult {
  u64 seed = 0;
  std::vector<JobResult> jobs;  // config order
  int exit_code = 0;            // 0 pass, 1 check failure, 3 internal error
};

JobResult run_job(const JobConfig& job, u64 seed);
// Jobs run on up to `threads` workers; results keep config order.
RunResult run_config(const RunConfig& rc, u64 seed, int threads = 1);

const char* status_name(JobStatus s);

}  // namespace alc

#pragma once

#include <string>

#include "alc/runner.hpp"

namespace alc {

inline constexpr const char* kEngineName = "arithlc";
inline constexpr const char* kEngineVersion = "1.0.0";

struct ReportOptions {
  bool timing = false;  // wall-clock seconds per job; breaks byte-determinism
};

// JSON document: engine, version, seed, one record per job (config echo,
// checks, reported values) and a summary.
std::string render_report(const RunResult& r, const ReportOptions& opt = {});

// Witnesses and values are cut to `max_monomials` terms with an elision marker.
std::string truncate_terms(const std::string& s, size_t max_monomials = 10);

}  // namespace alc

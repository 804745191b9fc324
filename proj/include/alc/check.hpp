#pragma once

#include <string>
#include <vector>

namespace alc {

// One verified statement. `anchor` names the identity being checked.
struct Check {
  std::string name;
  std::string anchor;
  bool pass = true;
  std::string witness;  // first failing entry, empty on success
  std::string detail;   // extra deterministic information (point counts, values)
};

inline bool all_pass(const std::vector<Check>& cs) {
  for (const auto& c : cs)
    if (!c.pass) return false;
  return true;
}

// Accumulates element-wise comparisons into a single Check, keeping the first
// failure as witness.
class CheckBuilder {
 public:
  CheckBuilder(std::string name, std::string anchor) {
    c_.name = std::move(name);
    c_.anchor = std::move(anchor);
  }
  template <class F>
  void expect(bool ok, F describe) {
    ++count_;
    if (!ok && c_.pass) {
      c_.pass = false;
      c_.witness = describe();
    }
  }
  void note(const std::string& s) { c_.detail += (c_.detail.empty() ? "" : "; ") + s; }
  Check done() const {
    Check c = c_;
    if (c.detail.empty()) c.detail = std::to_string(count_) + " entries";
    else c.detail = std::to_string(count_) + " entries; " + c.detail;
    return c;
  }

 private:
  Check c_;
  long count_ = 0;
};

}  // namespace alc

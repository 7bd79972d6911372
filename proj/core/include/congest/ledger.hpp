#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace congest {

/// Per-phase round and message accounting. Measured rounds come out of the
/// simulation engine; modeled rounds are charged for the one subroutine whose
/// internals are external to this artifact (blocker-set construction).
/// Phases appear in first-touch order, which keeps exports deterministic.
class RoundLedger {
 public:
  struct Phase {
    std::string label;
    std::int64_t measured_rounds = 0;
    std::int64_t modeled_rounds = 0;
    std::int64_t messages = 0;
  };

  void add_measured(std::string_view label, std::int64_t rounds, std::int64_t messages);
  void charge_modeled(std::string_view label, std::int64_t amount);

  const std::vector<Phase>& phases() const { return phases_; }
  const Phase* find(std::string_view label) const;

  std::int64_t total_measured() const;
  std::int64_t total_modeled() const;
  std::int64_t total() const { return total_measured() + total_modeled(); }
  std::int64_t total_messages() const;

  /// CSV with header "phase,measured_rounds,modeled_rounds,messages" plus a
  /// trailing "total" row.
  void write_csv(std::ostream& out) const;
  std::string to_csv() const;
  std::string to_json() const;

 private:
  Phase& touch(std::string_view label);
  std::vector<Phase> phases_;
};

}  // namespace congest

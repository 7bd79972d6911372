#include "congest/ledger.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace congest {

RoundLedger::Phase& RoundLedger::touch(std::string_view label) {
  for (Phase& p : phases_) {
    if (p.label == label) return p;
  }
  phases_.push_back(Phase{std::string(label), 0, 0, 0});
  return phases_.back();
}

const RoundLedger::Phase* RoundLedger::find(std::string_view label) const {
  for (const Phase& p : phases_) {
    if (p.label == label) return &p;
  }
  return nullptr;
}

void RoundLedger::add_measured(std::string_view label, std::int64_t rounds,
                               std::int64_t messages) {
  if (rounds < 0 || messages < 0) throw std::invalid_argument("negative ledger amount");
  Phase& p = touch(label);
  p.measured_rounds += rounds;
  p.messages += messages;
}

void RoundLedger::charge_modeled(std::string_view label, std::int64_t amount) {
  if (amount < 0) throw std::invalid_argument("negative modeled charge");
  touch(label).modeled_rounds += amount;
}

std::int64_t RoundLedger::total_measured() const {
  std::int64_t t = 0;
  for (const Phase& p : phases_) t += p.measured_rounds;
  return t;
}

std::int64_t RoundLedger::total_modeled() const {
  std::int64_t t = 0;
  for (const Phase& p : phases_) t += p.modeled_rounds;
  return t;
}

std::int64_t RoundLedger::total_messages() const {
  std::int64_t t = 0;
  for (const Phase& p : phases_) t += p.messages;
  return t;
}

void RoundLedger::write_csv(std::ostream& out) const {
  out << "phase,measured_rounds,modeled_rounds,messages\n";
  for (const Phase& p : phases_) {
    out << p.label << ',' << p.measured_rounds << ',' << p.modeled_rounds << ','
        << p.messages << '\n';
  }
  out << "total," << total_measured() << ',' << total_modeled() << ',' << total_messages()
      << '\n';
}

std::string RoundLedger::to_csv() const {
  std::ostringstream os;
  write_csv(os);
  return os.str();
}

std::string RoundLedger::to_json() const {
  nlohmann::ordered_json j;
  j["phases"] = nlohmann::ordered_json::array();
  for (const Phase& p : phases_) {
    j["phases"].push_back({{"phase", p.label},
                           {"measured_rounds", p.measured_rounds},
                           {"modeled_rounds", p.modeled_rounds},
                           {"messages", p.messages}});
  }
  j["total_measured"] = total_measured();
  j["total_modeled"] = total_modeled();
  j["total"] = total();
  j["total_messages"] = total_messages();
  return j.dump(2) + "\n";
}

}  // namespace congest

#include "hemsim/errors.hpp"

#include <cmath>
#include <sstream>

#include "hemsim/domain.hpp"

namespace hemsim {

ParseError::ParseError(const std::string& source, int line, const std::string& reason)
    : InvalidInput(source + ":" + std::to_string(line) + ": " + reason), line_(line) {}

namespace {

std::string describe(const std::vector<Violation>& violations) {
  std::string out = "infeasible schedule:";
  for (const auto& v : violations) out += " [" + std::string(to_string(v.rule)) + "] " + v.message + ";";
  return out;
}

std::string describe_size(long double size, std::uint64_t limit) {
  std::ostringstream os;
  os << "search space of " << std::llround(std::floor(size)) << " candidates exceeds limit " << limit;
  if (size >= 9.2e18L) {
    os.str("");
    os.precision(6);
    os << "search space of " << static_cast<double>(size) << " candidates exceeds limit " << limit;
  }
  return os.str();
}

}  // namespace

InfeasibleSchedule::InfeasibleSchedule(std::vector<Violation> violations)
    : Error(describe(violations)), violations_(std::move(violations)) {}

SearchSpaceTooLarge::SearchSpaceTooLarge(long double size, std::uint64_t limit)
    : Error(describe_size(size, limit)), size_(size), limit_(limit) {}

InvalidAttack::InvalidAttack(const std::string& reason, int index)
    : Error(index >= 0 ? "attack #" + std::to_string(index) + ": " + reason : reason), index_(index) {}

}  // namespace hemsim

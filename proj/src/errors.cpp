#include "boltzsym/errors.hpp"

#include <sstream>

namespace boltzsym {

namespace {

std::string blow_up_message(double time, double magnitude) {
  std::ostringstream os;
  os.precision(17);
  os << "blow-up at t=" << time << " (max |state| = " << magnitude << ")";
  return os.str();
}

}  // namespace

BlowUpError::BlowUpError(double time, double magnitude)
    : Error(blow_up_message(time, magnitude)), time_(time), magnitude_(magnitude) {}

SingularSourceError::SingularSourceError(const std::string& family, double time)
    : Error("source " + family + " is singular at t=" + std::to_string(time)), time_(time) {}

InconsistentResonanceError::InconsistentResonanceError(std::size_t index, double rhs)
    : Error("inconsistent resonance at n=" + std::to_string(index) +
            " (A(n)=0, right side " + std::to_string(rhs) + ")"),
      index_(index) {}

}  // namespace boltzsym

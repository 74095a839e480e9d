#include "ppcircuit/errors.hpp"

#include <sstream>

namespace ppc {

namespace {

std::string beyond_arch_message(double flux_quanta) {
  std::ostringstream os;
  os << "flux bias " << flux_quanta
     << " Phi0 is beyond the SQUID arch (Josephson inductance diverges)";
  return os.str();
}

std::string with_line(const std::string& what, std::size_t line) {
  if (line == 0) return what;
  std::ostringstream os;
  os << "line " << line << ": " << what;
  return os.str();
}

}  // namespace

BeyondArchError::BeyondArchError(double flux_quanta)
    : DomainError(beyond_arch_message(flux_quanta)), flux_quanta_(flux_quanta) {}

ParseError::ParseError(const std::string& what, std::size_t line)
    : Error(with_line(what, line)), line_(line) {}

}  // namespace ppc

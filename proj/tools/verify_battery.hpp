#ifndef JEP_TOOLS_VERIFY_BATTERY_HPP
#define JEP_TOOLS_VERIFY_BATTERY_HPP

#include <ostream>

namespace jep::tools {

// Runs the full invariant battery, one line per check. Returns the number
// of failed checks.
int run_verify_battery(std::ostream& out);

}  // namespace jep::tools

#endif

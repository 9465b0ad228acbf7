#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rosa {

// Entry point of the `rosa` tool. `args` excludes the program name.
// validate: 0 valid, 1 violations, 2 unreadable/unparsable.
// other commands: 0 success, 1 domain error, 2 unreadable/unparsable input.
int run_cli(const std::vector<std::string> & args, std::ostream & out, std::ostream & err);

} // namespace rosa

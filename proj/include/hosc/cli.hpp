#pragma once

// Command-line front end. Exit status: 0 for a positive verdict or success,
// 1 for a negative verdict, 2 for usage or input errors.

#include <iosfwd>
#include <string>
#include <vector>

namespace hosc {

// args excludes the program name.
int cmd_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hosc

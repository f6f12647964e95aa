#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace eden {

// Runs one edenca command line (program name excluded) against the
// given streams and returns the process exit code:
//   0  success, or the requested witness was found
//   1  the search completed with a negative answer
//   2  usage or input error
//   3  resource cap exceeded
int dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace eden

#ifndef HECKEQ_CLI_HPP
#define HECKEQ_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace heckeq::cli {

// Exit codes: 0 success, 1 domain error, 2 data-integrity error,
// 3 transport error, 64 usage error.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace heckeq::cli

#endif

#ifndef QCSP_CLI_HPP
#define QCSP_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace qcsp {

/// Runs the command line (args[0] is the program name). Exit codes: 0 pass, found or
/// constructed; 1 fail, refuted, inconclusive or none; 2 usage, format or input error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qcsp

#endif

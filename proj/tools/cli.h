#ifndef NASHZERO_TOOLS_CLI_H_
#define NASHZERO_TOOLS_CLI_H_

#include <iosfwd>

namespace nashzero {

// Entry point of the `nashzero` tool. Returns the process exit code.
int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

}  // namespace nashzero

#endif  // NASHZERO_TOOLS_CLI_H_

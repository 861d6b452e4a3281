#ifndef LEXSPARQL_CLI_HPP
#define LEXSPARQL_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "lexsparql/error.hpp"

namespace lexsparql {

enum ExitCode : int {
  kExitOk = 0,
  kExitOther = 1,
  kExitConfig = 2,
  kExitIo = 3,
  kExitEndpoint = 4,
  kExitValidation = 5,
  kExitParse = 6,
};

int exit_code_for(ErrorKind kind);

// Entry point behind the lexsparql binary; args exclude the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lexsparql

#endif

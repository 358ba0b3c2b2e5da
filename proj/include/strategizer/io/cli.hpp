#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace strategizer::io {

inline constexpr const char* kErrorPrefix = "STRATEGIZER_ERROR:";

// Exit codes: 0 success, 2 validation or usage error, 1 anything else.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace strategizer::io

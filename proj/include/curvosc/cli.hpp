#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace curvosc::cli {

// Exit codes: 0 success / all checks pass, 1 verification failure,
// 2 usage error, 3 numerical non-convergence.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// 17-significant-digit formatting used for every CSV float field.
std::string format17(double x);

}  // namespace curvosc::cli

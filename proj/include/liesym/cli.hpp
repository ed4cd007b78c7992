#pragma once

#include "liesym/pipeline.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace liesym {

// Exit codes: 0 solved and verified; 1 symmetries but no verified closed
// form; 2 no nontrivial symmetry; 64 usage or parse error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string report_to_text(const Report& rep);
std::string report_to_json(const Report& rep);

}  // namespace liesym

#pragma once

#include <string>

#include "apseq/model.hpp"
#include "text_io.hpp"

namespace apseq::detail {

void append_deployment(std::string& out, const ApDeployment& deployment);
// Consumes the header, area and ap lines; stops before the first other line.
ApDeployment read_deployment(LineReader& reader);

}  // namespace apseq::detail

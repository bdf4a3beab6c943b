#pragma once

// Deployment file format:
//
//   APSEQ-DEPLOY v1
//   area <width> <height>
//   ap <id> <x> <y>
//   ...

#include <filesystem>
#include <string>
#include <string_view>

#include "apseq/model.hpp"

namespace apseq {

inline constexpr std::string_view kDeploymentHeader = "APSEQ-DEPLOY v1";

std::string format_deployment(const ApDeployment& deployment);
ApDeployment parse_deployment(std::string_view text);

ApDeployment read_deployment_file(const std::filesystem::path& path);
void write_deployment_file(const ApDeployment& deployment, const std::filesystem::path& path);

}  // namespace apseq

#include "apseq/deployment_io.hpp"

#include "apseq/error.hpp"
#include "deployment_text.hpp"
#include "text_io.hpp"

namespace apseq {

namespace detail {

void append_deployment(std::string& out, const ApDeployment& deployment) {
  out += kDeploymentHeader;
  out += '\n';
  out += "area " + fixed6(deployment.area().width) + ' ' + fixed6(deployment.area().height) + '\n';
  for (const auto& ap : deployment.aps()) {
    out += "ap " + std::to_string(ap.id) + ' ' + fixed6(ap.position.x) + ' ' +
           fixed6(ap.position.y) + '\n';
  }
}

ApDeployment read_deployment(LineReader& reader) {
  std::string_view line;
  if (!reader.next(line) || line != kDeploymentHeader) {
    parse_fail(reader, "expected '" + std::string(kDeploymentHeader) + "'");
  }
  if (!reader.next(line)) parse_fail(reader, "missing 'area' line");
  auto tok = split_ws(line);
  if (tok.size() != 3 || tok[0] != "area") parse_fail(reader, "expected 'area <width> <height>'");
  const Area area{parse_real(tok[1], "area width"), parse_real(tok[2], "area height")};

  std::vector<AccessPoint> aps;
  while (reader.next(line)) {
    tok = split_ws(line);
    if (tok.empty() || tok[0] != "ap") {
      reader.unread();
      break;
    }
    if (tok.size() != 4) parse_fail(reader, "expected 'ap <id> <x> <y>'");
    const auto id = parse_uint(tok[1], "AP id");
    if (id == 0 || id > 0xFFFFFFFFul) parse_fail(reader, "AP id out of range");
    aps.push_back({static_cast<ApId>(id),
                   {parse_real(tok[2], "AP x"), parse_real(tok[3], "AP y")}});
  }
  try {
    return ApDeployment(area, std::move(aps));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(std::string("invalid deployment: ") + e.what());
  }
}

}  // namespace detail

std::string format_deployment(const ApDeployment& deployment) {
  std::string out;
  detail::append_deployment(out, deployment);
  return out;
}

ApDeployment parse_deployment(std::string_view text) {
  detail::LineReader reader(text);
  ApDeployment d = detail::read_deployment(reader);
  std::string_view extra;
  if (reader.next(extra)) detail::parse_fail(reader, "unexpected trailing content");
  return d;
}

ApDeployment read_deployment_file(const std::filesystem::path& path) {
  return parse_deployment(detail::read_file(path));
}

void write_deployment_file(const ApDeployment& deployment, const std::filesystem::path& path) {
  detail::write_file(path, format_deployment(deployment));
}

}  // namespace apseq

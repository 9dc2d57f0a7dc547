#include "tdx/matrix_io.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

namespace tdx {

namespace {

constexpr const char* kHeader = "tdx-matrix v1";

std::string strip_comments(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  bool in_comment = false;
  for (char c : text) {
    if (c == '#') in_comment = true;
    if (c == '\n') in_comment = false;
    if (c == '\r') continue;  // tolerate CRLF input
    if (!in_comment) out.push_back(c);
  }
  return out;
}

}  // namespace

TransducerFile parse_transducer_text(const std::string& text, double tol) {
  std::istringstream in(strip_comments(text));
  std::string line;
  // First non-blank line must be the version header.
  std::string header;
  while (std::getline(in, line)) {
    std::istringstream probe(line);
    std::string word;
    if (probe >> word) {
      header = line;
      break;
    }
  }
  {
    std::istringstream h(header);
    std::string name, version;
    h >> name >> version;
    if (name + " " + version != kHeader) {
      throw Error("transducer file: expected header '" + std::string(kHeader) +
                  "', got '" + header + "'");
    }
  }

  TransducerFile out;
  std::vector<double> values;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "label" && values.empty()) {
      std::string rest;
      std::getline(ls, rest);
      const auto lo = rest.find_first_not_of(" \t");
      const auto hi = rest.find_last_not_of(" \t");
      out.label = lo == std::string::npos ? "" : rest.substr(lo, hi - lo + 1);
      continue;
    }
    ls.clear();
    ls.seekg(0);
    double v;
    while (ls >> v) values.push_back(v);
    if (!ls.eof()) {
      throw Error("transducer file: unparsable token in line '" + line + "'");
    }
  }
  if (values.size() != 16) {
    throw Error("transducer file: expected 16 matrix entries, found " +
                std::to_string(values.size()));
  }
  Eigen::Matrix4d m;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) m(r, c) = values[4 * r + c];
  }
  out.transform = TwoModeTransform(m);
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  out.transform.require_symplectic(tol * scale * scale);
  return out;
}

TransducerFile read_transducer_file(const std::string& path, double tol) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_transducer_text(buf.str(), tol);
}

void write_transducer_file(const std::string& path, const TwoModeTransform& t,
                           const std::string& label) {
  std::ostringstream out;
  out << kHeader << "\n";
  if (!label.empty()) out << "label " << label << "\n";
  char buf[64];
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      std::snprintf(buf, sizeof(buf), "%.17g", t.matrix()(r, c));
      out << buf << (c == 3 ? "\n" : " ");
    }
  }
  write_text_atomic(path, out.str());
}

std::string format_sig12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_text_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + tmp + "' for writing");
    out << content;
    if (!out.good()) throw Error("write failed for '" + tmp + "'");
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace tdx

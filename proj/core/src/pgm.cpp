#include "cadenoise/pgm.hpp"

#include <cctype>
#include <fstream>
#include <iterator>
#include <string>

#include "cadenoise/error.hpp"

namespace cadenoise {

namespace {

// Reads one whitespace-delimited header token, skipping '#' comments.
bool next_token(std::istream& in, std::string& tok) {
  tok.clear();
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n' && c != '\r') c = in.get();
    } else if (std::isspace(c)) {
      c = in.get();
    } else {
      break;
    }
  }
  while (c != EOF && !std::isspace(c) && c != '#') {
    tok.push_back(static_cast<char>(c));
    c = in.get();
  }
  // The single whitespace after the last header field is consumed here; a
  // '#' directly after a token is pushed back so it starts a comment.
  if (c == '#') in.unget();
  return !tok.empty();
}

int parse_header_int(std::istream& in, const std::string& path, const char* field) {
  std::string tok;
  if (!next_token(in, tok)) {
    throw PgmError(PgmErrorKind::kMalformedHeader,
                   path + ": missing " + field + " in PGM header");
  }
  std::size_t used = 0;
  long value = 0;
  try {
    value = std::stol(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != tok.size() || value <= 0 || value > (1L << 30)) {
    throw PgmError(PgmErrorKind::kMalformedHeader,
                   path + ": invalid " + field + " '" + tok + "' in PGM header");
  }
  return static_cast<int>(value);
}

}  // namespace

GrayImage load_pgm(const std::filesystem::path& path) {
  const std::string name = path.string();
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw PgmError(PgmErrorKind::kMissingFile, name + ": cannot open file");
  }

  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (in.gcount() != 2 || magic[0] != 'P') {
    throw PgmError(PgmErrorKind::kMalformedHeader, name + ": not a netpbm file");
  }
  if (magic[1] != '5') {
    throw PgmError(PgmErrorKind::kUnsupportedFormat,
                   name + ": unsupported netpbm format P" + std::string(1, magic[1]) +
                       " (only binary P5 is supported)");
  }
  const int c = in.peek();
  if (c != EOF && !std::isspace(c) && c != '#') {
    throw PgmError(PgmErrorKind::kMalformedHeader, name + ": malformed magic number");
  }

  const int width = parse_header_int(in, name, "width");
  const int height = parse_header_int(in, name, "height");
  const int maxval = parse_header_int(in, name, "maxval");
  if (maxval != 255) {
    throw PgmError(PgmErrorKind::kUnsupportedMaxval,
                   name + ": maxval " + std::to_string(maxval) + " is not supported (need 255)");
  }

  const std::size_t expected = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  std::vector<std::uint8_t> pixels(expected);
  in.read(reinterpret_cast<char*>(pixels.data()), static_cast<std::streamsize>(expected));
  const auto got = static_cast<std::size_t>(in.gcount());
  if (got != expected) {
    throw PgmError(PgmErrorKind::kTruncatedPayload,
                   name + ": truncated payload, " + std::to_string(got) + " of " +
                       std::to_string(expected) + " bytes");
  }
  return GrayImage(width, height, std::move(pixels));
}

void save_pgm(const GrayImage& img, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw PgmError(PgmErrorKind::kIoFailure, path.string() + ": cannot open for writing");
  }
  out << "P5\n" << img.width() << ' ' << img.height() << "\n255\n";
  const auto px = img.pixels();
  out.write(reinterpret_cast<const char*>(px.data()), static_cast<std::streamsize>(px.size()));
  out.flush();
  if (!out) {
    throw PgmError(PgmErrorKind::kIoFailure, path.string() + ": write failed");
  }
}

}  // namespace cadenoise

#include "sifthom/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "sifthom/errors.hpp"

namespace sifthom {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

double parse_field(std::string_view token, const char* name, std::size_t line) {
  const std::string_view t = trim(token);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(value))
    throw ParseError(line, std::string(name) + " is not a finite number");
  return value;
}

}  // namespace

std::vector<SiftCorrespondence> read_correspondence_csv(std::istream& is,
                                                        bool degrees) {
  static constexpr const char* kFields[8] = {"u1", "v1", "u2", "v2",
                                             "alpha1", "alpha2", "q1", "q2"};
  const double angle_unit = degrees ? std::numbers::pi / 180.0 : 1.0;

  std::vector<SiftCorrespondence> out;
  std::string raw;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(is, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      if (line != kCorrespondenceHeader)
        throw ParseError(line_no, std::string("expected header \"") +
                                      kCorrespondenceHeader + "\"");
      header_seen = true;
      continue;
    }

    double values[8];
    std::string_view rest = line;
    for (int i = 0; i < 8; ++i) {
      const std::size_t comma = rest.find(',');
      if (i < 7 && comma == std::string_view::npos)
        throw ParseError(line_no, "expected 8 comma-separated fields");
      if (i == 7 && comma != std::string_view::npos)
        throw ParseError(line_no, "expected 8 comma-separated fields");
      const std::string_view token =
          i < 7 ? rest.substr(0, comma) : rest;
      values[i] = parse_field(token, kFields[i], line_no);
      if (i < 7) rest.remove_prefix(comma + 1);
    }
    if (!(values[6] > 0.0)) throw ParseError(line_no, "q1 must be positive");
    if (!(values[7] > 0.0)) throw ParseError(line_no, "q2 must be positive");

    SiftCorrespondence c;
    c.p1 = {values[0], values[1]};
    c.p2 = {values[2], values[3]};
    c.alpha1 = values[4] * angle_unit;
    c.alpha2 = values[5] * angle_unit;
    c.q1 = values[6];
    c.q2 = values[7];
    out.push_back(c);
  }
  if (!header_seen)
    throw ParseError(line_no, std::string("expected header \"") +
                                  kCorrespondenceHeader + "\"");
  return out;
}

std::vector<SiftCorrespondence> read_correspondence_file(
    const std::string& path, bool degrees) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open " + path);
  return read_correspondence_csv(is, degrees);
}

void write_correspondence_csv(std::ostream& os,
                              std::span<const SiftCorrespondence> cs) {
  os << kCorrespondenceHeader << "\n";
  char buf[512];
  for (const SiftCorrespondence& c : cs) {
    std::snprintf(buf, sizeof buf,
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", c.p1.u,
                  c.p1.v, c.p2.u, c.p2.v, c.alpha1, c.alpha2, c.q1, c.q2);
    os << buf;
  }
}

void write_correspondence_file(const std::string& path,
                               std::span<const SiftCorrespondence> cs) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open " + path + " for writing");
  write_correspondence_csv(os, cs);
  os.flush();
  if (!os) throw Error("failed writing " + path);
}

}  // namespace sifthom

#ifndef SIFTHOM_IO_HPP_
#define SIFTHOM_IO_HPP_

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "sifthom/affine.hpp"

namespace sifthom {

inline constexpr const char* kCorrespondenceHeader =
    "u1,v1,u2,v2,alpha1,alpha2,q1,q2";

// Reads correspondence records from a stream. The first significant line
// must be exactly kCorrespondenceHeader; lines starting with '#' and blank
// lines are skipped anywhere. Angles are radians on disk; pass `degrees` to
// convert on ingest. Malformed input raises ParseError carrying the 1-based
// line number.
std::vector<SiftCorrespondence> read_correspondence_csv(std::istream& is,
                                                        bool degrees = false);

// Same, reading from a file; unreadable paths raise Error.
std::vector<SiftCorrespondence> read_correspondence_file(
    const std::string& path, bool degrees = false);

// Writes records under the canonical header with round-trip precision.
// Angles are written in radians.
void write_correspondence_csv(std::ostream& os,
                              std::span<const SiftCorrespondence> cs);

void write_correspondence_file(const std::string& path,
                               std::span<const SiftCorrespondence> cs);

}  // namespace sifthom

#endif  // SIFTHOM_IO_HPP_

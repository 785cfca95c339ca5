#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "nls/instance.hpp"

namespace nls {

/// Input text that does not describe a valid instance or record. The message
/// starts with "line N:" and line() carries N (1-based).
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

/// Taillard text layout: a "jobs machines" header, j rows of processing
/// times, then j rows of machine orders. Machine indices may be 1-based (the
/// published convention) or 0-based; the convention is detected from the
/// value range. Blank lines and lines starting with '#' are skipped, extra
/// integers on the header line (seeds, bounds) are ignored.
Instance parse_taillard(std::string_view text);

/// Taillard layout with 1-based machines; parse_taillard inverts it exactly.
std::string render_taillard(const Instance& instance);

/// Canonical single-line record
/// {"num_jobs":j,"num_machines":m,"proc_time":[[..]],"machine_of":[[..]]}
/// with 0-based machines and no trailing newline.
std::string to_canonical_json(const Instance& instance);
Instance from_canonical_json(std::string_view line);

/// Reads either format; a file whose first non-blank character is '{' is a
/// canonical record, anything else is Taillard text.
Instance read_instance_file(const std::filesystem::path& path);

/// Writes Taillard text for ".txt" paths and a canonical record otherwise.
void write_instance_file(const std::filesystem::path& path,
                         const Instance& instance);

}  // namespace nls

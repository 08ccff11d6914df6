#pragma once

#include <iosfwd>
#include <string>

#include "dmt/morse.hpp"

namespace dmt {

// Line formats, stable ordering by id, bit-exact round trips:
//   complex:  "C <dim> <id> : <signed facet ids>"  /  "V <id> <name>"
//   field:    "P <sigma-id> <tau-id>"
//   function: "F <cell-id> <rational>"
// '#' starts a comment anywhere.

std::string emit_complex(const Complex& X);
Complex parse_complex(std::istream& in);
Complex parse_complex_str(const std::string& text);

std::string emit_field(const GradientField& V);
GradientField parse_field(std::istream& in, const Complex& X);
GradientField parse_field_str(const std::string& text, const Complex& X);

std::string emit_function(const MorseFunction& f);
MorseFunction parse_function(std::istream& in, const Complex& X);
MorseFunction parse_function_str(const std::string& text, const Complex& X);

// JSON mirror of the complex schema.
std::string emit_complex_json(const Complex& X);
Complex parse_complex_json(const std::string& text);

Complex load_complex(const std::string& path);
GradientField load_field(const std::string& path, const Complex& X);
MorseFunction load_function(const std::string& path, const Complex& X);
void save_text(const std::string& path, const std::string& text);

}  // namespace dmt

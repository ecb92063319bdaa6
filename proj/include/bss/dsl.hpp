#ifndef BSS_DSL_HPP
#define BSS_DSL_HPP

#include <map>
#include <string>
#include <string_view>

#include "bss/machine.hpp"

namespace bss {

/// Values for `param NAME = stream(SOURCE)` declarations, keyed by SOURCE.
using StreamBindings = std::map<std::string, Scalar>;

/// Parses the machine description language.  Throws ParseError with a line and
/// column, or Error(ValidationError) whose message lists line:column per violation.
Machine parse_machine_dsl(std::string_view text, const StreamBindings& streams = {});
Machine load_machine_file(const std::string& path, const StreamBindings& streams = {});

/// Canonical source text; parse_machine_dsl(print_machine_dsl(m)) is structurally
/// equal to m whenever node ids and parameter names are identifiers.
std::string print_machine_dsl(const Machine& m);

}  // namespace bss

#endif

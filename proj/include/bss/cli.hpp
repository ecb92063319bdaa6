#ifndef BSS_CLI_HPP
#define BSS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "bss/dsl.hpp"
#include "bss/structures.hpp"

namespace bss {

namespace exit_code {
constexpr int ok = 0;
constexpr int negative = 1;  // false, disagreement, stuck
constexpr int unknown = 2;   // unknown, out of budget
constexpr int usage = 64;
constexpr int data = 65;
}  // namespace exit_code

/// Runs one `bss` command line (args exclude the program name).
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// JSON helpers shared with the structure manifests.
StreamBindings load_stream_bindings(const std::string& path);
Oracle load_oracle(const std::string& path);
RStructure load_structure_manifest(const std::string& path);

}  // namespace bss

#endif

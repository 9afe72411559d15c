#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "selcol/instance.hpp"

namespace selcol {

/// Input error tagged with the 1-based line it was found on (0 when not line-specific).
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what);
    int line() const { return line_; }

private:
    int line_;
};

// Instance text format:
//   c <comment>
//   p selcol <n> <m> <p> <k>
//   e <u> <v>                 (m lines)
//   v <j> <u1> <u2> ...       (p lines)
Instance parse_instance(std::string_view text);

/// Canonical form: edges sorted, parts in index order with sorted members.
std::string serialize_instance(const Instance& inst);

/// Reads a bare graph: either `p edges <n> <m>` followed by `e` lines, or a
/// `p selcol` document whose part lines (if any) are ignored.
Graph parse_graph(std::string_view text);

/// Structured solution document. Keys are emitted in sorted order; the elapsed time
/// is included only when `include_timing` is set so that output stays byte-stable.
std::string verdict_to_json(const Verdict& v, bool include_timing = false);
Verdict verdict_from_json(std::string_view text);

}  // namespace selcol

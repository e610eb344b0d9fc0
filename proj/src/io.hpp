#pragma once
// Graph serialization (JSON / DOT), atomic file output, and the command-line
// driver.  JSON schema:
//   { curve: {name, q}, operator: {place:{deg,idx}, r, rank, form},
//     window: [lo, hi],
//     vertices: [{id, label, degree, seed}], edges: [{src, dst, weight}] }
// Vertices are sorted by (degree, label); bytes are deterministic for a fixed
// configuration.

#include <string>
#include <vector>

#include "hecke.hpp"

namespace hk {

std::string graph_to_json(Ctx& ctx, const Graph& g);
Graph graph_from_json(Ctx& ctx, const std::string& text);  // curve must match
std::string graph_to_dot(Ctx& ctx, const Graph& g);

Label parse_label(Ctx& ctx, const std::string& text);  // inverse of label_text
BClass parse_class(Ctx& ctx, const std::string& text);

void write_atomic(const std::string& path, const std::string& data);

// The command-line driver (argv without the program name).  Output is
// appended to *out when given, otherwise printed to stdout.  Exit codes:
// 0 success, 2 configuration error, 3 invariant violation / failed check.
int run_cli(const std::vector<std::string>& args, std::string* out = nullptr);

}  // namespace hk

#pragma once

// Line-oriented text formats.
//
//   stream  := table(default=<hf>[; "ρ"=<hf>, ...])
//            | levelconst(period=<p>; <hf>,...)
//            | f1(<stream>)
//            | patch(<stream>; w=<nodeset>; <stream>)
//   nodeset := finite("ρ",...) | branchoff(<stream>,<start>,<step>,<tail>)
//   region  := one `"ρ"=<hf>` entry per line
//
// HF values use the brace grammar of parse_hf (including `#n`). Printing is
// canonical, so print(parse(print(x))) == print(x) byte for byte.

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "medforge/stream.hpp"

namespace medforge {

std::string to_text(const StreamFun& f);
std::string to_text(const NodeSet& w);

StreamFun parse_stream(std::string_view text);
NodeSet parse_nodeset(std::string_view text);

/// One stream per non-empty line; lines starting with `//` are comments.
std::vector<StreamFun> parse_stream_lines(std::string_view text);

std::map<BinStr, HfSet> parse_region(std::string_view text);
std::string region_to_text(const std::map<BinStr, HfSet>& region);

/// Parses any of the three literal kinds (HF, stream, node set) and prints it
/// canonically.
std::string canonicalize(std::string_view text);

std::string read_file(const std::string& path);

}  // namespace medforge

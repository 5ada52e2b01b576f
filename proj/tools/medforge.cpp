#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "medforge/branch.hpp"
#include "medforge/construction.hpp"
#include "medforge/cover.hpp"
#include "medforge/error.hpp"
#include "medforge/hf.hpp"
#include "medforge/ramsey.hpp"
#include "medforge/suite.hpp"
#include "medforge/text.hpp"

namespace {

using namespace medforge;
namespace con = medforge::construction;

// A stream given either as a file or inline.
struct StreamArg {
  std::string file;
  std::string expr;

  void add(CLI::App* app, const std::string& name, const std::string& what) {
    auto* f = app->add_option("--" + name, file, what + " (file)");
    auto* e = app->add_option("--" + name + "-expr", expr, what + " (inline text)");
    f->excludes(e);
  }

  StreamFun get(const std::string& name) const {
    if (!file.empty()) return parse_stream(read_file(file));
    if (!expr.empty()) return parse_stream(expr);
    throw Error(ErrorKind::kInvalidArgument, "missing --" + name + " or --" + name + "-expr");
  }
};

std::string join(const std::vector<BinStr>& nodes) {
  std::string out;
  for (const auto& v : nodes) {
    if (!out.empty()) out += ',';
    out += '"' + v.str() + '"';
  }
  return out;
}

void print_classification(const con::GClassification& c) {
  std::cout << "g0=" << to_string(c.g0) << '\n';
  std::cout << "g1=" << to_string(c.g1) << '\n';
  std::cout << "g2=" << to_string(c.g2) << '\n';
  std::cout << "recovered=" << c.recovered.describe() << '\n';
  if (c.candidate) {
    std::cout << "source=" << to_text(*c.candidate) << '\n';
    std::cout << "source_exact=" << (c.candidate_exact ? "true" : "false") << '\n';
  }
  std::cout << "w=" << join(c.w) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* budget = std::getenv("MEDFORGE_BIGINT_BUDGET")) {
    try {
      set_bigint_budget_bits(std::stoull(budget));
    } catch (const std::exception&) {
      std::cerr << "error: MEDFORGE_BIGINT_BUDGET must be a positive integer\n";
      return 2;
    }
  }

  CLI::App app{"medforge: hereditarily finite streams, branch codes and patch constructions"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text"}));
  int status = 0;

  // encode / decode
  auto* encode = app.add_subcommand("encode", "Ackermann code of an HF literal");
  std::string literal;
  encode->add_option("literal", literal, "HF literal, e.g. {{},{{}}} or #3")->required();
  encode->callback([&] { std::cout << ack_code(parse_hf(literal)) << '\n'; });

  auto* decode = app.add_subcommand("decode", "HF set with a given Ackermann code");
  std::string code_text;
  decode->add_option("code", code_text, "Natural number")->required();
  decode->callback([&] {
    if (code_text.empty() || code_text.find_first_not_of("0123456789") != std::string::npos) {
      throw Error(ErrorKind::kInvalidArgument, "code must be a natural number");
    }
    std::cout << to_literal(ack_decode(BigInt(code_text))) << '\n';
  });

  auto* canon = app.add_subcommand("canonicalize", "Print an HF literal, stream or node set canonically");
  std::string canon_file, canon_text;
  auto* cf = canon->add_option("--file", canon_file, "Input file");
  canon->add_option("text", canon_text, "Inline input")->excludes(cf);
  canon->callback([&] {
    const std::string in = canon_file.empty() ? canon_text : read_file(canon_file);
    std::cout << canonicalize(in) << '\n';
  });

  // branch
  auto* branch = app.add_subcommand("branch", "First bits of a stream's branch code");
  StreamArg branch_stream;
  branch_stream.add(branch, "stream", "Stream");
  std::size_t bits = 64;
  bool count_queries = false;
  branch->add_option("--bits", bits, "Number of bits")->check(CLI::Range(1, 1 << 20));
  branch->add_flag("--queries", count_queries, "Also report node evaluations");
  branch->callback([&] {
    const StreamFun f = branch_stream.get("stream");
    QueryCounter qc;
    std::cout << branch_bits(f, bits, count_queries ? &qc : nullptr) << '\n';
    if (count_queries) std::cout << "evaluations=" << qc.evaluations << " max_index=" << qc.max_index << '\n';
  });

  // build-patch
  auto* build = app.add_subcommand("build-patch", "F1(f) patched with f on a node set");
  StreamArg build_f;
  build_f.add(build, "f", "Source stream");
  std::string w_file, w_expr;
  auto* wf = build->add_option("--w", w_file, "Node set (file)");
  build->add_option("--w-expr", w_expr, "Node set (inline text)")->excludes(wf);
  build->callback([&] {
    const StreamFun f = build_f.get("f");
    if (w_file.empty() && w_expr.empty()) throw Error(ErrorKind::kInvalidArgument, "missing --w or --w-expr");
    const NodeSet w = parse_nodeset(w_file.empty() ? w_expr : read_file(w_file));
    std::cout << to_text(con::patch_build(f, w)) << '\n';
  });

  // recover
  auto* recover = app.add_subcommand("recover", "Majority-decode the source of a patched stream");
  StreamArg recover_g;
  recover_g.add(recover, "stream", "Patched stream");
  std::size_t recover_n = 6;
  recover->add_option("--horizon", recover_n, "Deepest level decoded")->check(CLI::Range(3, 12));
  recover->callback([&] {
    const con::RecoverResult r = con::recover_f(recover_g.get("stream"), recover_n);
    std::cout << "status=" << r.describe() << '\n';
    for (std::size_t j = 0; j < r.tower.size(); ++j) {
      std::cout << "depth[" << j + 3 << "]=";
      const auto& values = r.tower[j].values();
      for (std::size_t i = 0; i < values.size(); ++i) std::cout << (i ? " " : "") << to_literal(values[i]);
      std::cout << '\n';
    }
  });

  // classify
  auto* classify = app.add_subcommand("classify", "Membership verdicts for the G-families");
  StreamArg classify_g;
  classify_g.add(classify, "stream", "Stream");
  std::size_t classify_n = 6;
  classify->add_option("--horizon", classify_n, "Horizon")->check(CLI::Range(4, 12));
  classify->callback([&] { print_classification(con::classify_g(classify_g.get("stream"), classify_n)); });

  // f3star
  auto* f3 = app.add_subcommand("f3star", "Run the F3* dispatch on a stream");
  StreamArg f3_f;
  f3_f.add(f3, "stream", "Stream");
  std::size_t f3_n = 6;
  con::F3Options f3_opts;
  f3->add_option("--horizon", f3_n, "Horizon")->check(CLI::Range(4, 12));
  f3->add_option("--kmax", f3_opts.k_max, "Largest tower count tried")->check(CLI::Range(1, 16));
  f3->callback([&] {
    const con::F3Result r = con::f3star(f3_f.get("stream"), f3_n, f3_opts);
    std::cout << "dispatch=" << con::to_string(r.dispatch) << '\n';
    std::cout << "exact=" << (r.exact ? "true" : "false") << '\n';
    if (r.stream) std::cout << "output=" << to_text(*r.stream) << '\n';
    for (const auto& line : r.trace) std::cout << "trace " << line << '\n';
  });

  // claim3
  auto* claim3 = app.add_subcommand("claim3", "Agreement bound for two patched streams");
  StreamArg c3_a, c3_b;
  c3_a.add(claim3, "g1", "First stream");
  c3_b.add(claim3, "g2", "Second stream");
  std::size_t c3_n = 8;
  claim3->add_option("--horizon", c3_n, "Horizon")->check(CLI::Range(4, 12));
  claim3->callback([&] {
    const con::Claim3Result r = con::claim3_bound(c3_a.get("g1"), c3_b.get("g2"), c3_n);
    std::cout << "same_f=" << (r.same_f ? "true" : "false") << '\n';
    std::cout << "bound=" << r.bound << '\n';
    std::cout << "verdict=" << to_string(r.verdict) << '\n';
    std::cout << "late_agreements=" << join(r.late_agreements) << '\n';
  });

  // family-check
  auto* family = app.add_subcommand("family-check", "Pairwise agreement report for a family of streams");
  std::string family_file;
  std::size_t family_n = 8;
  family->add_option("--family", family_file, "File with one stream per line")->required();
  family->add_option("--horizon", family_n, "Horizon")->check(CLI::Range(4, 12));
  family->callback([&] {
    const std::vector<StreamFun> fs = parse_stream_lines(read_file(family_file));
    const con::FamilyReport r = con::family_ed_check(fs, family_n);
    for (const auto& p : r.pairs) {
      std::cout << "pair " << p.a << ' ' << p.b << " agreements=" << p.agreements << " top=" << p.top_agreement
                << " bound=" << (p.bound ? std::to_string(*p.bound) : std::string("none"))
                << (p.flagged ? " FLAGGED " + p.reason : std::string(" ok")) << '\n';
    }
    std::cout << "result=" << (r.clean() ? "CLEAN" : "FLAGGED") << '\n';
  });

  // ramsey
  auto* ram = app.add_subcommand("ramsey", "Homogeneous set of a 2-coloring of pairs");
  std::string coloring;
  std::size_t count = 16;
  bool trace = false;
  ram->add_option("--coloring", coloring,
                  "constant:c | minparity | threshold:t | periodic:<rows>[@offset]")->required();
  ram->add_option("--count", count, "Number of elements")->check(CLI::Range(1, 4096));
  ram->add_flag("--trace", trace, "Print the construction trace");
  ram->callback([&] {
    const auto r = ramsey::parse_coloring(coloring);
    const ramsey::HomogeneousResult h = ramsey::homogeneous_prefix(*r, count, trace);
    if (trace) {
      for (const auto& line : h.trace) std::cout << line << '\n';
    }
    std::cout << "color=" << h.color << '\n';
    std::cout << "elements=";
    for (std::size_t i = 0; i < h.elements.size(); ++i) std::cout << (i ? "," : "") << h.elements[i];
    std::cout << '\n';
    if (!h.complete) std::cout << "complete=false\n";
  });

  // tower-cover
  auto* tc = app.add_subcommand("tower-cover", "Cover a region's values by k restriction towers");
  std::string region_file;
  std::size_t tc_k = 1;
  tc->add_option("--region", region_file, "Region file, one \"node\"=<hf> per line")->required();
  tc->add_option("--k", tc_k, "Number of towers")->required();
  tc->callback([&] {
    const cover::CoverResult r = cover::tower_cover_decide(parse_region(read_file(region_file)), tc_k);
    if (r.bad_node) {
      std::cout << "covered=false\nnot_levelfun=\"" << r.bad_node->str() << "\"\n";
      return;
    }
    std::cout << "covered=" << (r.covered ? "true" : "false") << '\n';
    std::cout << "min_chains=" << r.min_chains << '\n';
    for (std::size_t j = 0; j < r.towers.size(); ++j) {
      std::cout << "tower[" << j << "]=";
      const auto& values = r.towers[j].values();
      for (std::size_t i = 0; i < values.size(); ++i) std::cout << (i ? " " : "") << to_literal(values[i]);
      std::cout << '\n';
    }
    if (!r.covered) std::cout << "antichain=" << join(r.antichain_nodes) << '\n';
  });

  // tv2ki
  auto* tv = app.add_subcommand("tv2ki", "Can values above a branch ball be covered by k towers");
  StreamArg tv_f;
  tv_f.add(tv, "stream", "Stream");
  std::size_t tv_k = 1, tv_i = 0, tv_n = 6;
  tv->add_option("--k", tv_k, "Number of towers")->required();
  tv->add_option("--i", tv_i, "Ball index");
  tv->add_option("--horizon", tv_n, "Horizon")->check(CLI::Range(1, 12));
  tv->callback([&] {
    const Verdict v = cover::tv_2ki(tv_f.get("stream"), tv_k, tv_i, tv_n);
    std::cout << "verdict=" << to_string(v) << '\n';
  });

  // verify
  auto* verify = app.add_subcommand("verify", "Run the verification suite");
  suite::SuiteOptions sopts;
  std::string only;
  bool no_timing = false;
  verify->add_option("--seed", sopts.seed, "Instance generator seed");
  verify->add_option("--horizon", sopts.horizon, "Horizon")->check(CLI::Range(4, 8));
  verify->add_option("--check", only, "Run a single named check");
  verify->add_flag("--corrupt-decoder", sopts.corrupt_decoder, "Fault injection: unreachable majority threshold");
  verify->add_flag("--no-timing", no_timing, "Omit wall times from the report");
  verify->callback([&] {
    suite::SuiteReport report;
    report.seed = sopts.seed;
    report.horizon = sopts.horizon;
    if (only.empty()) {
      report = suite::run_verify_suite(sopts);
    } else {
      report.checks.push_back(suite::run_check(only, sopts));
    }
    std::cout << report.to_text(!no_timing);
    if (!report.passed()) status = 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const UnsupportedQuery& e) {
    std::cerr << "unsupported: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return status;
}

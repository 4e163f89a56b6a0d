// Command-line surface for the Heffter array toolkit: validate array files,
// find compatible orderings, trace faces, derive and verify embeddings of
// K_{2ms+1}, develop cycle systems, and run the desk-scale searches.
//
// Machine-readable output goes to stdout as key=value lines; diagnostics go
// to stderr. Exit codes: 0 = valid/found, 1 = invalid/none, 2 = usage or
// format error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "heffter/heffter.hpp"

namespace {

using namespace heffter;

constexpr int kExitValid = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parameter_error("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw parameter_error("cannot write '" + path + "'");
  out << content;
}

void print_violations(const std::vector<Violation>& violations) {
  for (const auto& v : violations) {
    std::cout << "violation=" << v.kind << " " << v.location << ": " << v.detail << "\n";
  }
}

// ---------------------------------------------------------------------------

int cmd_verify(const std::string& path, bool integer, bool shiftable, bool weak) {
  WeakHeffterArray w = parse_array(read_file(path));
  std::cout << "file=" << path << "\n"
            << "m=" << w.rows() << "\nn=" << w.cols() << "\ns=" << w.row_fill() << "\nt="
            << w.col_fill() << "\nM=" << w.modulus() << "\n";
  if (weak || w.has_weak_cells()) {
    if (integer || shiftable) {
      std::cerr << "error: --integer/--shiftable do not apply to weak arrays\n";
      return kExitUsage;
    }
    std::cout << "kind=weak-heffter\n";
    ValidationReport report = validate_weak(w);
    std::cout << "valid=" << report.verdict << "\n";
    print_violations(report.violations);
    return report.verdict ? kExitValid : kExitInvalid;
  }
  HeffterArray h = *to_plain(w);
  std::cout << "kind=heffter\n";
  ValidationReport report = validate(h);
  std::cout << "valid=" << report.verdict << "\n";
  print_violations(report.violations);
  bool pass = report.verdict;
  if (integer) {
    bool ok = validate_integer(h);
    std::cout << "integer=" << ok << "\n";
    pass = pass && ok;
  }
  if (shiftable) {
    bool ok = validate_shiftable(h);
    std::cout << "shiftable=" << ok << "\n";
    pass = pass && ok;
  }
  return pass ? kExitValid : kExitInvalid;
}

int cmd_orderings(const std::string& path, bool require_simple, uint64_t budget,
                  const std::string& out_path) {
  WeakHeffterArray w = parse_array(read_file(path));
  if (w.has_weak_cells()) {
    std::cerr << "error: ordering search expects a plain Heffter array\n";
    return kExitUsage;
  }
  HeffterArray h = *to_plain(w);
  ValidationReport report = validate(h);
  if (!report.verdict) {
    std::cout << "valid=0\n";
    print_violations(report.violations);
    return kExitInvalid;
  }
  auto pair = find_compatible_pair(
      h, require_simple ? SimplePolicy::kRequireSimple : SimplePolicy::kPreferSimple, budget);
  std::cout << "found=" << pair.has_value() << "\n";
  if (!pair) return kExitInvalid;
  std::string text = format_orderings(pair->row_ordering, pair->col_ordering);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_file(out_path, text);
    std::cout << "output=" << out_path << "\n";
  }
  return kExitValid;
}

struct Pipeline {
  std::optional<CurrentGraph> plain_graph;
  std::optional<SignedCurrentGraph> signed_graph;
  RotationSystem rho;
  int s = 0, t = 0;
};

Pipeline build_pipeline(const std::string& array_path, const std::string& ordering_path,
                        bool is_signed) {
  WeakHeffterArray w = parse_array(read_file(array_path));
  OrderingFile of = parse_orderings(read_file(ordering_path));
  Pipeline p;
  p.s = w.row_fill();
  p.t = w.col_fill();
  if (is_signed) {
    SystemOrdering rom{weak_row_system(w), {}};
    rom.sequences = of.row_sequences;
    for (auto& seq : rom.sequences)
      for (int& v : seq) v = canonicalize(v, w.modulus());
    SystemOrdering com{weak_col_system(w), {}};
    com.sequences = of.col_sequences;
    for (auto& seq : com.sequences)
      for (int& v : seq) v = canonicalize(v, w.modulus());
    check_ordering(rom);
    check_ordering(com);
    p.rho = weak_rotation_from_orderings(w, rom, com);
    p.signed_graph = from_weak_array(w);
  } else {
    if (w.has_weak_cells()) {
      throw parameter_error("array has weak cells; use --signed");
    }
    HeffterArray h = *to_plain(w);
    ValidationReport report = validate(h);
    if (!report.verdict) throw precondition_error("array does not validate");
    auto rom = ordering_for_rows(h, of.row_sequences);
    auto com = ordering_for_cols(h, of.col_sequences);
    p.rho = rotation_from_orderings(h, rom, com);
    p.plain_graph = from_array(h);
  }
  return p;
}

int cmd_trace(const std::string& array_path, const std::string& ordering_path, bool is_signed) {
  Pipeline p = build_pipeline(array_path, ordering_path, is_signed);
  FaceTrace trace = is_signed ? trace_faces_signed(*p.signed_graph, p.rho)
                              : trace_faces(*p.plain_graph, p.rho);
  const CurrentGraph& g = is_signed ? *p.signed_graph : *p.plain_graph;
  std::cout << "faces=" << trace.faces.size() << "\n"
            << "orientable=" << trace.orientable << "\n"
            << "monofacial=" << is_monofacial(trace) << "\n"
            << format_faces(g, trace);
  return is_monofacial(trace) ? kExitValid : kExitInvalid;
}

int cmd_derive(const std::string& array_path, const std::string& ordering_path, bool is_signed,
               const std::string& out_path) {
  Pipeline p = build_pipeline(array_path, ordering_path, is_signed);
  DerivedEmbedding d;
  try {
    d = is_signed ? derive_signed(*p.signed_graph, p.rho) : derive(*p.plain_graph, p.rho);
  } catch (const precondition_error& e) {
    std::cout << "derived=0\n";
    std::cerr << "refused: " << e.what() << "\n";
    return kExitInvalid;
  }
  BiembeddingReport report = verify_biembedding(d, p.s, p.t);
  std::cout << "derived=1\nM=" << d.modulus << "\ns=" << d.row_face_size << "\nt="
            << d.col_face_size << "\nfaces=" << d.faces().size() << "\norientable="
            << d.orientable << "\n"
            << (d.orientable ? "genus=" : "crosscaps=") << d.summary.genus << "\n"
            << "valid=" << report.verdict << "\nsimple_faces=" << report.faces_simple << "\n";
  print_violations(report.violations);
  if (!out_path.empty()) {
    write_file(out_path, format_certificate(d));
    std::cout << "certificate=" << out_path << "\n";
  }
  return report.verdict ? kExitValid : kExitInvalid;
}

int cmd_verify_embedding(const std::string& path) {
  Biembedding b = parse_certificate(read_file(path));
  BiembeddingReport report = verify_biembedding(b);
  std::cout << "M=" << b.modulus << "\ns=" << b.row_face_size << "\nt=" << b.col_face_size
            << "\nfaces=" << b.faces.size() << "\norientable=" << b.orientable << "\n";
  bool euler_ok = true;
  if (auto problem = certificate_euler_problem(b)) {
    euler_ok = false;
    std::cout << "violation=euler header: " << *problem << "\n";
  }
  std::cout << "valid=" << (report.verdict && euler_ok) << "\nsimple_faces="
            << report.faces_simple << "\n";
  print_violations(report.violations);
  return report.verdict && euler_ok ? kExitValid : kExitInvalid;
}

int cmd_develop(const std::string& path) {
  OrderingFile of = parse_orderings(read_file(path));
  bool all_ok = true;
  bool any = false;
  auto run = [&](const char* name, const std::vector<std::vector<int>>& seqs) {
    if (seqs.empty()) return;
    any = true;
    size_t entries = 0;
    for (const auto& s : seqs) entries += s.size();
    int modulus = 2 * static_cast<int>(entries) + 1;
    SystemOrdering om = ordering_from_sequences(modulus, seqs);
    EdgeDecomposition d = develop(om);
    bool verified = verify_decomposition(d);
    bool cycles = is_cycle_system(d);
    std::cout << "system=" << name << "\nM=" << modulus << "\ntrails=" << d.trail_count()
              << "\ndecomposition=" << verified << "\ncycle_system=" << cycles << "\n";
    std::cout << format_decomposition(d);
    all_ok = all_ok && verified;
  };
  run("row", of.row_sequences);
  run("col", of.col_sequences);
  if (!any) {
    std::cerr << "error: ordering file has no sequences\n";
    return kExitUsage;
  }
  return all_ok ? kExitValid : kExitInvalid;
}

int cmd_search_array(int m, int n, int s, int t, const std::string& mode, uint64_t budget,
                     int jobs) {
  if (jobs > 1) std::cerr << "note: array search runs single-threaded\n";
  ArrayMode am = ArrayMode::kGeneral;
  if (mode == "integer") am = ArrayMode::kInteger;
  else if (mode == "shiftable") am = ArrayMode::kShiftable;
  else if (mode != "general") {
    std::cerr << "error: unknown mode '" << mode << "'\n";
    return kExitUsage;
  }
  ArraySearchResult result = find_heffter_array(m, n, s, t, am, budget);
  std::cerr << "search nodes: " << result.nodes << "\n";
  std::cout << "found=" << result.array.has_value() << "\n"
            << "budget_exhausted=" << result.budget_exhausted << "\n";
  if (!result.array) return kExitInvalid;
  std::cout << format_array(*result.array);
  return kExitValid;
}

int cmd_search_system(int modulus, int part_size, uint64_t budget, int jobs) {
  if (jobs > 1) std::cerr << "note: system search runs single-threaded\n";
  auto sys = find_heffter_system(modulus, part_size, budget);
  std::cout << "found=" << sys.has_value() << "\n";
  if (!sys) return kExitInvalid;
  for (size_t i = 0; i < sys->parts.size(); ++i) {
    std::cout << "part " << i + 1 << ':';
    for (int v : sys->parts[i]) std::cout << ' ' << v;
    std::cout << "\n";
  }
  return kExitValid;
}

int cmd_alspach(int modulus, bool exhaustive, const std::string& subset_csv, int jobs) {
  if (!subset_csv.empty()) {
    std::vector<int> subset;
    std::stringstream ss(subset_csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) subset.push_back(std::stoi(item));
    }
    auto ordering = alspach_check(modulus, subset);
    std::cout << "found=" << ordering.has_value() << "\n";
    if (!ordering) return kExitInvalid;
    std::cout << "ordering=";
    for (size_t i = 0; i < ordering->size(); ++i) std::cout << (i ? " " : "") << (*ordering)[i];
    std::cout << "\n";
    return kExitValid;
  }
  (void)exhaustive;  // the sweep is the default action
  AlspachSweepReport report = alspach_sweep(modulus, jobs);
  std::cout << "M=" << report.modulus << "\nsubsets=" << report.subsets_checked
            << "\nfailures=" << report.failures.size() << "\n";
  for (const auto& f : report.failures) {
    std::cout << "failure=";
    for (size_t i = 0; i < f.size(); ++i) std::cout << (i ? " " : "") << f[i];
    std::cout << "\n";
  }
  return report.failures.empty() ? kExitValid : kExitInvalid;
}

// Graph files: either the current-graph dump or `graph <V>` with
// `edge <u> <v> [+|-]` lines (0-based vertices).
std::pair<Graph, std::vector<bool>> parse_graph_file(const std::string& text) {
  std::istringstream is(text);
  std::string first_line;
  while (std::getline(is, first_line)) {
    if (!detail::split_tokens(first_line).empty()) break;
  }
  auto head = detail::split_tokens(first_line);
  if (!head.empty() && head[0] == "current-graph") {
    SignedCurrentGraph g = parse_current_graph(text);
    std::vector<bool> neg(g.negative().begin(), g.negative().end());
    return {g.skeleton(), neg};
  }
  if (head.size() != 2 || head[0] != "graph") {
    throw parse_error(1, "expected 'graph <V>' or 'current-graph <m> <n> <M>'");
  }
  Graph g(detail::parse_int(head[1], 1));
  std::vector<bool> negative;
  std::string line;
  int line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    auto tokens = detail::split_tokens(line);
    if (tokens.empty()) continue;
    if (tokens[0] != "edge" || tokens.size() < 3 || tokens.size() > 4) {
      throw parse_error(line_no, "expected 'edge <u> <v> [+|-]'");
    }
    g.add_edge(detail::parse_int(tokens[1], line_no), detail::parse_int(tokens[2], line_no));
    negative.push_back(tokens.size() == 4 && tokens[3] == "-");
  }
  return {g, negative};
}

int cmd_xuong(const std::string& path, bool is_signed) {
  auto [g, negative] = parse_graph_file(read_file(path));
  if (is_signed) {
    bool exists = signed_monofacial_exists(g, negative);
    std::cout << "monofacial=" << exists << "\n";
    return exists ? kExitValid : kExitInvalid;
  }
  XuongResult result = xuong_monofacial_exists(g);
  std::cout << "monofacial=" << result.exists << "\n";
  if (result.tree) {
    std::cout << "tree=";
    for (size_t i = 0; i < result.tree->size(); ++i) {
      std::cout << (i ? " " : "") << (*result.tree)[i];
    }
    std::cout << "\n";
  }
  return result.exists ? kExitValid : kExitInvalid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heffter arrays, current graphs and derived biembeddings"};
  app.require_subcommand(1);
  int exit_code = kExitValid;

  std::string file, ordering_file, out_path;
  bool flag_integer = false, flag_shiftable = false, flag_weak = false;
  bool flag_simple = false, flag_signed = false, flag_exhaustive = false;
  uint64_t budget = 0;
  int jobs = 1;
  int m = 0, n = 0, s = 0, t = 0, modulus = 0, part_size = 0;
  std::string mode = "general", subset_csv;

  auto* verify = app.add_subcommand("verify", "validate a Heffter array file");
  verify->add_option("file", file)->required();
  verify->add_flag("--integer", flag_integer, "also require integer row/column sums");
  verify->add_flag("--shiftable", flag_shiftable, "also require sign-balanced lines");
  verify->add_flag("--weak", flag_weak, "validate as a weak Heffter array");
  verify->callback([&]() { exit_code = cmd_verify(file, flag_integer, flag_shiftable, flag_weak); });

  auto* orderings = app.add_subcommand("orderings", "search compatible row/column orderings");
  orderings->add_option("file", file)->required();
  orderings->add_flag("--require-simple", flag_simple, "only simple orderings");
  orderings->add_option("--budget", budget, "search node budget (0 = unlimited)");
  orderings->add_option("-o,--output", out_path, "write the ordering file here");
  orderings->callback([&]() { exit_code = cmd_orderings(file, flag_simple, budget, out_path); });

  auto* trace = app.add_subcommand("trace", "trace the faces of the induced rotation");
  trace->add_option("array", file)->required();
  trace->add_option("ordering", ordering_file)->required();
  trace->add_flag("--signed", flag_signed, "signed (weak array) pipeline");
  trace->callback([&]() { exit_code = cmd_trace(file, ordering_file, flag_signed); });

  auto* derive = app.add_subcommand("derive", "derive and verify the embedding of K_{2ms+1}");
  derive->add_option("array", file)->required();
  derive->add_option("ordering", ordering_file)->required();
  derive->add_flag("--signed", flag_signed, "signed (weak array) pipeline");
  derive->add_option("-o,--output", out_path, "write the certificate here");
  derive->callback([&]() { exit_code = cmd_derive(file, ordering_file, flag_signed, out_path); });

  auto* verify_embedding = app.add_subcommand("verify-embedding", "re-verify a certificate");
  verify_embedding->add_option("file", file)->required();
  verify_embedding->callback([&]() { exit_code = cmd_verify_embedding(file); });

  auto* develop = app.add_subcommand("develop", "develop an ordering file into closed trails");
  develop->add_option("file", file)->required();
  develop->callback([&]() { exit_code = cmd_develop(file); });

  auto* search = app.add_subcommand("search", "constructive searches");
  search->require_subcommand(1);
  auto* search_array = search->add_subcommand("array", "search an H(m,n;s,t)");
  search_array->add_option("m", m)->required();
  search_array->add_option("n", n)->required();
  search_array->add_option("s", s)->required();
  search_array->add_option("t", t)->required();
  search_array->add_option("--mode", mode, "general|integer|shiftable");
  search_array->add_option("--budget", budget, "node budget (0 = unlimited)");
  search_array->add_option("--jobs", jobs, "worker threads");
  search_array->callback([&]() { exit_code = cmd_search_array(m, n, s, t, mode, budget, jobs); });
  auto* search_system = search->add_subcommand("system", "search a Heffter system D(M,k)");
  search_system->add_option("M", modulus)->required();
  search_system->add_option("k", part_size)->required();
  search_system->add_option("--budget", budget, "node budget (0 = unlimited)");
  search_system->add_option("--jobs", jobs, "worker threads");
  search_system->callback([&]() { exit_code = cmd_search_system(modulus, part_size, budget, jobs); });

  auto* alspach = app.add_subcommand("alspach", "distinct partial-sum orderings in Z_M");
  alspach->add_option("M", modulus)->required();
  alspach->add_flag("--exhaustive", flag_exhaustive, "sweep all subsets (default)");
  alspach->add_option("--subset", subset_csv, "comma-separated subset to order");
  alspach->add_option("--jobs", jobs, "worker threads for the sweep");
  alspach->callback([&]() { exit_code = cmd_alspach(modulus, flag_exhaustive, subset_csv, jobs); });

  auto* xuong = app.add_subcommand("xuong", "monofacial embedding existence");
  xuong->add_option("file", file)->required();
  xuong->add_flag("--signed", flag_signed, "signed variant");
  xuong->callback([&]() { exit_code = cmd_xuong(file, flag_signed); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  } catch (const parse_error& e) {
    std::cerr << "format error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const parameter_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return exit_code;
}

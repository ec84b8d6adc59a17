#include "grouprep/cli.hpp"

#include "grouprep/char_table.hpp"
#include "grouprep/group.hpp"
#include "grouprep/io.hpp"
#include "grouprep/linalg.hpp"
#include "grouprep/model.hpp"
#include "grouprep/perturb.hpp"
#include "grouprep/rep.hpp"
#include "grouprep/types.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

namespace grouprep::cli {

namespace {

using io::Json;

struct Flags {
  std::vector<std::string> groups;
  std::vector<std::string> reps;
  std::vector<std::string> models;
  std::vector<std::string> tuples;
  double tol = 1e-7;
  int trunc = 4;
  std::uint64_t seed = 0;
  std::string words;
  std::string out;
  std::string builtin;
  std::string values;
  std::string inf;
  std::string mode = "dcl";
  std::string sizes;
  std::string family;
  std::string symbol;
  std::string ufile;
  std::string weights;
  double res = 0.1;
  int iters = 200;
  int label = -1;
  int project = -1;
  bool classes = false;
  bool symbolic = false;
  bool models_mode = false;
  bool eval_mode = false;
  bool split_estimate = false;
  bool help = false;
};

int parse_int(const std::string& s, const char* what) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(Err::ParseError, std::string(what) + " expects an integer, got '" + s + "'");
  }
}

double parse_double(const std::string& s, const char* what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(Err::ParseError, std::string(what) + " expects a number, got '" + s + "'");
  }
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

std::vector<int> parse_csv_ints(const std::string& s, const char* what) {
  std::vector<int> out;
  for (const std::string& p : split_csv(s)) out.push_back(parse_int(p, what));
  return out;
}

std::vector<double> parse_csv_doubles(const std::string& s, const char* what) {
  std::vector<double> out;
  for (const std::string& p : split_csv(s)) out.push_back(parse_double(p, what));
  return out;
}

Flags parse_flags(const std::vector<std::string>& argv) {
  Flags f;
  std::size_t i = 1;
  const auto value = [&](const std::string& flag) -> std::string {
    if (i + 1 >= argv.size()) fail(Err::ParseError, "flag " + flag + " needs a value");
    return argv[++i];
  };
  for (; i < argv.size(); ++i) {
    const std::string& a = argv[i];
    if (a == "-g" || a == "--group") f.groups.push_back(value(a));
    else if (a == "-r" || a == "--rep") f.reps.push_back(value(a));
    else if (a == "-m" || a == "--model") f.models.push_back(value(a));
    else if (a == "--tuple") f.tuples.push_back(value(a));
    else if (a == "--tol") f.tol = parse_double(value(a), "--tol");
    else if (a == "--trunc") f.trunc = parse_int(value(a), "--trunc");
    else if (a == "--seed") f.seed = static_cast<std::uint64_t>(std::strtoull(value(a).c_str(), nullptr, 10));
    else if (a == "--words") f.words = value(a);
    else if (a == "-o" || a == "--out") f.out = value(a);
    else if (a == "--builtin") f.builtin = value(a);
    else if (a == "--values") f.values = value(a);
    else if (a == "--inf") f.inf = value(a);
    else if (a == "--mode") f.mode = value(a);
    else if (a == "--sizes") f.sizes = value(a);
    else if (a == "--family") f.family = value(a);
    else if (a == "--symbol") f.symbol = value(a);
    else if (a == "--u") f.ufile = value(a);
    else if (a == "--weights") f.weights = value(a);
    else if (a == "--res") f.res = parse_double(value(a), "--res");
    else if (a == "--iters") f.iters = parse_int(value(a), "--iters");
    else if (a == "--label") f.label = parse_int(value(a), "--label");
    else if (a == "--project") f.project = parse_int(value(a), "--project");
    else if (a == "--classes") f.classes = true;
    else if (a == "--symbolic") f.symbolic = true;
    else if (a == "--models") f.models_mode = true;
    else if (a == "--eval") f.eval_mode = true;
    else if (a == "--split-estimate") f.split_estimate = true;
    else if (a == "--help" || a == "-h") f.help = true;
    else fail(Err::ParseError, "unknown flag '" + a + "'");
  }
  return f;
}

const std::string& one(const std::vector<std::string>& v, const char* flag) {
  if (v.size() != 1) fail(Err::ParseError, std::string("expected exactly one ") + flag + " flag");
  return v[0];
}

double round_12sig(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return std::strtod(buf, nullptr);
}

// ----- help ---------------------------------------------------------------

struct HelpRow {
  const char* subcommand;
  const char* usage;
  const char* description;
};

const std::vector<HelpRow>& help_rows() {
  static const std::vector<HelpRow> rows = {
      {"verify",
       "verify (-g FILE | --builtin KIND:N [-o FILE] | -r FILE [--tol T])",
       "Validate a group table, emit a builtin group (cyclic, dihedral, symmetric, quaternion), or "
       "report a representation's unitarity/homomorphism defects."},
      {"chartable", "chartable (-g FILE [--classes] | -r FILE)",
       "Conjugacy classes, the full character table, or the character of a representation."},
      {"decompose",
       "decompose (-r FILE [--tol T] | --values JSON -g FILE | --symbolic --inf I,J -r FILE)",
       "Isotypic multiplicities of a representation or of a class-function value list; --symbolic "
       "emits a symbolic model with the chosen labels marked infinite."},
      {"split",
       "split (-r FILE --label I [--seed S] | -r FILE --project I | --models -g FILE)",
       "Split one isotypic block into aligned irreducible copies, print one isotypic projection "
       "matrix, or print explicit irreducible model representations."},
      {"leftreg", "leftreg (-g FILE | -r FILE -r FILE ...) [-o FILE]",
       "Left regular representation of a group, or the direct sum of representation files."},
      {"equiv", "equiv -m FILE -m FILE",
       "Decide whether two symbolic models have equal multiplicity vectors (exit 0 yes, 1 no)."},
      {"embeds", "embeds -m FILE -m FILE",
       "Decide whether the first model's multiplicities fit under the second's entrywise, infinite "
       "entries absorbing."},
      {"companion", "companion -m FILE",
       "Decide whether every multiplicity of the model is infinite."},
      {"qftp", "qftp -r FILE --tuple JSON [--tuple JSON] [--tol T]",
       "Orbit Gram tensor of one tuple, or equality of two tuples' tensors (exit 0 equal, 1 not)."},
      {"intertwine", "intertwine -r FILE --tuple A --tuple B [--tol T] [--seed S]",
       "Construct a unitary commuting with the action that carries tuple A to tuple B; fails with "
       "exit 1 when the orbit Gram data differ."},
      {"closure", "closure (-r FILE | -m FILE [--trunc T]) --tuple JSON [--mode dcl|acl]",
       "Orthonormal basis of the orbit span of the tuple; acl mode appends the finite-origin "
       "blocks of the model truncation."},
      {"indep", "indep (-r FILE | -m FILE [--trunc T]) --tuple A --tuple B --tuple C [--tol T]",
       "Decide whether projecting tuple A onto the closures of C and of B with C gives the same "
       "vectors (exit 0 independent, 1 not)."},
      {"extend", "extend -m FILE [--trunc T] --tuple V --tuple C --tuple B [--seed S]",
       "Relocate the part of vector V outside the closure of C into directions untouched by B, "
       "preserving its Gram data over C."},
      {"pair-equiv", "pair-equiv -m FILE -m FILE",
       "Decide isomorphism of two big/small model pairs (both components must match)."},
      {"ranksig",
       "ranksig (-m FILE | --family shift) --sizes A,B,... --words FILE [--tol T] "
       "[--split-estimate] | ranksig --eval -r FILE --words FILE",
       "Numerical ranks of algebra words across truncation sizes with a stable/growing verdict; "
       "--split-estimate reports compact-like vs noncompact-like; --eval prints word values on a "
       "representation."},
      {"aue", "aue -m FILE -m FILE --sizes A,B,... --words FILE [--tol T]",
       "Compare the rank signatures of two symbolic models over a shared word list (exit 0 "
       "equivalent, 1 not)."},
      {"spectrum", "spectrum (-m FILE | --family shift) --sizes A,B,... --symbol G [--res R]",
       "Eigenvalues of one generator across truncation sizes, bucketed on the unit circle and "
       "classified by persistence."},
      {"perturb", "perturb -r FILE -r FILE [--u FILE] [--weights W0,W1,...]",
       "Weighted sum of conjugation defects between two representations at a fixed unitary "
       "(identity by default), element-enumeration weights 2^-n."},
      {"perturb-min", "perturb-min -r FILE -r FILE [--iters N] [--seed S]",
       "Alternating least-squares search for the unitary minimizing the weighted conjugation "
       "distance; reports the best distance found and a convergence flag."},
  };
  return rows;
}

Json help_json(const std::string& subcommand) {
  for (const HelpRow& row : help_rows()) {
    if (subcommand == row.subcommand) {
      Json j;
      j["subcommand"] = row.subcommand;
      j["usage"] = row.usage;
      j["description"] = row.description;
      return j;
    }
  }
  Json j;
  j["usage"] = "grouprep-cli SUBCOMMAND [flags]; SUBCOMMAND --help for details";
  Json subs = Json::object();
  for (const HelpRow& row : help_rows()) subs[row.subcommand] = row.description;
  j["subcommands"] = std::move(subs);
  return j;
}

// ----- shared input shapes --------------------------------------------------

UnitaryRep cli_rep(const Flags& f) { return io::read_rep(one(f.reps, "-r")); }

std::string resolved_group_field(const std::string& rep_path) {
  const Json j = Json::parse(io::read_text(rep_path));
  if (!j.contains("group") || !j["group"].is_string())
    fail(Err::ParseError, rep_path + ": missing group path");
  const std::string raw = j["group"].get<std::string>();
  if (!raw.empty() && raw.front() == '/') return raw;
  const std::size_t slash = rep_path.find_last_of('/');
  const std::string base = slash == std::string::npos ? std::string(".") : rep_path.substr(0, slash);
  return base + "/" + raw;
}

// Group references written into an output file must resolve from that file's
// directory, not from the caller's working directory.
std::string stored_group_path(const Flags& f, const std::string& group_path) {
  if (f.out.empty()) return group_path;
  namespace fs = std::filesystem;
  std::error_code ec;
  const fs::path rel =
      fs::relative(fs::absolute(group_path), fs::absolute(fs::path(f.out)).parent_path(), ec);
  if (ec || rel.empty()) return fs::absolute(group_path).generic_string();
  return rel.generic_string();
}

struct ModelBundle {
  SymbolicModel model;
  std::vector<UnitaryRep> irreducibles;
};

ModelBundle cli_model(const std::string& path) {
  ModelBundle b{io::read_model(path), {}};
  b.irreducibles = irreducible_models(b.model.table);
  return b;
}

RepFamily cli_family(const Flags& f) {
  if (f.sizes.empty()) fail(Err::ParseError, "--sizes A,B,... is required");
  const std::vector<int> sizes = parse_csv_ints(f.sizes, "--sizes");
  if (!f.family.empty()) {
    if (f.family != "shift" && f.family != "circulant")
      fail(Err::ParseError, "unknown family '" + f.family + "' (expected shift)");
    return shift_family(sizes);
  }
  const ModelBundle b = cli_model(one(f.models, "-m"));
  return truncation_family(b.model, b.irreducibles, sizes);
}

Json signature_json(const RankSignature& sig) {
  Json j;
  j["sizes"] = sig.sizes;
  j["word_keys"] = sig.word_keys;
  j["ranks"] = sig.ranks;
  Json verdicts = Json::array();
  for (RankVerdict v : sig.verdicts) verdicts.push_back(v == RankVerdict::Stable ? "stable" : "growing");
  j["verdicts"] = std::move(verdicts);
  j["stable_ranks"] = sig.stable_ranks;
  return j;
}

// ----- subcommand handlers --------------------------------------------------

Json cmd_verify(const Flags& f, int& code) {
  if (!f.builtin.empty()) {
    const std::size_t colon = f.builtin.find(':');
    if (colon == std::string::npos) fail(Err::ParseError, "--builtin expects KIND:N");
    const BuiltinKind kind = builtin_kind_from(f.builtin.substr(0, colon));
    const int n = parse_int(f.builtin.substr(colon + 1), "--builtin size");
    return io::group_json(*builtin_group(kind, n));
  }
  if (!f.reps.empty()) {
    const UnitaryRep rep = cli_rep(f);
    const RepVerification v = verify_rep(rep, f.tol);
    Json j;
    j["unitarity_defect"] = v.unitarity_defect;
    j["homomorphism_defect"] = v.homomorphism_defect;
    j["identity_defect"] = v.identity_defect;
    j["tol"] = v.tol;
    j["pass"] = v.pass;
    code = v.pass ? 0 : 1;
    return j;
  }
  const std::string& path = one(f.groups, "-g");
  try {
    GroupPtr g = io::read_group(path);
    Json j;
    j["ok"] = true;
    j["order"] = g->order();
    j["identity"] = g->identity;
    j["labels"] = g->labels;
    return j;
  } catch (const Error& e) {
    switch (e.kind()) {
      case Err::NonAssociative:
      case Err::NoIdentity:
      case Err::NoInverse:
      case Err::MalformedTable: {
        Json j;
        j["ok"] = false;
        j["error"] = e.what();
        code = 1;
        return j;
      }
      default:
        throw;
    }
  }
}

Json cmd_chartable(const Flags& f, int&) {
  if (!f.reps.empty()) {
    const UnitaryRep rep = cli_rep(f);
    const std::vector<cplx> chi = rep_character(rep);
    Json values = Json::array();
    for (const cplx& v : chi) values.push_back(io::complex_json(v));
    Json j;
    j["character"] = std::move(values);
    return j;
  }
  GroupPtr g = io::read_group(one(f.groups, "-g"));
  if (f.classes) {
    const ConjugacyClassPartition p = conjugacy_classes(*g);
    Json j;
    j["classes"] = p.classes;
    j["class_of"] = p.class_of;
    j["class_sizes"] = p.class_sizes;
    return j;
  }
  return io::table_json(*character_table(g));
}

Json cmd_decompose(const Flags& f, int&) {
  if (!f.values.empty()) {
    GroupPtr g = io::read_group(one(f.groups, "-g"));
    TablePtr table = character_table(g);
    Json vj;
    try {
      vj = Json::parse(f.values);
    } catch (const Json::exception& e) {
      fail(Err::ParseError, std::string("--values: ") + e.what());
    }
    std::vector<cplx> phi;
    for (const Json& x : vj) phi.push_back(io::parse_complex(x));
    Json j;
    j["mult"] = decompose_character(phi, *table);
    return j;
  }
  const UnitaryRep rep = cli_rep(f);
  TablePtr table = character_table(rep.group);
  if (f.symbolic) {
    if (f.inf.empty()) fail(Err::ParseError, "--symbolic needs --inf I,J,...");
    const SymbolicModel m = symbolic_of(rep, table, parse_csv_ints(f.inf, "--inf"));
    return io::model_json(m, stored_group_path(f, resolved_group_field(one(f.reps, "-r"))));
  }
  const IsotypicDecomposition dec = decompose(rep, table, f.tol);
  Json j;
  j["mult"] = dec.mult;
  j["degrees"] = table->degrees;
  j["residual_norm"] = dec.residual_norm;
  std::vector<int> block_dims;
  for (const Mat& q : dec.blocks) block_dims.push_back(static_cast<int>(q.cols()));
  j["block_dims"] = block_dims;
  return j;
}

Json cmd_split(const Flags& f, int&) {
  if (f.models_mode) {
    const std::string& path = one(f.groups, "-g");
    GroupPtr g = io::read_group(path);
    TablePtr table = character_table(g);
    const std::string stored = stored_group_path(f, path);
    Json models = Json::array();
    for (const UnitaryRep& w : irreducible_models(table)) models.push_back(io::rep_json(w, stored));
    Json j;
    j["models"] = std::move(models);
    return j;
  }
  const UnitaryRep rep = cli_rep(f);
  TablePtr table = character_table(rep.group);
  if (f.project >= 0) {
    Json j;
    j["label"] = f.project;
    j["projection"] = io::matrix_json(isotypic_projection(rep, f.project, *table));
    return j;
  }
  if (f.label < 0) fail(Err::ParseError, "split needs --label I, --project I, or --models");
  const IsotypicDecomposition dec = decompose(rep, table, f.tol);
  const IrreducibleCopyList copies = split_isotypic(rep, dec, f.label, f.seed);
  Json j;
  j["label"] = copies.label;
  j["count"] = copies.count();
  Json cj = Json::array();
  Json aj = Json::array();
  for (const Mat& c : copies.copies) cj.push_back(io::matrix_json(c));
  for (const Mat& a : copies.align) aj.push_back(io::matrix_json(a));
  j["copies"] = std::move(cj);
  j["align"] = std::move(aj);
  return j;
}

Json cmd_leftreg(const Flags& f, int&) {
  if (!f.reps.empty()) {
    if (f.reps.size() < 2) fail(Err::ParseError, "direct sum needs at least two -r flags");
    std::vector<UnitaryRep> reps;
    for (const std::string& path : f.reps) reps.push_back(io::read_rep(path));
    const UnitaryRep sum = direct_sum(reps);
    return io::rep_json(sum, stored_group_path(f, resolved_group_field(f.reps[0])));
  }
  const std::string& path = one(f.groups, "-g");
  return io::rep_json(left_regular(io::read_group(path)), stored_group_path(f, path));
}

Json cmd_equiv(const Flags& f, int& code) {
  if (f.models.size() != 2) fail(Err::ParseError, "equiv needs exactly two -m flags");
  const SymbolicModel a = io::read_model(f.models[0]);
  const SymbolicModel b = io::read_model(f.models[1]);
  const bool eq = elementarily_equivalent(a, b);
  code = eq ? 0 : 1;
  Json j;
  j["equivalent"] = eq;
  return j;
}

Json cmd_embeds(const Flags& f, int& code) {
  if (f.models.size() != 2) fail(Err::ParseError, "embeds needs exactly two -m flags");
  const SymbolicModel a = io::read_model(f.models[0]);
  const SymbolicModel b = io::read_model(f.models[1]);
  const bool ok = embeds(a, b);
  code = ok ? 0 : 1;
  Json j;
  j["embeds"] = ok;
  return j;
}

Json cmd_companion(const Flags& f, int& code) {
  const SymbolicModel m = io::read_model(one(f.models, "-m"));
  const bool ok = is_companion_model(m);
  code = ok ? 0 : 1;
  Json j;
  j["companion"] = ok;
  return j;
}

Json cmd_qftp(const Flags& f, int& code) {
  const UnitaryRep rep = cli_rep(f);
  if (f.tuples.size() == 1) {
    const OrbitGram g = orbit_gram(rep, io::parse_tuple(f.tuples[0]));
    Json j;
    j["n"] = g.n;
    j["gram"] = io::matrix_json(g.gamma);
    return j;
  }
  if (f.tuples.size() != 2) fail(Err::ParseError, "qftp needs one or two --tuple flags");
  double defect = 0.0;
  const bool eq = qftp_equal(rep, io::parse_tuple(f.tuples[0]), io::parse_tuple(f.tuples[1]), f.tol, &defect);
  code = eq ? 0 : 1;
  Json j;
  j["equal"] = eq;
  j["defect"] = defect;
  return j;
}

Json cmd_intertwine(const Flags& f, int& code) {
  if (f.tuples.size() != 2) fail(Err::ParseError, "intertwine needs exactly two --tuple flags");
  const UnitaryRep rep = cli_rep(f);
  TablePtr table = character_table(rep.group);
  const std::vector<UnitaryRep> models = irreducible_models(table);
  const IsotypicFrame frame = frame_of(rep, table, models, f.seed);
  const std::vector<Vec> a = io::parse_tuple(f.tuples[0]);
  const std::vector<Vec> b = io::parse_tuple(f.tuples[1]);
  try {
    const Mat u = build_intertwiner(rep, frame, a, b, f.tol);
    double map_defect = 0.0;
    for (std::size_t t = 0; t < a.size(); ++t) map_defect = std::max(map_defect, (u * a[t] - b[t]).norm());
    double commutation = 0.0;
    for (int g = 0; g < rep.group->order(); ++g)
      commutation = std::max(commutation, linalg::op_norm(u * rep.at(g) - rep.at(g) * u));
    Json j;
    j["ok"] = true;
    j["u"] = io::matrix_json(u);
    j["map_defect"] = map_defect;
    j["commutation_defect"] = commutation;
    return j;
  } catch (const Error& e) {
    if (e.kind() != Err::TypesDiffer) throw;
    Json j;
    j["ok"] = false;
    j["error"] = e.what();
    code = 1;
    return j;
  }
}

Json cmd_closure(const Flags& f, int&) {
  ClosureMode mode;
  if (f.mode == "dcl") mode = ClosureMode::Dcl;
  else if (f.mode == "acl") mode = ClosureMode::Acl;
  else fail(Err::ParseError, "--mode must be dcl or acl");
  const std::vector<Vec> tuple = io::parse_tuple(one(f.tuples, "--tuple"));
  Mat basis;
  if (!f.models.empty()) {
    const ModelBundle b = cli_model(one(f.models, "-m"));
    basis = closure_basis(truncate(b.model, f.trunc, b.irreducibles), tuple, mode);
  } else {
    basis = closure_basis(cli_rep(f), tuple, mode);
  }
  Json j;
  j["dim"] = static_cast<int>(basis.cols());
  j["basis"] = io::matrix_json(basis);
  return j;
}

Json cmd_indep(const Flags& f, int& code) {
  if (f.tuples.size() != 3) fail(Err::ParseError, "indep needs --tuple A --tuple B --tuple C");
  const std::vector<Vec> a = io::parse_tuple(f.tuples[0]);
  const std::vector<Vec> b = io::parse_tuple(f.tuples[1]);
  const std::vector<Vec> c = io::parse_tuple(f.tuples[2]);
  double defect = 0.0;
  bool ok;
  if (!f.models.empty()) {
    const ModelBundle mb = cli_model(one(f.models, "-m"));
    ok = is_independent(truncate(mb.model, f.trunc, mb.irreducibles), a, b, c, f.tol, &defect);
  } else {
    ok = is_independent(cli_rep(f), a, b, c, f.tol, &defect);
  }
  code = ok ? 0 : 1;
  Json j;
  j["independent"] = ok;
  j["defect"] = defect;
  return j;
}

Json cmd_extend(const Flags& f, int&) {
  if (f.tuples.size() != 3) fail(Err::ParseError, "extend needs --tuple V --tuple C --tuple B");
  const std::vector<Vec> v = io::parse_tuple(f.tuples[0]);
  if (v.size() != 1) fail(Err::ParseError, "the first --tuple must hold exactly one vector");
  const ModelBundle mb = cli_model(one(f.models, "-m"));
  const Truncation tr = truncate(mb.model, f.trunc, mb.irreducibles);
  const Vec out = nonforking_extension(tr, v[0], io::parse_tuple(f.tuples[1]), io::parse_tuple(f.tuples[2]), f.seed);
  Json j;
  j["vector"] = io::vector_json(out);
  return j;
}

Json cmd_pair_equiv(const Flags& f, int& code) {
  if (f.models.size() != 2) fail(Err::ParseError, "pair-equiv needs exactly two -m flags");
  const PairModel p1 = io::read_pair(f.models[0]);
  const PairModel p2 = io::read_pair(f.models[1]);
  const bool ok = pair_isomorphic(p1, p2);
  code = ok ? 0 : 1;
  Json j;
  j["isomorphic"] = ok;
  return j;
}

Json cmd_ranksig(const Flags& f, int&) {
  if (f.words.empty()) fail(Err::ParseError, "--words FILE is required");
  const std::vector<AlgebraWord> words = io::read_words(f.words);
  if (f.eval_mode) {
    const UnitaryRep rep = cli_rep(f);
    Json mats = Json::array();
    for (const AlgebraWord& w : words) mats.push_back(io::matrix_json(eval_word(rep, w)));
    Json j;
    j["matrices"] = std::move(mats);
    return j;
  }
  const RepFamily fam = cli_family(f);
  if (f.split_estimate) {
    Json verdicts = Json::array();
    for (SplitVerdict v : compact_split_estimate(fam, words))
      verdicts.push_back(v == SplitVerdict::Compact ? "compact-like" : "noncompact-like");
    Json j;
    j["verdicts"] = std::move(verdicts);
    return j;
  }
  return signature_json(rank_signature(fam, words, f.tol == 1e-7 ? -1.0 : f.tol));
}

Json cmd_aue(const Flags& f, int& code) {
  if (f.models.size() != 2) fail(Err::ParseError, "aue needs exactly two -m flags");
  if (f.words.empty() || f.sizes.empty()) fail(Err::ParseError, "aue needs --words and --sizes");
  const std::vector<AlgebraWord> words = io::read_words(f.words);
  const std::vector<int> sizes = parse_csv_ints(f.sizes, "--sizes");
  const ModelBundle m1 = cli_model(f.models[0]);
  const ModelBundle m2 = cli_model(f.models[1]);
  const RankSignature s1 = rank_signature(truncation_family(m1.model, m1.irreducibles, sizes), words);
  const RankSignature s2 = rank_signature(truncation_family(m2.model, m2.irreducibles, sizes), words);
  const bool eq = aue_equivalent(s1, s2);
  code = eq ? 0 : 1;
  Json j;
  j["equivalent"] = eq;
  j["sig1"] = signature_json(s1);
  j["sig2"] = signature_json(s2);
  return j;
}

Json cmd_spectrum(const Flags& f, int&) {
  if (f.symbol.empty()) fail(Err::ParseError, "--symbol is required");
  const SpectrumEstimate est = approx_spectrum(cli_family(f), f.symbol, f.res);
  Json j;
  j["sizes"] = est.sizes;
  j["resolution"] = est.resolution;
  Json evs = Json::array();
  for (const auto& per_size : est.eigenvalues) {
    Json row = Json::array();
    for (const cplx& ev : per_size) row.push_back(io::complex_json(ev));
    evs.push_back(std::move(row));
  }
  j["eigenvalues"] = std::move(evs);
  Json cands = Json::array();
  for (const SpectrumCandidate& c : est.candidates) {
    Json cj;
    cj["lambda"] = io::complex_json(c.lambda);
    cj["residuals"] = c.residuals;
    cj["class"] = c.cls == SpectrumClass::Punctual     ? "punctual-like"
                  : c.cls == SpectrumClass::Approximate ? "approximate-like"
                                                        : "absent";
    cands.push_back(std::move(cj));
  }
  j["candidates"] = std::move(cands);
  return j;
}

Json report_json(const PerturbationReport& report, bool with_u) {
  Json j;
  j["distance"] = round_12sig(report.distance);
  j["element_norms"] = report.element_norms;
  j["iterations"] = report.iterations;
  j["converged"] = report.converged;
  if (with_u) j["u"] = io::matrix_json(report.u);
  return j;
}

Json cmd_perturb(const Flags& f, int&) {
  if (f.reps.size() != 2) fail(Err::ParseError, "perturb needs exactly two -r flags");
  const UnitaryRep r1 = io::read_rep(f.reps[0]);
  const UnitaryRep r2 = io::read_rep(f.reps[1]);
  const Mat u = f.ufile.empty() ? Mat(Mat::Identity(r1.dim, r1.dim)) : io::read_matrix(f.ufile);
  std::vector<double> weights;
  if (!f.weights.empty()) weights = parse_csv_doubles(f.weights, "--weights");
  return report_json(perturbation_distance(r1, r2, u, weights), false);
}

Json cmd_perturb_min(const Flags& f, int&) {
  if (f.reps.size() != 2) fail(Err::ParseError, "perturb-min needs exactly two -r flags");
  const UnitaryRep r1 = io::read_rep(f.reps[0]);
  const UnitaryRep r2 = io::read_rep(f.reps[1]);
  return report_json(minimize_perturbation(r1, r2, f.iters, f.seed), true);
}

int exit_for(Err kind) {
  switch (kind) {
    case Err::RankAmbiguous:
    case Err::SplitDegenerate:
    case Err::InsufficientRoom:
    case Err::DegenerateEigenSplit:
      return 3;
    default:
      return 2;
  }
}

}  // namespace

const std::vector<DispatchEntry>& dispatch_table() {
  static const std::vector<DispatchEntry> table = {
      {"verify", "-g", "build_group"},
      {"verify", "--builtin", "builtin_group"},
      {"verify", "-r", "verify_rep"},
      {"chartable", "--classes", "conjugacy_classes"},
      {"chartable", "-g", "character_table"},
      {"chartable", "-r", "rep_character"},
      {"decompose", "-r", "decompose"},
      {"decompose", "--values", "decompose_character"},
      {"decompose", "--symbolic", "symbolic_of"},
      {"split", "--project", "isotypic_projection"},
      {"split", "--label", "split_isotypic"},
      {"split", "--models", "irreducible_models"},
      {"leftreg", "-g", "left_regular"},
      {"leftreg", "-r", "direct_sum"},
      {"equiv", "", "elementarily_equivalent"},
      {"embeds", "", "embeds"},
      {"companion", "", "is_companion_model"},
      {"qftp", "", "orbit_gram/qftp_equal"},
      {"intertwine", "", "build_intertwiner"},
      {"closure", "", "closure_basis"},
      {"indep", "", "is_independent"},
      {"extend", "", "nonforking_extension"},
      {"pair-equiv", "", "pair_isomorphic"},
      {"ranksig", "--eval", "eval_word"},
      {"ranksig", "", "rank_signature"},
      {"ranksig", "--split-estimate", "compact_split_estimate"},
      {"aue", "", "aue_equivalent"},
      {"spectrum", "", "approx_spectrum"},
      {"perturb", "", "perturbation_distance"},
      {"perturb-min", "", "minimize_perturbation"},
  };
  return table;
}

CommandResult run(const std::vector<std::string>& argv) {
  CommandResult res;
  try {
    if (argv.empty() || argv[0] == "--help" || argv[0] == "-h") {
      res.out = io::dump(help_json(""));
      return res;
    }
    const std::string cmd = argv[0];
    const Flags f = parse_flags(argv);
    if (f.help) {
      const Json h = help_json(cmd);
      if (!h.contains("subcommand")) fail(Err::ParseError, "unknown subcommand '" + cmd + "'");
      res.out = io::dump(h);
      return res;
    }
    Json payload;
    int code = 0;
    if (cmd == "verify") payload = cmd_verify(f, code);
    else if (cmd == "chartable") payload = cmd_chartable(f, code);
    else if (cmd == "decompose") payload = cmd_decompose(f, code);
    else if (cmd == "split") payload = cmd_split(f, code);
    else if (cmd == "leftreg") payload = cmd_leftreg(f, code);
    else if (cmd == "equiv") payload = cmd_equiv(f, code);
    else if (cmd == "embeds") payload = cmd_embeds(f, code);
    else if (cmd == "companion") payload = cmd_companion(f, code);
    else if (cmd == "qftp") payload = cmd_qftp(f, code);
    else if (cmd == "intertwine") payload = cmd_intertwine(f, code);
    else if (cmd == "closure") payload = cmd_closure(f, code);
    else if (cmd == "indep") payload = cmd_indep(f, code);
    else if (cmd == "extend") payload = cmd_extend(f, code);
    else if (cmd == "pair-equiv") payload = cmd_pair_equiv(f, code);
    else if (cmd == "ranksig") payload = cmd_ranksig(f, code);
    else if (cmd == "aue") payload = cmd_aue(f, code);
    else if (cmd == "spectrum") payload = cmd_spectrum(f, code);
    else if (cmd == "perturb") payload = cmd_perturb(f, code);
    else if (cmd == "perturb-min") payload = cmd_perturb_min(f, code);
    else fail(Err::ParseError, "unknown subcommand '" + cmd + "'");
    res.exit_code = code;
    if (!f.out.empty()) {
      io::write_text(f.out, io::dump(payload));
    } else {
      res.out = io::dump(payload);
    }
  } catch (const Error& e) {
    res.err = std::string(e.what()) + "\n";
    res.exit_code = exit_for(e.kind());
  } catch (const std::exception& e) {
    res.err = std::string("ParseError: ") + e.what() + "\n";
    res.exit_code = 2;
  }
  return res;
}

int main_entry(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  const CommandResult res = run(args);
  if (!res.out.empty()) std::fputs(res.out.c_str(), stdout);
  if (!res.err.empty()) std::fputs(res.err.c_str(), stderr);
  return res.exit_code;
}

}  // namespace grouprep::cli

#pragma once

#include "grouprep/char_table.hpp"
#include "grouprep/group.hpp"
#include "grouprep/model.hpp"
#include "grouprep/perturb.hpp"
#include "grouprep/rep.hpp"
#include "grouprep/types.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace grouprep::io {

using Json = nlohmann::json;

// All readers wrap file and syntax problems in ParseError with a one-line
// reason. Paths referenced inside a file (a rep's "group" entry) resolve
// relative to that file's directory.

// {"labels": [...], "table": [[...]], "generators": [...]}; generators
// optional.
GroupPtr read_group(const std::string& path);

// {"group": "path", "dim": d, "matrices": {"label": [[[re,im],...],...]}}.
// Matrices for a generating set suffice; the rest are derived by closing
// under products (the identity is implicit).
UnitaryRep read_rep(const std::string& path);

// {"group": "path", "mult": {"0": 3, "1": "inf", ...}}; every label of the
// canonical character table must appear exactly once.
SymbolicModel read_model(const std::string& path);
SymbolicModel model_from_json(const Json& j, const std::string& base_dir);

// {"big": {<symbolic model>}, "small": {<symbolic model>}}.
PairModel read_pair(const std::string& path);

// [{"coeffs": [[re,im],...], "products": [["g","h*"],...]}, ...].
std::vector<AlgebraWord> read_words(const std::string& path);

// One square matrix: [[[re,im],...],...].
Mat read_matrix(const std::string& path);

// Tuple literal: [[[re,im],...], ...] (a list of vectors).
std::vector<Vec> parse_tuple(const std::string& text);

Json complex_json(const cplx& z);
Json vector_json(const Vec& v);
Json matrix_json(const Mat& m);
Json group_json(const FiniteGroup& g);
Json rep_json(const UnitaryRep& rep, const std::string& group_path);
Json model_json(const SymbolicModel& m, const std::string& group_path);
Json table_json(const CharacterTable& t);

cplx parse_complex(const Json& j);
Vec parse_vector(const Json& j);
Mat parse_matrix(const Json& j);

// Deterministic serialization: nlohmann keeps object keys sorted, so equal
// values give byte-identical text.
std::string dump(const Json& j);

std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& text);

}  // namespace grouprep::io

#include "grouprep/io.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace grouprep::io {

namespace {

std::string dir_of(const std::string& path) {
  const std::size_t slash = path.find_last_of('/');
  return slash == std::string::npos ? std::string(".") : path.substr(0, slash);
}

std::string resolve(const std::string& base_dir, const std::string& path) {
  if (path.empty() || path.front() == '/') return path;
  return base_dir + "/" + path;
}

Json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Err::ParseError, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    fail(Err::ParseError, "'" + path + "': " + e.what());
  }
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  const auto it = j.find(key);
  if (it == j.end()) fail(Err::ParseError, where + ": missing field '" + key + "'");
  return *it;
}

}  // namespace

cplx parse_complex(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    fail(Err::ParseError, "complex numbers are [re, im] pairs");
  return cplx(j[0].get<double>(), j[1].get<double>());
}

Vec parse_vector(const Json& j) {
  if (!j.is_array()) fail(Err::ParseError, "a vector is an array of [re, im] pairs");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = parse_complex(j[i]);
  return v;
}

Mat parse_matrix(const Json& j) {
  if (!j.is_array() || j.empty()) fail(Err::ParseError, "a matrix is a non-empty array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  Mat m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != cols) fail(Err::ParseError, "matrix rows have unequal lengths");
    for (std::size_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = parse_complex(j[r][c]);
  }
  return m;
}

Json complex_json(const cplx& z) { return Json::array({z.real(), z.imag()}); }

Json vector_json(const Vec& v) {
  Json j = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(complex_json(v(i)));
  return j;
}

Json matrix_json(const Mat& m) {
  Json j = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
    j.push_back(std::move(row));
  }
  return j;
}

GroupPtr read_group(const std::string& path) {
  const Json j = parse_file(path);
  const Json& labels_j = field(j, "labels", path);
  const Json& table_j = field(j, "table", path);
  if (!labels_j.is_array() || !table_j.is_array()) fail(Err::ParseError, path + ": labels/table must be arrays");
  std::vector<std::string> labels;
  for (const Json& l : labels_j) {
    if (!l.is_string()) fail(Err::ParseError, path + ": labels must be strings");
    labels.push_back(l.get<std::string>());
  }
  std::vector<std::vector<int>> table;
  for (const Json& row : table_j) {
    if (!row.is_array()) fail(Err::ParseError, path + ": table rows must be arrays");
    std::vector<int> r;
    for (const Json& x : row) {
      if (!x.is_number_integer()) fail(Err::ParseError, path + ": table entries must be integers");
      r.push_back(x.get<int>());
    }
    table.push_back(std::move(r));
  }
  std::vector<int> generators;
  if (j.contains("generators")) {
    for (const Json& x : j["generators"]) {
      if (!x.is_number_integer()) fail(Err::ParseError, path + ": generators must be integers");
      generators.push_back(x.get<int>());
    }
  }
  return build_group(labels, table, generators);
}

UnitaryRep read_rep(const std::string& path) {
  const Json j = parse_file(path);
  const std::string group_path = field(j, "group", path).get<std::string>();
  GroupPtr group = read_group(resolve(dir_of(path), group_path));
  const int dim = field(j, "dim", path).get<int>();
  if (dim < 1) fail(Err::ParseError, path + ": dim must be positive");
  const Json& mats_j = field(j, "matrices", path);
  if (!mats_j.is_object()) fail(Err::ParseError, path + ": matrices must be an object keyed by element label");

  const int order = group->order();
  std::vector<Mat> mats(static_cast<std::size_t>(order));
  std::vector<char> known(static_cast<std::size_t>(order), 0);
  mats[static_cast<std::size_t>(group->identity)] = Mat::Identity(dim, dim);
  known[static_cast<std::size_t>(group->identity)] = 1;
  for (const auto& [label, mj] : mats_j.items()) {
    const int g = group->index_of(label);
    const Mat m = parse_matrix(mj);
    if (m.rows() != dim || m.cols() != dim)
      fail(Err::ParseError, path + ": matrix for '" + label + "' is not " + std::to_string(dim) + "x" +
                                std::to_string(dim));
    mats[static_cast<std::size_t>(g)] = m;
    known[static_cast<std::size_t>(g)] = 1;
  }
  // Close the known set under products until it stops growing.
  bool grew = true;
  while (grew) {
    grew = false;
    for (int a = 0; a < order; ++a) {
      if (!known[static_cast<std::size_t>(a)]) continue;
      for (int b = 0; b < order; ++b) {
        if (!known[static_cast<std::size_t>(b)]) continue;
        const int c = group->mul(a, b);
        if (known[static_cast<std::size_t>(c)]) continue;
        mats[static_cast<std::size_t>(c)] = mats[static_cast<std::size_t>(a)] * mats[static_cast<std::size_t>(b)];
        known[static_cast<std::size_t>(c)] = 1;
        grew = true;
      }
    }
  }
  for (int g = 0; g < order; ++g) {
    if (!known[static_cast<std::size_t>(g)])
      fail(Err::ParseError, path + ": matrices given do not generate element '" +
                                group->labels[static_cast<std::size_t>(g)] + "'");
  }
  UnitaryRep rep;
  rep.group = std::move(group);
  rep.dim = dim;
  rep.mats = std::move(mats);
  return rep;
}

SymbolicModel model_from_json(const Json& j, const std::string& base_dir) {
  const std::string group_path = field(j, "group", "symbolic model").get<std::string>();
  GroupPtr group = read_group(resolve(base_dir, group_path));
  TablePtr table = character_table(group);
  const Json& mult_j = field(j, "mult", "symbolic model");
  if (!mult_j.is_object()) fail(Err::ParseError, "symbolic model: mult must be an object keyed by label");
  std::vector<int> mult(static_cast<std::size_t>(table->k()), -2);
  for (const auto& [key, value] : mult_j.items()) {
    int label = -1;
    try {
      label = std::stoi(key);
    } catch (const std::exception&) {
      fail(Err::ParseError, "symbolic model: mult key '" + key + "' is not a label");
    }
    if (label < 0 || label >= table->k())
      fail(Err::ParseError, "symbolic model: label " + key + " out of range");
    if (value.is_string() && value.get<std::string>() == "inf") {
      mult[static_cast<std::size_t>(label)] = kOmega;
    } else if (value.is_number_integer() && value.get<int>() >= 0) {
      mult[static_cast<std::size_t>(label)] = value.get<int>();
    } else {
      fail(Err::ParseError, "symbolic model: mult values are non-negative integers or \"inf\"");
    }
  }
  for (std::size_t i = 0; i < mult.size(); ++i) {
    if (mult[i] == -2) {
      std::ostringstream os;
      os << "symbolic model: label " << i << " missing from mult";
      fail(Err::ParseError, os.str());
    }
  }
  return make_symbolic(std::move(table), std::move(mult));
}

SymbolicModel read_model(const std::string& path) {
  return model_from_json(parse_file(path), dir_of(path));
}

PairModel read_pair(const std::string& path) {
  const Json j = parse_file(path);
  return make_pair(model_from_json(field(j, "big", path), dir_of(path)),
                   model_from_json(field(j, "small", path), dir_of(path)));
}

std::vector<AlgebraWord> read_words(const std::string& path) {
  const Json j = parse_file(path);
  if (!j.is_array()) fail(Err::ParseError, path + ": a word list is an array");
  std::vector<AlgebraWord> words;
  for (const Json& wj : j) {
    AlgebraWord w;
    for (const Json& c : field(wj, "coeffs", path)) w.coeffs.push_back(parse_complex(c));
    for (const Json& p : field(wj, "products", path)) {
      std::vector<std::string> factors;
      for (const Json& f : p) {
        if (!f.is_string()) fail(Err::ParseError, path + ": word factors must be strings");
        factors.push_back(f.get<std::string>());
      }
      w.products.push_back(std::move(factors));
    }
    if (w.coeffs.size() != w.products.size())
      fail(Err::ParseError, path + ": a word needs one coefficient per product");
    words.push_back(std::move(w));
  }
  return words;
}

Mat read_matrix(const std::string& path) { return parse_matrix(parse_file(path)); }

std::vector<Vec> parse_tuple(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    fail(Err::ParseError, std::string("tuple literal: ") + e.what());
  }
  if (!j.is_array()) fail(Err::ParseError, "a tuple literal is an array of vectors");
  std::vector<Vec> tuple;
  for (const Json& vj : j) tuple.push_back(parse_vector(vj));
  return tuple;
}

Json group_json(const FiniteGroup& g) {
  Json j;
  j["labels"] = g.labels;
  j["table"] = g.cayley;
  j["generators"] = g.generators;
  return j;
}

Json rep_json(const UnitaryRep& rep, const std::string& group_path) {
  Json j;
  j["group"] = group_path;
  j["dim"] = rep.dim;
  Json mats = Json::object();
  for (int g = 0; g < rep.group->order(); ++g)
    mats[rep.group->labels[static_cast<std::size_t>(g)]] = matrix_json(rep.at(g));
  j["matrices"] = std::move(mats);
  return j;
}

Json model_json(const SymbolicModel& m, const std::string& group_path) {
  Json j;
  j["group"] = group_path;
  Json mult = Json::object();
  for (std::size_t i = 0; i < m.mult.size(); ++i) {
    if (is_omega(m.mult[i]))
      mult[std::to_string(i)] = "inf";
    else
      mult[std::to_string(i)] = m.mult[i];
  }
  j["mult"] = std::move(mult);
  return j;
}

Json table_json(const CharacterTable& t) {
  Json j;
  j["degrees"] = t.degrees;
  j["classes"] = t.partition.classes;
  j["class_sizes"] = t.partition.class_sizes;
  Json chi = Json::array();
  for (int i = 0; i < t.k(); ++i) {
    Json row = Json::array();
    for (int c = 0; c < t.k(); ++c) row.push_back(complex_json(t.chi(i, c)));
    chi.push_back(std::move(row));
  }
  j["chi"] = std::move(chi);
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Err::ParseError, "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Err::ParseError, "cannot write '" + path + "'");
  out << text;
}

}  // namespace grouprep::io

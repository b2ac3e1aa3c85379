#pragma once

// Quadruple JSON, the line-oriented structure format and K_sub basis files.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rootgrade/coords.hpp"
#include "rootgrade/graded.hpp"

namespace rootgrade {

namespace io_detail {

using nlohmann::json;

inline Error parse_error(const std::string& where, const std::string& what) {
  return Error(ErrorKind::ParseError, where + ": " + what);
}

inline Rational rational_at(const json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
      throw parse_error(where, e.what());
    }
  }
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw parse_error(where, "expected a rational string \"p/q\"");
}

inline const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw parse_error(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw parse_error(where, std::string("missing field '") + key + "'");
  return *it;
}

inline Index natural_at(const json& j, const std::string& where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long>() >= 0))
    throw parse_error(where, "expected a natural number");
  return j.get<Index>();
}

inline SparseVec dense_at(const json& j, Index dim, const std::string& where) {
  if (!j.is_array() || j.size() != dim)
    throw parse_error(where, "expected an array of " + std::to_string(dim) + " rationals");
  std::vector<SparseVec::Entry> e;
  for (Index i = 0; i < dim; ++i) e.emplace_back(i, rational_at(j[i], where + "/" + std::to_string(i)));
  return SparseVec(std::move(e));
}

inline std::vector<SparseVec> table_at(const json& j, Index rows, Index cols, Index vdim, const std::string& where) {
  if (!j.is_array() || j.size() != rows)
    throw parse_error(where, "expected " + std::to_string(rows) + " rows");
  std::vector<SparseVec> out;
  out.reserve(rows * cols);
  for (Index r = 0; r < rows; ++r) {
    const std::string w = where + "/" + std::to_string(r);
    if (!j[r].is_array() || j[r].size() != cols) throw parse_error(w, "expected " + std::to_string(cols) + " entries");
    for (Index c = 0; c < cols; ++c) out.push_back(dense_at(j[r][c], vdim, w + "/" + std::to_string(c)));
  }
  return out;
}

inline json dense_json(const SparseVec& v, Index dim) {
  json a = json::array();
  for (Index i = 0; i < dim; ++i) a.push_back(v.get(i).get_str());
  return a;
}

inline json table_json(const std::vector<SparseVec>& t, Index rows, Index cols, Index vdim) {
  json out = json::array();
  for (Index r = 0; r < rows; ++r) {
    json row = json::array();
    for (Index c = 0; c < cols; ++c) row.push_back(dense_json(t[r * cols + c], vdim));
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace io_detail

inline CoordinateQuadruple quadruple_from_json(const std::string& text, const std::string& source = "input") {
  using namespace io_detail;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw parse_error(source + " byte " + std::to_string(e.byte), "malformed JSON");
  }
  CoordinateQuadruple q;
  const json& kind = field(j, "kind", source);
  if (!kind.is_string()) throw parse_error(source + " /kind", "expected a string");
  try {
    q.kind = parse_kind(kind.get<std::string>());
  } catch (const Error& e) {
    throw parse_error(source + " /kind", e.what());
  }
  if (auto it = j.find("name"); it != j.end() && it->is_string()) q.name = it->get<std::string>();
  const std::string wa = source + " /a";
  const json& a = field(j, "a", source);
  const Index d = natural_at(field(a, "dim", wa), wa + "/dim");
  if (d == 0) throw parse_error(wa + "/dim", "must be positive");
  q.a.dim = d;
  q.a.unit = dense_at(field(a, "unit", wa), d, wa + "/unit");
  q.a.mul = table_at(field(a, "mul", wa), d, d, d, wa + "/mul");
  const json& star = field(a, "star", wa);
  if (star.is_string()) {
    if (star.get<std::string>() != "identity") throw parse_error(wa + "/star", "expected \"identity\" or a matrix");
  } else {
    if (!star.is_array() || star.size() != d) throw parse_error(wa + "/star", "expected " + std::to_string(d) + " rows");
    std::vector<SparseVec> s;
    for (Index i = 0; i < d; ++i) s.push_back(dense_at(star[i], d, wa + "/star/" + std::to_string(i)));
    q.a.star = std::move(s);
  }
  if (auto it = j.find("C"); it != j.end()) {
    const std::string wc = source + " /C";
    const Index m = natural_at(field(*it, "dim", wc), wc + "/dim");
    q.c.dim = m;
    q.c.act = m ? table_at(field(*it, "act", wc), d, m, m, wc + "/act") : std::vector<SparseVec>{};
    q.c.f = m ? table_at(field(*it, "f", wc), m, m, d, wc + "/f") : std::vector<SparseVec>{};
  }
  check_shape(q);
  return q;
}

inline std::string quadruple_to_json(const CoordinateQuadruple& q) {
  using namespace io_detail;
  const Index d = q.a.dim, m = q.c.dim;
  json j;
  j["kind"] = std::string(to_string(q.kind));
  if (!q.name.empty()) j["name"] = q.name;
  json a;
  a["dim"] = d;
  a["unit"] = dense_json(q.a.unit, d);
  a["mul"] = table_json(q.a.mul, d, d, d);
  if (q.a.star) {
    json s = json::array();
    for (const auto& v : *q.a.star) s.push_back(dense_json(v, d));
    a["star"] = std::move(s);
  } else {
    a["star"] = "identity";
  }
  j["a"] = std::move(a);
  json c;
  c["dim"] = m;
  c["act"] = table_json(q.c.act, d, m, m);
  c["f"] = table_json(q.c.f, m, m, d);
  j["C"] = std::move(c);
  return j.dump(2) + "\n";
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, path + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline bool file_exists(const std::string& path) { return std::ifstream(path).good(); }

/// A readable file wins over a catalog name.
inline CoordinateQuadruple load_quadruple(const std::string& name_or_path) {
  if (file_exists(name_or_path)) return quadruple_from_json(read_file(name_or_path), name_or_path);
  return catalog(name_or_path);
}

// ---- sparse term lists: "c*k + c*k" or "0" ----

inline std::string terms_str(const SparseVec& v) { return v.str(); }

inline SparseVec parse_terms(const std::string& s, const std::string& where) {
  if (s == "0") return {};
  std::vector<SparseVec::Entry> e;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t end = s.find(" + ", pos);
    std::string term = s.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    std::size_t star = term.rfind('*');
    if (star == std::string::npos) throw io_detail::parse_error(where, "bad term '" + term + "'");
    Rational c;
    Index k;
    try {
      c = parse_rational(term.substr(0, star));
      std::size_t used = 0;
      k = std::stoul(term.substr(star + 1), &used);
      if (used != term.size() - star - 1) throw std::invalid_argument("index");
    } catch (const std::exception&) {
      throw io_detail::parse_error(where, "bad term '" + term + "'");
    }
    e.emplace_back(k, c);
    if (end == std::string::npos) break;
    pos = end + 3;
  }
  return SparseVec(std::move(e));
}

// ---- structure format ----

inline std::string join_index(const std::vector<long>& v) {
  std::string s;
  for (Index i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

inline void write_structure(std::ostream& out, const GradedStructure& s) {
  out << "format=rootgrade-structure-1\n";
  out << "name=" << s.name << "\n";
  out << "n=" << s.n << "\n";
  out << "ell=" << s.ell << "\n";
  out << "dim=" << s.dim() << "\n";
  out << "summands=" << s.summands[0] << "," << s.summands[1] << "," << s.summands[2] << "," << s.summands[3] << "\n";
  for (Index i = 0; i < s.dim(); ++i) out << "label[" << i << "]=" << s.labels[i] << "\n";
  for (Index i = 0; i < s.dim(); ++i) out << "weight[" << i << "]=" << join_index(s.weights[i]) << "\n";
  for (Index i = 0; i < s.cartan.size(); ++i) out << "cartan[" << i << "]=" << terms_str(s.cartan[i]) << "\n";
  for (Index i = 0; i < s.dim(); ++i)
    for (Index j = 0; j < s.dim(); ++j)
      if (!s.table.at(i, j).empty()) out << "bracket[" << i << "][" << j << "]=" << terms_str(s.table.at(i, j)) << "\n";
}

inline GradedStructure read_structure(std::istream& in, const std::string& source) {
  GradedStructure s;
  std::string line;
  Index lineno = 0;
  Index dim = 0;
  bool have_dim = false;
  auto where = [&] { return source + " line " + std::to_string(lineno); };
  auto nat = [&](const std::string& v) -> Index {
    try {
      std::size_t used = 0;
      Index x = std::stoul(v, &used);
      if (used != v.size()) throw std::invalid_argument(v);
      return x;
    } catch (const std::exception&) {
      throw io_detail::parse_error(where(), "expected a natural number, got '" + v + "'");
    }
  };
  auto bracket_index = [&](const std::string& key, std::size_t from) -> std::pair<Index, std::size_t> {
    std::size_t close = key.find(']', from);
    if (key[from] != '[' || close == std::string::npos) throw io_detail::parse_error(where(), "bad key '" + key + "'");
    Index i = nat(key.substr(from + 1, close - from - 1));
    if (have_dim && i >= dim && key.rfind("cartan", 0) != 0) throw io_detail::parse_error(where(), "index out of range");
    return {i, close + 1};
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) throw io_detail::parse_error(where(), "expected key=value");
    std::string key = line.substr(0, eq), val = line.substr(eq + 1);
    if (key == "format") {
      if (val != "rootgrade-structure-1") throw io_detail::parse_error(where(), "unknown format '" + val + "'");
    } else if (key == "name") {
      s.name = val;
    } else if (key == "n") {
      s.n = nat(val);
    } else if (key == "ell") {
      s.ell = nat(val);
    } else if (key == "dim") {
      dim = nat(val);
      have_dim = true;
      s.table = LieTable(dim);
      s.labels.assign(dim, "");
      s.weights.assign(dim, Weight(s.n, 0));
    } else if (key == "summands") {
      std::stringstream ss(val);
      std::string part;
      for (Index k = 0; k < 4; ++k) {
        if (!std::getline(ss, part, ',')) throw io_detail::parse_error(where(), "expected four summand dims");
        s.summands[k] = nat(part);
      }
    } else if (!have_dim) {
      throw io_detail::parse_error(where(), "dim must precede '" + key + "'");
    } else if (key.rfind("label", 0) == 0) {
      s.labels[bracket_index(key, 5).first] = val;
    } else if (key.rfind("weight", 0) == 0) {
      Index i = bracket_index(key, 6).first;
      Weight w;
      std::stringstream ss(val);
      std::string part;
      while (std::getline(ss, part, ',')) {
        try {
          w.push_back(std::stol(part));
        } catch (const std::exception&) {
          throw io_detail::parse_error(where(), "bad weight '" + val + "'");
        }
      }
      if (w.size() != s.n) throw io_detail::parse_error(where(), "weight must have n entries");
      s.weights[i] = std::move(w);
    } else if (key.rfind("cartan", 0) == 0) {
      Index i = bracket_index(key, 6).first;
      if (i >= s.n) throw io_detail::parse_error(where(), "cartan index out of range");
      if (s.cartan.size() <= i) s.cartan.resize(i + 1);
      SparseVec v = parse_terms(val, where());
      if (!v.empty() && v.max_index() >= dim) throw io_detail::parse_error(where(), "term index out of range");
      s.cartan[i] = std::move(v);
    } else if (key.rfind("bracket", 0) == 0) {
      auto [i, next] = bracket_index(key, 7);
      auto [j, end] = bracket_index(key, next);
      if (end != key.size()) throw io_detail::parse_error(where(), "bad key '" + key + "'");
      SparseVec v = parse_terms(val, where());
      if (!v.empty() && v.max_index() >= dim) throw io_detail::parse_error(where(), "term index out of range");
      s.table.set(i, j, std::move(v));
    } else {
      throw io_detail::parse_error(where(), "unknown key '" + key + "'");
    }
  }
  if (!have_dim) throw io_detail::parse_error(source, "missing dim");
  if (s.cartan.size() != s.n) throw io_detail::parse_error(source, "expected " + std::to_string(s.n) + " cartan lines");
  return s;
}

/// K_sub basis file: one dense rational vector per line over {b,b}; '#' starts a comment.
inline Subspace read_k_file(const std::string& path, Index bb_dim) {
  std::istringstream in(read_file(path));
  std::string line;
  Index lineno = 0;
  std::vector<SparseVec> rows;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    std::vector<SparseVec::Entry> e;
    std::string tok;
    Index k = 0;
    while (ls >> tok) {
      try {
        e.emplace_back(k++, parse_rational(tok));
      } catch (const Error& err) {
        throw io_detail::parse_error(path + " line " + std::to_string(lineno), err.what());
      }
    }
    if (k == 0) continue;
    if (k != bb_dim)
      throw io_detail::parse_error(path + " line " + std::to_string(lineno),
                                   "expected " + std::to_string(bb_dim) + " entries, got " + std::to_string(k));
    rows.push_back(SparseVec(std::move(e)));
  }
  return Subspace::span(rows, bb_dim);
}

}  // namespace rootgrade

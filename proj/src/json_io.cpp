#include "sossym/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

namespace sossym::io {

json rational_json(const Rational& x) { return to_string(x); }

Rational rational_from(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw std::invalid_argument("expected a rational string, got " + j.dump());
}

json quantity(const Rational& x) { return json{{"exact", to_string(x)}, {"approx", approx(x)}}; }

json vector_json(const RationalVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(rational_json(x));
  return a;
}

RationalVector vector_from(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected an array of rationals");
  RationalVector v;
  v.reserve(j.size());
  for (const auto& x : j) v.push_back(rational_from(x));
  return v;
}

namespace {

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw std::invalid_argument(std::string("missing field \"") + name + "\"");
  return j.at(name);
}

int int_field(const json& j, const char* name) {
  const json& f = field(j, name);
  if (!f.is_number_integer()) throw std::invalid_argument(std::string("field \"") + name + "\" must be an integer");
  return f.get<int>();
}

json subset_json(Subset s) { return elements_of(s); }

}  // namespace

json to_json(const LevelVector& z) { return json{{"n", z.n}, {"levels", vector_json(z.values)}}; }

LevelVector level_vector_from(const json& j) {
  const int n = int_field(j, "n");
  if (n < 0 || n > kMaxGroundSet) throw std::invalid_argument("n out of range");
  return LevelVector(n, vector_from(field(j, "levels")));
}

json to_json(const SetFunction& f) {
  std::vector<Subset> keys;
  for (const auto& [s, v] : f.entries) keys.push_back(s);
  std::sort(keys.begin(), keys.end(), [](Subset a, Subset b) {
    return cardinality(a) != cardinality(b) ? cardinality(a) < cardinality(b) : a < b;
  });
  json entries = json::array();
  for (Subset s : keys) entries.push_back(json{{"set", subset_json(s)}, {"value", rational_json(f.entries.at(s))}});
  return json{{"n", f.n}, {"entries", entries}};
}

SetFunction set_function_from(const json& j) {
  const int n = int_field(j, "n");
  if (n < 0 || n > kMaxGroundSet) throw std::invalid_argument("n out of range");
  SetFunction f(n);
  for (const auto& e : field(j, "entries")) {
    const json& set = field(e, "set");
    if (!set.is_array()) throw std::invalid_argument("\"set\" must be an array of elements");
    std::vector<int> elems;
    for (const auto& x : set) {
      if (!x.is_number_integer() || x.get<int>() < 1 || x.get<int>() > n)
        throw std::invalid_argument("set element out of range 1..n: " + x.dump());
      elems.push_back(x.get<int>());
    }
    f.add(make_subset(elems), rational_from(field(e, "value")));
  }
  return f;
}

json to_json(const MomentMatrix& m) {
  const SubsetIndex index(m.n, m.q);
  json subsets = json::array();
  for (Subset s : index.subsets()) subsets.push_back(subset_json(s));
  json rows = json::array();
  for (std::size_t i = 0; i < m.matrix.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.matrix.cols(); ++j) row.push_back(rational_json(m.matrix(i, j)));
    rows.push_back(std::move(row));
  }
  return json{{"n", m.n},
              {"q", m.q},
              {"order", "subsets of size <= q, grouped by size ascending, colex within a size"},
              {"subsets", subsets},
              {"entries", rows}};
}

RationalMatrix matrix_from(const json& j) {
  const json& rows = field(j, "entries");
  if (!rows.is_array()) throw std::invalid_argument("\"entries\" must be an array of rows");
  const std::size_t d = rows.size();
  RationalMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    if (!rows[i].is_array() || rows[i].size() != d) throw std::invalid_argument("matrix is not square");
    for (std::size_t c = 0; c < d; ++c) m(i, c) = rational_from(rows[i][c]);
  }
  return m;
}

json to_json(const PsdVerdict& v) {
  if (const auto* c = std::get_if<PsdCertificate>(&v)) {
    json lower = json::array();
    for (std::size_t i = 0; i < c->lower.rows(); ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < c->lower.cols(); ++j) row.push_back(rational_json(c->lower(i, j)));
      lower.push_back(std::move(row));
    }
    return json{{"kind", "certificate"}, {"permutation", c->permutation}, {"diag", vector_json(c->diag)}, {"lower", lower}};
  }
  const auto& w = std::get<IndefWitness>(v);
  return json{{"kind", "witness"}, {"vector", vector_json(w.v)}, {"value", rational_json(w.value)}};
}

PsdVerdict verdict_from(const json& j) {
  const json& kind = field(j, "kind");
  if (kind == "certificate") {
    PsdCertificate c;
    for (const auto& p : field(j, "permutation")) {
      if (!p.is_number_unsigned()) throw std::invalid_argument("permutation entries must be non-negative integers");
      c.permutation.push_back(p.get<std::size_t>());
    }
    c.diag = vector_from(field(j, "diag"));
    const json& rows = field(j, "lower");
    const std::size_t d = rows.size();
    c.lower = RationalMatrix(d, d);
    for (std::size_t i = 0; i < d; ++i) {
      if (!rows[i].is_array() || rows[i].size() != d) throw std::invalid_argument("\"lower\" is not square");
      for (std::size_t k = 0; k < d; ++k) c.lower(i, k) = rational_from(rows[i][k]);
    }
    return c;
  }
  if (kind == "witness") return IndefWitness{vector_from(field(j, "vector")), rational_from(field(j, "value"))};
  throw std::invalid_argument("\"kind\" must be certificate or witness");
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

void write_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace sossym::io

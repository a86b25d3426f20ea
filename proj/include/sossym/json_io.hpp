#pragma once

#include "json.hpp"

#include <string>

#include "sossym/moment.hpp"
#include "sossym/psd.hpp"

namespace sossym::io {

using nlohmann::json;

/// Rationals travel as "p/q" strings; parsing also accepts JSON integers.
json rational_json(const Rational& x);
Rational rational_from(const json& j);

/// {"exact": "p/q", "approx": <double>}; the decimal is display only.
json quantity(const Rational& x);

json vector_json(const RationalVector& v);
RationalVector vector_from(const json& j);

/// {"n": int, "levels": ["p/q", ...]}
json to_json(const LevelVector& z);
LevelVector level_vector_from(const json& j);

/// {"n": int, "entries": [{"set": [ints], "value": "p/q"}, ...]}, entries in
/// size-then-colex order.
json to_json(const SetFunction& f);
SetFunction set_function_from(const json& j);

/// {"n", "q", "order", "subsets": [[...]], "entries": [["p/q", ...], ...]}
json to_json(const MomentMatrix& m);
/// Dense square matrix from "entries"; other fields are ignored.
RationalMatrix matrix_from(const json& j);

/// {"kind": "certificate", "permutation", "diag", "lower"} or
/// {"kind": "witness", "vector", "value"}.
json to_json(const PsdVerdict& v);
PsdVerdict verdict_from(const json& j);

/// Reads and parses a JSON file; std::invalid_argument with the path on failure.
json read_file(const std::string& path);
void write_file(const std::string& path, const json& j);

}  // namespace sossym::io

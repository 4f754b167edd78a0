#pragma once

// JSON and text formats.
//
//   Quiver:       {"n": 3, "b": [[0,1,0],[-1,0,-1],[0,1,0]]}
//                 or {"n": 3, "arrows": [[1,2],[3,2]]}
//   Loop:         {"quiver": <Quiver>, "steps": [{"mutate": 2}, {"relabel": [2,1,3]}]}
//   Normal form:  {"mutations": [2,1,3], "phi": [1,2,3]}
//   Form:         {"delta": 4, "gram_num": [[..]], "gram_den": 4, "positivity": "positive-definite"}
//   Series:       {"delta": 4, "cutoff": "3/1", "terms": [[0, 1], [3, 2]]}
//
// Series coefficients that do not fit in 64 bits are written as decimal strings.

#include <string>

#include <json.hpp>

#include "qloop/mutation_loop.hpp"
#include "qloop/qseries.hpp"
#include "qloop/variable_system.hpp"

namespace qloop {

using Json = nlohmann::ordered_json;

Json quiver_to_json(const Quiver& q);
/// Throws ParseError on malformed input, InvalidArgument on invalid matrices.
Quiver quiver_from_json(const Json& j);

Json steps_to_json(const Steps& steps);
Steps steps_from_json(const Json& j, int n);

Json loop_to_json(const MutationLoop& loop);
/// Parses and validates; throws NotALoopError when the steps do not close.
MutationLoop loop_from_json(const Json& j);

Json normal_form_to_json(const NormalForm& nf);

Json form_to_json(const ExponentForm& form);

Json series_to_json(const QSeries& s);
QSeries series_from_json(const Json& j);

/// "1 + 3 * q^(1/2) - 2 * q^(4/2)": terms in increasing exponent order, each
/// exponent written e/delta without reduction; an empty series prints "0".
std::string series_to_text(const QSeries& s);

/// Reads a whole file into JSON; throws ParseError.
Json read_json_file(const std::string& path);

}  // namespace qloop

#pragma once

#include <json.hpp>

#include "semilab/character.hpp"
#include "semilab/cycle_algebra.hpp"
#include "semilab/derivation.hpp"

namespace semilab {

// All serializers emit objects with alphabetically sorted keys (nlohmann's
// default map backing), so identical values always produce identical bytes.
using Json = nlohmann::json;

// {"im": y, "re": x}
Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);

// {"vertices": ["v1", ...], "edges": [{"id", "src", "dst"}, ...]}
Json graph_to_json(const DirectedGraph& g);
DirectedGraph graph_from_json(const Json& j);

// Array of {"word": ["e1","e2"] | {"vertex": "v"}, "re": x, "im": y}.
Json ncpoly_to_json(const NcPoly& p);
NcPoly ncpoly_from_json(const Json& j, const DirectedGraph& g);

// {"n": n, "entries": [[[[k, re, im], ...], ...], ...]} (row-major entries,
// each a list of z-monomials).
Json graded_to_json(const GradedMatrixFn& f);
GradedMatrixFn graded_from_json(const Json& j);

// {"rows": r, "cols": c, "data": [{re, im}, ...]} row-major.
Json matrix_to_json(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd matrix_from_json(const Json& j);

// {"dim": n, "graph": {...}, "vertex_images": [...], "edge_images": [...]}.
// Loading takes the already-loaded graph (the in-memory rep only references
// it); the embedded copy must match.
Json rep_to_json(const MatrixRep& rep);
MatrixRep rep_from_json(const Json& j, const DirectedGraph& g);

// {"rep": {...}, "dP": [...], "dL": [...]}.
Json derivation_to_json(const DerivationAtRep& d);
DerivationAtRep derivation_from_json(const Json& j, const DirectedGraph& g);

// {"v0": "u", "loops": ["f1", ...], "lambda": [{re, im}, ...]}.
Json character_to_json(const Character& chi);
Character character_from_json(const Json& j, const DirectedGraph& g);

}  // namespace semilab

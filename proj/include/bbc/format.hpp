#pragma once

// Text and JSON renderings of polynomials for the command-line tool.

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bbc/intpoly.hpp"
#include "bbc/poly.hpp"

namespace bbc {

/// Coefficients c_0 .. c_n separated by spaces; field elements in the symmetric range.
std::string coeff_line(const FieldPoly& f);
std::string coeff_line(const IntPoly& f);

/// Descending-degree text such as "X^2+3*X-1".
std::string poly_text(const FieldPoly& f);
std::string poly_text(const IntPoly& f);

/// "(X-1)^2*(X-2)"; "1" for an empty product.
std::string factored_text(const std::vector<std::pair<FieldPoly, unsigned>>& factors);
std::string factored_text(const std::vector<std::pair<IntPoly, unsigned>>& factors);

/// Field factorization in canonical order.
std::vector<std::pair<FieldPoly, unsigned>> field_factors(const FieldPoly& f, Rng& rng);

/// Coprime factorization of a monic integer polynomial for display: squarefree
/// decomposition with every integer root split off as a linear factor. The
/// remaining factors are squarefree but need not be irreducible.
std::vector<std::pair<IntPoly, unsigned>> integer_display_factors(const IntPoly& f, Rng& rng);

/// Degree, then coefficients from X^{d-1} down by (|c|, positive first).
bool canonical_less(const IntPoly& a, const IntPoly& b);

nlohmann::json coeffs_json(const FieldPoly& f);
nlohmann::json coeffs_json(const IntPoly& f);

}  // namespace bbc

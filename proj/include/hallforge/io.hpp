#pragma once

#include <string>
#include <vector>

#include "hallforge/cohm.hpp"

namespace hallforge {

// Variable names "x:<node>:<slot>" (GL blocks) and "z:<node>:<slot>" (BCD
// blocks), slots 1-based.
std::vector<std::string> variable_names(const Quiver& q, const BlockSpec& blocks);

std::string poly_to_string(const Poly& p, const std::vector<std::string>& names);
// [{"exp": {...}, "c": "num/den"}, ...] in term order.
std::string poly_to_json(const Poly& p, const std::vector<std::string>& names);
Poly poly_from_json(const std::string& text, const std::vector<std::string>& names);

// {"d": [..], "poly": [...]} and {"e": [..], "poly": [...]}
std::string coha_element_to_json(const Quiver& q, const CohaElement& f);
std::string cohm_element_to_json(const Quiver& q, const CohmElement& g);
CohaElement coha_element_from_json(const Quiver& q, const std::string& text);
CohmElement cohm_element_from_json(const Quiver& q, const std::string& text);

std::string read_file(const std::string& path);

}  // namespace hallforge

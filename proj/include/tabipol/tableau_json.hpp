#ifndef TABIPOL_TABLEAU_JSON_HPP
#define TABIPOL_TABLEAU_JSON_HPP

#include <string>

#include "tabipol/tableau.hpp"

namespace tabipol {

// Wire format: a JSON tree of node objects with optional "lit" (literal in
// the formula grammar), optional "side" ("red"/"blue") and a "children"
// array. The root carries no "lit".
Tableau parse_tableau(const std::string& text);
std::string print_tableau(const Tableau& t);

}  // namespace tabipol

#endif

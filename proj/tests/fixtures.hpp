#ifndef TABIPOL_TESTS_FIXTURES_HPP
#define TABIPOL_TESTS_FIXTURES_HPP

// Hand-encoded proof trees and sentences shared by the golden tests. The
// trees below are closed two-sided ground tableaux over the definitional
// clause set of the sentence
//
//   all X. (~r(X) | ex Y. (s(X,Y) & true))
//
// used as both interpolation inputs, with the left copy clausified directly
// and the right copy negated first. Definer and Skolem names follow the
// library's deterministic naming. Trees are written in a bracket notation
//   [literal side child...]
// where side is R or B; the top-level brackets are the root's children.

#include <cctype>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tabipol/parse.hpp"
#include "tabipol/tableau.hpp"

namespace fixtures {

using tabipol::Side;
using tabipol::Tableau;

inline const char* kRelSentence = "all X. (~r(X) | ex Y. (s(X,Y) & true))";

namespace detail {

struct Cursor {
  const std::string& s;
  size_t i = 0;

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  char peek() {
    skip();
    return i < s.size() ? s[i] : '\0';
  }
  std::string word() {
    skip();
    size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) &&
           s[j] != '[' && s[j] != ']')
      ++j;
    std::string w = s.substr(i, j - i);
    i = j;
    return w;
  }
};

inline void parse_node(Tableau& t, int parent, Cursor& c) {
  if (c.peek() != '[') throw std::runtime_error("fixture: expected '['");
  ++c.i;
  std::string lit = c.word();
  std::string side = c.word();
  if (side != "R" && side != "B")
    throw std::runtime_error("fixture: bad side " + side);
  int id = t.add_child(parent, tabipol::parse_literal(lit),
                       side == "R" ? Side::Red : Side::Blue);
  while (c.peek() == '[') parse_node(t, id, c);
  if (c.peek() != ']') throw std::runtime_error("fixture: expected ']'");
  ++c.i;
}

}  // namespace detail

inline Tableau tree(const std::string& text) {
  Tableau t;
  detail::Cursor c{text};
  while (c.peek() == '[') detail::parse_node(t, t.root(), c);
  c.skip();
  if (c.i != text.size()) throw std::runtime_error("fixture: trailing text");
  return assign_targets(std::move(t));
}

// The forward-chaining shape: guard and definer nodes already adjacent.
inline Tableau hyper_example() {
  return tree(R"(
    [d_l R
      [d_r B
        [~d_r B]
        [r(sk_r_1) B
          [~d_r B]
          [d_r_1(sk_r_1) B
            [~d_l R]
            [~r(sk_r_1) R]
            [d_l_1(sk_r_1) R
              [~d_l_1(sk_r_1) R]
              [s(sk_r_1,sk_l_1_1(sk_r_1)) R
                [~d_r_1(sk_r_1) B]
                [~s(sk_r_1,sk_l_1_1(sk_r_1)) B]
                [d_r_1_1 B [~d_r_1_1 B]]]]]]]])");
}

// First goal-directed example and its conversion stages.
inline Tableau conn1_stage(int s) {
  switch (s) {
    case 1:
      return tree(R"(
        [d_l R
          [~d_l R]
          [~r(sk_r_1) R
            [~d_r B [d_r B]]
            [r(sk_r_1) B]]
          [d_l_1(sk_r_1) R
            [~d_l_1(sk_r_1) R]
            [s(sk_r_1,sk_l_1_1(sk_r_1)) R
              [~d_r_1(sk_r_1) B
                [~d_r B [d_r B]]
                [d_r_1(sk_r_1) B]]
              [~s(sk_r_1,sk_l_1_1(sk_r_1)) B]
              [d_r_1_1 B [~d_r_1_1 B]]]]])");
    case 2:
      return tree(R"(
        [d_l R
          [~d_r B [d_r B]]
          [r(sk_r_1) B
            [~d_l R]
            [~r(sk_r_1) R]
            [d_l_1(sk_r_1) R
              [~d_l_1(sk_r_1) R]
              [s(sk_r_1,sk_l_1_1(sk_r_1)) R
                [~d_r_1(sk_r_1) B
                  [~d_r B [d_r B]]
                  [d_r_1(sk_r_1) B]]
                [~s(sk_r_1,sk_l_1_1(sk_r_1)) B]
                [d_r_1_1 B [~d_r_1_1 B]]]]]])");
    case 3:
      return tree(R"(
        [d_l R
          [d_r B
            [~d_r B]
            [r(sk_r_1) B
              [~d_l R]
              [~r(sk_r_1) R]
              [d_l_1(sk_r_1) R
                [~d_l_1(sk_r_1) R]
                [s(sk_r_1,sk_l_1_1(sk_r_1)) R
                  [~d_r_1(sk_r_1) B
                    [~d_r B]
                    [d_r_1(sk_r_1) B]]
                  [~s(sk_r_1,sk_l_1_1(sk_r_1)) B]
                  [d_r_1_1 B [~d_r_1_1 B]]]]]]])");
    case 4:
      return tree(R"(
        [d_l R
          [d_r B
            [~d_r B]
            [r(sk_r_1) B
              [~d_l R]
              [~r(sk_r_1) R]
              [d_l_1(sk_r_1) R
                [~d_l_1(sk_r_1) R]
                [s(sk_r_1,sk_l_1_1(sk_r_1)) R
                  [~d_r B]
                  [d_r_1(sk_r_1) B
                    [~d_r_1(sk_r_1) B]
                    [~s(sk_r_1,sk_l_1_1(sk_r_1)) B]
                    [d_r_1_1 B [~d_r_1_1 B]]]]]]]])");
    case 5:
      return tree(R"(
        [d_l R
          [d_r B
            [~d_r B]
            [r(sk_r_1) B
              [~d_r B]
              [d_r_1(sk_r_1) B
                [~d_l R]
                [~r(sk_r_1) R]
                [d_l_1(sk_r_1) R
                  [~d_l_1(sk_r_1) R]
                  [s(sk_r_1,sk_l_1_1(sk_r_1)) R
                    [~d_r B]
                    [d_r_1(sk_r_1) B
                      [~d_r_1(sk_r_1) B]
                      [~s(sk_r_1,sk_l_1_1(sk_r_1)) B]
                      [d_r_1_1 B [~d_r_1_1 B]]]]]]]]])");
    case 6:
      return tree(R"(
        [d_l R
          [d_r B
            [~d_r B]
            [r(sk_r_1) B
              [~d_r B]
              [d_r_1(sk_r_1) B
                [~d_l R]
                [~r(sk_r_1) R]
                [d_l_1(sk_r_1) R
                  [~d_l_1(sk_r_1) R]
                  [s(sk_r_1,sk_l_1_1(sk_r_1)) R
                    [~d_r_1(sk_r_1) B]
                    [~s(sk_r_1,sk_l_1_1(sk_r_1)) B]
                    [d_r_1_1 B [~d_r_1_1 B]]]]]]]])");
    default:
      throw std::runtime_error("no such stage");
  }
}

// Second goal-directed example.
inline Tableau conn2_stage(int s) {
  switch (s) {
    case 1:
      return tree(R"(
        [d_r B
          [~d_r B]
          [r(sk_r_1) B
            [~d_l R [d_l R]]
            [~r(sk_r_1) R]
            [d_l_1(sk_r_1) R
              [~d_l_1(sk_r_1) R]
              [s(sk_r_1,sk_l_1_1(sk_r_1)) R
                [~d_r_1(sk_r_1) B
                  [~d_r B]
                  [d_r_1(sk_r_1) B]]
                [~s(sk_r_1,sk_l_1_1(sk_r_1)) B]
                [d_r_1_1 B [~d_r_1_1 B]]]]]])");
    case 2:
      return tree(R"(
        [d_r B
          [~d_r B]
          [r(sk_r_1) B
            [d_l R
              [~d_l R]
              [~r(sk_r_1) R]
              [d_l_1(sk_r_1) R
                [~d_l_1(sk_r_1) R]
                [s(sk_r_1,sk_l_1_1(sk_r_1)) R
                  [~d_r_1(sk_r_1) B
                    [~d_r B]
                    [d_r_1(sk_r_1) B]]
                  [~s(sk_r_1,sk_l_1_1(sk_r_1)) B]
                  [d_r_1_1 B [~d_r_1_1 B]]]]]]])");
    case 3:
      return tree(R"(
        [d_r B
          [~d_r B]
          [r(sk_r_1) B
            [d_l R
              [~d_l R]
              [~r(sk_r_1) R]
              [d_l_1(sk_r_1) R
                [~d_l_1(sk_r_1) R]
                [s(sk_r_1,sk_l_1_1(sk_r_1)) R
                  [~d_r B]
                  [d_r_1(sk_r_1) B
                    [~d_r_1(sk_r_1) B]
                    [~s(sk_r_1,sk_l_1_1(sk_r_1)) B]
                    [d_r_1_1 B [~d_r_1_1 B]]]]]]]])");
    case 4:
      return tree(R"(
        [d_r B
          [~d_r B]
          [r(sk_r_1) B
            [~d_r B]
            [d_r_1(sk_r_1) B
              [d_l R
                [~d_l R]
                [~r(sk_r_1) R]
                [d_l_1(sk_r_1) R
                  [~d_l_1(sk_r_1) R]
                  [s(sk_r_1,sk_l_1_1(sk_r_1)) R
                    [~d_r B]
                    [d_r_1(sk_r_1) B
                      [~d_r_1(sk_r_1) B]
                      [~s(sk_r_1,sk_l_1_1(sk_r_1)) B]
                      [d_r_1_1 B [~d_r_1_1 B]]]]]]]]])");
    case 5:
      return tree(R"(
        [d_r B
          [~d_r B]
          [r(sk_r_1) B
            [~d_r B]
            [d_r_1(sk_r_1) B
              [d_l R
                [~d_l R]
                [~r(sk_r_1) R]
                [d_l_1(sk_r_1) R
                  [~d_l_1(sk_r_1) R]
                  [s(sk_r_1,sk_l_1_1(sk_r_1)) R
                    [~d_r_1(sk_r_1) B]
                    [~s(sk_r_1,sk_l_1_1(sk_r_1)) B]
                    [d_r_1_1 B [~d_r_1_1 B]]]]]]]])");
    default:
      throw std::runtime_error("no such stage");
  }
}

// Third goal-directed example.
inline Tableau conn3_stage(int s) {
  switch (s) {
    case 1:
      return tree(R"(
        [d_r B
          [~d_r B]
          [d_r_1(sk_r_1) B
            [~d_r_1(sk_r_1) B]
            [~s(sk_r_1,sk_l_1_1(sk_r_1)) B
              [~d_l_1(sk_r_1) R
                [~d_l R [d_l R]]
                [~r(sk_r_1) R
                  [~d_r B]
                  [r(sk_r_1) B]]
                [d_l_1(sk_r_1) R]]
              [s(sk_r_1,sk_l_1_1(sk_r_1)) R]]
            [d_r_1_1 B [~d_r_1_1 B]]]])");
    case 2:
      return tree(R"(
        [d_r B
          [~d_r B]
          [d_r_1(sk_r_1) B
            [~d_l_1(sk_r_1) R
              [~d_l R [d_l R]]
              [~r(sk_r_1) R
                [~d_r B]
                [r(sk_r_1) B]]
              [d_l_1(sk_r_1) R]]
            [s(sk_r_1,sk_l_1_1(sk_r_1)) R
              [~d_r_1(sk_r_1) B]
              [~s(sk_r_1,sk_l_1_1(sk_r_1)) B]
              [d_r_1_1 B [~d_r_1_1 B]]]]])");
    case 3:
      return tree(R"(
        [d_r B
          [~d_r B]
          [d_r_1(sk_r_1) B
            [~d_l R [d_l R]]
            [~r(sk_r_1) R
              [~d_r B]
              [r(sk_r_1) B]]
            [d_l_1(sk_r_1) R
              [~d_l_1(sk_r_1) R]
              [s(sk_r_1,sk_l_1_1(sk_r_1)) R
                [~d_r_1(sk_r_1) B]
                [~s(sk_r_1,sk_l_1_1(sk_r_1)) B]
                [d_r_1_1 B [~d_r_1_1 B]]]]]])");
    case 4:
      return tree(R"(
        [d_r B
          [~d_r B]
          [d_r_1(sk_r_1) B
            [d_l R
              [~d_l R]
              [~r(sk_r_1) R
                [~d_r B]
                [r(sk_r_1) B]]
              [d_l_1(sk_r_1) R
                [~d_l_1(sk_r_1) R]
                [s(sk_r_1,sk_l_1_1(sk_r_1)) R
                  [~d_r_1(sk_r_1) B]
                  [~s(sk_r_1,sk_l_1_1(sk_r_1)) B]
                  [d_r_1_1 B [~d_r_1_1 B]]]]]]])");
    case 5:
      return tree(R"(
        [d_r B
          [~d_r B]
          [d_r_1(sk_r_1) B
            [d_l R
              [~d_r B]
              [r(sk_r_1) B
                [~d_l R]
                [~r(sk_r_1) R]
                [d_l_1(sk_r_1) R
                  [~d_l_1(sk_r_1) R]
                  [s(sk_r_1,sk_l_1_1(sk_r_1)) R
                    [~d_r_1(sk_r_1) B]
                    [~s(sk_r_1,sk_l_1_1(sk_r_1)) B]
                    [d_r_1_1 B [~d_r_1_1 B]]]]]]]])");
    case 6:
      return tree(R"(
        [d_r B
          [~d_r B]
          [d_r_1(sk_r_1) B
            [~d_r B]
            [r(sk_r_1) B
              [d_l R
                [~d_r B]
                [r(sk_r_1) B
                  [~d_l R]
                  [~r(sk_r_1) R]
                  [d_l_1(sk_r_1) R
                    [~d_l_1(sk_r_1) R]
                    [s(sk_r_1,sk_l_1_1(sk_r_1)) R
                      [~d_r_1(sk_r_1) B]
                      [~s(sk_r_1,sk_l_1_1(sk_r_1)) B]
                      [d_r_1_1 B [~d_r_1_1 B]]]]]]]]])");
    case 7:
      return tree(R"(
        [d_r B
          [~d_r B]
          [d_r_1(sk_r_1) B
            [~d_r B]
            [r(sk_r_1) B
              [d_l R
                [~d_l R]
                [~r(sk_r_1) R]
                [d_l_1(sk_r_1) R
                  [~d_l_1(sk_r_1) R]
                  [s(sk_r_1,sk_l_1_1(sk_r_1)) R
                    [~d_r_1(sk_r_1) B]
                    [~s(sk_r_1,sk_l_1_1(sk_r_1)) B]
                    [d_r_1_1 B [~d_r_1_1 B]]]]]]]])");
    default:
      throw std::runtime_error("no such stage");
  }
}

}  // namespace fixtures

#endif

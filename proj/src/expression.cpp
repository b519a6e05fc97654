#include "k3lat/expression.hpp"

#include <cctype>
#include <string>
#include <vector>

#include "k3lat/error.hpp"

namespace k3lat {

namespace {

class Parser {
 public:
  explicit Parser(std::string text) : s_(std::move(text)) {}

  Lattice parse() {
    if (s_.empty()) fail("empty expression");
    Lattice l = sum();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return l;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::ParseError, msg + " at offset " + std::to_string(pos_) + " in '" + s_ + "'");
  }

  bool peek(char c) const { return pos_ < s_.size() && s_[pos_] == c; }
  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  bool at_digit() const { return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])); }

  mpz_class integer(bool allow_sign) {
    std::size_t start = pos_;
    if (allow_sign && (peek('-') || peek('+'))) ++pos_;
    if (!at_digit()) fail("expected an integer");
    while (at_digit()) ++pos_;
    std::string digits = s_.substr(start, pos_ - start);
    if (digits[0] == '+') digits.erase(0, 1);
    return mpz_class(digits);
  }

  int small_index() {
    mpz_class n = integer(false);
    if (n > 1000) fail("index too large");
    return static_cast<int>(n.get_si());
  }

  Lattice sum() {
    std::vector<Lattice> parts{term()};
    while (accept('+')) parts.push_back(term());
    return parts.size() == 1 ? parts.front() : direct_sum(parts);
  }

  Lattice term() {
    if (at_digit()) {
      std::size_t save = pos_;
      mpz_class count = integer(false);
      if (accept('*')) {
        if (count > 1000) fail("repeat count too large");
        Lattice l = postfix();
        return direct_sum(std::vector<Lattice>(count.get_ui(), l));
      }
      pos_ = save;
      fail("expected '<count>*<lattice>'");
    }
    return postfix();
  }

  Lattice postfix() {
    Lattice l = primary();
    while (peek('(')) {
      ++pos_;
      mpz_class n = integer(true);
      expect(')');
      l = rescale(l, n);
    }
    return l;
  }

  Lattice primary() {
    if (accept('(')) {
      Lattice l = sum();
      expect(')');
      return l;
    }
    if (s_.compare(pos_, 4, "gram") == 0) {
      pos_ += 4;
      return gram_literal();
    }
    if (accept('U')) return accept('\'') ? hyperbolic_plane_with_root() : hyperbolic_plane();
    if (accept('A')) return root_lattice(RootKind::A, small_index());
    if (accept('D')) return root_lattice(RootKind::D, small_index());
    if (accept('E')) return root_lattice(RootKind::E, small_index());
    fail("expected a lattice");
  }

  Lattice gram_literal() {
    std::vector<IntVector> rows;
    expect('[');
    if (!peek(']')) {
      do {
        expect('[');
        IntVector row;
        if (!peek(']')) {
          do row.push_back(integer(true));
          while (accept(','));
        }
        expect(']');
        rows.push_back(std::move(row));
      } while (accept(','));
    }
    expect(']');
    const std::size_t n = rows.size();
    for (const auto& r : rows)
      if (r.size() != n) fail("gram literal must be square");
    return Lattice::from_gram(IntMatrix::from_rows(rows, n));
  }

  std::string s_;
  std::size_t pos_ = 0;
};

std::string strip_spaces(std::string_view text) {
  std::string out;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

}  // namespace

Lattice parse_lattice_expression(std::string_view text) { return Parser(strip_spaces(text)).parse(); }

}  // namespace k3lat

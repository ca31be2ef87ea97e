#include "eymkit/matrix.hpp"

#include <cctype>

namespace eymkit {

QMatrix eval(const FieldMatrix& m, const Assignment& at) {
  return m.map([&](const RatFunc& x) { return x.eval(at); });
}

FieldMatrix partial_eval(const FieldMatrix& m, const Assignment& at) {
  return m.map([&](const RatFunc& x) { return x.partial_eval(at); });
}

FieldMatrix to_field(const QMatrix& m) {
  return m.map([](const Rational& x) { return RatFunc(x); });
}

std::string to_string(const FieldMatrix& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s += i ? ", [" : "[";
    for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? ", " : "") + m(i, j).str();
    s += "]";
  }
  return s + "]";
}

FieldMatrix parse_matrix(std::string_view text) {
  auto fail = [&](const std::string& why) -> FieldMatrix {
    throw Error(ErrorKind::Parse, "bad matrix '" + std::string(text) + "': " + why);
  };
  std::vector<std::vector<RatFunc>> rows;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip();
  if (i >= text.size() || text[i] != '[') return fail("expected '['");
  ++i;
  for (;;) {
    skip();
    if (i >= text.size() || text[i] != '[') return fail("expected row");
    ++i;
    std::vector<RatFunc> row;
    std::size_t start = i;
    int depth = 0;
    for (; i < text.size(); ++i) {
      char c = text[i];
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (depth == 0 && (c == ',' || c == ']')) {
        row.push_back(RatFunc::parse(text.substr(start, i - start)));
        start = i + 1;
        if (c == ']') break;
      }
    }
    if (i >= text.size()) return fail("unterminated row");
    ++i;
    rows.push_back(std::move(row));
    skip();
    if (i < text.size() && text[i] == ',') {
      ++i;
      continue;
    }
    if (i < text.size() && text[i] == ']') {
      ++i;
      break;
    }
    return fail("expected ',' or ']'");
  }
  skip();
  if (i != text.size()) return fail("trailing characters");
  std::size_t c = rows.front().size();
  std::vector<RatFunc> flat;
  for (auto& r : rows) {
    if (r.size() != c) return fail("ragged rows");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return FieldMatrix(rows.size(), c, std::move(flat));
}

}  // namespace eymkit

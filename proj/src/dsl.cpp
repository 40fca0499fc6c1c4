#include "mqr/dsl.hpp"

#include <cctype>
#include <sstream>

#include "mqr/errors.hpp"

namespace mqr {

namespace {

struct Token {
  enum Kind { Ident, Number, Sym, End } kind = End;
  std::string text;
  long value = 0;
  int line = 0, col = 0;
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    std::ostringstream os;
    os << "line " << tok_.line << ", col " << tok_.col << ": " << msg;
    if (tok_.kind != Token::End) os << " (at '" << tok_.text << "')";
    throw ParseError(os.str());
  }

  Token expect_sym(const std::string& s) {
    if (tok_.kind != Token::Sym || tok_.text != s) fail("expected '" + s + "'");
    return take();
  }
  Token expect_ident() {
    if (tok_.kind != Token::Ident) fail("expected an identifier");
    return take();
  }
  Token expect_ident(const std::string& kw) {
    if (tok_.kind != Token::Ident || tok_.text != kw) fail("expected '" + kw + "'");
    return take();
  }
  long expect_number() {
    if (tok_.kind != Token::Number) fail("expected a number");
    return take().value;
  }
  bool at_sym(const std::string& s) const { return tok_.kind == Token::Sym && tok_.text == s; }
  bool at_ident(const std::string& s) const {
    return tok_.kind == Token::Ident && tok_.text == s;
  }

 private:
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '^' || c == '*' ||
           c == '\'' || c == '.';
  }

  void advance() {
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (c == '#') {
        while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
      } else if (c == '\n') {
        ++line_;
        col_ = 1;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++col_;
        ++pos_;
      } else {
        break;
      }
    }
    tok_ = Token{};
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= s_.size()) {
      tok_.kind = Token::End;
      return;
    }
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && pos_ + 1 < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])))) {
      size_t start = pos_;
      if (c == '-') ++pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      tok_.kind = Token::Number;
      tok_.text = s_.substr(start, pos_ - start);
      tok_.value = std::stol(tok_.text);
      col_ += static_cast<int>(pos_ - start);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
      tok_.kind = Token::Ident;
      tok_.text = s_.substr(start, pos_ - start);
      col_ += static_cast<int>(pos_ - start);
      return;
    }
    if (c == '-' && pos_ + 1 < s_.size() && s_[pos_ + 1] == '>') {
      tok_.kind = Token::Sym;
      tok_.text = "->";
      pos_ += 2;
      col_ += 2;
      return;
    }
    tok_.kind = Token::Sym;
    tok_.text = std::string(1, c);
    ++pos_;
    ++col_;
  }

  const std::string& s_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
};

std::vector<std::string> ident_list(Lexer& lx) {
  std::vector<std::string> out;
  out.push_back(lx.expect_ident().text);
  while (lx.at_sym(",")) {
    lx.take();
    out.push_back(lx.expect_ident().text);
  }
  return out;
}

Poset parse_poset_body(Lexer& lx) {
  std::vector<std::string> elems = ident_list(lx);
  std::vector<std::pair<std::string, std::string>> rel;
  if (lx.at_sym(";")) {
    lx.take();
    lx.expect_ident("rel");
    lx.expect_sym(":");
    while (true) {
      std::string a = lx.expect_ident().text;
      lx.expect_sym("<");
      std::string b = lx.expect_ident().text;
      rel.emplace_back(a, b);
      while (lx.at_sym("<")) {  // chains a<b<c are allowed
        lx.take();
        std::string c = lx.expect_ident().text;
        rel.emplace_back(b, c);
        b = c;
      }
      if (!lx.at_sym(",")) break;
      lx.take();
    }
  }
  return Poset(elems, rel);
}

Vectroid parse_vectroid_term(Lexer& lx, const Fp& field) {
  if (lx.at_ident("op")) {
    lx.take();
    lx.expect_sym("(");
    Vectroid inner = parse_vectroid_term(lx, field);
    while (lx.at_sym("+")) {
      lx.take();
      inner = disjoint_union(inner, parse_vectroid_term(lx, field));
    }
    lx.expect_sym(")");
    return opposite(inner);
  }
  if (lx.at_ident("kP")) {
    lx.take();
    lx.expect_sym("{");
    Poset p = parse_poset_body(lx);
    lx.expect_sym("}");
    return make_poset_linearization(p, field);
  }
  if (lx.at_ident("half")) {
    lx.take();
    lx.expect_sym("{");
    Poset p = parse_poset_body(lx);
    std::vector<std::vector<std::string>> classes;
    while (lx.at_sym(";")) {
      lx.take();
      lx.expect_ident("same");
      lx.expect_sym(":");
      while (true) {
        lx.expect_sym("{");
        classes.push_back(ident_list(lx));
        lx.expect_sym("}");
        if (!lx.at_sym(",")) break;
        lx.take();
      }
    }
    lx.expect_sym("}");
    return make_halflinear(HalflinearSpec::from_labels(p, classes), field);
  }
  if (lx.peek().kind == Token::Ident) {
    std::string t = lx.peek().text;
    if (t == "k") {
      lx.take();
      return make_linear(1, field);
    }
    if (t.rfind("k_", 0) == 0) {
      lx.take();
      int n = std::atoi(t.c_str() + 2);
      if (n < 1) lx.fail("bad chain length in '" + t + "'");
      return make_linear(n, field);
    }
    if (t.rfind("k^", 0) == 0) {
      lx.take();
      int n = std::atoi(t.c_str() + 2);
      if (n < 1) lx.fail("bad exponent in '" + t + "'");
      return make_nilpotent(n, field);
    }
  }
  lx.fail("expected a vectroid form (k, k_N, k^N, kP{...}, half{...}, op(...))");
}

Vectroid parse_vectroid_expr(Lexer& lx, const Fp& field) {
  Vectroid v = parse_vectroid_term(lx, field);
  while (lx.at_sym("+")) {
    lx.take();
    v = disjoint_union(v, parse_vectroid_term(lx, field));
  }
  return v;
}

Mat parse_matrix(Lexer& lx, const Fp& field, int rows, int cols) {
  lx.expect_sym("[");
  std::vector<std::vector<uint32_t>> data;
  std::vector<uint32_t> row;
  while (!lx.at_sym("]")) {
    if (lx.at_sym("/")) {
      lx.take();
      data.push_back(row);
      row.clear();
      continue;
    }
    long v = lx.expect_number();
    row.push_back(field.reduce(v));
  }
  lx.take();  // ']'
  if (!row.empty()) data.push_back(row);
  if (rows == 0 && cols == 0 && data.empty()) return Mat(0, 0);
  Mat m(static_cast<int>(data.size()), data.empty() ? 0 : static_cast<int>(data[0].size()));
  for (size_t i = 0; i < data.size(); ++i) {
    if (static_cast<int>(data[i].size()) != m.cols)
      lx.fail("ragged matrix rows in plane block");
    for (int j = 0; j < m.cols; ++j) m.at(static_cast<int>(i), j) = data[i][j];
  }
  if ((rows >= 0 && m.rows != rows) || (cols >= 0 && m.cols != cols))
    lx.fail("matrix shape " + std::to_string(m.rows) + "x" + std::to_string(m.cols) +
            " does not match the declared dims (" + std::to_string(rows) + "x" +
            std::to_string(cols) + ")");
  return m;
}

}  // namespace

SpecDocument parse_spec(const std::string& text) {
  Lexer lx(text);

  // Scan for the field block first (defaults to p = 2).
  uint32_t p = 2;
  {
    Lexer scan(text);
    while (scan.peek().kind != Token::End) {
      if (scan.at_ident("field")) {
        scan.take();
        scan.expect_sym("{");
        scan.expect_ident("p");
        scan.expect_sym(":");
        long v = scan.expect_number();
        if (v < 2 || v > 65536) scan.fail("p out of range");
        p = static_cast<uint32_t>(v);
        scan.expect_sym("}");
      } else {
        scan.take();
      }
    }
  }
  Fp field(p);

  std::optional<Quiver> quiver;
  std::map<std::string, Vectroid> marking_by_label;
  struct RawPlane {
    std::map<std::string, std::vector<std::pair<std::string, int>>> dims;
    std::map<std::string, Mat> base, dir1, dir2;
    int dims_line = 0;
  };
  std::map<std::string, RawPlane> raw_planes;

  while (lx.peek().kind != Token::End) {
    Token head = lx.expect_ident();
    if (head.text == "quiver") {
      if (quiver) lx.fail("duplicate quiver block");
      lx.expect_sym("{");
      lx.expect_ident("vertices");
      lx.expect_sym(":");
      Quiver q;
      q.vertices = ident_list(lx);
      for (size_t i = 0; i < q.vertices.size(); ++i)
        for (size_t j = i + 1; j < q.vertices.size(); ++j)
          if (q.vertices[i] == q.vertices[j])
            lx.fail("duplicate vertex label '" + q.vertices[i] + "'");
      lx.expect_sym(";");
      lx.expect_ident("arrows");
      lx.expect_sym(":");
      while (!lx.at_sym("}")) {
        std::string id = lx.expect_ident().text;
        lx.expect_sym(":");
        std::string src = lx.expect_ident().text;
        lx.expect_sym("->");
        std::string dst = lx.expect_ident().text;
        int si = -1, di = -1;
        for (int v = 0; v < q.n_vertices(); ++v) {
          if (q.vertices[v] == src) si = v;
          if (q.vertices[v] == dst) di = v;
        }
        if (si < 0) lx.fail("unknown vertex '" + src + "'");
        if (di < 0) lx.fail("unknown vertex '" + dst + "'");
        q.arrows.push_back({id, si, di});
        if (!lx.at_sym(",")) break;
        lx.take();
      }
      lx.expect_sym("}");
      quiver = std::move(q);
    } else if (head.text == "marking") {
      lx.expect_sym("{");
      while (true) {
        std::string vertex = lx.expect_ident().text;
        lx.expect_sym(":");
        Vectroid v = parse_vectroid_expr(lx, field);
        if (!marking_by_label.emplace(vertex, std::move(v)).second)
          lx.fail("duplicate marking for vertex '" + vertex + "'");
        if (!lx.at_sym(";")) break;
        lx.take();
      }
      lx.expect_sym("}");
    } else if (head.text == "field") {
      lx.expect_sym("{");
      lx.expect_ident("p");
      lx.expect_sym(":");
      lx.expect_number();
      lx.expect_sym("}");
    } else if (head.text == "plane") {
      std::string name = lx.expect_ident().text;
      RawPlane rp;
      lx.expect_sym("{");
      while (!lx.at_sym("}")) {
        if (lx.at_ident("dims")) {
          lx.take();
          lx.expect_sym("{");
          while (true) {
            std::string vertex = lx.expect_ident().text;
            lx.expect_sym(":");
            std::vector<std::pair<std::string, int>> spec;
            if (lx.peek().kind == Token::Number) {
              spec.emplace_back("", static_cast<int>(lx.expect_number()));
            } else {
              while (true) {
                std::string obj = lx.expect_ident().text;
                lx.expect_sym(":");
                spec.emplace_back(obj, static_cast<int>(lx.expect_number()));
                if (!lx.at_sym(",")) break;
                lx.take();
              }
            }
            rp.dims[vertex] = std::move(spec);
            if (!lx.at_sym(";")) break;
            lx.take();
          }
          lx.expect_sym("}");
        } else if (lx.at_ident("base")) {
          lx.take();
          std::string arrow = lx.expect_ident().text;
          rp.base[arrow] = parse_matrix(lx, field, -1, -1);
        } else if (lx.at_ident("dir")) {
          lx.take();
          std::string which = lx.expect_ident().text;
          if (which != "lambda" && which != "mu") lx.fail("direction must be lambda or mu");
          std::string arrow = lx.expect_ident().text;
          Mat m = parse_matrix(lx, field, -1, -1);
          (which == "lambda" ? rp.dir1 : rp.dir2)[arrow] = std::move(m);
        } else if (lx.at_sym(";")) {
          lx.take();
        } else {
          lx.fail("unknown plane section");
        }
      }
      lx.take();  // '}'
      raw_planes.emplace(name, std::move(rp));
    } else {
      lx.fail("unknown block '" + head.text + "'");
    }
  }

  if (!quiver) throw ParseError("missing quiver block");
  quiver->validate();
  std::vector<Vectroid> marking;
  for (const auto& label : quiver->vertices) {
    auto it = marking_by_label.find(label);
    if (it == marking_by_label.end())
      marking.push_back(make_linear(1, field));  // unmarked by default
    else
      marking.push_back(it->second);
  }
  for (auto& [label, v] : marking_by_label) {
    bool known = false;
    for (const auto& vl : quiver->vertices) known = known || vl == label;
    if (!known) throw ValidationError("marking refers to unknown vertex '" + label + "'");
  }
  SpecDocument doc{MarkedQuiver(std::move(*quiver), std::move(marking), field), {}};

  // Validate the user-supplied vectroids as spectroids.
  for (int x = 0; x < doc.mq.quiver.n_vertices(); ++x) {
    ValidationReport r = validate_spectroid(doc.mq.vectroid_at(x));
    if (!r.ok())
      throw ValidationError("marking at '" + doc.mq.quiver.vertices[x] +
                            "' is not a spectroid:\n" + r.to_string());
  }

  for (auto& [name, rp] : raw_planes) {
    PlaneSpec ps;
    ps.base.dims = zero_dims(doc.mq);
    for (auto& [vertex, spec] : rp.dims) {
      int vi = doc.mq.quiver.vertex_index(vertex);
      const Vectroid& V = doc.mq.vectroid_at(vi);
      for (auto& [obj, count] : spec) {
        if (obj.empty()) {
          if (V.n_objects() != 1)
            throw ValidationError("plane " + name + ": vertex '" + vertex +
                                  "' needs per-object multiplicities");
          ps.base.dims.mult[vi][0] = count;
        } else {
          ps.base.dims.mult[vi][V.index_of(obj)] = count;
        }
      }
    }
    for (int ai = 0; ai < doc.mq.quiver.n_arrows(); ++ai) {
      const auto& a = doc.mq.quiver.arrows[ai];
      int rows = total_dim(doc.mq, ps.base.dims, a.src);
      int cols = total_dim(doc.mq, ps.base.dims, a.dst);
      auto pick = [&](std::map<std::string, Mat>& src) {
        auto it = src.find(a.id);
        if (it == src.end()) return Mat(rows, cols);
        if (it->second.rows != rows || it->second.cols != cols)
          throw ValidationError("plane " + name + ": matrix for arrow '" + a.id +
                                "' has the wrong shape");
        return it->second;
      };
      ps.base.arrows.push_back(pick(rp.base));
      ps.dir1.push_back(pick(rp.dir1));
      ps.dir2.push_back(pick(rp.dir2));
    }
    doc.planes.emplace(name, std::move(ps));
  }
  return doc;
}

std::string serialize_spec(const SpecDocument& doc) {
  std::ostringstream os;
  const Quiver& q = doc.mq.quiver;
  os << "quiver { vertices: ";
  for (int v = 0; v < q.n_vertices(); ++v) {
    if (v) os << ", ";
    os << q.vertices[v];
  }
  os << " ; arrows: ";
  for (int a = 0; a < q.n_arrows(); ++a) {
    if (a) os << ", ";
    os << q.arrows[a].id << ": " << q.vertices[q.arrows[a].src] << " -> "
       << q.vertices[q.arrows[a].dst];
  }
  os << " }\n";
  os << "marking { ";
  for (int v = 0; v < q.n_vertices(); ++v) {
    if (v) os << " ; ";
    os << q.vertices[v] << ": " << vectroid_to_dsl(doc.mq.vectroid_at(v));
  }
  os << " }\n";
  os << "field { p: " << doc.mq.field.p() << " }\n";
  for (const auto& [name, ps] : doc.planes) {
    os << "plane " << name << " {\n  dims { ";
    for (int v = 0; v < q.n_vertices(); ++v) {
      if (v) os << " ; ";
      os << q.vertices[v] << ": ";
      const Vectroid& V = doc.mq.vectroid_at(v);
      for (int a = 0; a < V.n_objects(); ++a) {
        if (a) os << ", ";
        os << V.objects[a].label << ":" << ps.base.dims.mult[v][a];
      }
    }
    os << " }\n";
    auto emit = [&](const char* kind, const std::vector<Mat>& ms, const char* which) {
      for (int ai = 0; ai < q.n_arrows(); ++ai) {
        const Mat& m = ms[ai];
        if (m.is_zero()) continue;
        os << "  " << kind;
        if (*which) os << " " << which;
        os << " " << q.arrows[ai].id << " [ ";
        for (int i = 0; i < m.rows; ++i) {
          if (i) os << " / ";
          for (int j = 0; j < m.cols; ++j) {
            if (j) os << " ";
            os << m.at(i, j);
          }
        }
        os << " ]\n";
      }
    };
    emit("base", ps.base.arrows, "");
    emit("dir", ps.dir1, "lambda");
    emit("dir", ps.dir2, "mu");
    os << "}\n";
  }
  return os.str();
}

}  // namespace mqr

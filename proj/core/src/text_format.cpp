#include "nij/text_format.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "nij/error.hpp"
#include "nij/format.hpp"

namespace nij {

std::string to_string(FamilyRole role) {
  switch (role) {
    case FamilyRole::Stated: return "stated";
    case FamilyRole::Corrected: return "corrected";
    case FamilyRole::Variant: return "variant";
  }
  return "stated";
}

namespace {

enum class Tok { Number, Ident, Label, Tensor, Punct, End };

struct Token {
  Tok kind;
  std::string text;
  int col;  // 1-based
};

struct Location {
  const std::string* file;
  int line;
};

[[noreturn]] void syntax_error(const Location& loc, int col, const std::string& msg) {
  std::string where = (loc.file && !loc.file->empty() ? *loc.file : std::string("<input>")) + ":" +
                      std::to_string(loc.line) + ":" + std::to_string(col);
  throw Error(ErrorKind::SyntaxError, where + ": " + msg);
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> tokenize(std::string_view s, const std::map<std::string, int>& labels, const Location& loc,
                            int col_offset) {
  std::vector<Token> out;
  std::size_t k = 0;
  auto col = [&](std::size_t pos) { return static_cast<int>(pos) + 1 + col_offset; };
  while (k < s.size()) {
    char c = s[k];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++k;
      continue;
    }
    if (s.substr(k, 3) == "(x)") {
      out.push_back({Tok::Tensor, "(x)", col(k)});
      k += 3;
      continue;
    }
    if (s.substr(k, 3) == "\xE2\x8A\x97") {  // U+2297
      out.push_back({Tok::Tensor, "(x)", col(k)});
      k += 3;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t b = k;
      while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
      out.push_back({Tok::Number, std::string(s.substr(b, k - b)), col(b)});
      continue;
    }
    if (ident_start(c)) {
      std::size_t b = k;
      while (k < s.size() && ident_char(s[k])) ++k;
      std::string name(s.substr(b, k - b));
      if (k < s.size() && s[k] == '*' && labels.count(name + "*")) {
        std::size_t after = k + 1;
        while (after < s.size() && std::isspace(static_cast<unsigned char>(s[after]))) ++after;
        bool operand_follows = after < s.size() && (ident_char(s[after]) || s[after] == '(') &&
                               s.substr(after, 3) != "(x)";
        if (!operand_follows) {
          out.push_back({Tok::Label, name + "*", col(b)});
          ++k;
          continue;
        }
      }
      out.push_back({labels.count(name) ? Tok::Label : Tok::Ident, name, col(b)});
      continue;
    }
    if (std::string_view("+-*/^()[],=").find(c) != std::string_view::npos) {
      out.push_back({Tok::Punct, std::string(1, c), col(k)});
      ++k;
      continue;
    }
    syntax_error(loc, col(k), std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::End, "", col(s.size())});
  return out;
}

// Sum of coefficient * basis tuples; rank 0 is a plain scalar.
struct Value {
  int rank = 0;
  std::map<std::vector<int>, Scalar> terms;

  static Value scalar(Scalar s) {
    Value v;
    if (!s.is_zero()) v.terms.emplace(std::vector<int>{}, std::move(s));
    return v;
  }
  bool empty() const { return terms.empty(); }
  void add(const std::vector<int>& key, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms.try_emplace(key, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms.erase(it);
    }
  }
  Scalar as_scalar() const {
    auto it = terms.find({});
    return it == terms.end() ? Scalar() : it->second;
  }
};

class ExprParser {
 public:
  ExprParser(std::vector<Token> toks, const std::map<std::string, int>& labels,
             const std::map<std::string, Value>& lets, const Location& loc)
      : toks_(std::move(toks)), labels_(labels), lets_(lets), loc_(loc) {}

  Value parse_all() {
    Value v = sum();
    expect_end();
    return v;
  }

  std::vector<Value> parse_list() {
    std::vector<Value> out{sum()};
    while (peek_punct(",")) {
      ++pos_;
      out.push_back(sum());
    }
    expect_end();
    return out;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  bool peek_punct(const char* p) const { return peek().kind == Tok::Punct && peek().text == p; }
  [[noreturn]] void fail(const std::string& msg) const { syntax_error(loc_, peek().col, msg); }
  void expect_end() const {
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
  }
  void expect(const char* p) {
    if (!peek_punct(p)) fail(std::string("expected '") + p + "'");
    ++pos_;
  }

  Value combine(const Value& a, const Value& b, int sign) const {
    if (!a.empty() && !b.empty() && a.rank != b.rank) fail("cannot add terms of different tensor rank");
    Value out = a;
    if (a.empty()) out.rank = b.rank;
    for (const auto& [k, c] : b.terms) out.add(k, sign > 0 ? c : -c);
    return out;
  }

  Value multiply(const Value& a, const Value& b) const {
    if (a.rank > 0 && b.rank > 0) fail("product of two basis elements; use (x) for tensors");
    const Value& s = a.rank == 0 ? a : b;
    const Value& v = a.rank == 0 ? b : a;
    Scalar c = s.as_scalar();
    Value out;
    out.rank = v.rank;
    for (const auto& [k, x] : v.terms) out.add(k, x * c);
    return out;
  }

  Value tensor(const Value& a, const Value& b) const {
    if (a.rank == 0 || b.rank == 0) fail("tensor factors must be vectors");
    Value out;
    out.rank = a.rank + b.rank;
    for (const auto& [ka, x] : a.terms) {
      for (const auto& [kb, y] : b.terms) {
        std::vector<int> key = ka;
        key.insert(key.end(), kb.begin(), kb.end());
        out.add(key, x * y);
      }
    }
    return out;
  }

  Value sum() {
    Value acc = tensor_term();
    while (peek_punct("+") || peek_punct("-")) {
      int sign = peek().text == "+" ? 1 : -1;
      ++pos_;
      acc = combine(acc, tensor_term(), sign);
    }
    return acc;
  }

  Value tensor_term() {
    Value acc = product();
    while (peek().kind == Tok::Tensor) {
      ++pos_;
      acc = tensor(acc, product());
    }
    return acc;
  }

  bool atom_start() const {
    const Token& t = peek();
    return t.kind == Tok::Number || t.kind == Tok::Ident || t.kind == Tok::Label || (t.kind == Tok::Punct && t.text == "(");
  }

  Value product() {
    Value acc = unary();
    for (;;) {
      if (peek_punct("*")) {
        ++pos_;
        acc = multiply(acc, unary());
      } else if (peek_punct("/")) {
        int col = peek().col;
        ++pos_;
        Value d = unary();
        if (d.rank != 0) syntax_error(loc_, col, "division by a basis element");
        Scalar ds = d.as_scalar();
        if (ds.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by zero in expression");
        acc = multiply(acc, Value::scalar(ds.inverse()));
      } else if (atom_start()) {
        acc = multiply(acc, unary());
      } else {
        return acc;
      }
    }
  }

  Value unary() {
    if (peek_punct("-")) {
      ++pos_;
      return multiply(Value::scalar(Scalar(-1)), unary());
    }
    if (peek_punct("+")) {
      ++pos_;
      return unary();
    }
    return power();
  }

  Value power() {
    Value base = atom();
    if (peek_punct("^")) {
      ++pos_;
      bool negative = false;
      if (peek_punct("-")) {
        negative = true;
        ++pos_;
      }
      if (peek().kind != Tok::Number) fail("exponent must be an integer");
      int e = std::stoi(peek().text);
      ++pos_;
      if (base.rank != 0) fail("cannot raise a basis element to a power");
      Scalar s = base.as_scalar();
      if (negative && s.is_zero()) throw Error(ErrorKind::DivisionByZero, "zero to a negative power");
      return Value::scalar(s.pow(negative ? -e : e));
    }
    return base;
  }

  Value atom() {
    const Token t = peek();
    switch (t.kind) {
      case Tok::Number:
        ++pos_;
        return Value::scalar(Scalar(GaussianRational(mpq_class(t.text))));
      case Tok::Label: {
        ++pos_;
        Value v;
        v.rank = 1;
        v.add({labels_.at(t.text)}, Scalar(1));
        return v;
      }
      case Tok::Ident: {
        ++pos_;
        if (t.text == "sqrt" && peek_punct("(")) {
          ++pos_;
          Value arg = sum();
          expect(")");
          if (arg.rank != 0) fail("sqrt of a basis element");
          Scalar s = arg.as_scalar();
          if (!(s.denominator() == Polynomial(1)) || !s.relations().empty()) {
            syntax_error(loc_, t.col, "sqrt argument must be a polynomial in the parameters");
          }
          return Value::scalar(Scalar::sqrt(s.numerator()));
        }
        if (t.text == "i") return Value::scalar(Scalar::i());
        if (auto it = lets_.find(t.text); it != lets_.end()) return it->second;
        return Value::scalar(Scalar::parameter(t.text));
      }
      case Tok::Punct:
        if (t.text == "(") {
          ++pos_;
          Value v = sum();
          expect(")");
          return v;
        }
        break;
      default:
        break;
    }
    fail(t.kind == Tok::End ? "unexpected end of expression" : "unexpected '" + t.text + "'");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const std::map<std::string, int>& labels_;
  const std::map<std::string, Value>& lets_;
  Location loc_;
};

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> words(std::string_view s) {
  std::istringstream in{std::string(s)};
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

enum class BlockKind { None, Algebra, Lie, Family, Tensor, Remark };

class DocumentParser {
 public:
  DocumentParser(const BasisResolver& resolver, const std::string& filename)
      : resolver_(resolver), filename_(filename) {}

  Document run(std::string_view text) {
    std::size_t start = 0;
    int line_no = 0;
    while (start <= text.size()) {
      std::size_t nl = text.find('\n', start);
      std::string_view raw = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
      ++line_no;
      loc_ = {&filename_, line_no};
      std::size_t hash = raw.find('#');
      std::string_view body = hash == std::string_view::npos ? raw : raw.substr(0, hash);
      indent_ = 0;
      while (indent_ < static_cast<int>(body.size()) && std::isspace(static_cast<unsigned char>(body[indent_]))) ++indent_;
      std::string line = trim(body);
      if (!line.empty()) statement(line);
      if (nl == std::string_view::npos) break;
      start = nl + 1;
    }
    if (kind_ != BlockKind::None) syntax_error(loc_, 1, "missing 'end' for block " + block_id_);
    return std::move(doc_);
  }

 private:
  // Column of offset `k` within the trimmed line.
  int col_at(std::size_t k) const { return indent_ + static_cast<int>(k) + 1; }

  Value expr(std::string_view text, std::size_t offset) {
    ExprParser p(tokenize(text, labels_, loc_, indent_ + static_cast<int>(offset)), labels_, lets_, loc_);
    return p.parse_all();
  }
  std::vector<Value> expr_list(std::string_view text, std::size_t offset) {
    ExprParser p(tokenize(text, labels_, loc_, indent_ + static_cast<int>(offset)), labels_, lets_, loc_);
    return p.parse_list();
  }
  Scalar scalar_expr(std::string_view text, std::size_t offset) {
    Value v = expr(text, offset);
    if (v.rank != 0) syntax_error(loc_, col_at(offset), "expected a scalar expression");
    return v.as_scalar();
  }
  std::vector<Scalar> scalar_list(std::string_view text, std::size_t offset) {
    std::vector<Scalar> out;
    for (const auto& v : expr_list(text, offset)) {
      if (v.rank != 0) syntax_error(loc_, col_at(offset), "expected scalar expressions");
      out.push_back(v.as_scalar());
    }
    return out;
  }
  Vector vector_value(const Value& v, std::size_t offset) {
    if (!v.empty() && v.rank != 1) syntax_error(loc_, col_at(offset), "expected a vector in the basis");
    Vector out(static_cast<int>(basis_.size()));
    for (const auto& [k, c] : v.terms) out.set(k[0], c);
    return out;
  }

  void statement(const std::string& line) {
    std::size_t sp = line.find_first_of(" \t");
    std::string head = line.substr(0, sp);
    std::string rest = sp == std::string::npos ? "" : trim(std::string_view(line).substr(sp));
    std::size_t rest_off = sp == std::string::npos ? line.size() : line.find(rest, sp);

    if (kind_ == BlockKind::None) {
      open_block(head, rest);
      return;
    }
    if (head == "end") {
      close_block();
      return;
    }
    if (head == "note" || head == "text") {
      notes_.push_back(rest);
      return;
    }
    if (head == "source") {
      source_ = rest;
      return;
    }
    if (head == "from") {
      auto w = words(rest);
      from_.insert(from_.end(), w.begin(), w.end());
      return;
    }
    switch (kind_) {
      case BlockKind::Algebra:
      case BlockKind::Lie:
        algebra_statement(line, head, rest, rest_off);
        return;
      case BlockKind::Family:
      case BlockKind::Tensor:
        operator_statement(line, head, rest, rest_off);
        return;
      case BlockKind::Remark:
        if (head == "check") {
          auto w = words(rest);
          if (w.empty()) syntax_error(loc_, col_at(rest_off), "check needs a name");
          check_ = w.front();
          check_args_.assign(w.begin() + 1, w.end());
          return;
        }
        syntax_error(loc_, col_at(0), "unknown remark statement '" + head + "'");
      case BlockKind::None:
        break;
    }
  }

  void open_block(const std::string& head, const std::string& rest) {
    auto w = words(rest);
    reset();
    if (head == "algebra" || head == "lie") {
      if (w.size() != 1) syntax_error(loc_, col_at(0), head + " needs exactly one name");
      kind_ = head == "lie" ? BlockKind::Lie : BlockKind::Algebra;
      block_id_ = w[0];
      return;
    }
    if (head == "family" || head == "tensor") {
      if (w.size() != 3 || w[1] != "on") syntax_error(loc_, col_at(0), head + " header is '" + head + " ID on TARGET'");
      kind_ = head == "family" ? BlockKind::Family : BlockKind::Tensor;
      block_id_ = w[0];
      target_ = w[2];
      auto basis = resolve(target_);
      if (!basis) throw Error(ErrorKind::UnknownId, "unknown algebra '" + target_ + "' for " + block_id_);
      set_basis(*basis);
      return;
    }
    if (head == "remark") {
      if (w.size() != 1) syntax_error(loc_, col_at(0), "remark needs exactly one id");
      kind_ = BlockKind::Remark;
      block_id_ = w[0];
      return;
    }
    syntax_error(loc_, col_at(0), "expected a block header (algebra, lie, family, tensor, remark), got '" + head + "'");
  }

  std::optional<std::vector<std::string>> resolve(const std::string& target) {
    std::string name = target;
    bool dbl = false;
    if (target.rfind("double(", 0) == 0 && target.back() == ')') {
      name = target.substr(7, target.size() - 8);
      dbl = true;
    }
    std::optional<std::vector<std::string>> base;
    for (const auto& a : doc_.algebras) {
      if (a.table.name() == name) base = a.table.basis_names();
    }
    if (!base && resolver_) {
      if (dbl) {
        if (auto direct = resolver_(target)) return direct;
      }
      base = resolver_(name);
    }
    if (!base) return std::nullopt;
    if (dbl) {
      std::vector<std::string> out = *base;
      for (const auto& b : *base) out.push_back(b + "*");
      return out;
    }
    return base;
  }

  void set_basis(const std::vector<std::string>& names) {
    basis_ = names;
    labels_.clear();
    for (std::size_t k = 0; k < names.size(); ++k) labels_[names[k]] = static_cast<int>(k);
  }

  void reset() {
    kind_ = BlockKind::None;
    block_id_.clear();
    target_.clear();
    dim_.reset();
    basis_.clear();
    labels_.clear();
    lets_.clear();
    params_.clear();
    constraints_.clear();
    sides_.clear();
    from_.clear();
    notes_.clear();
    source_.clear();
    role_ = FamilyRole::Stated;
    corrects_.clear();
    variant_.clear();
    check_.clear();
    check_args_.clear();
    products_.clear();
    rows_.clear();
    tensor_.reset();
  }

  void ensure_basis() {
    if (!basis_.empty()) return;
    if (!dim_) syntax_error(loc_, col_at(0), "dim or basis must come before products");
    std::vector<std::string> names;
    for (int k = 1; k <= *dim_; ++k) names.push_back("e" + std::to_string(k));
    set_basis(names);
  }

  int label_index(const std::string& label, std::size_t offset) {
    auto it = labels_.find(label);
    if (it != labels_.end()) return it->second;
    // eN beyond the declared dimension is an index error, anything else a typo.
    if (label.size() > 1 && label[0] == 'e' &&
        label.find_first_not_of("0123456789", 1) == std::string::npos) {
      throw Error(ErrorKind::IndexOutOfRange, "basis vector " + label + " is outside dimension " +
                                                   std::to_string(basis_.size()) + " of " + block_id_);
    }
    syntax_error(loc_, col_at(offset), "unknown basis label '" + label + "'");
  }

  void algebra_statement(const std::string& line, const std::string& head, const std::string& rest,
                         std::size_t rest_off) {
    if (head == "dim") {
      try {
        dim_ = std::stoi(rest);
      } catch (const std::exception&) {
        syntax_error(loc_, col_at(rest_off), "dim must be a positive integer");
      }
      if (*dim_ <= 0) syntax_error(loc_, col_at(rest_off), "dim must be a positive integer");
      return;
    }
    if (head == "basis") {
      auto w = words(rest);
      if (dim_ && static_cast<int>(w.size()) != *dim_) {
        syntax_error(loc_, col_at(rest_off), "basis has " + std::to_string(w.size()) + " labels for dim " +
                                                 std::to_string(*dim_));
      }
      set_basis(w);
      return;
    }
    if (head == "params") {
      for (const auto& p : words(rest)) params_.push_back(p);
      return;
    }
    if (head == "require") {
      require(rest, rest_off);
      return;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) syntax_error(loc_, col_at(0), "expected a product 'x * y = ...'");
    ensure_basis();
    std::string lhs = trim(std::string_view(line).substr(0, eq));
    std::string a;
    std::string b;
    if (kind_ == BlockKind::Lie) {
      if (lhs.size() < 2 || lhs.front() != '[' || lhs.back() != ']' || lhs.find(',') == std::string::npos) {
        syntax_error(loc_, col_at(0), "expected a bracket '[x, y] = ...'");
      }
      std::string inner = lhs.substr(1, lhs.size() - 2);
      std::size_t comma = inner.find(',');
      a = trim(std::string_view(inner).substr(0, comma));
      b = trim(std::string_view(inner).substr(comma + 1));
    } else {
      std::size_t star = lhs.find('*');
      if (star == std::string::npos) syntax_error(loc_, col_at(0), "expected a product 'x * y = ...'");
      a = trim(std::string_view(lhs).substr(0, star));
      b = trim(std::string_view(lhs).substr(star + 1));
    }
    int i = label_index(a, 0);
    int j = label_index(b, 0);
    Vector v = vector_value(expr(std::string_view(line).substr(eq + 1), eq + 1), eq + 1);
    auto put = [&](int x, int y, Vector val) {
      if (!products_.emplace(std::make_pair(x, y), std::move(val)).second) {
        throw Error(ErrorKind::DuplicateProduct, "product of " + basis_[x] + " and " + basis_[y] + " given twice in " +
                                                     block_id_);
      }
    };
    if (kind_ == BlockKind::Lie) {
      if (i == j) syntax_error(loc_, col_at(0), "bracket of a basis vector with itself is zero");
      put(i, j, v);
      put(j, i, -v);
    } else {
      put(i, j, std::move(v));
    }
  }

  void require(const std::string& rest, std::size_t rest_off) {
    std::size_t sp = rest.find_first_of(" \t");
    std::string which = rest.substr(0, sp);
    if (sp == std::string::npos) syntax_error(loc_, col_at(rest_off), "require needs 'nonzero' or 'zero' and expressions");
    std::size_t off = rest.find_first_not_of(" \t", sp);
    std::string_view exprs = std::string_view(rest).substr(off);
    if (which == "nonzero") {
      for (auto& s : scalar_list(exprs, rest_off + off)) {
        if (s.is_zero()) syntax_error(loc_, col_at(rest_off + off), "constraint is identically zero");
        constraints_.push_back(std::move(s));
      }
    } else if (which == "zero") {
      for (auto& s : scalar_list(exprs, rest_off + off)) sides_.push_back(std::move(s));
    } else {
      syntax_error(loc_, col_at(rest_off), "require needs 'nonzero' or 'zero'");
    }
  }

  void operator_statement(const std::string& line, const std::string& head, const std::string& rest,
                          std::size_t rest_off) {
    if (head == "params") {
      for (const auto& p : words(rest)) params_.push_back(p);
      return;
    }
    if (head == "require") {
      require(rest, rest_off);
      return;
    }
    if (head == "let") {
      std::size_t eq = rest.find('=');
      if (eq == std::string::npos) syntax_error(loc_, col_at(rest_off), "let needs 'name = expression'");
      std::string name = trim(std::string_view(rest).substr(0, eq));
      if (name.empty() || !ident_start(name[0])) syntax_error(loc_, col_at(rest_off), "bad let name");
      lets_[name] = expr(std::string_view(rest).substr(eq + 1), rest_off + eq + 1);
      return;
    }
    if (head == "role") {
      if (rest == "stated") role_ = FamilyRole::Stated;
      else if (rest == "corrected") role_ = FamilyRole::Corrected;
      else if (rest == "variant") role_ = FamilyRole::Variant;
      else syntax_error(loc_, col_at(rest_off), "role is stated, corrected or variant");
      return;
    }
    if (head == "corrects") {
      corrects_ = rest;
      return;
    }
    if (head == "variant") {
      variant_ = rest;
      return;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) syntax_error(loc_, col_at(0), "unknown statement '" + head + "'");
    std::string lhs = trim(std::string_view(line).substr(0, eq));
    Value v = expr(std::string_view(line).substr(eq + 1), eq + 1);
    if (kind_ == BlockKind::Tensor) {
      if (lhs != "r") syntax_error(loc_, col_at(0), "tensor blocks define 'r = ...'");
      if (tensor_) syntax_error(loc_, col_at(0), "r given twice");
      if (!v.empty() && v.rank != 2) syntax_error(loc_, col_at(eq + 1), "expected a 2-tensor");
      Tensor2 t(static_cast<int>(basis_.size()));
      for (const auto& [k, c] : v.terms) t.add({k[0], k[1]}, c);
      tensor_ = std::move(t);
      return;
    }
    auto w = words(lhs);
    if (w.size() != 2 || (w[0] != "N" && w[0] != "R")) syntax_error(loc_, col_at(0), "expected 'N x = ...'");
    int i = label_index(w[1], 0);
    if (!rows_.emplace(i, vector_value(v, eq + 1)).second) {
      throw Error(ErrorKind::DuplicateProduct, "image of " + w[1] + " given twice in " + block_id_);
    }
  }

  void close_block() {
    switch (kind_) {
      case BlockKind::Algebra:
      case BlockKind::Lie: {
        ensure_basis();
        AlgebraDoc a;
        a.table = StructureConstants(block_id_, basis_);
        for (const auto& p : params_) a.table.declare_param(p);
        for (const auto& c : constraints_) a.table.add_constraint(c);
        for (auto& [ij, v] : products_) a.table.set_product(ij.first, ij.second, std::move(v));
        a.lie = kind_ == BlockKind::Lie;
        a.from = from_;
        a.notes = notes_;
        a.source = source_;
        doc_.algebras.push_back(std::move(a));
        break;
      }
      case BlockKind::Family: {
        ParametricFamily f;
        f.id = block_id_;
        f.algebra = target_;
        f.params = params_;
        f.matrix = LinearOperator(static_cast<int>(basis_.size()));
        for (auto& [i, v] : rows_) f.matrix.set_row(i, std::move(v));
        f.constraints = constraints_;
        f.side_conditions = sides_;
        f.derived_from = from_;
        f.notes = notes_;
        f.role = role_;
        f.corrects = corrects_;
        f.source = source_;
        doc_.families.push_back(std::move(f));
        break;
      }
      case BlockKind::Tensor: {
        TensorDoc t;
        t.id = block_id_;
        t.target = target_;
        t.params = params_;
        t.r = tensor_ ? *tensor_ : Tensor2(static_cast<int>(basis_.size()));
        t.constraints = constraints_;
        t.side_conditions = sides_;
        t.derived_from = from_;
        t.notes = notes_;
        t.role = role_;
        t.variant = variant_;
        t.source = source_;
        doc_.tensors.push_back(std::move(t));
        break;
      }
      case BlockKind::Remark: {
        if (check_.empty()) syntax_error(loc_, col_at(0), "remark " + block_id_ + " has no check");
        doc_.remarks.push_back({block_id_, check_, check_args_, notes_, source_});
        break;
      }
      case BlockKind::None:
        break;
    }
    reset();
  }

  const BasisResolver& resolver_;
  std::string filename_;
  Location loc_{nullptr, 0};
  int indent_ = 0;
  Document doc_;

  BlockKind kind_ = BlockKind::None;
  std::string block_id_;
  std::string target_;
  std::optional<int> dim_;
  std::vector<std::string> basis_;
  std::map<std::string, int> labels_;
  std::map<std::string, Value> lets_;
  std::vector<std::string> params_;
  std::vector<Scalar> constraints_;
  std::vector<Scalar> sides_;
  std::vector<std::string> from_;
  std::vector<std::string> notes_;
  std::string source_;
  FamilyRole role_ = FamilyRole::Stated;
  std::string corrects_;
  std::string variant_;
  std::string check_;
  std::vector<std::string> check_args_;
  std::map<std::pair<int, int>, Vector> products_;
  std::map<int, Vector> rows_;
  std::optional<Tensor2> tensor_;
};

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string out;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (k) out += sep;
    out += xs[k];
  }
  return out;
}

std::string join_scalars(const std::vector<Scalar>& xs) {
  std::vector<std::string> parts;
  for (const auto& x : xs) parts.push_back(x.to_string());
  return join(parts, ", ");
}

void print_common_tail(std::ostringstream& out, const std::vector<std::string>& notes, const std::string& source) {
  for (const auto& n : notes) out << "note " << n << "\n";
  if (!source.empty()) out << "source " << source << "\n";
}

}  // namespace

Document parse_document(std::string_view text, const BasisResolver& resolver, const std::string& filename) {
  return DocumentParser(resolver, filename).run(text);
}

Document parse_file(const std::string& path, const BasisResolver& resolver) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str(), resolver, path);
}

Scalar parse_scalar(std::string_view text) {
  static const std::map<std::string, int> no_labels;
  static const std::map<std::string, Value> no_lets;
  std::string file = "<scalar>";
  Location loc{&file, 1};
  ExprParser p(tokenize(text, no_labels, loc, 0), no_labels, no_lets, loc);
  return p.parse_all().as_scalar();
}

std::string print_algebra(const AlgebraDoc& doc) {
  const auto& t = doc.table;
  std::ostringstream out;
  out << (doc.lie ? "lie " : "algebra ") << t.name() << "\n";
  out << "dim " << t.dim() << "\n";
  out << "basis " << join(t.basis_names(), " ") << "\n";
  if (!t.params().empty()) out << "params " << join(t.params(), " ") << "\n";
  if (!t.constraints().empty()) out << "require nonzero " << join_scalars(t.constraints()) << "\n";
  if (!doc.from.empty()) out << "from " << join(doc.from, " ") << "\n";
  for (const auto& [ij, v] : t.table()) {
    const auto& names = t.basis_names();
    if (doc.lie) {
      if (ij.first >= ij.second) continue;
      out << "[" << names[ij.first] << ", " << names[ij.second] << "] = " << v.to_string(names) << "\n";
    } else {
      out << names[ij.first] << " * " << names[ij.second] << " = " << v.to_string(names) << "\n";
    }
  }
  print_common_tail(out, doc.notes, doc.source);
  out << "end\n";
  return out.str();
}

std::string print_family(const ParametricFamily& f, const std::vector<std::string>& basis) {
  std::ostringstream out;
  out << "family " << f.id << " on " << f.algebra << "\n";
  if (!f.params.empty()) out << "params " << join(f.params, " ") << "\n";
  for (int i = 0; i < f.matrix.dim(); ++i) {
    if (f.matrix.row(i).is_zero()) continue;
    out << "N " << basis[i] << " = " << f.matrix.row(i).to_string(basis) << "\n";
  }
  if (!f.constraints.empty()) out << "require nonzero " << join_scalars(f.constraints) << "\n";
  for (const auto& s : f.side_conditions) out << "require zero " << s.to_string() << "\n";
  if (!f.derived_from.empty()) out << "from " << join(f.derived_from, " ") << "\n";
  if (f.role != FamilyRole::Stated) out << "role " << to_string(f.role) << "\n";
  if (!f.corrects.empty()) out << "corrects " << f.corrects << "\n";
  print_common_tail(out, f.notes, f.source);
  out << "end\n";
  return out.str();
}

std::string print_tensor(const TensorDoc& t, const std::vector<std::string>& basis) {
  std::ostringstream out;
  out << "tensor " << t.id << " on " << t.target << "\n";
  if (!t.params.empty()) out << "params " << join(t.params, " ") << "\n";
  out << "r = " << t.r.to_string(basis) << "\n";
  if (!t.constraints.empty()) out << "require nonzero " << join_scalars(t.constraints) << "\n";
  for (const auto& s : t.side_conditions) out << "require zero " << s.to_string() << "\n";
  if (!t.derived_from.empty()) out << "from " << join(t.derived_from, " ") << "\n";
  if (t.role != FamilyRole::Stated) out << "role " << to_string(t.role) << "\n";
  if (!t.variant.empty()) out << "variant " << t.variant << "\n";
  print_common_tail(out, t.notes, t.source);
  out << "end\n";
  return out.str();
}

std::string print_remark(const RemarkDoc& r) {
  std::ostringstream out;
  out << "remark " << r.id << "\n";
  out << "check " << r.check;
  for (const auto& a : r.args) out << " " << a;
  out << "\n";
  for (const auto& t : r.text) out << "text " << t << "\n";
  if (!r.source.empty()) out << "source " << r.source << "\n";
  out << "end\n";
  return out.str();
}

}  // namespace nij

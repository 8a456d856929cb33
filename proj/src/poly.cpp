#include "nilsolve/poly.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "nilsolve/error.hpp"

namespace nilsolve {

struct PolyExpr::Node {
  Kind kind;
  std::uint32_t value = 0;
  PolyExpr lhs{nullptr};
  PolyExpr rhs{nullptr};
};

PolyExpr PolyExpr::var(std::uint32_t index) {
  if (index == 0) throw Error(ErrorCode::VarIndexZero, "variables are numbered from 1");
  return PolyExpr(std::make_shared<const Node>(Node{Kind::Var, index}));
}

PolyExpr PolyExpr::constant(Elem element) {
  return PolyExpr(std::make_shared<const Node>(Node{Kind::Const, element}));
}

PolyExpr::Kind PolyExpr::kind() const noexcept { return node_->kind; }
std::uint32_t PolyExpr::value() const noexcept { return node_->value; }
const PolyExpr& PolyExpr::lhs() const noexcept { return node_->lhs; }
const PolyExpr& PolyExpr::rhs() const noexcept { return node_->rhs; }

PolyExpr operator-(const PolyExpr& operand) {
  return PolyExpr(std::make_shared<const PolyExpr::Node>(
      PolyExpr::Node{PolyExpr::Kind::Neg, 0, operand, PolyExpr(nullptr)}));
}

PolyExpr operator+(const PolyExpr& lhs, const PolyExpr& rhs) {
  return PolyExpr(std::make_shared<const PolyExpr::Node>(PolyExpr::Node{PolyExpr::Kind::Add, 0, lhs, rhs}));
}

PolyExpr operator*(const PolyExpr& lhs, const PolyExpr& rhs) {
  return PolyExpr(std::make_shared<const PolyExpr::Node>(PolyExpr::Node{PolyExpr::Kind::Mul, 0, lhs, rhs}));
}

bool operator==(const PolyExpr& lhs, const PolyExpr& rhs) {
  if (lhs.node_ == rhs.node_) return true;
  if (!lhs.node_ || !rhs.node_) return false;
  if (lhs.kind() != rhs.kind()) return false;
  switch (lhs.kind()) {
    case PolyExpr::Kind::Var:
    case PolyExpr::Kind::Const: return lhs.value() == rhs.value();
    case PolyExpr::Kind::Neg: return lhs.lhs() == rhs.lhs();
    case PolyExpr::Kind::Add:
    case PolyExpr::Kind::Mul: return lhs.lhs() == rhs.lhs() && lhs.rhs() == rhs.rhs();
  }
  return false;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::size_t ring_order) : text_(text), order_(ring_order) {}

  PolyExpr parse() {
    PolyExpr result = poly();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return result;
  }

 private:
  [[noreturn]] void fail(const std::string& message, ErrorCode code = ErrorCode::SyntaxError) const {
    throw SyntaxError(code, message, pos_);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  PolyExpr poly() {
    PolyExpr result = term();
    while (true) {
      if (accept('+')) {
        result = result + term();
      } else if (accept('-')) {
        result = result + (-term());
      } else {
        return result;
      }
    }
  }

  PolyExpr term() {
    const bool negated = accept('-');
    PolyExpr result = factor();
    while (accept('*')) result = result * factor();
    return negated ? -result : result;
  }

  PolyExpr factor() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const std::size_t start = pos_;
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      PolyExpr inner = poly();
      if (!accept(')')) {
        skip_space();
        fail(pos_ >= text_.size() ? "unexpected end of input, expected ')'" : "expected ')'");
      }
      return inner;
    }
    if (c == 'x' || c == 'e') {
      ++pos_;
      const std::size_t digits_start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ == digits_start) fail("expected digits after '" + std::string(1, c) + "'");
      std::uint64_t number = 0;
      auto [ptr, ec] = std::from_chars(text_.data() + digits_start, text_.data() + pos_, number);
      if (ec != std::errc{}) {
        pos_ = start;
        fail("index too large", c == 'x' ? ErrorCode::SyntaxError : ErrorCode::ConstOutOfRange);
      }
      if (c == 'x') {
        if (number == 0) {
          pos_ = start;
          fail("variable index must be positive", ErrorCode::VarIndexZero);
        }
        if (text_[digits_start] == '0') {
          pos_ = start;
          fail("variable index has a leading zero");
        }
        if (number > 0xFFFFFFFFULL) {
          pos_ = start;
          fail("variable index too large");
        }
        return PolyExpr::var(static_cast<std::uint32_t>(number));
      }
      if (number >= order_) {
        pos_ = start;
        fail("constant e" + std::to_string(number) + " outside ring of order " + std::to_string(order_),
             ErrorCode::ConstOutOfRange);
      }
      return PolyExpr::constant(static_cast<Elem>(number));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t order_;
  std::size_t pos_ = 0;
};

void print(const PolyExpr& f, std::string& out, bool top) {
  switch (f.kind()) {
    case PolyExpr::Kind::Var:
      out += 'x';
      out += std::to_string(f.value());
      return;
    case PolyExpr::Kind::Const:
      out += 'e';
      out += std::to_string(f.value());
      return;
    case PolyExpr::Kind::Neg:
      if (!top) out += '(';
      out += '-';
      print(f.lhs(), out, false);
      if (!top) out += ')';
      return;
    case PolyExpr::Kind::Add:
    case PolyExpr::Kind::Mul:
      if (!top) out += '(';
      print(f.lhs(), out, false);
      out += f.kind() == PolyExpr::Kind::Add ? " + " : "*";
      print(f.rhs(), out, false);
      if (!top) out += ')';
      return;
  }
}

}  // namespace

PolyExpr parse_poly(std::string_view text, std::size_t ring_order) {
  return Parser(text, ring_order).parse();
}

std::string to_string(const PolyExpr& f) {
  std::string out;
  print(f, out, true);
  return out;
}

// ---------------------------------------------------------------------------
// Measures and evaluation

std::size_t length(const PolyExpr& f) {
  switch (f.kind()) {
    case PolyExpr::Kind::Var:
    case PolyExpr::Kind::Const: return 0;
    case PolyExpr::Kind::Neg: return length(f.lhs()) + 1;
    case PolyExpr::Kind::Add:
    case PolyExpr::Kind::Mul: return length(f.lhs()) + length(f.rhs()) + 1;
  }
  return 0;
}

std::uint32_t num_variables(const PolyExpr& f) {
  switch (f.kind()) {
    case PolyExpr::Kind::Var: return f.value();
    case PolyExpr::Kind::Const: return 0;
    case PolyExpr::Kind::Neg: return num_variables(f.lhs());
    case PolyExpr::Kind::Add:
    case PolyExpr::Kind::Mul: return std::max(num_variables(f.lhs()), num_variables(f.rhs()));
  }
  return 0;
}

Elem evaluate(const PolyExpr& f, const FiniteRing& ring, std::span<const Elem> point) {
  switch (f.kind()) {
    case PolyExpr::Kind::Var:
      if (f.value() > point.size())
        throw Error(ErrorCode::UnboundVariable, "x" + std::to_string(f.value()) + " has no value");
      return point[f.value() - 1];
    case PolyExpr::Kind::Const: return f.value();
    case PolyExpr::Kind::Neg: return ring.neg(evaluate(f.lhs(), ring, point));
    case PolyExpr::Kind::Add: return ring.add(evaluate(f.lhs(), ring, point), evaluate(f.rhs(), ring, point));
    case PolyExpr::Kind::Mul: return ring.mul(evaluate(f.lhs(), ring, point), evaluate(f.rhs(), ring, point));
  }
  return ring.zero();
}

PolyExpr map_constants(const PolyExpr& f, const std::function<Elem(Elem)>& map) {
  switch (f.kind()) {
    case PolyExpr::Kind::Var: return f;
    case PolyExpr::Kind::Const: return PolyExpr::constant(map(f.value()));
    case PolyExpr::Kind::Neg: return -map_constants(f.lhs(), map);
    case PolyExpr::Kind::Add: return map_constants(f.lhs(), map) + map_constants(f.rhs(), map);
    case PolyExpr::Kind::Mul: return map_constants(f.lhs(), map) * map_constants(f.rhs(), map);
  }
  return f;
}

// ---------------------------------------------------------------------------
// Expansion into monomials

namespace {

class Expander {
 public:
  Expander(const FiniteRing& ring, std::optional<std::size_t> nilpotency_class, std::size_t budget)
      : ring_(ring), class_(nilpotency_class), budget_(budget) {}

  std::vector<Monomial> expand(const PolyExpr& f) {
    std::vector<Monomial> out;
    switch (f.kind()) {
      case PolyExpr::Kind::Var:
        keep(out, Monomial{1, {Factor{true, f.value()}}});
        break;
      case PolyExpr::Kind::Const:
        if (f.value() != ring_.zero()) keep(out, Monomial{1, {Factor{false, f.value()}}});
        break;
      case PolyExpr::Kind::Neg:
        out = expand(f.lhs());
        for (auto& mono : out) mono.sign = -mono.sign;
        break;
      case PolyExpr::Kind::Add: {
        out = expand(f.lhs());
        auto right = expand(f.rhs());
        check_budget(out.size() + right.size());
        out.insert(out.end(), std::make_move_iterator(right.begin()), std::make_move_iterator(right.end()));
        break;
      }
      case PolyExpr::Kind::Mul: {
        const auto left = expand(f.lhs());
        const auto right = expand(f.rhs());
        for (const auto& a : left)
          for (const auto& b : right) {
            auto product = multiply(a, b);
            if (product) keep(out, std::move(*product));
          }
        break;
      }
    }
    return out;
  }

 private:
  void check_budget(std::size_t count) const {
    if (count > budget_)
      throw Error(ErrorCode::BudgetExceeded, "expansion exceeds " + std::to_string(budget_) + " monomials");
  }

  void keep(std::vector<Monomial>& out, Monomial mono) {
    if (class_ && mono.factors.size() >= *class_) return;
    check_budget(out.size() + 1);
    out.push_back(std::move(mono));
  }

  // Concatenation with the constant run at the seam multiplied out; nullopt
  // when that constant is zero.
  std::optional<Monomial> multiply(const Monomial& a, const Monomial& b) const {
    Monomial product{a.sign * b.sign, a.factors};
    auto rest = b.factors.begin();
    if (!product.factors.back().is_var && !rest->is_var) {
      const Elem c = ring_.mul(product.factors.back().index, rest->index);
      if (c == ring_.zero()) return std::nullopt;
      product.factors.back().index = c;
      ++rest;
    }
    product.factors.insert(product.factors.end(), rest, b.factors.end());
    return product;
  }

  const FiniteRing& ring_;
  std::optional<std::size_t> class_;
  std::size_t budget_;
};

Elem evaluate_monomial(const Monomial& mono, const FiniteRing& ring, std::span<const Elem> point) {
  auto value_of = [&](const Factor& z) -> Elem {
    if (!z.is_var) return z.index;
    if (z.index == 0 || z.index > point.size())
      throw Error(ErrorCode::UnboundVariable, "x" + std::to_string(z.index) + " has no value");
    return point[z.index - 1];
  };
  Elem product = value_of(mono.factors.front());
  for (std::size_t i = 1; i < mono.factors.size(); ++i) product = ring.mul(product, value_of(mono.factors[i]));
  return mono.sign < 0 ? ring.neg(product) : product;
}

}  // namespace

StandardPoly expand_standard(const PolyExpr& f, const FiniteRing& ring,
                             std::optional<std::size_t> nilpotency_class, std::size_t budget) {
  return StandardPoly{Expander(ring, nilpotency_class, budget).expand(f)};
}

Elem evaluate(const StandardPoly& sp, const FiniteRing& ring, std::span<const Elem> point) {
  Elem sum = ring.zero();
  for (const auto& mono : sp.monomials) sum = ring.add(sum, evaluate_monomial(mono, ring, point));
  return sum;
}

std::size_t max_distinct_vars(const StandardPoly& sp) {
  std::size_t best = 0;
  std::vector<std::uint32_t> vars;
  for (const auto& mono : sp.monomials) {
    vars.clear();
    for (const auto& z : mono.factors)
      if (z.is_var) vars.push_back(z.index);
    std::sort(vars.begin(), vars.end());
    best = std::max<std::size_t>(best, std::unique(vars.begin(), vars.end()) - vars.begin());
  }
  return best;
}

PolyExpr to_expr(const StandardPoly& sp, const FiniteRing& ring) {
  if (sp.monomials.empty()) return PolyExpr::constant(ring.zero());
  auto leaf = [](const Factor& z) { return z.is_var ? PolyExpr::var(z.index) : PolyExpr::constant(z.index); };
  std::optional<PolyExpr> sum;
  for (const auto& mono : sp.monomials) {
    PolyExpr product = leaf(mono.factors.front());
    for (std::size_t i = 1; i < mono.factors.size(); ++i) product = product * leaf(mono.factors[i]);
    if (mono.sign < 0) product = -product;
    sum = sum ? *sum + product : product;
  }
  return *sum;
}

}  // namespace nilsolve

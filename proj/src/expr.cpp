#include "covkit/expr.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

#include "covkit/dual.hpp"
#include "json.hpp"

namespace covkit::expr {

ParseError::ParseError(std::string message, int line, int column)
    : std::runtime_error(message + " (line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ")"),
      line_(line),
      column_(column) {}

EvalError::EvalError(std::string message, std::string subexpression, int component)
    : std::runtime_error(component >= 0
                             ? message + " in component " + std::to_string(component + 1) +
                                   ", subexpression `" + subexpression + "`"
                             : message + " in subexpression `" + subexpression + "`"),
      message_(std::move(message)),
      subexpr_(std::move(subexpression)),
      component_(component) {}

namespace {

struct Token {
    enum class Kind { Number, Identifier, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };
    Kind kind = Kind::End;
    double number = 0.0;
    std::string text;
    int line = 1;
    int column = 1;
};

class Lexer {
  public:
    explicit Lexer(const std::string& src) : src_(src) { advance(); }

    const Token& peek() const { return current_; }

    Token take() {
        Token t = current_;
        advance();
        return t;
    }

  private:
    void advance() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) {
            bump(src_[pos_]);
            ++pos_;
        }
        current_ = Token{};
        current_.line = line_;
        current_.column = col_;
        if (pos_ >= src_.size()) {
            current_.kind = Token::Kind::End;
            return;
        }
        char c = src_[pos_];
        switch (c) {
            case '+': current_.kind = Token::Kind::Plus; consume(); return;
            case '-': current_.kind = Token::Kind::Minus; consume(); return;
            case '*': current_.kind = Token::Kind::Star; consume(); return;
            case '/': current_.kind = Token::Kind::Slash; consume(); return;
            case '^': current_.kind = Token::Kind::Caret; consume(); return;
            case '(': current_.kind = Token::Kind::LParen; consume(); return;
            case ')': current_.kind = Token::Kind::RParen; consume(); return;
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            lex_number();
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                bump(src_[pos_]);
                ++pos_;
            }
            current_.kind = Token::Kind::Identifier;
            current_.text = src_.substr(start, pos_ - start);
            return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
    }

    void lex_number() {
        std::size_t start = pos_;
        while (pos_ < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[pos_])) ||
                                      src_[pos_] == '.')) {
            bump(src_[pos_]);
            ++pos_;
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t mark = pos_;
            bump(src_[pos_]);
            ++pos_;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) {
                bump(src_[pos_]);
                ++pos_;
            }
            if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                    bump(src_[pos_]);
                    ++pos_;
                }
            } else {
                pos_ = mark;  // lone 'e' belongs to the next token
            }
        }
        std::string text = src_.substr(start, pos_ - start);
        try {
            current_.number = std::stod(text);
        } catch (const std::exception&) {
            throw ParseError("malformed number '" + text + "'", current_.line, current_.column);
        }
        current_.kind = Token::Kind::Number;
        current_.text = std::move(text);
    }

    void consume() {
        bump(src_[pos_]);
        ++pos_;
    }

    void bump(char c) {
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
    }

    const std::string& src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token current_;
};

class Parser {
  public:
    Parser(const std::string& src, int input_dim, int param_count)
        : lexer_(src), input_dim_(input_dim), param_count_(param_count) {}

    NodePtr parse_expression_to_end() {
        NodePtr e = parse_expr();
        const Token& t = lexer_.peek();
        if (t.kind != Token::Kind::End) {
            throw ParseError("unexpected trailing input", t.line, t.column);
        }
        return e;
    }

  private:
    NodePtr parse_expr() {
        NodePtr lhs = parse_term();
        for (;;) {
            const Token& t = lexer_.peek();
            if (t.kind == Token::Kind::Plus || t.kind == Token::Kind::Minus) {
                Token op = lexer_.take();
                NodePtr rhs = parse_term();
                lhs = make_binary(op.kind == Token::Kind::Plus ? BinaryOp::Add : BinaryOp::Sub,
                                  lhs, rhs, op);
            } else {
                return lhs;
            }
        }
    }

    NodePtr parse_term() {
        NodePtr lhs = parse_unary();
        for (;;) {
            const Token& t = lexer_.peek();
            if (t.kind == Token::Kind::Star || t.kind == Token::Kind::Slash) {
                Token op = lexer_.take();
                NodePtr rhs = parse_unary();
                lhs = make_binary(op.kind == Token::Kind::Star ? BinaryOp::Mul : BinaryOp::Div,
                                  lhs, rhs, op);
            } else {
                return lhs;
            }
        }
    }

    NodePtr parse_unary() {
        const Token& t = lexer_.peek();
        if (t.kind == Token::Kind::Minus) {
            Token op = lexer_.take();
            NodePtr operand = parse_unary();
            auto node = std::make_shared<Node>();
            node->kind = Node::Kind::Unary;
            node->uop = UnaryOp::Neg;
            node->lhs = operand;
            node->line = op.line;
            node->column = op.column;
            return node;
        }
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_primary();
        for (;;) {
            const Token& t = lexer_.peek();
            if (t.kind != Token::Kind::Caret) return base;
            Token op = lexer_.take();
            double exponent = parse_constant_exponent();
            auto node = std::make_shared<Node>();
            node->kind = Node::Kind::Power;
            node->value = exponent;
            node->lhs = base;
            node->line = op.line;
            node->column = op.column;
            base = node;
        }
    }

    double parse_constant_exponent() {
        const Token& t = lexer_.peek();
        bool negate = false;
        if (t.kind == Token::Kind::Minus) {
            lexer_.take();
            negate = true;
        }
        Token where = lexer_.peek();
        NodePtr e = parse_primary();
        std::optional<double> folded = fold_constant(e);
        if (!folded) {
            throw ParseError("exponent of '^' must be a constant", where.line, where.column);
        }
        return negate ? -*folded : *folded;
    }

    static std::optional<double> fold_constant(const NodePtr& n) {
        switch (n->kind) {
            case Node::Kind::Constant: return n->value;
            case Node::Kind::Unary:
                if (n->uop == UnaryOp::Neg) {
                    auto inner = fold_constant(n->lhs);
                    if (inner) return -*inner;
                }
                return std::nullopt;
            default: return std::nullopt;
        }
    }

    NodePtr parse_primary() {
        Token t = lexer_.take();
        switch (t.kind) {
            case Token::Kind::Number: {
                auto node = std::make_shared<Node>();
                node->kind = Node::Kind::Constant;
                node->value = t.number;
                node->line = t.line;
                node->column = t.column;
                return node;
            }
            case Token::Kind::LParen: {
                NodePtr e = parse_expr();
                expect_rparen();
                return e;
            }
            case Token::Kind::Identifier: return parse_identifier(t);
            default:
                throw ParseError("expected a number, identifier, or '('", t.line, t.column);
        }
    }

    NodePtr parse_identifier(const Token& t) {
        static const std::pair<const char*, UnaryOp> kFunctions[] = {
            {"sin", UnaryOp::Sin}, {"cos", UnaryOp::Cos},   {"exp", UnaryOp::Exp},
            {"ln", UnaryOp::Ln},   {"sqrt", UnaryOp::Sqrt}, {"abs", UnaryOp::Abs},
        };
        for (const auto& [name, op] : kFunctions) {
            if (t.text == name) {
                if (lexer_.peek().kind != Token::Kind::LParen) {
                    throw ParseError("function '" + t.text + "' requires parentheses", t.line,
                                     t.column);
                }
                lexer_.take();
                NodePtr arg = parse_expr();
                expect_rparen();
                auto node = std::make_shared<Node>();
                node->kind = Node::Kind::Unary;
                node->uop = op;
                node->lhs = arg;
                node->line = t.line;
                node->column = t.column;
                return node;
            }
        }
        if (auto idx = indexed_name(t.text, 'x')) {
            if (*idx < 1 || *idx > input_dim_) {
                throw ParseError("variable '" + t.text + "' out of range for input dimension " +
                                     std::to_string(input_dim_),
                                 t.line, t.column);
            }
            auto node = std::make_shared<Node>();
            node->kind = Node::Kind::Variable;
            node->index = *idx - 1;
            node->line = t.line;
            node->column = t.column;
            return node;
        }
        if (auto idx = indexed_name(t.text, 'p')) {
            if (*idx < 1 || *idx > param_count_) {
                throw ParseError("parameter '" + t.text + "' out of range for parameter count " +
                                     std::to_string(param_count_),
                                 t.line, t.column);
            }
            auto node = std::make_shared<Node>();
            node->kind = Node::Kind::Parameter;
            node->index = *idx - 1;
            node->line = t.line;
            node->column = t.column;
            return node;
        }
        throw ParseError("unknown identifier '" + t.text + "'", t.line, t.column);
    }

    static std::optional<int> indexed_name(const std::string& text, char prefix) {
        if (text.size() < 2 || text[0] != prefix) return std::nullopt;
        int value = 0;
        for (std::size_t i = 1; i < text.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(text[i]))) return std::nullopt;
            value = value * 10 + (text[i] - '0');
        }
        return value;
    }

    void expect_rparen() {
        const Token& t = lexer_.peek();
        if (t.kind != Token::Kind::RParen) throw ParseError("expected ')'", t.line, t.column);
        lexer_.take();
    }

    NodePtr make_binary(BinaryOp op, NodePtr lhs, NodePtr rhs, const Token& at) {
        auto node = std::make_shared<Node>();
        node->kind = Node::Kind::Binary;
        node->bop = op;
        node->lhs = std::move(lhs);
        node->rhs = std::move(rhs);
        node->line = at.line;
        node->column = at.column;
        return node;
    }

    Lexer lexer_;
    int input_dim_;
    int param_count_;
};

// ---------------------------------------------------------------------------
// evaluation

bool is_integer(double x) { return x == std::floor(x) && std::isfinite(x); }

template <class T>
struct ScalarOps;

template <>
struct ScalarOps<double> {
    static constexpr bool differentiating = false;
    static double value_of(double x) { return x; }
};

template <>
struct ScalarOps<Dual> {
    static constexpr bool differentiating = true;
    static double value_of(Dual x) { return x.val; }
};

template <class T>
T eval_node(const Node& node, const std::vector<T>& vars, const std::vector<double>& params) {
    using std::abs;
    using std::cos;
    using std::exp;
    using std::log;
    using std::pow;
    using std::sin;
    using std::sqrt;
    switch (node.kind) {
        case Node::Kind::Constant: return T(node.value);
        case Node::Kind::Variable: return vars[static_cast<std::size_t>(node.index)];
        case Node::Kind::Parameter: return T(params[static_cast<std::size_t>(node.index)]);
        case Node::Kind::Unary: {
            T a = eval_node(*node.lhs, vars, params);
            double v = ScalarOps<T>::value_of(a);
            switch (node.uop) {
                case UnaryOp::Neg: return -a;
                case UnaryOp::Sin: return sin(a);
                case UnaryOp::Cos: return cos(a);
                case UnaryOp::Exp: return exp(a);
                case UnaryOp::Ln:
                    if (v <= 0.0) {
                        throw EvalError("ln of a nonpositive value", to_string(node.lhs));
                    }
                    return log(a);
                case UnaryOp::Sqrt:
                    if (v < 0.0) {
                        throw EvalError("sqrt of a negative value", to_string(node.lhs));
                    }
                    if (ScalarOps<T>::differentiating && v == 0.0) {
                        throw EvalError("derivative of sqrt at 0 is undefined",
                                        to_string(node.lhs));
                    }
                    return sqrt(a);
                case UnaryOp::Abs:
                    if (ScalarOps<T>::differentiating && v == 0.0) {
                        throw EvalError("derivative of abs at 0 is undefined", to_string(node.lhs));
                    }
                    return abs(a);
            }
            break;
        }
        case Node::Kind::Binary: {
            T a = eval_node(*node.lhs, vars, params);
            T b = eval_node(*node.rhs, vars, params);
            switch (node.bop) {
                case BinaryOp::Add: return a + b;
                case BinaryOp::Sub: return a - b;
                case BinaryOp::Mul: return a * b;
                case BinaryOp::Div:
                    if (ScalarOps<T>::value_of(b) == 0.0) {
                        throw EvalError("division by zero", to_string(node.rhs));
                    }
                    return a / b;
            }
            break;
        }
        case Node::Kind::Power: {
            T a = eval_node(*node.lhs, vars, params);
            double base = ScalarOps<T>::value_of(a);
            double e = node.value;
            if (base < 0.0 && !is_integer(e)) {
                throw EvalError("negative base raised to a non-integer exponent",
                                to_string(node.lhs));
            }
            if (base == 0.0) {
                if (e < 0.0) throw EvalError("zero raised to a negative exponent",
                                             to_string(node.lhs));
                if (ScalarOps<T>::differentiating && e < 1.0 && e != 0.0) {
                    throw EvalError("derivative of x^e at 0 is undefined for e < 1",
                                    to_string(node.lhs));
                }
            }
            return pow(a, e);
        }
    }
    throw EvalError("malformed expression node", "?");
}

void check_dims(const ExprMapping& m, const Point& x, const Point& params) {
    if (x.dim() != m.input_dim) {
        throw std::invalid_argument("expr eval: point dimension " + std::to_string(x.dim()) +
                                    " does not match input dimension " +
                                    std::to_string(m.input_dim));
    }
    if (params.dim() != m.param_count && !(m.param_count == 0 && params.dim() == 0)) {
        throw std::invalid_argument("expr eval: parameter dimension " +
                                    std::to_string(params.dim()) +
                                    " does not match parameter count " +
                                    std::to_string(m.param_count));
    }
}

}  // namespace

ExprMapping parse_mapping(const std::string& source, int input_dim, int output_dim,
                          int param_count) {
    if (input_dim < 1) throw std::invalid_argument("parse_mapping: input dimension must be >= 1");
    if (output_dim < 1) throw std::invalid_argument("parse_mapping: output dimension must be >= 1");
    if (param_count < 0) throw std::invalid_argument("parse_mapping: parameter count must be >= 0");

    std::vector<std::string> pieces;
    std::string current;
    for (char c : source) {
        if (c == ';') {
            pieces.push_back(current);
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    pieces.push_back(current);

    if (static_cast<int>(pieces.size()) != output_dim) {
        throw ParseError("expected " + std::to_string(output_dim) +
                             " semicolon-separated expressions, found " +
                             std::to_string(pieces.size()),
                         1, 1);
    }

    ExprMapping mapping;
    mapping.input_dim = input_dim;
    mapping.output_dim = output_dim;
    mapping.param_count = param_count;
    mapping.source = source;
    for (const std::string& piece : pieces) {
        Parser parser(piece, input_dim, param_count);
        mapping.components.push_back(parser.parse_expression_to_end());
    }
    return mapping;
}

Point eval(const ExprMapping& mapping, const Point& x, const Point& params) {
    check_dims(mapping, x, params);
    std::vector<double> vars(x.coords());
    std::vector<double> ps(params.dim() > 0 ? params.coords() : std::vector<double>{});
    std::vector<double> out;
    out.reserve(mapping.components.size());
    for (std::size_t i = 0; i < mapping.components.size(); ++i) {
        try {
            out.push_back(eval_node<double>(*mapping.components[i], vars, ps));
        } catch (const EvalError& e) {
            throw EvalError(e.message(), e.subexpression(), static_cast<int>(i));
        }
    }
    return Point(std::move(out));
}

Jacobian ad_jacobian(const ExprMapping& mapping, const Point& x, const Point& params) {
    check_dims(mapping, x, params);
    std::vector<double> ps(params.dim() > 0 ? params.coords() : std::vector<double>{});
    Jacobian j(mapping.output_dim, mapping.input_dim);
    std::vector<Dual> vars(static_cast<std::size_t>(mapping.input_dim));
    for (int col = 0; col < mapping.input_dim; ++col) {
        for (int i = 0; i < mapping.input_dim; ++i) {
            vars[static_cast<std::size_t>(i)] = Dual(x[i], i == col ? 1.0 : 0.0);
        }
        for (std::size_t row = 0; row < mapping.components.size(); ++row) {
            try {
                Dual r = eval_node<Dual>(*mapping.components[row], vars, ps);
                j(static_cast<int>(row), col) = r.der;
            } catch (const EvalError& e) {
                throw EvalError(e.message(), e.subexpression(), static_cast<int>(row));
            }
        }
    }
    return j;
}

namespace {

int precedence_of(const Node& n) {
    switch (n.kind) {
        case Node::Kind::Binary: return (n.bop == BinaryOp::Add || n.bop == BinaryOp::Sub) ? 1 : 2;
        case Node::Kind::Unary: return n.uop == UnaryOp::Neg ? 3 : 5;
        case Node::Kind::Power: return 4;
        default: return 5;
    }
}

void print_node(const NodePtr& node, std::ostringstream& out, int parent_prec, bool rhs_of_binary) {
    int prec = precedence_of(*node);
    bool parens = prec < parent_prec || (rhs_of_binary && prec == parent_prec);
    if (parens) out << '(';
    switch (node->kind) {
        case Node::Kind::Constant: {
            std::ostringstream num;
            num.precision(17);
            num << node->value;
            std::string s = num.str();
            if (!s.empty() && s[0] == '-') {
                out << '(' << s << ')';
            } else {
                out << s;
            }
            break;
        }
        case Node::Kind::Variable: out << 'x' << (node->index + 1); break;
        case Node::Kind::Parameter: out << 'p' << (node->index + 1); break;
        case Node::Kind::Unary:
            switch (node->uop) {
                case UnaryOp::Neg:
                    out << '-';
                    print_node(node->lhs, out, 3, false);
                    break;
                case UnaryOp::Sin: out << "sin("; print_node(node->lhs, out, 0, false); out << ')'; break;
                case UnaryOp::Cos: out << "cos("; print_node(node->lhs, out, 0, false); out << ')'; break;
                case UnaryOp::Exp: out << "exp("; print_node(node->lhs, out, 0, false); out << ')'; break;
                case UnaryOp::Ln: out << "ln("; print_node(node->lhs, out, 0, false); out << ')'; break;
                case UnaryOp::Sqrt: out << "sqrt("; print_node(node->lhs, out, 0, false); out << ')'; break;
                case UnaryOp::Abs: out << "abs("; print_node(node->lhs, out, 0, false); out << ')'; break;
            }
            break;
        case Node::Kind::Binary: {
            const char* op = nullptr;
            switch (node->bop) {
                case BinaryOp::Add: op = " + "; break;
                case BinaryOp::Sub: op = " - "; break;
                case BinaryOp::Mul: op = "*"; break;
                case BinaryOp::Div: op = "/"; break;
            }
            print_node(node->lhs, out, prec, false);
            out << op;
            print_node(node->rhs, out, prec, true);
            break;
        }
        case Node::Kind::Power: {
            print_node(node->lhs, out, 5, false);
            out << '^';
            std::ostringstream num;
            num.precision(17);
            num << node->value;
            std::string s = num.str();
            if (!s.empty() && s[0] == '-') {
                out << '(' << s << ')';
            } else {
                out << s;
            }
            break;
        }
    }
    if (parens) out << ')';
}

}  // namespace

std::string to_string(const NodePtr& node) {
    std::ostringstream out;
    print_node(node, out, 0, false);
    return out.str();
}

std::string to_string(const ExprMapping& mapping) {
    std::ostringstream out;
    for (std::size_t i = 0; i < mapping.components.size(); ++i) {
        if (i > 0) out << "; ";
        out << to_string(mapping.components[i]);
    }
    return out.str();
}

bool structurally_equal(const NodePtr& a, const NodePtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case Node::Kind::Constant: return a->value == b->value;
        case Node::Kind::Variable:
        case Node::Kind::Parameter: return a->index == b->index;
        case Node::Kind::Unary:
            return a->uop == b->uop && structurally_equal(a->lhs, b->lhs);
        case Node::Kind::Binary:
            return a->bop == b->bop && structurally_equal(a->lhs, b->lhs) &&
                   structurally_equal(a->rhs, b->rhs);
        case Node::Kind::Power:
            return a->value == b->value && structurally_equal(a->lhs, b->lhs);
    }
    return false;
}

ExprMapping mapping_from_json(const std::string& json_text) {
    nlohmann::json doc = nlohmann::json::parse(json_text);
    int n = doc.at("n").get<int>();
    int m = doc.at("m").get<int>();
    int k = doc.value("k", 0);
    const auto& comps = doc.at("components");
    if (!comps.is_array() || static_cast<int>(comps.size()) != m) {
        throw std::invalid_argument("mapping_from_json: 'components' must be an array of m strings");
    }
    std::string joined;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        if (i > 0) joined += "; ";
        joined += comps[i].get<std::string>();
    }
    return parse_mapping(joined, n, m, k);
}

std::string mapping_to_json(const ExprMapping& mapping) {
    nlohmann::json doc;
    doc["n"] = mapping.input_dim;
    doc["m"] = mapping.output_dim;
    doc["k"] = mapping.param_count;
    std::vector<std::string> comps;
    comps.reserve(mapping.components.size());
    for (const auto& c : mapping.components) comps.push_back(to_string(c));
    doc["components"] = comps;
    return doc.dump();
}

}  // namespace covkit::expr

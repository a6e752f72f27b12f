#include "itembound/query.hpp"

#include <cctype>

namespace itembound {

SyntaxError::SyntaxError(const std::string& message, std::size_t position)
    : Error("syntax error at position " + std::to_string(position) + ": " + message), position_(position) {}

Formula Formula::constant(bool value) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Const;
    n->value = value;
    return Formula(std::move(n));
}

Formula Formula::var(std::string name) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Var;
    n->name = std::move(name);
    return Formula(std::move(n));
}

Formula Formula::var(Item item, std::string name) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Var;
    n->item = item;
    n->name = name.empty() ? "#" + std::to_string(item) : std::move(name);
    return Formula(std::move(n));
}

Formula Formula::negate(Formula f) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Not;
    n->children.push_back(std::move(f));
    return Formula(std::move(n));
}

Formula Formula::conj(Formula lhs, Formula rhs) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::And;
    n->children.push_back(std::move(lhs));
    n->children.push_back(std::move(rhs));
    return Formula(std::move(n));
}

Formula Formula::disj(Formula lhs, Formula rhs) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Or;
    n->children.push_back(std::move(lhs));
    n->children.push_back(std::move(rhs));
    return Formula(std::move(n));
}

Formula Formula::bind(const AttributeUniverse& universe) const {
    switch (kind()) {
        case Kind::Const: return *this;
        case Kind::Var: {
            if (!universe.has(name())) throw UnboundVariable("unknown attribute '" + name() + "' in query");
            return var(universe.index(name()), name());
        }
        case Kind::Not: return negate(operand().bind(universe));
        case Kind::And: return conj(lhs().bind(universe), rhs().bind(universe));
        case Kind::Or: return disj(lhs().bind(universe), rhs().bind(universe));
    }
    return *this;
}

bool Formula::is_bound() const {
    switch (kind()) {
        case Kind::Const: return true;
        case Kind::Var: return item() >= 0;
        case Kind::Not: return operand().is_bound();
        default: return lhs().is_bound() && rhs().is_bound();
    }
}

std::string Formula::str() const {
    switch (kind()) {
        case Kind::Const: return value() ? "1" : "0";
        case Kind::Var: return name();
        case Kind::Not: return "!" + operand().str();
        case Kind::And: return "(" + lhs().str() + " & " + rhs().str() + ")";
        case Kind::Or: return "(" + lhs().str() + " | " + rhs().str() + ")";
    }
    return {};
}

bool operator==(const Formula& a, const Formula& b) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case Formula::Kind::Const: return a.value() == b.value();
        case Formula::Kind::Var: return a.name() == b.name() && a.item() == b.item();
        case Formula::Kind::Not: return a.operand() == b.operand();
        default: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    }
}

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Formula parse_all() {
        Formula f = expr();
        skip_space();
        if (pos_ != text_.size()) throw SyntaxError(std::string("unexpected '") + text_[pos_] + "'", pos_);
        return f;
    }

private:
    Formula expr() {
        Formula f = term();
        while (accept('|')) f = Formula::disj(std::move(f), term());
        return f;
    }

    Formula term() {
        Formula f = factor();
        while (accept('&')) f = Formula::conj(std::move(f), factor());
        return f;
    }

    Formula factor() {
        skip_space();
        if (pos_ >= text_.size()) throw SyntaxError("unexpected end of query", pos_);
        const char c = text_[pos_];
        if (c == '!') {
            ++pos_;
            return Formula::negate(factor());
        }
        if (c == '(') {
            const std::size_t open = pos_++;
            Formula f = expr();
            if (!accept(')')) throw SyntaxError("unbalanced '(' opened at position " + std::to_string(open), pos_);
            return f;
        }
        if (c == '"') {
            const std::size_t start = ++pos_;
            while (pos_ < text_.size() && text_[pos_] != '"') ++pos_;
            if (pos_ >= text_.size()) throw SyntaxError("unterminated quoted attribute", start - 1);
            const std::string_view token = text_.substr(start, pos_ - start);
            ++pos_;
            if (token.empty()) throw SyntaxError("empty quoted attribute", start - 1);
            return Formula::var(std::string(token));
        }
        if (is_ident(c)) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && is_ident(text_[pos_])) ++pos_;
            const std::string_view token = text_.substr(start, pos_ - start);
            if (token == "0") return Formula::constant(false);
            if (token == "1") return Formula::constant(true);
            return Formula::var(std::string(token));
        }
        throw SyntaxError(std::string("unexpected '") + c + "'", pos_);
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    static bool is_ident(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-';
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

Formula parse(std::string_view text) { return Parser(text).parse_all(); }

bool eval(const Formula& f, const Itemset& z) {
    switch (f.kind()) {
        case Formula::Kind::Const: return f.value();
        case Formula::Kind::Var:
            if (f.item() < 0) throw UnboundVariable("variable '" + f.name() + "' is not bound");
            return z.contains(f.item());
        case Formula::Kind::Not: return !eval(f.operand(), z);
        case Formula::Kind::And: return eval(f.lhs(), z) && eval(f.rhs(), z);
        case Formula::Kind::Or: return eval(f.lhs(), z) || eval(f.rhs(), z);
    }
    return false;
}

Itemset support(const Formula& f) {
    switch (f.kind()) {
        case Formula::Kind::Const: return {};
        case Formula::Kind::Var:
            if (f.item() < 0) throw UnboundVariable("variable '" + f.name() + "' is not bound");
            return Itemset{f.item()};
        case Formula::Kind::Not: return support(f.operand());
        default: return support(f.lhs()) | support(f.rhs());
    }
}

std::vector<std::uint8_t> objective_vector(const Formula& f, const Itemset& c) {
    if (!support(f).subset_of(c)) throw DomainMismatch("query support is not contained in the projection set");
    if (c.size() > kMaxDenseAttributes) throw Error("projection set too large for a dense program");
    const std::size_t states = std::size_t{1} << c.size();
    std::vector<std::uint8_t> out(states);
    for (std::uint64_t z = 0; z < states; ++z) out[z] = eval(f, assignment_items(c, z)) ? 1 : 0;
    return out;
}

Formula conjunction(const Itemset& items, const AttributeUniverse& universe) {
    std::vector<Formula> vars;
    items.for_each([&](Item i) { vars.push_back(Formula::var(i, universe.name(i))); });
    if (vars.empty()) return Formula::constant(true);
    Formula f = vars.front();
    for (std::size_t k = 1; k < vars.size(); ++k) f = Formula::conj(std::move(f), vars[k]);
    return f;
}

}  // namespace itembound

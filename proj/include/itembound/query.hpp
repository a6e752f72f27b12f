#pragma once

// Boolean formulas over attributes.
//
// Grammar (lowest to highest precedence):
//   expr   := term ('|' term)*
//   term   := factor ('&' factor)*
//   factor := '!' factor | '(' expr ')' | '0' | '1' | identifier | '"' name '"'
// A quoted name is always a variable, so attributes called 0 or 1 stay reachable.
// Identifiers are resolved against a universe by `bind`.

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "itembound/core.hpp"

namespace itembound {

class SyntaxError : public Error {
public:
    SyntaxError(const std::string& message, std::size_t position);
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

class UnboundVariable : public Error {
public:
    using Error::Error;
};

class Formula {
public:
    enum class Kind { Const, Var, Not, And, Or };

    static Formula constant(bool value);
    static Formula var(std::string name);
    static Formula var(Item item, std::string name = {});
    static Formula negate(Formula f);
    static Formula conj(Formula lhs, Formula rhs);
    static Formula disj(Formula lhs, Formula rhs);

    Kind kind() const { return node_->kind; }
    bool value() const { return node_->value; }
    const std::string& name() const { return node_->name; }
    /// -1 while unbound.
    Item item() const { return node_->item; }
    const Formula& lhs() const { return node_->children.at(0); }
    const Formula& rhs() const { return node_->children.at(1); }
    const Formula& operand() const { return node_->children.at(0); }

    /// Copy with every variable resolved to an index of `universe`; throws on unknown names.
    Formula bind(const AttributeUniverse& universe) const;
    bool is_bound() const;

    /// Fully parenthesized rendering, e.g. "(!(a | b) & c)".
    std::string str() const;

    friend bool operator==(const Formula& a, const Formula& b);

private:
    struct Node {
        Kind kind = Kind::Const;
        bool value = false;
        std::string name;
        Item item = -1;
        std::vector<Formula> children;
    };
    explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

Formula parse(std::string_view text);

/// Evaluates on the binary vector whose ones are `z`.
bool eval(const Formula& f, const Itemset& z);

/// Syntactic support: every variable that occurs in `f`.
Itemset support(const Formula& f);

/// eval(f, ·) on every assignment of `c` in canonical order.
std::vector<std::uint8_t> objective_vector(const Formula& f, const Itemset& c);

/// Conjunction of the given items.
Formula conjunction(const Itemset& items, const AttributeUniverse& universe);

}  // namespace itembound

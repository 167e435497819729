#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "leafchar/symbolics/polynomial.hpp"

namespace leafchar {

class VariableContext;
class Expr;
using ContextPtr = std::shared_ptr<const VariableContext>;
using SymbolId = std::size_t;

enum class SymbolKind {
  Variable,   ///< coordinate; owns a differential
  Chain,      ///< F_k of an opaque function of one variable
  Constant,   ///< formal constant, zero derivative
  Dependent,  ///< function of one variable with a user-supplied derivative rule
};

struct Symbol {
  std::string name;
  SymbolKind kind = SymbolKind::Variable;
  /// Chain and Dependent symbols: the variable they are a function of.
  std::optional<SymbolId> base;
  /// Chain symbols only.
  std::size_t chain = 0;
  unsigned order = 0;
};

struct ChainInfo {
  std::string name;
  SymbolId base;
  unsigned max_order;
  std::vector<SymbolId> symbols;  ///< symbols[k] is F_k
};

/// Ordered symbol table of a differential field. Immutable once built; Exprs
/// refer to it by shared pointer and compare contexts by identity.
class VariableContext {
 public:
  std::size_t size() const { return symbols_.size(); }
  const Symbol& symbol(SymbolId id) const { return symbols_.at(id); }
  const std::vector<Symbol>& symbols() const { return symbols_; }
  const std::vector<std::string>& names() const { return names_; }

  std::optional<SymbolId> find(std::string_view name) const;
  /// Throws UnknownSymbol.
  SymbolId id(std::string_view name) const;
  /// Ids of all Variable symbols, in declaration order.
  const std::vector<SymbolId>& variables() const { return variables_; }
  bool is_variable(SymbolId id) const { return symbols_.at(id).kind == SymbolKind::Variable; }

  const std::vector<ChainInfo>& chains() const { return chains_; }
  const ChainInfo& chain(std::string_view name) const;
  /// F_k of the named chain; throws TruncationExceeded above max order.
  SymbolId chain_symbol(std::string_view chain, unsigned k) const;

  /// Derivative rule of a Dependent symbol, as numerator/denominator over
  /// this context's symbols.
  const std::pair<Polynomial, Polynomial>& dependent_rule(SymbolId id) const;

 private:
  friend class ContextBuilder;
  std::vector<Symbol> symbols_;
  std::vector<std::string> names_;
  std::vector<SymbolId> variables_;
  std::vector<ChainInfo> chains_;
  std::unordered_map<std::string, SymbolId> index_;
  std::unordered_map<SymbolId, std::pair<Polynomial, Polynomial>> rules_;
};

/// Builds a VariableContext. Dependent-symbol rules are callbacks evaluated
/// once every symbol exists, so a rule may mention symbols declared later.
class ContextBuilder {
 public:
  using Rule = std::function<Expr(const ContextPtr&)>;

  ContextBuilder& variable(std::string name);
  /// Declares F_0..F_max_order as symbols named `<name>_<k>`.
  ContextBuilder& chain(std::string name, std::string_view base, unsigned max_order);
  ContextBuilder& constant(std::string name);
  ContextBuilder& dependent(std::string name, std::string_view base, Rule rule);

  /// Throws InvalidArgument on duplicate names or unknown base variables.
  ContextPtr build() const;

 private:
  struct Pending {
    Symbol symbol;
    std::string base_name;
    unsigned max_order = 0;
    Rule rule;
  };
  std::vector<Pending> pending_;
};

}  // namespace leafchar

#include "leafchar/symbolics/context.hpp"

#include "leafchar/error.hpp"
#include "leafchar/symbolics/expr.hpp"

namespace leafchar {

std::optional<SymbolId> VariableContext::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

SymbolId VariableContext::id(std::string_view name) const {
  auto found = find(name);
  if (!found) throw Error(ErrorCode::UnknownSymbol, "no symbol named '" + std::string(name) + "'");
  return *found;
}

const ChainInfo& VariableContext::chain(std::string_view name) const {
  for (const auto& c : chains_)
    if (c.name == name) return c;
  throw Error(ErrorCode::UnknownSymbol, "no chain named '" + std::string(name) + "'");
}

SymbolId VariableContext::chain_symbol(std::string_view name, unsigned k) const {
  const auto& c = chain(name);
  if (k > c.max_order)
    throw Error(ErrorCode::TruncationExceeded,
                "chain " + c.name + " truncated at order " + std::to_string(c.max_order) +
                    ", requested " + std::to_string(k));
  return c.symbols[k];
}

const std::pair<Polynomial, Polynomial>& VariableContext::dependent_rule(SymbolId id) const {
  auto it = rules_.find(id);
  if (it == rules_.end())
    throw Error(ErrorCode::InvalidArgument, "symbol " + names_.at(id) + " has no derivative rule");
  return it->second;
}

ContextBuilder& ContextBuilder::variable(std::string name) {
  Pending p;
  p.symbol.name = std::move(name);
  p.symbol.kind = SymbolKind::Variable;
  pending_.push_back(std::move(p));
  return *this;
}

ContextBuilder& ContextBuilder::chain(std::string name, std::string_view base, unsigned max_order) {
  Pending p;
  p.symbol.name = std::move(name);
  p.symbol.kind = SymbolKind::Chain;
  p.base_name = base;
  p.max_order = max_order;
  pending_.push_back(std::move(p));
  return *this;
}

ContextBuilder& ContextBuilder::constant(std::string name) {
  Pending p;
  p.symbol.name = std::move(name);
  p.symbol.kind = SymbolKind::Constant;
  pending_.push_back(std::move(p));
  return *this;
}

ContextBuilder& ContextBuilder::dependent(std::string name, std::string_view base, Rule rule) {
  Pending p;
  p.symbol.name = std::move(name);
  p.symbol.kind = SymbolKind::Dependent;
  p.base_name = base;
  p.rule = std::move(rule);
  pending_.push_back(std::move(p));
  return *this;
}

ContextPtr ContextBuilder::build() const {
  auto ctx = std::make_shared<VariableContext>();
  auto add = [&](Symbol s) {
    if (ctx->index_.count(s.name))
      throw Error(ErrorCode::InvalidArgument, "duplicate symbol name '" + s.name + "'");
    SymbolId id = ctx->symbols_.size();
    ctx->index_.emplace(s.name, id);
    ctx->names_.push_back(s.name);
    if (s.kind == SymbolKind::Variable) ctx->variables_.push_back(id);
    ctx->symbols_.push_back(std::move(s));
    return id;
  };

  // Variables first so that base lookups below resolve regardless of order.
  for (const auto& p : pending_)
    if (p.symbol.kind == SymbolKind::Variable) add(p.symbol);

  auto base_of = [&](const std::string& base_name) {
    auto it = ctx->index_.find(base_name);
    if (it == ctx->index_.end() || ctx->symbols_[it->second].kind != SymbolKind::Variable)
      throw Error(ErrorCode::InvalidArgument, "base '" + base_name + "' is not a variable");
    return it->second;
  };

  std::vector<std::pair<SymbolId, const Rule*>> rules;
  for (const auto& p : pending_) {
    switch (p.symbol.kind) {
      case SymbolKind::Variable:
        break;
      case SymbolKind::Constant:
        add(p.symbol);
        break;
      case SymbolKind::Chain: {
        ChainInfo info{p.symbol.name, base_of(p.base_name), p.max_order, {}};
        std::size_t chain_index = ctx->chains_.size();
        for (unsigned k = 0; k <= p.max_order; ++k) {
          Symbol s;
          s.name = p.symbol.name + "_" + std::to_string(k);
          s.kind = SymbolKind::Chain;
          s.base = info.base;
          s.chain = chain_index;
          s.order = k;
          info.symbols.push_back(add(std::move(s)));
        }
        ctx->chains_.push_back(std::move(info));
        break;
      }
      case SymbolKind::Dependent: {
        Symbol s = p.symbol;
        s.base = base_of(p.base_name);
        SymbolId id = add(std::move(s));
        rules.emplace_back(id, &p.rule);
        break;
      }
    }
  }

  ContextPtr frozen = ctx;
  for (const auto& [id, rule] : rules) {
    Expr e = (*rule)(frozen);
    if (e.context() && e.context() != frozen)
      throw Error(ErrorCode::ContextMismatch, "derivative rule built in a foreign context");
    ctx->rules_[id] = {e.numerator(), e.denominator()};
  }
  return frozen;
}

}  // namespace leafchar

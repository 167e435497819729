#include "leafchar/symbolics/form.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "leafchar/error.hpp"

namespace leafchar {

namespace {

/// Variables whose differentials can appear in d(e).
std::set<SymbolId> differential_support(const Expr& e) {
  std::set<SymbolId> out;
  const auto& ctx = e.context();
  if (!ctx) return out;
  std::size_t bound = std::max(e.numerator().symbol_bound(), e.denominator().symbol_bound());
  for (SymbolId s = 0; s < bound; ++s) {
    if (!e.depends_on(s)) continue;
    const Symbol& sym = ctx->symbol(s);
    if (sym.kind == SymbolKind::Variable) out.insert(s);
    if (sym.base) out.insert(*sym.base);
  }
  return out;
}

}  // namespace

Form Form::scalar(const ContextPtr& ctx, const Expr& f) {
  Form w(ctx, 0);
  w.add_term({}, f);
  return w;
}

Form Form::differential(const ContextPtr& ctx, SymbolId var) {
  if (!ctx || var >= ctx->size() || !ctx->is_variable(var))
    throw Error(ErrorCode::UnknownSymbol, "differential of a non-variable symbol");
  Form w(ctx, 1);
  w.add_term({var}, Expr(1));
  return w;
}

Form Form::differential(const ContextPtr& ctx, std::string_view var) {
  return differential(ctx, ctx->id(var));
}

Form Form::monomial(const ContextPtr& ctx, const Expr& coefficient, std::vector<SymbolId> vars) {
  Form w(ctx, static_cast<unsigned>(vars.size()));
  for (auto v : vars)
    if (!ctx->is_variable(v)) throw Error(ErrorCode::UnknownSymbol, "differential of a non-variable symbol");
  // insertion sort tracking the permutation sign
  int sign = 1;
  for (std::size_t i = 1; i < vars.size(); ++i)
    for (std::size_t j = i; j > 0 && vars[j - 1] > vars[j]; --j) {
      std::swap(vars[j - 1], vars[j]);
      sign = -sign;
    }
  if (std::adjacent_find(vars.begin(), vars.end()) != vars.end()) return w;
  w.add_term(vars, sign > 0 ? coefficient : -coefficient);
  return w;
}

Expr Form::coefficient(const FormKey& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? Expr(0) : it->second;
}

void Form::add_term(const FormKey& key, const Expr& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void Form::check_compatible(const Form& o) const {
  if (ctx_ && o.ctx_ && ctx_ != o.ctx_)
    throw Error(ErrorCode::ContextMismatch, "forms belong to different contexts");
  if (degree_ != o.degree_ && !is_zero() && !o.is_zero())
    throw Error(ErrorCode::InvalidArgument, "adding forms of degrees " + std::to_string(degree_) +
                                                " and " + std::to_string(o.degree_));
}

Form& Form::operator+=(const Form& o) {
  check_compatible(o);
  if (!ctx_) ctx_ = o.ctx_;
  if (is_zero() && !o.is_zero()) degree_ = o.degree_;
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

Form& Form::operator-=(const Form& o) { return *this += -o; }

Form Form::operator-() const {
  Form r = *this;
  for (auto& [k, c] : r.terms_) c = -c;
  return r;
}

Form operator*(const Expr& f, const Form& w) {
  Form r(w.ctx_, w.degree_);
  if (f.context() && w.ctx_ && f.context() != w.ctx_)
    throw Error(ErrorCode::ContextMismatch, "scaling a form by a foreign expression");
  if (!r.ctx_) r.ctx_ = f.context();
  if (f.is_zero()) return r;
  for (const auto& [k, c] : w.terms_) r.add_term(k, f * c);
  return r;
}

bool Form::equals(const Form& o) const {
  if (ctx_ && o.ctx_ && ctx_ != o.ctx_)
    throw Error(ErrorCode::ContextMismatch, "comparing forms from different contexts");
  if (is_zero() || o.is_zero()) return is_zero() && o.is_zero();
  if (degree_ != o.degree_ || terms_.size() != o.terms_.size()) return false;
  for (const auto& [k, c] : terms_) {
    auto it = o.terms_.find(k);
    if (it == o.terms_.end() || !expr_equal(c, it->second)) return false;
  }
  return true;
}

std::string Form::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ")";
    for (std::size_t i = 0; i < k.size(); ++i) os << (i == 0 ? "*" : "^") << "d" << ctx_->names()[k[i]];
  }
  return os.str();
}

Form wedge(const Form& a, const Form& b) {
  if (a.context() && b.context() && a.context() != b.context())
    throw Error(ErrorCode::ContextMismatch, "wedge of forms from different contexts");
  ContextPtr ctx = a.context() ? a.context() : b.context();
  Form r(ctx, a.degree() + b.degree());
  for (const auto& [ka, ca] : a.terms()) {
    for (const auto& [kb, cb] : b.terms()) {
      FormKey merged;
      merged.reserve(ka.size() + kb.size());
      int inversions = 0;
      std::size_t i = 0, j = 0;
      bool repeated = false;
      while (i < ka.size() || j < kb.size()) {
        if (j == kb.size() || (i < ka.size() && ka[i] < kb[j])) {
          merged.push_back(ka[i++]);
        } else if (i == ka.size() || kb[j] < ka[i]) {
          inversions += static_cast<int>(ka.size() - i);
          merged.push_back(kb[j++]);
        } else {
          repeated = true;
          break;
        }
      }
      if (repeated) continue;
      Expr c = ca * cb;
      r += Form::monomial(ctx, (inversions % 2) ? -c : c, merged);
    }
  }
  return r;
}

Form exterior_derivative(const Form& w) {
  Form r(w.context(), w.degree() + 1);
  for (const auto& [k, c] : w.terms()) {
    for (SymbolId v : differential_support(c)) {
      if (std::binary_search(k.begin(), k.end(), v)) continue;
      Expr dc = c.derivative(v);
      if (dc.is_zero()) continue;
      FormKey key = k;
      auto pos = std::lower_bound(key.begin(), key.end(), v);
      long before = pos - key.begin();
      key.insert(pos, v);
      r += Form::monomial(w.context(), (before % 2) ? -dc : dc, key);
    }
  }
  return r;
}

ChartMap ChartMap::identity(const ContextPtr& ctx) {
  ChartMap m{ctx, ctx, {}};
  m.images.resize(ctx->size());
  for (SymbolId i = 0; i < ctx->size(); ++i) m.images[i] = Expr::symbol(ctx, i);
  return m;
}

ChartMap& ChartMap::set(std::string_view target_symbol, Expr image) {
  if (image.context() && image.context() != source)
    throw Error(ErrorCode::ContextMismatch, "chart map image outside the source context");
  images.resize(target->size());
  images[target->id(target_symbol)] = std::move(image);
  return *this;
}

ChartMap& ChartMap::match_names() {
  images.resize(target->size());
  for (SymbolId i = 0; i < target->size(); ++i) {
    if (images[i]) continue;
    if (auto s = source->find(target->names()[i])) images[i] = Expr::symbol(source, *s);
  }
  return *this;
}

ChartMap ChartMap::after(const ChartMap& first) const {
  if (first.target != source) throw Error(ErrorCode::ContextMismatch, "composing non-composable chart maps");
  ChartMap r{first.source, target, {}};
  r.images.resize(images.size());
  for (std::size_t i = 0; i < images.size(); ++i)
    if (images[i]) r.images[i] = pullback(first, *images[i]);
  return r;
}

Expr pullback(const ChartMap& phi, const Expr& e) {
  if (e.context() && e.context() != phi.target)
    throw Error(ErrorCode::ContextMismatch, "pullback of an expression outside the map's target");
  return e.substitute(phi.source, phi.images);
}

Form pullback(const ChartMap& phi, const Form& w) {
  if (w.context() && w.context() != phi.target)
    throw Error(ErrorCode::ContextMismatch, "pullback of a form outside the map's target");
  Form r(phi.source, w.degree());
  std::map<SymbolId, Form> differentials;
  auto d_image = [&](SymbolId v) -> const Form& {
    auto it = differentials.find(v);
    if (it != differentials.end()) return it->second;
    if (v >= phi.images.size() || !phi.images[v])
      throw Error(ErrorCode::MissingComponent, "no image for coordinate '" + phi.target->names()[v] + "'");
    return differentials.emplace(v, exterior_derivative(Form::scalar(phi.source, *phi.images[v]))).first->second;
  };
  for (const auto& [k, c] : w.terms()) {
    Form term = Form::scalar(phi.source, pullback(phi, c));
    for (SymbolId v : k) {
      term = wedge(term, d_image(v));
      if (term.is_zero()) break;
    }
    if (!term.is_zero()) r += term;
  }
  return r;
}

Form interior_product(const VectorField& x, const Form& w) {
  if (w.degree() == 0) return Form(w.context(), 0);
  Form r(w.context(), w.degree() - 1);
  for (const auto& [k, c] : w.terms()) {
    for (std::size_t j = 0; j < k.size(); ++j) {
      auto it = x.find(k[j]);
      if (it == x.end() || it->second.is_zero()) continue;
      FormKey rest = k;
      rest.erase(rest.begin() + static_cast<long>(j));
      Expr coeff = it->second * c;
      r += Form::monomial(w.context(), (j % 2) ? -coeff : coeff, rest);
    }
  }
  return r;
}

Form lie_derivative(const VectorField& x, const Form& w) {
  Form r = interior_product(x, exterior_derivative(w));
  if (w.degree() > 0) r += exterior_derivative(interior_product(x, w));
  return r;
}

}  // namespace leafchar

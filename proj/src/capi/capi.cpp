#include "leafchar/leafchar.h"

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "leafchar/driver/driver.hpp"
#include "leafchar/error.hpp"
#include "leafchar/jets/jet.hpp"
#include "leafchar/parse/ast.hpp"

struct lc_report {
  std::string json, csv, text;
  int exit_code = 0;
};

struct lc_expr {
  leafchar::Expr expr;
  std::string text;
};

struct lc_jet {
  leafchar::Jet<leafchar::Rational> jet;
  std::vector<std::string> text;
};

namespace {

thread_local std::string last_error;

lc_status fail(lc_status s, const std::string& message) {
  last_error = message;
  return s;
}

lc_status from_code(leafchar::ErrorCode c) { return static_cast<lc_status>(static_cast<int>(c) + 1); }

template <class F>
lc_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return LC_OK;
  } catch (const leafchar::Error& e) {
    return fail(from_code(e.code()), e.what());
  } catch (const std::exception& e) {
    return fail(LC_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(LC_ERR_INTERNAL, "unknown failure");
  }
}

// Expressions parsed over the same variable list share one context.
leafchar::ContextPtr context_for(const std::vector<std::string>& names) {
  static std::mutex mutex;
  static std::map<std::vector<std::string>, leafchar::ContextPtr> cache;
  std::lock_guard lock(mutex);
  auto& ctx = cache[names];
  if (!ctx) {
    leafchar::ContextBuilder b;
    for (const auto& n : names) b.variable(n);
    ctx = b.build();
  }
  return ctx;
}

lc_expr* make_expr(leafchar::Expr e) {
  auto* out = new lc_expr{std::move(e), {}};
  out->text = out->expr.to_string();
  return out;
}

lc_jet* make_jet(leafchar::Jet<leafchar::Rational> j) {
  auto* out = new lc_jet{std::move(j), {}};
  for (const auto& x : out->jet.entries()) out->text.push_back(x.get_str());
  return out;
}

}  // namespace

extern "C" {

const char* lc_version(void) { return leafchar::kToolVersion; }

const char* lc_last_error(void) { return last_error.c_str(); }

const char* lc_status_name(lc_status status) {
  if (status == LC_OK) return "Ok";
  if (status == LC_ERR_INTERNAL) return "Internal";
  int c = static_cast<int>(status) - 1;
  if (c < 0 || c > static_cast<int>(leafchar::ErrorCode::CandidateNotPeriodic)) return "Unknown";
  static thread_local std::string name;
  name = std::string(leafchar::error_code_name(static_cast<leafchar::ErrorCode>(c)));
  return name.c_str();
}

lc_status lc_run(const char* subcommand, const char* config_json, lc_report** out) {
  if (!subcommand || !out) return fail(LC_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    nlohmann::json config = nlohmann::json::object();
    leafchar::RunOutput r;
    bool parsed = true;
    if (config_json && *config_json) {
      try {
        config = nlohmann::json::parse(config_json);
      } catch (const nlohmann::json::parse_error& e) {
        parsed = false;
        r.report = {{"schema_version", leafchar::kSchemaVersion},
                    {"tool_version", leafchar::kToolVersion},
                    {"subcommand", subcommand},
                    {"error", {{"code", "UsageError"}, {"message", std::string("config is not JSON: ") + e.what()}}},
                    {"passed", false}};
        r.exit_code = 2;
      }
    }
    if (parsed) r = leafchar::run(subcommand, config);
    *out = new lc_report{r.report.dump(2) + "\n", r.csv, leafchar::render_text(r.report), r.exit_code};
  });
}

const char* lc_report_json(const lc_report* report) { return report ? report->json.c_str() : ""; }
const char* lc_report_csv(const lc_report* report) { return report ? report->csv.c_str() : ""; }
const char* lc_report_text(const lc_report* report) { return report ? report->text.c_str() : ""; }
int lc_report_exit_code(const lc_report* report) { return report ? report->exit_code : 2; }
void lc_report_free(lc_report* report) { delete report; }

lc_status lc_expr_parse(const char* variables, const char* text, lc_expr** out) {
  if (!variables || !text || !out) return fail(LC_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    std::vector<std::string> names;
    std::string vars = variables, cur;
    for (char ch : vars + ",") {
      if (ch == ',') {
        if (!cur.empty()) names.push_back(cur);
        cur.clear();
      } else if (ch != ' ') {
        cur += ch;
      }
    }
    *out = make_expr(leafchar::to_expr(*leafchar::parse_expression(text), context_for(names)));
  });
}

lc_status lc_expr_derivative(const lc_expr* e, const char* variable, lc_expr** out) {
  if (!e || !variable || !out) return fail(LC_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = make_expr(e->expr.derivative(variable)); });
}

lc_status lc_expr_add(const lc_expr* a, const lc_expr* b, lc_expr** out) {
  if (!a || !b || !out) return fail(LC_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = make_expr(a->expr + b->expr); });
}

lc_status lc_expr_mul(const lc_expr* a, const lc_expr* b, lc_expr** out) {
  if (!a || !b || !out) return fail(LC_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = make_expr(a->expr * b->expr); });
}

const char* lc_expr_string(const lc_expr* e) { return e ? e->text.c_str() : ""; }

int lc_expr_equal(const lc_expr* a, const lc_expr* b) {
  if (!a || !b) return -1;
  try {
    return leafchar::expr_equal(a->expr, b->expr) ? 1 : 0;
  } catch (const std::exception& e) {
    last_error = e.what();
    return -1;
  }
}

void lc_expr_free(lc_expr* e) { delete e; }

lc_status lc_jet_create(const char* const* entries, size_t count, lc_jet** out) {
  if (!entries || !out) return fail(LC_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  if (count < 2) return fail(LC_ERR_INVALID_ARGUMENT, "a jet needs at least two entries");
  return guarded([&] {
    std::vector<leafchar::Rational> e;
    for (size_t i = 0; i < count; ++i) {
      if (!entries[i]) throw leafchar::Error(leafchar::ErrorCode::InvalidArgument, "null entry");
      leafchar::Rational q;
      if (q.set_str(entries[i], 10) != 0 || q.get_den() == 0)
        throw leafchar::Error(leafchar::ErrorCode::ParseError, std::string("malformed rational ") + entries[i]);
      q.canonicalize();
      e.push_back(q);
    }
    *out = make_jet(leafchar::Jet<leafchar::Rational>(std::move(e)));
  });
}

lc_status lc_jet_compose(const lc_jet* g, const lc_jet* f, lc_jet** out) {
  if (!g || !f || !out) return fail(LC_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = make_jet(leafchar::jet_compose(g->jet, f->jet)); });
}

lc_status lc_jet_invert(const lc_jet* f, lc_jet** out) {
  if (!f || !out) return fail(LC_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = make_jet(leafchar::jet_invert(f->jet)); });
}

size_t lc_jet_order(const lc_jet* j) { return j ? j->jet.order() : 0; }

const char* lc_jet_entry(const lc_jet* j, size_t k) {
  if (!j || k >= j->text.size()) return nullptr;
  return j->text[k].c_str();
}

void lc_jet_free(lc_jet* j) { delete j; }

}  // extern "C"

#include "gridclass/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>

#include "gridclass/errors.hpp"

namespace gridclass::mso {

FormulaPtr Formula::make(Kind kind, std::string first, std::string second, std::size_t label, Sort sort,
                         std::vector<FormulaPtr> children) {
  auto node = std::make_shared<Formula>();
  node->kind_ = kind;
  node->first_ = std::move(first);
  node->second_ = std::move(second);
  node->label_ = label;
  node->sort_ = sort;
  node->children_ = std::move(children);
  return node;
}

namespace {

FormulaPtr atom(Kind kind, const std::string& a, const std::string& b = {}, std::size_t label = 0) {
  return Formula::make(kind, a, b, label, Sort::element, {});
}

FormulaPtr quantifier(Kind kind, Sort sort, const std::string& x, FormulaPtr body) {
  return Formula::make(kind, x, {}, 0, sort, {std::move(body)});
}

// Flattens nested nodes of the same kind, drops the neutral constant and
// short-circuits on the absorbing one.
FormulaPtr associative(Kind kind, std::vector<FormulaPtr> parts) {
  const Kind neutral = kind == Kind::conjunction ? Kind::truth : Kind::falsity;
  const Kind absorbing = kind == Kind::conjunction ? Kind::falsity : Kind::truth;
  std::vector<FormulaPtr> flat;
  flat.reserve(parts.size());
  for (auto& p : parts) {
    if (p->kind() == neutral) continue;
    if (p->kind() == absorbing) return p;
    if (p->kind() == kind) {
      flat.insert(flat.end(), p->children().begin(), p->children().end());
    } else {
      flat.push_back(std::move(p));
    }
  }
  if (flat.empty()) return kind == Kind::conjunction ? top() : bottom();
  if (flat.size() == 1) return flat.front();
  return Formula::make(kind, {}, {}, 0, Sort::element, std::move(flat));
}

}  // namespace

FormulaPtr top() {
  static const FormulaPtr t = atom(Kind::truth, {});
  return t;
}
FormulaPtr bottom() {
  static const FormulaPtr f = atom(Kind::falsity, {});
  return f;
}
FormulaPtr lt1(const std::string& x, const std::string& y) { return atom(Kind::order1, x, y); }
FormulaPtr lt2(const std::string& x, const std::string& y) { return atom(Kind::order2, x, y); }
FormulaPtr lt(const std::string& x, const std::string& y) { return atom(Kind::word_order, x, y); }
FormulaPtr eq(const std::string& x, const std::string& y) { return atom(Kind::equal, x, y); }
FormulaPtr cell(std::size_t i, const std::string& x) { return atom(Kind::cell, x, {}, i); }
FormulaPtr letter(std::size_t i, const std::string& x) { return atom(Kind::letter, x, {}, i); }
FormulaPtr member(const std::string& x, const std::string& set) { return atom(Kind::member, x, set); }

FormulaPtr negate(FormulaPtr f) {
  switch (f->kind()) {
    case Kind::truth: return bottom();
    case Kind::falsity: return top();
    case Kind::negation: return f->child();
    default: return Formula::make(Kind::negation, {}, {}, 0, Sort::element, {std::move(f)});
  }
}

FormulaPtr conj(std::vector<FormulaPtr> parts) { return associative(Kind::conjunction, std::move(parts)); }
FormulaPtr disj(std::vector<FormulaPtr> parts) { return associative(Kind::disjunction, std::move(parts)); }

FormulaPtr implies(FormulaPtr a, FormulaPtr b) {
  if (a->kind() == Kind::truth) return b;
  if (a->kind() == Kind::falsity || b->kind() == Kind::truth) return top();
  if (b->kind() == Kind::falsity) return negate(std::move(a));
  return Formula::make(Kind::implication, {}, {}, 0, Sort::element, {std::move(a), std::move(b)});
}

FormulaPtr iff(FormulaPtr a, FormulaPtr b) {
  return Formula::make(Kind::equivalence, {}, {}, 0, Sort::element, {std::move(a), std::move(b)});
}

FormulaPtr exists(const std::string& x, FormulaPtr body) {
  return quantifier(Kind::exists, Sort::element, x, std::move(body));
}
FormulaPtr forall(const std::string& x, FormulaPtr body) {
  return quantifier(Kind::forall, Sort::element, x, std::move(body));
}
FormulaPtr exists_set(const std::string& x, FormulaPtr body) {
  return quantifier(Kind::exists, Sort::set, x, std::move(body));
}
FormulaPtr forall_set(const std::string& x, FormulaPtr body) {
  return quantifier(Kind::forall, Sort::set, x, std::move(body));
}

namespace {

FormulaPtr nest(const std::vector<std::string>& xs, FormulaPtr body,
                FormulaPtr (*one)(const std::string&, FormulaPtr)) {
  for (auto it = xs.rbegin(); it != xs.rend(); ++it) body = one(*it, std::move(body));
  return body;
}

}  // namespace

FormulaPtr exists_many(const std::vector<std::string>& xs, FormulaPtr body) {
  return nest(xs, std::move(body), static_cast<FormulaPtr (*)(const std::string&, FormulaPtr)>(&exists));
}
FormulaPtr forall_many(const std::vector<std::string>& xs, FormulaPtr body) {
  return nest(xs, std::move(body), static_cast<FormulaPtr (*)(const std::string&, FormulaPtr)>(&forall));
}
FormulaPtr exists_sets(const std::vector<std::string>& xs, FormulaPtr body) {
  return nest(xs, std::move(body), static_cast<FormulaPtr (*)(const std::string&, FormulaPtr)>(&exists_set));
}
FormulaPtr forall_sets(const std::vector<std::string>& xs, FormulaPtr body) {
  return nest(xs, std::move(body), static_cast<FormulaPtr (*)(const std::string&, FormulaPtr)>(&forall_set));
}

namespace {

std::string fresh_name(const std::string& base, const std::set<std::string>& taken) {
  std::string candidate = base + "'";
  while (taken.count(candidate)) candidate += "'";
  return candidate;
}

void collect_names(const FormulaPtr& f, std::set<std::string>& out) {
  if (f->is_atom()) {
    if (!f->first().empty()) out.insert(f->first());
    if (!f->second().empty()) out.insert(f->second());
    return;
  }
  if (f->is_quantifier()) out.insert(f->variable());
  for (const auto& c : f->children()) collect_names(c, out);
}

}  // namespace

FormulaPtr exists_unique(const std::string& x, const FormulaPtr& body) {
  std::set<std::string> taken;
  collect_names(body, taken);
  taken.insert(x);
  const std::string z = fresh_name(x, taken);
  return exists(x, conj({body, forall(z, implies(rename_free(body, {{x, z}}), eq(z, x)))}));
}

std::vector<FreeVariable> free_variables(const FormulaPtr& f) {
  std::vector<FreeVariable> out;
  std::vector<std::string> bound;
  auto note = [&](const std::string& name, Sort sort) {
    if (std::find(bound.rbegin(), bound.rend(), name) != bound.rend()) return;
    for (auto& v : out) {
      if (v.name == name) {
        if (sort == Sort::set) v.sort = Sort::set;
        return;
      }
    }
    out.push_back({name, sort});
  };
  std::function<void(const FormulaPtr&)> walk = [&](const FormulaPtr& g) {
    switch (g->kind()) {
      case Kind::truth:
      case Kind::falsity: return;
      case Kind::cell:
      case Kind::letter: note(g->first(), Sort::element); return;
      case Kind::member:
        note(g->first(), Sort::element);
        note(g->second(), Sort::set);
        return;
      case Kind::order1:
      case Kind::order2:
      case Kind::word_order:
      case Kind::equal:
        note(g->first(), Sort::element);
        note(g->second(), Sort::element);
        return;
      case Kind::exists:
      case Kind::forall:
        bound.push_back(g->variable());
        walk(g->child());
        bound.pop_back();
        return;
      default:
        for (const auto& c : g->children()) walk(c);
    }
  };
  walk(f);
  return out;
}

std::vector<std::string> all_variable_names(const FormulaPtr& f) {
  std::set<std::string> names;
  collect_names(f, names);
  return {names.begin(), names.end()};
}

FormulaPtr rename_free(const FormulaPtr& f, const std::map<std::string, std::string>& renaming) {
  if (renaming.empty()) return f;
  auto sub = [&](const std::string& v) {
    auto it = renaming.find(v);
    return it == renaming.end() ? v : it->second;
  };
  if (f->is_atom()) {
    if (f->kind() == Kind::truth || f->kind() == Kind::falsity) return f;
    return Formula::make(f->kind(), sub(f->first()), f->second().empty() ? std::string{} : sub(f->second()),
                         f->label(), f->sort(), {});
  }
  if (f->is_quantifier()) {
    std::map<std::string, std::string> inner = renaming;
    inner.erase(f->variable());
    if (inner.empty()) return f;
    std::string binder = f->variable();
    std::set<std::string> targets;
    for (const auto& [from, to] : inner) targets.insert(to);
    if (targets.count(binder)) {
      // Only matters when a renamed variable actually occurs free in the body.
      std::set<std::string> taken;
      collect_names(f->child(), taken);
      taken.insert(targets.begin(), targets.end());
      for (const auto& [from, to] : inner) taken.insert(from);
      const std::string fresh = fresh_name(binder, taken);
      inner[binder] = fresh;
      binder = fresh;
    }
    return Formula::make(f->kind(), binder, {}, 0, f->sort(), {rename_free(f->child(), inner)});
  }
  std::vector<FormulaPtr> children;
  children.reserve(f->children().size());
  for (const auto& c : f->children()) children.push_back(rename_free(c, renaming));
  return Formula::make(f->kind(), {}, {}, 0, f->sort(), std::move(children));
}

std::size_t tree_size(const FormulaPtr& f) {
  std::size_t n = 1;
  for (const auto& c : f->children()) n += tree_size(c);
  return n;
}

Signature Signature::permutations() { return {"permutations", true, true, false, 0, 0}; }
Signature Signature::gridded_permutations(std::size_t n) { return {"gridded permutations", true, true, false, n, 0}; }
Signature Signature::words(std::size_t n) { return {"words", false, false, true, 0, n}; }

namespace {

const Formula* first_foreign_atom(const Signature& s, const FormulaPtr& f) {
  switch (f->kind()) {
    case Kind::order1: return s.order1 ? nullptr : f.get();
    case Kind::order2: return s.order2 ? nullptr : f.get();
    case Kind::word_order: return s.word_order ? nullptr : f.get();
    case Kind::cell: return f->label() < s.cells ? nullptr : f.get();
    case Kind::letter: return f->label() < s.letters ? nullptr : f.get();
    default: break;
  }
  for (const auto& c : f->children()) {
    if (const Formula* bad = first_foreign_atom(s, c)) return bad;
  }
  return nullptr;
}

}  // namespace

bool Signature::admits(const FormulaPtr& f) const { return first_foreign_atom(*this, f) == nullptr; }

void Signature::check(const FormulaPtr& f) const {
  if (const Formula* bad = first_foreign_atom(*this, f)) {
    auto copy = Formula::make(bad->kind(), bad->first(), bad->second(), bad->label(), bad->sort(), {});
    throw SignatureError("atom " + to_text(copy) + " is not in the signature of " + name);
  }
}

namespace {

void print(const FormulaPtr& f, std::string& out) {
  auto head = [&](const char* name) {
    out += '(';
    out += name;
  };
  switch (f->kind()) {
    case Kind::truth: out += "true"; return;
    case Kind::falsity: out += "false"; return;
    case Kind::order1: head("<1"); break;
    case Kind::order2: head("<2"); break;
    case Kind::word_order: head("<"); break;
    case Kind::equal: head("="); break;
    case Kind::member: head("in"); break;
    case Kind::cell:
    case Kind::letter:
      out += f->kind() == Kind::cell ? "(C " : "(U ";
      out += std::to_string(f->label() + 1) + ' ' + f->first() + ')';
      return;
    case Kind::negation: head("not"); break;
    case Kind::conjunction: head("and"); break;
    case Kind::disjunction: head("or"); break;
    case Kind::implication: head("implies"); break;
    case Kind::equivalence: head("iff"); break;
    case Kind::exists:
    case Kind::forall:
      head(f->kind() == Kind::exists ? (f->sort() == Sort::set ? "exists-set" : "exists")
                                     : (f->sort() == Sort::set ? "forall-set" : "forall"));
      out += ' ' + f->variable();
      break;
  }
  if (f->is_atom()) {
    out += ' ' + f->first() + ' ' + f->second() + ')';
    return;
  }
  for (const auto& c : f->children()) {
    out += ' ';
    print(c, out);
  }
  out += ')';
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  FormulaPtr parse_all() {
    FormulaPtr f = parse();
    skip();
    if (pos_ < text_.size()) fail("trailing input after formula");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw InputError(what, line, column);
  }

  void skip() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::string token() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '(' || c == ')' || c == ';' || std::isspace(static_cast<unsigned char>(c))) break;
      ++pos_;
    }
    if (start == pos_) fail("expected a name");
    return std::string(text_.substr(start, pos_ - start));
  }

  void expect(char c) {
    skip();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool peek_close() {
    skip();
    return pos_ < text_.size() && text_[pos_] == ')';
  }

  std::size_t index() {
    std::size_t at = pos_;
    std::string t = token();
    std::size_t value = 0;
    for (char c : t) {
      if (!std::isdigit(static_cast<unsigned char>(c)) || value > 100'000'000) {
        pos_ = at;
        skip();
        fail("expected a positive index, got '" + t + "'");
      }
      value = value * 10 + static_cast<std::size_t>(c - '0');
    }
    if (value == 0) {
      pos_ = at;
      skip();
      fail("indices are 1-based");
    }
    return value - 1;
  }

  FormulaPtr parse() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (text_[pos_] != '(') {
      std::size_t at = pos_;
      std::string t = token();
      if (t == "true") return top();
      if (t == "false") return bottom();
      pos_ = at;
      fail("unexpected '" + t + "'");
    }
    ++pos_;
    std::size_t at = pos_;
    std::string op = token();
    FormulaPtr result;
    if (op == "<1" || op == "<2" || op == "<" || op == "=" || op == "in") {
      std::string a = token();
      std::string b = token();
      if (op == "<1") result = lt1(a, b);
      else if (op == "<2") result = lt2(a, b);
      else if (op == "<") result = lt(a, b);
      else if (op == "=") result = eq(a, b);
      else result = member(a, b);
    } else if (op == "C" || op == "U") {
      std::size_t i = index();
      std::string x = token();
      result = op == "C" ? cell(i, x) : letter(i, x);
    } else if (op == "not") {
      result = Formula::make(Kind::negation, {}, {}, 0, Sort::element, {parse()});
    } else if (op == "and" || op == "or") {
      std::vector<FormulaPtr> parts;
      while (!peek_close()) parts.push_back(parse());
      if (parts.size() < 2) {
        result = op == "and" ? conj(std::move(parts)) : disj(std::move(parts));
      } else {
        result = Formula::make(op == "and" ? Kind::conjunction : Kind::disjunction, {}, {}, 0, Sort::element,
                               std::move(parts));
      }
    } else if (op == "implies" || op == "iff") {
      FormulaPtr a = parse();
      FormulaPtr b = parse();
      result = Formula::make(op == "implies" ? Kind::implication : Kind::equivalence, {}, {}, 0, Sort::element,
                             {std::move(a), std::move(b)});
    } else if (op == "exists" || op == "forall" || op == "exists-set" || op == "forall-set") {
      std::string x = token();
      FormulaPtr body = parse();
      const Kind kind = op.rfind("exists", 0) == 0 ? Kind::exists : Kind::forall;
      const Sort sort = op.size() > 6 && op.find("-set") != std::string::npos ? Sort::set : Sort::element;
      result = Formula::make(kind, x, {}, 0, sort, {std::move(body)});
    } else {
      pos_ = at;
      fail("unknown operator '" + op + "'");
    }
    expect(')');
    return result;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string to_text(const FormulaPtr& f) {
  std::string out;
  print(f, out);
  return out;
}

FormulaPtr parse_formula(std::string_view text) { return Parser(text).parse_all(); }

bool same_structure(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (a->kind() != b->kind() || a->first() != b->first() || a->second() != b->second() ||
      a->label() != b->label() || a->sort() != b->sort() || a->children().size() != b->children().size()) {
    return false;
  }
  for (std::size_t i = 0; i < a->children().size(); ++i) {
    if (!same_structure(a->children()[i], b->children()[i])) return false;
  }
  return true;
}

}  // namespace gridclass::mso

#include "bcalc/text.hpp"

#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>

#include "bcalc/ops.hpp"

namespace bcalc {

std::vector<std::string> letters(const std::string& s) {
  std::vector<std::string> v;
  for (char c : s) v.push_back(std::string(1, c));
  return v;
}

namespace {

class Parser {
 public:
  Parser(const std::string& s, const ParseEnv& env) : s_(s), env_(env) {
    for (size_t i = 0; i < env.free_names.size(); ++i) ids_[env.free_names[i]] = (int)i;
  }

  Expr run() {
    Expr e = expr();
    ws();
    if (p_ != s_.size()) fail("unexpected '" + std::string(1, s_[p_]) + "'");
    int nfree = (int)env_.free_names.size();
    for (auto& t : e) {
      mark_contractions(t);
      for (int id : free_ids(t))
        if (id >= nfree) fail("index '" + name_of(id) + "' is neither free nor contracted");
    }
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& m) const {
    throw std::invalid_argument("parse error at " + std::to_string(p_) + ": " + m);
  }

  std::string name_of(int id) const {
    for (auto& [n, i] : ids_)
      if (i == id) return n;
    return "?";
  }

  void ws() {
    while (p_ < s_.size() && std::isspace((unsigned char)s_[p_])) ++p_;
  }
  bool at(char c) {
    ws();
    return p_ < s_.size() && s_[p_] == c;
  }
  void expect(char c) {
    if (!at(c)) fail(std::string("expected '") + c + "'");
    ++p_;
  }

  Expr expr() {
    Expr out;
    bool first = true;
    while (true) {
      ws();
      int sign = 1;
      if (at('+')) {
        ++p_;
      } else if (at('-')) {
        ++p_;
        sign = -1;
      } else if (!first) {
        break;
      }
      Expr t = term();
      append_scaled(out, t, sign);
      first = false;
      ws();
      if (p_ >= s_.size() || s_[p_] == ')' || s_[p_] == ']' || s_[p_] == ',') break;
    }
    return out;
  }

  bool term_end() {
    ws();
    if (p_ >= s_.size()) return true;
    char c = s_[p_];
    return c == '+' || c == '-' || c == ')' || c == ']' || c == ',';
  }

  Expr term() {
    if (term_end()) fail("expected a term");
    Expr acc = scalar(1);
    while (!term_end()) {
      if (at('*')) {
        ++p_;
        continue;
      }
      if (at('/')) {
        ++p_;
        Rat r = number();
        acc = Rat(1) / r * acc;
        continue;
      }
      acc = mul(acc, factor());
    }
    return acc;
  }

  Rat number() {
    ws();
    size_t st = p_;
    while (p_ < s_.size() && std::isdigit((unsigned char)s_[p_])) ++p_;
    if (st == p_) fail("expected a number");
    Rat r(s_.substr(st, p_ - st));
    if (p_ < s_.size() && s_[p_] == '/' && p_ + 1 < s_.size() && std::isdigit((unsigned char)s_[p_ + 1])) {
      ++p_;
      size_t s2 = p_;
      while (p_ < s_.size() && std::isdigit((unsigned char)s_[p_])) ++p_;
      r /= Rat(s_.substr(s2, p_ - s2));
    }
    r.canonicalize();
    return r;
  }

  std::string ident() {
    size_t st = p_;
    while (p_ < s_.size() && std::isalnum((unsigned char)s_[p_])) ++p_;
    return s_.substr(st, p_ - st);
  }

  int id_for(const std::string& n) {
    auto it = ids_.find(n);
    if (it != ids_.end()) return it->second;
    int id = next_++;
    if (id >= kDummyBase) fail("too many index names");
    ids_[n] = id;
    return id;
  }

  std::vector<Idx> indices() {
    std::vector<Idx> v;
    while (p_ < s_.size() && (s_[p_] == '_' || s_[p_] == '^')) {
      bool upv = s_[p_] == '^';
      ++p_;
      if (p_ < s_.size() && s_[p_] == '{') {
        ++p_;
        while (true) {
          ws();
          if (p_ < s_.size() && s_[p_] == '}') {
            ++p_;
            break;
          }
          size_t st = p_;
          if (p_ >= s_.size() || !std::isalpha((unsigned char)s_[p_])) fail("bad index");
          ++p_;
          while (p_ < s_.size() && std::isdigit((unsigned char)s_[p_])) ++p_;
          v.push_back({(int16_t)id_for(s_.substr(st, p_ - st)), upv});
        }
        continue;
      }
      bool any = false;
      while (p_ < s_.size() && std::isalpha((unsigned char)s_[p_])) {
        size_t st = p_;
        ++p_;
        while (p_ < s_.size() && std::isdigit((unsigned char)s_[p_])) ++p_;
        v.push_back({(int16_t)id_for(s_.substr(st, p_ - st)), upv});
        any = true;
      }
      if (!any) fail("empty index group");
    }
    return v;
  }

  Expr factor() {
    ws();
    if (p_ >= s_.size()) fail("unexpected end");
    char c = s_[p_];
    if (std::isdigit((unsigned char)c)) return scalar(number());
    if (c == '(') {
      ++p_;
      Expr e = expr();
      expect(')');
      return e;
    }
    if (c == '[') {
      ++p_;
      Expr a = expr();
      expect(',');
      Expr b = expr();
      expect(']');
      return mul(a, b) - mul(b, a);
    }
    if (!std::isalpha((unsigned char)c)) fail(std::string("unexpected '") + c + "'");
    std::string name = ident();
    if (name == "L") {
      int k = 1;
      if (p_ < s_.size() && s_[p_] == '^') {
        ++p_;
        int sg = 1;
        if (p_ < s_.size() && s_[p_] == '-') {
          sg = -1;
          ++p_;
        }
        Rat r = number();
        k = sg * (int)r.get_num().get_si();
      }
      return scalar(1, k);
    }
    std::vector<Idx> ix = indices();
    if (name == "n") {
      if (ix.empty()) fail("derivative without index");
      Expr e = factor();
      for (int i = (int)ix.size() - 1; i >= 0; --i) e = nabla(e, ix[i]);
      return e;
    }
    auto mit = env_.macros.find(name);
    if (mit != env_.macros.end()) {
      if ((int)ix.size() != mit->second.nidx) fail("wrong index count for " + name);
      return instantiate(mit->second.body, ix, kDummyBase + 500);
    }
    int s = name == "d" ? (int)G : sym_by_name(name, env_.theory);
    if (s < 0) fail("unknown symbol '" + name + "'");
    if ((int)ix.size() != sym_info(s).nslots) fail("wrong index count for " + name);
    return single(make_factor((Sym)s, ix));
  }

  const std::string& s_;
  const ParseEnv& env_;
  size_t p_ = 0;
  std::map<std::string, int> ids_;
  int next_ = 100;
};

struct Namer {
  const std::vector<std::string>& free;
  std::map<int, std::string> dn;
  int next = 0;
  std::string operator()(int id) {
    if (!is_dummy(id)) {
      if (id < (int)free.size()) return free[id];
      return "X" + std::to_string(id);
    }
    auto it = dn.find(id);
    if (it != dn.end()) return it->second;
    while (true) {
      int k = next++;
      std::string n(1, (char)('a' + k % 26));
      if (k >= 26) n += std::to_string(k / 26);
      bool clash = false;
      for (auto& f : free) clash |= f == n;
      if (clash) continue;
      return dn[id] = n;
    }
  }
};

std::string rat_abs_text(const Rat& r) {
  mpq_class a = abs(r);
  return a.get_str();
}

void text_factor(std::ostringstream& os, const Factor& f, Namer& nm) {
  for (int i = 0; i < f.nder; ++i) os << "n" << (f.ix[i].up ? "^" : "_") << nm(f.ix[i].id) << " ";
  const auto& info = sym_info(f.sym);
  std::string name(info.alias);
  if (f.sym == G && f.slot(0).up != f.slot(1).up) name = "d";
  os << name;
  int cur = -1;
  for (int k = 0; k < f.nslots(); ++k) {
    const Idx& x = f.slot(k);
    int v = x.up ? 1 : 0;
    if (v != cur) {
      os << (x.up ? "^" : "_");
      cur = v;
    }
    os << nm(x.id);
  }
}

}  // namespace

Expr parse_expr(const std::string& text, const ParseEnv& env) {
  Parser p(text, env);
  return p.run();
}

std::string to_text(const Expr& e, const std::vector<std::string>& free_names) {
  if (e.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : e) {
    Namer nm{free_names};
    bool neg = t.c < 0;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    bool bare = t.fac.empty() && t.word.empty() && t.lam == 0;
    bool need_sep = false;
    if (abs(t.c) != 1 || bare) {
      os << rat_abs_text(t.c);
      need_sep = true;
    }
    if (t.lam != 0) {
      if (need_sep) os << " ";
      os << "L";
      if (t.lam != 1) os << "^" << t.lam;
      need_sep = true;
    }
    for (const auto* L : {&t.fac, &t.word})
      for (const auto& f : *L) {
        if (need_sep) os << " ";
        text_factor(os, f, nm);
        need_sep = true;
      }
  }
  return os.str();
}

namespace {

void latex_factor(std::ostringstream& os, const Factor& f, Namer& nm) {
  for (int i = 0; i < f.nder; ++i) os << "\\nabla" << (f.ix[i].up ? "^{" : "_{") << nm(f.ix[i].id) << "}";
  const auto& info = sym_info(f.sym);
  if (f.sym == G)
    os << (f.slot(0).up != f.slot(1).up ? "\\delta" : "g");
  else
    os << info.latex;
  if (f.nslots() == 0) return;
  int cur = -1;
  bool open = false;
  for (int k = 0; k < f.nslots(); ++k) {
    const Idx& x = f.slot(k);
    int v = x.up ? 1 : 0;
    if (v != cur) {
      if (open) os << "}";
      if (cur != -1) os << "{}";
      os << (x.up ? "^{" : "_{");
      open = true;
      cur = v;
    } else {
      os << " ";
    }
    os << nm(x.id);
  }
  if (open) os << "}";
}

void latex_word(std::ostringstream& os, const std::vector<Factor>& w, size_t n, Namer& nm) {
  if (n == 1) {
    latex_factor(os, w[0], nm);
    return;
  }
  os << "[";
  latex_word(os, w, n - 1, nm);
  os << ", ";
  latex_factor(os, w[n - 1], nm);
  os << "]";
}

}  // namespace

std::string to_latex(const Expr& e, const std::vector<std::string>& free_names) {
  if (e.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : e) {
    Namer nm{free_names};
    // a Lie word of length k is printed through its left-normed bracket over k
    Rat c = t.c;
    if (t.word.size() > 1) c /= (int)t.word.size();
    bool neg = c < 0;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    Rat a = abs(c);
    bool bare = t.fac.empty() && t.word.empty() && t.lam == 0;
    if (a != 1 || bare) {
      if (a.get_den() == 1)
        os << a.get_num().get_str();
      else
        os << "\\frac{" << a.get_num().get_str() << "}{" << a.get_den().get_str() << "}";
    }
    if (t.lam != 0) {
      os << "\\tilde{\\Lambda}";
      if (t.lam != 1) os << "^{" << t.lam << "}";
    }
    for (const auto& f : t.fac) {
      os << " ";
      latex_factor(os, f, nm);
    }
    if (!t.word.empty()) {
      os << " ";
      latex_word(os, t.word, t.word.size(), nm);
    }
  }
  return os.str();
}

namespace {

nlohmann::json big(const mpz_class& z) {
  if (z.fits_slong_p()) return (long long)z.get_si();
  return z.get_str();
}

mpz_class from_big(const nlohmann::json& j) {
  if (j.is_string()) return mpz_class(j.get<std::string>());
  return mpz_class(std::to_string(j.get<long long>()));
}

int sym_order(int s, const Ctx* ctx) {
  if (!ctx) return 0;
  switch (s) {
    case TT: return ctx->D() - 3;
    case JJ: return ctx->D() - 4;
    case PSI: return ctx->nstar();
    default: return 0;
  }
}

}  // namespace

nlohmann::json to_json(const Expr& e, const std::vector<std::string>& free_names, const Ctx* ctx) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : e) {
    Namer nm{free_names};
    nlohmann::json jt;
    jt["num"] = big(t.c.get_num());
    jt["den"] = big(t.c.get_den());
    jt["lambda"] = t.lam;
    nlohmann::json fs = nlohmann::json::array();
    auto emit = [&](const Factor& f, int br) {
      nlohmann::json jf;
      jf["sym"] = std::string(sym_info(f.sym).name);
      jf["order"] = sym_order(f.sym, ctx);
      nlohmann::json dv = nlohmann::json::array(), iv = nlohmann::json::array();
      for (int i = 0; i < f.n; ++i) {
        nlohmann::json x = {{"n", nm(f.ix[i].id)}, {"up", f.ix[i].up}};
        (i < f.nder ? dv : iv).push_back(x);
      }
      jf["derivs"] = dv;
      jf["indices"] = iv;
      jf["bracket"] = br;
      fs.push_back(jf);
    };
    for (const auto& f : t.fac) emit(f, -1);
    for (size_t i = 0; i < t.word.size(); ++i) emit(t.word[i], (int)i);
    jt["factors"] = fs;
    terms.push_back(jt);
  }
  return {{"terms", terms}};
}

Expr from_json(const nlohmann::json& j, const ParseEnv& env) {
  Expr out;
  for (const auto& jt : j.at("terms")) {
    Term t;
    t.c = Rat(from_big(jt.at("num")), from_big(jt.at("den")));
    t.c.canonicalize();
    t.c.canonicalize();
    t.lam = jt.value("lambda", 0);
    std::map<std::string, int> ids;
    for (size_t i = 0; i < env.free_names.size(); ++i) ids[env.free_names[i]] = (int)i;
    int next = kDummyBase;
    auto id_for = [&](const std::string& n) {
      auto it = ids.find(n);
      if (it != ids.end()) return it->second;
      return ids[n] = next++;
    };
    std::vector<std::pair<int, Factor>> word;
    for (const auto& jf : jt.at("factors")) {
      int s = sym_by_unique_name(jf.at("sym").get<std::string>());
      if (s < 0) throw std::invalid_argument("unknown symbol in JSON: " + jf.at("sym").get<std::string>());
      Factor f;
      f.sym = (uint8_t)s;
      for (const auto& x : jf.at("derivs")) f.ix[f.n++] = {(int16_t)id_for(x.at("n")), x.at("up").get<bool>()};
      f.nder = f.n;
      for (const auto& x : jf.at("indices")) f.ix[f.n++] = {(int16_t)id_for(x.at("n")), x.at("up").get<bool>()};
      if (f.nslots() != sym_info(s).nslots) throw std::invalid_argument("slot count mismatch in JSON");
      int br = jf.value("bracket", -1);
      if (br >= 0)
        word.push_back({br, f});
      else
        t.fac.push_back(f);
    }
    std::sort(word.begin(), word.end(), [](auto& a, auto& b) { return a.first < b.first; });
    for (auto& [k, f] : word) t.word.push_back(f);
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace bcalc

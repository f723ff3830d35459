#include "mpoly/mpoly.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>

#include "common/rng.hpp"

namespace fqp::mpoly {

bool GrlexLess::operator()(const Exponents& a, const Exponents& b) const noexcept {
  const auto sa = std::accumulate(a.begin(), a.end(), 0u);
  const auto sb = std::accumulate(b.begin(), b.end(), 0u);
  if (sa != sb) return sa < sb;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

MultiPoly::MultiPoly(FieldRef field, std::vector<std::size_t> group_sizes)
    : field_(std::move(field)), groups_(std::move(group_sizes)) {
  if (groups_.empty()) throw ValidationError("polynomial needs at least one variable group");
  for (auto g : groups_)
    if (g == 0) throw ValidationError("variable groups must be nonempty");
  num_vars_ = std::accumulate(groups_.begin(), groups_.end(), std::size_t{0});
}

void MultiPoly::add_term(const Exponents& e, Raw c) {
  if (e.size() != num_vars_)
    throw ValidationError("monomial has " + std::to_string(e.size()) + " exponents, expected " +
                          std::to_string(num_vars_));
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second = field_->add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  }
}

Raw MultiPoly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? 0 : it->second;
}

void MultiPoly::check_same_shape(const MultiPoly& other) const {
  if (field_ != other.field_) throw ValidationError("polynomials over different fields");
  if (groups_ != other.groups_) throw ValidationError("polynomials with different variable groups");
}

MultiPoly MultiPoly::operator+(const MultiPoly& other) const {
  check_same_shape(other);
  MultiPoly out = *this;
  for (const auto& [e, c] : other.terms_) out.add_term(e, c);
  return out;
}

MultiPoly MultiPoly::operator-(const MultiPoly& other) const {
  check_same_shape(other);
  MultiPoly out = *this;
  for (const auto& [e, c] : other.terms_) out.add_term(e, field_->neg(c));
  return out;
}

MultiPoly MultiPoly::operator*(const MultiPoly& other) const {
  check_same_shape(other);
  MultiPoly out(field_, groups_);
  Exponents e(num_vars_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : other.terms_) {
      for (std::size_t i = 0; i < num_vars_; ++i) e[i] = static_cast<std::uint16_t>(ea[i] + eb[i]);
      out.add_term(e, field_->mul(ca, cb));
    }
  }
  return out;
}

MultiPoly MultiPoly::scaled(Raw c) const {
  MultiPoly out(field_, groups_);
  for (const auto& [e, v] : terms_) out.add_term(e, field_->mul(v, c));
  return out;
}

bool MultiPoly::operator==(const MultiPoly& other) const {
  return field_ == other.field_ && groups_ == other.groups_ && terms_ == other.terms_;
}

Raw MultiPoly::eval(std::span<const Raw> x) const {
  if (x.size() != num_vars_)
    throw ValidationError("point has " + std::to_string(x.size()) + " coordinates, polynomial has " +
                          std::to_string(num_vars_) + " variables");
  const gf::Field& F = *field_;
  for (Raw v : x)
    if (v >= F.cardinality()) throw ValidationError("coordinate outside F_" + F.name());
  Raw acc = 0;
  for (const auto& [e, c] : terms_) {
    Raw t = c;
    for (std::size_t i = 0; i < num_vars_; ++i)
      if (e[i]) t = F.mul(t, F.pow(x[i], e[i]));
    acc = F.add(acc, t);
  }
  return acc;
}

Raw MultiPoly::eval(const std::vector<std::vector<Raw>>& per_group) const {
  if (per_group.size() != groups_.size())
    throw ValidationError("point has " + std::to_string(per_group.size()) + " groups, polynomial has " +
                          std::to_string(groups_.size()));
  std::vector<Raw> flat;
  flat.reserve(num_vars_);
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    if (per_group[g].size() != groups_[g])
      throw ValidationError("group " + std::to_string(g) + " has " +
                            std::to_string(per_group[g].size()) + " coordinates, expected " +
                            std::to_string(groups_[g]));
    flat.insert(flat.end(), per_group[g].begin(), per_group[g].end());
  }
  return eval(flat);
}

MultiPoly MultiPoly::partial_derivative(std::size_t var) const {
  if (var >= num_vars_) throw ValidationError("variable index " + std::to_string(var) + " out of range");
  MultiPoly out(field_, groups_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents d = e;
    --d[var];
    out.add_term(d, field_->mul(c, field_->from_int(e[var])));
  }
  return out;
}

std::vector<MultiPoly> MultiPoly::gradient() const {
  std::vector<MultiPoly> out;
  out.reserve(num_vars_);
  for (std::size_t j = 0; j < num_vars_; ++j) out.push_back(partial_derivative(j));
  return out;
}

std::vector<int> MultiPoly::group_degrees() const {
  std::vector<int> out(groups_.size(), kZeroDegree);
  for (const auto& [e, c] : terms_) {
    std::size_t v = 0;
    for (std::size_t g = 0; g < groups_.size(); ++g) {
      int deg = 0;
      for (std::size_t i = 0; i < groups_[g]; ++i) deg += e[v++];
      out[g] = std::max(out[g], deg);
    }
  }
  return out;
}

int MultiPoly::total_degree() const {
  int best = kZeroDegree;
  for (const auto& [e, c] : terms_)
    best = std::max(best, static_cast<int>(std::accumulate(e.begin(), e.end(), 0u)));
  return best;
}

std::optional<std::vector<int>> MultiPoly::multidegree() const {
  if (terms_.empty()) return std::nullopt;
  std::optional<std::vector<int>> degs;
  for (const auto& [e, c] : terms_) {
    std::vector<int> here(groups_.size(), 0);
    std::size_t v = 0;
    for (std::size_t g = 0; g < groups_.size(); ++g)
      for (std::size_t i = 0; i < groups_[g]; ++i) here[g] += e[v++];
    if (!degs)
      degs = std::move(here);
    else if (*degs != here)
      return std::nullopt;
  }
  return degs;
}

MultiPoly MultiPoly::embed(const gf::Embedding& emb) const {
  if (emb.source() != field_) throw ValidationError("embedding source does not match polynomial field");
  MultiPoly out(emb.target(), groups_);
  for (const auto& [e, c] : terms_) out.add_term(e, emb(c));
  return out;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  // Highest degree first reads more naturally.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    if (!out.empty()) out += " + ";
    out += field_->in_prime_subfield(c) ? std::to_string(c) : "(" + field_->format(c) + ")";
    for (std::size_t i = 0; i < num_vars_; ++i)
      if (e[i]) out += "*X" + std::to_string(i) + "^" + std::to_string(e[i]);
  }
  return out;
}

CompiledPoly::CompiledPoly(const MultiPoly& f) : field_(f.field().get()) {
  terms_.reserve(f.terms().size());
  for (const auto& [e, c] : f.terms()) {
    Term t{c, static_cast<std::uint32_t>(factors_.size()), 0};
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) factors_.push_back({static_cast<std::uint32_t>(i), e[i]});
    t.end = static_cast<std::uint32_t>(factors_.size());
    terms_.push_back(t);
  }
}

namespace {

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  struct Token {
    enum Kind { End, Int, Var, Star, Caret, Plus, Minus, Bad } kind;
    std::string_view text;
    std::size_t offset;
  };

  Token next() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    const std::size_t start = pos_;
    if (pos_ >= s_.size()) return {Token::End, {}, start};
    const char c = s_[pos_];
    auto single = [&](Token::Kind k) {
      ++pos_;
      return Token{k, s_.substr(start, 1), start};
    };
    if (c == '*') return single(Token::Star);
    if (c == '^') return single(Token::Caret);
    if (c == '+') return single(Token::Plus);
    if (c == '-') return single(Token::Minus);
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return {Token::Int, s_.substr(start, pos_ - start), start};
    }
    if (c == 'X') {
      ++pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (pos_ == start + 1) return {Token::Bad, s_.substr(start, 1), start};
      return {Token::Var, s_.substr(start, pos_ - start), start};
    }
    while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return {Token::Bad, s_.substr(start, pos_ - start), start};
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

[[noreturn]] void parse_fail(const Lexer::Token& t, const std::string& expected) {
  const std::string tok = t.kind == Lexer::Token::End ? "end of input" : "'" + std::string(t.text) + "'";
  throw ValidationError("polynomial parse error at offset " + std::to_string(t.offset) +
                        ": unexpected " + tok + ", expected " + expected);
}

std::uint64_t to_uint(const Lexer::Token& t, std::string_view digits) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
  if (ec != std::errc{} || ptr != digits.data() + digits.size())
    throw ValidationError("polynomial parse error at offset " + std::to_string(t.offset) +
                          ": number '" + std::string(t.text) + "' out of range");
  return v;
}

}  // namespace

MultiPoly parse_poly(std::string_view text, FieldRef field, std::vector<std::size_t> group_sizes) {
  MultiPoly out(field, std::move(group_sizes));
  const gf::Field& F = *field;
  Lexer lex(text);
  auto tok = lex.next();
  bool first = true;
  for (;;) {
    bool negative = false;
    if (tok.kind == Lexer::Token::Plus || tok.kind == Lexer::Token::Minus) {
      negative = tok.kind == Lexer::Token::Minus;
      tok = lex.next();
    } else if (!first) {
      parse_fail(tok, "'+' or '-'");
    }
    if (tok.kind != Lexer::Token::Int) parse_fail(tok, "integer coefficient");
    const auto mag = to_uint(tok, tok.text);
    Raw coeff = F.from_int(static_cast<std::int64_t>(mag % F.characteristic()));
    if (negative) coeff = F.neg(coeff);
    Exponents e(out.num_vars(), 0);
    tok = lex.next();
    while (tok.kind == Lexer::Token::Star) {
      const auto var_tok = lex.next();
      if (var_tok.kind != Lexer::Token::Var) parse_fail(var_tok, "variable X<index>");
      const auto idx = to_uint(var_tok, var_tok.text.substr(1));
      if (idx >= out.num_vars())
        throw ValidationError("polynomial parse error at offset " + std::to_string(var_tok.offset) +
                              ": variable '" + std::string(var_tok.text) + "' out of range (" +
                              std::to_string(out.num_vars()) + " variables)");
      const auto caret = lex.next();
      if (caret.kind != Lexer::Token::Caret) parse_fail(caret, "'^'");
      const auto exp_tok = lex.next();
      if (exp_tok.kind != Lexer::Token::Int) parse_fail(exp_tok, "integer exponent");
      const auto ex = to_uint(exp_tok, exp_tok.text);
      if (ex + e[idx] > 4096)
        throw ValidationError("polynomial parse error at offset " + std::to_string(exp_tok.offset) +
                              ": exponent '" + std::string(exp_tok.text) + "' too large");
      e[idx] = static_cast<std::uint16_t>(e[idx] + ex);
      tok = lex.next();
    }
    out.add_term(e, coeff);
    first = false;
    if (tok.kind == Lexer::Token::End) break;
  }
  return out;
}

std::vector<Exponents> monomials_of_degree(std::size_t num_vars, int d) {
  std::vector<Exponents> out;
  if (d < 0 || num_vars == 0) return out;
  Exponents cur(num_vars, 0);
  // Recursive fill: larger exponents on earlier variables first (grlex order).
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i + 1 == num_vars) {
      cur[i] = static_cast<std::uint16_t>(left);
      out.push_back(cur);
      return;
    }
    for (int a = left; a >= 0; --a) {
      cur[i] = static_cast<std::uint16_t>(a);
      self(self, i + 1, left - a);
    }
  };
  rec(rec, 0, d);
  return out;
}

MultiPoly random_multihomogeneous(FieldRef field, std::vector<std::size_t> group_sizes,
                                  const std::vector<int>& multidegree, std::uint64_t seed) {
  if (multidegree.size() != group_sizes.size())
    throw ValidationError("multidegree length does not match the number of groups");
  for (int d : multidegree)
    if (d < 0) throw ValidationError("multidegree entries must be nonnegative");

  std::vector<std::vector<Exponents>> per_group;
  for (std::size_t g = 0; g < group_sizes.size(); ++g)
    per_group.push_back(monomials_of_degree(group_sizes[g], multidegree[g]));

  const std::uint32_t q = field->cardinality();
  Rng rng(seed);
  const std::size_t nvars = std::accumulate(group_sizes.begin(), group_sizes.end(), std::size_t{0});
  for (;;) {
    MultiPoly out(field, group_sizes);
    std::vector<std::size_t> idx(per_group.size(), 0);
    Exponents e(nvars);
    for (;;) {
      std::size_t v = 0;
      for (std::size_t g = 0; g < per_group.size(); ++g)
        for (auto x : per_group[g][idx[g]]) e[v++] = x;
      out.add_term(e, static_cast<Raw>(rng.below(q)));
      std::size_t g = per_group.size();
      while (g > 0) {
        --g;
        if (++idx[g] < per_group[g].size()) break;
        idx[g] = 0;
        if (g == 0) g = SIZE_MAX;
        if (g == SIZE_MAX) break;
      }
      if (g == SIZE_MAX) break;
    }
    if (out.multidegree() == multidegree) return out;
  }
}

}  // namespace fqp::mpoly

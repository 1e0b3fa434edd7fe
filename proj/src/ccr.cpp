#include "bordqft/ccr.hpp"

#include <algorithm>
#include <sstream>

namespace bordqft {

std::string CCRElement::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << gauss_str(c) << "*";
    if (w.empty()) {
      os << "1";
    } else {
      for (size_t i = 0; i < w.size(); ++i) {
        if (i) os << ".";
        os << "e" << w[i];
      }
    }
  }
  return os.str();
}

CCRElement CCRAlgebra::one() const { return scalar(GaussRat(Rat(1))); }

CCRElement CCRAlgebra::scalar(const GaussRat& c) const {
  CCRElement e(space_);
  if (!c.is_zero()) e.terms_[Word{}] = c;
  return e;
}

CCRElement CCRAlgebra::generator(int index) const {
  if (index < 0 || index >= space_->dim)
    throw IndexOutOfRange("generator index " + std::to_string(index) + " out of range");
  CCRElement e(space_);
  e.terms_[Word{index}] = GaussRat(Rat(1));
  return e;
}

CCRElement CCRAlgebra::from_vector(const RatVec& v) const {
  if (int(v.size()) != space_->dim) throw IndexOutOfRange("from_vector: size mismatch");
  CCRElement e(space_);
  for (int i = 0; i < space_->dim; ++i)
    if (v[size_t(i)] != 0) e.terms_[Word{i}] = GaussRat(v[size_t(i)]);
  return e;
}

namespace {

void accumulate(std::map<Word, GaussRat>& acc, const Word& w, const GaussRat& c) {
  if (c.is_zero()) return;
  auto it = acc.find(w);
  if (it == acc.end()) {
    acc.emplace(w, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) acc.erase(it);
  }
}

// positions of ascents w[k] < w[k+1]
std::vector<int> ascents(const Word& w) {
  std::vector<int> out;
  for (size_t k = 0; k + 1 < w.size(); ++k)
    if (w[k] < w[k + 1]) out.push_back(int(k));
  return out;
}

}  // namespace

CCRElement CCRAlgebra::normal_form(const std::map<Word, GaussRat>& raw, RewriteStrategy strategy,
                                   std::mt19937_64* rng) const {
  std::map<Word, GaussRat> done;
  std::vector<std::pair<Word, GaussRat>> work(raw.begin(), raw.end());
  while (!work.empty()) {
    auto [w, c] = work.back();
    work.pop_back();
    if (c.is_zero()) continue;
    for (int letter : w)
      if (letter < 0 || letter >= space_->dim)
        throw IndexOutOfRange("normal_form: letter out of range");
    std::vector<int> asc = ascents(w);
    if (asc.empty()) {
      accumulate(done, w, c);
      continue;
    }
    int k;
    switch (strategy) {
      case RewriteStrategy::FirstAscent:
        k = asc.front();
        break;
      case RewriteStrategy::LastAscent:
        k = asc.back();
        break;
      default: {
        if (!rng) throw ValidationError("normal_form: RandomAscent needs an rng");
        std::uniform_int_distribution<size_t> dist(0, asc.size() - 1);
        k = asc[dist(*rng)];
      }
    }
    int a = w[size_t(k)], b = w[size_t(k) + 1];
    // v_a v_b -> v_b v_a + i tau(a,b) 1
    Word swapped = w;
    std::swap(swapped[size_t(k)], swapped[size_t(k) + 1]);
    work.emplace_back(std::move(swapped), c);
    Rat t = space_->form.at(a, b);
    if (t != 0) {
      Word shorter = w;
      shorter.erase(shorter.begin() + k, shorter.begin() + k + 2);
      work.emplace_back(std::move(shorter), c * GaussRat::i() * GaussRat(t));
    }
  }
  CCRElement e(space_);
  e.terms_ = std::move(done);
  return e;
}

void CCRAlgebra::check_parent(const CCRElement& a) const {
  if (!a.parent() || !(*a.parent() == *space_))
    throw ParentMismatch("element belongs to a different algebra");
}

CCRElement CCRAlgebra::add(const CCRElement& a, const CCRElement& b) const {
  check_parent(a);
  check_parent(b);
  CCRElement out(space_);
  out.terms_ = a.terms();
  for (const auto& [w, c] : b.terms()) accumulate(out.terms_, w, c);
  return out;
}

CCRElement CCRAlgebra::scale(const GaussRat& c, const CCRElement& a) const {
  check_parent(a);
  CCRElement out(space_);
  if (c.is_zero()) return out;
  for (const auto& [w, coeff] : a.terms()) out.terms_[w] = c * coeff;
  return out;
}

CCRElement CCRAlgebra::multiply(const CCRElement& a, const CCRElement& b) const {
  check_parent(a);
  check_parent(b);
  std::map<Word, GaussRat> raw;
  for (const auto& [wa, ca] : a.terms())
    for (const auto& [wb, cb] : b.terms()) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      accumulate(raw, w, ca * cb);
    }
  return normal_form(raw);
}

CCRElement CCRAlgebra::star(const CCRElement& a) const {
  check_parent(a);
  std::map<Word, GaussRat> raw;
  for (const auto& [w, c] : a.terms()) {
    Word rev(w.rbegin(), w.rend());
    accumulate(raw, rev, c.conj());
  }
  return normal_form(raw);
}

CCRElement CCRAlgebra::commutator(const CCRElement& a, const CCRElement& b) const {
  CCRElement ab = multiply(a, b);
  CCRElement ba = multiply(b, a);
  return add(ab, scale(GaussRat(Rat(-1)), ba));
}

CCRElement CCRAlgebra::random_element(std::mt19937_64& rng, int max_degree) const {
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_int_distribution<int> letter(0, space_->dim - 1);
  std::uniform_int_distribution<int> small(-3, 3);
  std::uniform_int_distribution<int> nterms(1, 4);
  std::map<Word, GaussRat> raw;
  int n = nterms(rng);
  for (int t = 0; t < n; ++t) {
    Word w;
    int d = deg(rng);
    for (int i = 0; i < d; ++i) w.push_back(letter(rng));
    accumulate(raw, w, GaussRat(Rat(small(rng)), Rat(small(rng))));
  }
  return normal_form(raw);
}

namespace {

struct Parser {
  const std::string& s;
  size_t pos = 0;

  explicit Parser(const std::string& text) : s(text) {}

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  bool peek_is(char c) {
    skip_ws();
    return pos < s.size() && s[pos] == c;
  }
  bool done() {
    skip_ws();
    return pos == s.size();
  }

  Rat parse_rat() {
    skip_ws();
    size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos < s.size() && s[pos] == '/') {
      ++pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    if (pos == start) throw ValidationError("element literal: expected rational at " +
                                            std::to_string(start));
    return rat_parse(s.substr(start, pos - start));
  }

  // "(a+bi)" with rational a, b
  GaussRat parse_coeff() {
    if (!eat('(')) throw ValidationError("element literal: expected '('");
    Rat re = parse_rat();
    skip_ws();
    Rat im(0);
    if (peek_is('+') || peek_is('-')) {
      bool neg = peek_is('-');
      ++pos;
      im = parse_rat();
      if (neg) im = -im;
      if (!eat('i')) throw ValidationError("element literal: expected 'i'");
    }
    if (!eat(')')) throw ValidationError("element literal: expected ')'");
    return GaussRat(re, im);
  }

  // "e3.e1" or "1"
  Word parse_word() {
    Word w;
    skip_ws();
    if (peek_is('1')) {
      ++pos;
      return w;
    }
    while (true) {
      if (!eat('e')) throw ValidationError("element literal: expected generator");
      size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      if (pos == start) throw ValidationError("element literal: expected generator index");
      w.push_back(std::stoi(s.substr(start, pos - start)));
      if (!eat('.')) break;
    }
    return w;
  }
};

}  // namespace

CCRElement CCRAlgebra::parse(const std::string& text) const {
  Parser p(text);
  std::map<Word, GaussRat> raw;
  bool negate = p.eat('-');
  while (true) {
    GaussRat c = p.peek_is('(') ? p.parse_coeff() : GaussRat(Rat(1));
    Word w;
    if (p.eat('*')) {
      w = p.parse_word();
    } else {
      p.skip_ws();
      if (p.pos < p.s.size() && (p.s[p.pos] == 'e' || p.s[p.pos] == '1')) w = p.parse_word();
    }
    if (negate) c = -c;
    accumulate(raw, w, c);
    if (p.eat('+')) {
      negate = false;
      continue;
    }
    if (p.eat('-')) {
      negate = true;
      continue;
    }
    break;
  }
  if (!p.done()) throw ValidationError("element literal: trailing characters");
  return normal_form(raw);
}

CCRMorphism::CCRMorphism(const CCRAlgebra& from, const CCRAlgebra& to, PoissonMap map)
    : from_(std::make_shared<CCRAlgebra>(from)),
      to_(std::make_shared<CCRAlgebra>(to)),
      map_(std::move(map)) {
  if (!(map_.src == from.space()) || !(map_.tgt == to.space()))
    throw ParentMismatch("CCRMorphism: Poisson map endpoints do not match the algebras");
  // construction of PoissonMap already guarantees form preservation; an
  // ill-formed raw matrix is rejected before we ever get here
}

CCRElement CCRMorphism::apply(const CCRElement& a) const {
  if (!a.parent() || !(*a.parent() == from_->space()))
    throw ParentMismatch("CCRMorphism: element not in the source algebra");
  // substitute letterwise, expanding products of generator images
  CCRElement out = to_->zero();
  for (const auto& [w, c] : a.terms()) {
    CCRElement term = to_->scalar(c);
    for (int letter : w) {
      RatVec col(size_t(map_.matrix.rows()));
      for (int r = 0; r < map_.matrix.rows(); ++r) col[size_t(r)] = map_.matrix.at(r, letter);
      term = to_->multiply(term, to_->from_vector(col));
    }
    out = to_->add(out, term);
  }
  return out;
}

CCRMorphism CCRMorphism::compose_after(const CCRMorphism& first) const {
  return CCRMorphism(first.from(), to(), map_.compose_after(first.map_));
}

CCRMorphism CCRMorphism::inverse() const {
  return CCRMorphism(to(), from(), map_.inverse());
}

}  // namespace bordqft

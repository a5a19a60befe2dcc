#include "hamforms/serialize.hpp"

#include <fstream>
#include <iterator>
#include <set>

#include "hamforms/errors.hpp"

namespace hamforms {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw ParseError(where + ": " + what); }

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing field '") + key + "'");
  return *it;
}

int int_from_json(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<int>();
}

}  // namespace

Json to_json(const Rational& q) { return q.to_string(); }

Json to_json(const Poly& p) {
  if (p.is_constant()) return to_json(p.constant_value());
  Json out = Json::array();
  for (const auto& t : p.terms()) out.push_back({{"exponents", t.exp}, {"coeff", to_json(t.coeff)}});
  return out;
}

Json to_json(const RatFunc& f) {
  if (f.is_polynomial()) return to_json(f.num() * (Rational(1) / f.den().constant_value()));
  return {{"num", to_json(f.num())}, {"den", to_json(f.den())}};
}

Json to_json(const AltForm<RatFunc>& f) {
  Json terms = Json::array();
  for (const auto& [idx, c] : f.terms()) terms.push_back({{"idx", idx}, {"coeff", to_json(c)}});
  return {{"degree", f.degree()}, {"dim", f.dim()}, {"terms", terms}};
}

Json to_json(const HamPair& pair) {
  Json b = Json::array();
  for (const auto& x : pair.B()) b.push_back(to_json(x));
  return {{"N", pair.N()}, {"T", to_json(pair.T())}, {"g0", to_json(pair.g0())}, {"A", to_json(pair.A())}, {"B", b}};
}

Json to_json(const OmegaForm& om) {
  Json terms = to_json(om.omega)["terms"];
  return {{"N", om.N}, {"terms", terms}};
}

Rational rational_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (!j.is_string()) fail(where, "expected a rational string \"p/q\"");
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const Error& e) {
    fail(where, e.what());
  }
}

Poly poly_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) return Poly(rational_from_json(j, where));
  Poly out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string w = where + "[" + std::to_string(k) + "]";
    const auto& e = field(j[k], "exponents", w);
    if (!e.is_array()) fail(w + ".exponents", "expected an array");
    Poly::Exponents exp;
    for (const auto& x : e) {
      if (!x.is_number_unsigned()) fail(w + ".exponents", "expected non-negative integers");
      exp.push_back(x.get<unsigned>());
    }
    out += Poly::monomial(exp, rational_from_json(field(j[k], "coeff", w), w + ".coeff"));
  }
  return out;
}

RatFunc ratfunc_from_json(const Json& j, const std::string& where) {
  if (j.is_object()) {
    const Poly den = poly_from_json(field(j, "den", where), where + ".den");
    if (den.is_zero()) fail(where + ".den", "zero denominator");
    return RatFunc(poly_from_json(field(j, "num", where), where + ".num"), den);
  }
  return RatFunc(poly_from_json(j, where));
}

namespace {

AltForm<RatFunc> terms_from_json(const Json& terms, int degree, int dim, const std::string& where) {
  if (!terms.is_array()) fail(where, "expected an array of terms");
  AltForm<RatFunc> f(degree, dim);
  std::set<FormIndex> seen;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const std::string w = where + "[" + std::to_string(k) + "]";
    const auto& idx = field(terms[k], "idx", w);
    if (!idx.is_array()) fail(w + ".idx", "expected an array");
    FormIndex index;
    for (const auto& x : idx) index.push_back(int_from_json(x, w + ".idx"));
    if (static_cast<int>(index.size()) != degree)
      throw ValidationError(w + ".idx: expected " + std::to_string(degree) + " indices");
    for (std::size_t a = 0; a < index.size(); ++a) {
      if (index[a] < 1 || index[a] > dim) throw ValidationError(w + ".idx: index out of range 1.." + std::to_string(dim));
      if (a > 0 && index[a] <= index[a - 1]) throw ValidationError(w + ".idx: indices must be strictly increasing");
    }
    if (!seen.insert(index).second) throw ValidationError(w + ".idx: duplicate index tuple");
    f.set(index, ratfunc_from_json(field(terms[k], "coeff", w), w + ".coeff"));
  }
  return f;
}

int even_n(const Json& j) {
  const int n = int_from_json(field(j, "N", "$"), "$.N");
  if (n < 2 || n % 2 != 0) throw ValidationError("$.N: N must be even and at least 2");
  return n;
}

}  // namespace

AltForm<RatFunc> form_from_json(const Json& j, const std::string& where) {
  const int degree = int_from_json(field(j, "degree", where), where + ".degree");
  const int dim = int_from_json(field(j, "dim", where), where + ".dim");
  if (degree < 1 || degree > 4 || dim < 0) throw ValidationError(where + ": unsupported degree or dimension");
  return terms_from_json(field(j, "terms", where), degree, dim, where + ".terms");
}

HamPair pair_from_json(const Json& j) {
  const int n = even_n(j);
  auto shaped = [&](const char* key, int degree) {
    const std::string w = std::string("$.") + key;
    auto f = form_from_json(field(j, key, "$"), w);
    if (f.degree() != degree || f.dim() != n) throw ValidationError(w + ": wrong degree or dimension for N");
    return f;
  };
  const auto& b = field(j, "B", "$");
  if (!b.is_array() || static_cast<int>(b.size()) != n) throw ValidationError("$.B: expected N entries");
  std::vector<RatFunc> bv;
  for (std::size_t k = 0; k < b.size(); ++k) bv.push_back(ratfunc_from_json(b[k], "$.B[" + std::to_string(k) + "]"));
  return HamPair(n, shaped("T", 3), shaped("g0", 2), shaped("A", 2), bv);
}

OmegaForm omega_from_json(const Json& j) {
  const int n = even_n(j);
  return {n, terms_from_json(field(j, "terms", "$"), 3, n + 2, "$.terms")};
}

ProjectiveMap projective_from_json(const Json& j) {
  const auto& a = field(j, "a", "$");
  if (!a.is_array() || a.empty()) fail("$.a", "expected a square array of rows");
  Matrix<Rational> m(a.size(), a.size());
  for (std::size_t r = 0; r < a.size(); ++r) {
    if (!a[r].is_array() || a[r].size() != a.size()) fail("$.a[" + std::to_string(r) + "]", "row has the wrong length");
    for (std::size_t c = 0; c < a.size(); ++c)
      m(r, c) = rational_from_json(a[r][c], "$.a[" + std::to_string(r) + "][" + std::to_string(c) + "]");
  }
  return {m};
}

ReciprocalMap reciprocal_from_json(const Json& j) {
  ReciprocalMap r;
  auto vec = [&](const char* key) {
    std::vector<Rational> out;
    const auto& v = field(j, key, "$");
    if (!v.is_array()) fail(std::string("$.") + key, "expected an array");
    for (std::size_t k = 0; k < v.size(); ++k)
      out.push_back(rational_from_json(v[k], std::string("$.") + key + "[" + std::to_string(k) + "]"));
    return out;
  };
  auto scalar = [&](const char* key, Rational& dst) {
    if (j.contains(key)) dst = rational_from_json(j[key], std::string("$.") + key);
  };
  r.alpha = vec("alpha");
  r.beta_i = j.contains("beta_i") ? vec("beta_i") : std::vector<Rational>(r.alpha.size());
  if (r.beta_i.size() != r.alpha.size()) throw ValidationError("$.beta_i: length differs from alpha");
  scalar("alpha0", r.alpha0);
  scalar("beta", r.beta);
  scalar("c", r.c);
  scalar("d", r.d);
  return r;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    const auto upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    throw ParseError(path + ":" + std::to_string(line) + ": malformed JSON");
  }
}

OmegaForm parse_omega_file(const std::string& path) { return omega_from_json(read_json_file(path)); }

HamPair parse_pair_file(const std::string& path) { return pair_from_json(read_json_file(path)); }

}  // namespace hamforms

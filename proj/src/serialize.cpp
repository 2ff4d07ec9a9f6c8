#include "etclosure/serialize.hpp"

#include <sstream>

#include "etclosure/errors.hpp"

namespace etclosure {

Json to_json(const ScalarExpr& e) {
  Json out = Json::array();
  for (const auto& [key, coeff] : e.terms()) {
    Json t;
    t["coeff"] = to_string(coeff);
    t["gamma_pow"] = key.gamma_pow;
    t["msq_pow"] = key.msq_pow;
    t["sym"] = key.sym ? Json::array({key.sym->q, key.sym->order}) : Json(nullptr);
    out.push_back(std::move(t));
  }
  return out;
}

ScalarExpr scalar_from_json(const Json& j) {
  if (!j.is_array()) throw DomainError("scalar expression must be a term list");
  ScalarExpr e;
  for (const auto& t : j) {
    std::optional<Symbol> sym;
    if (!t.at("sym").is_null()) sym = Symbol{t.at("sym").at(0).get<int>(), t.at("sym").at(1).get<int>()};
    e += ScalarExpr::monomial(parse_rational(t.at("coeff").get<std::string>()), t.at("gamma_pow").get<int>(),
                              t.at("msq_pow").get<int>(), sym);
  }
  return e;
}

Json to_json(const FFamilyElement& f) {
  Json phi = Json::array();
  for (const auto& c : f.coeffs()) phi.push_back(to_json(c));
  return Json{{"rank", f.rank()}, {"phi", std::move(phi)}};
}

FFamilyElement family_from_json(const Json& j) {
  std::vector<ScalarExpr> phi;
  for (const auto& c : j.at("phi")) phi.push_back(scalar_from_json(c));
  return FFamilyElement(j.at("rank").get<int>(), std::move(phi));
}

namespace {

template <class T, class F>
Json tensor_json(const SymTensor<T>& t, F&& value) {
  Json comps = Json::array();
  for (std::size_t pos = 0; pos < t.size(); ++pos) {
    comps.push_back(Json{{"idx", t.table().sorted_indices(pos)}, {"value", value(t[pos])}});
  }
  return Json{{"rank", t.rank()}, {"components", std::move(comps)}};
}

}  // namespace

Json to_json(const DenseSymTensor& t) {
  return tensor_json(t, [](double x) { return x; });
}

Json to_json(const ExactSymTensor& t) {
  return tensor_json(t, [](const Rational& x) { return to_string(x); });
}

DenseSymTensor tensor_from_json(const Json& j) {
  DenseSymTensor t(j.at("rank").get<int>());
  for (const auto& c : j.at("components")) {
    const auto idx = c.at("idx").get<std::vector<int>>();
    if (static_cast<int>(idx.size()) != t.rank()) throw DomainError("component index length differs from rank");
    t.at_counts(counts_of(idx)) = c.at("value").get<double>();
  }
  return t;
}

Json to_json(const Vec4& v) { return Json::array({v[0], v[1], v[2], v[3]}); }

std::vector<ClosureRow> closure_rows(const ClosureTensorSet& set) {
  std::vector<ClosureRow> rows;
  for (const auto& [hk, f] : set.tensors) {
    bool any = false;
    for (int s = 0; s <= f.top(); ++s) {
      for (const auto& [key, coeff] : f.phi(s).terms()) {
        ClosureRow r;
        r.h = hk.first;
        r.k = hk.second;
        r.s = s;
        if (key.sym) {
          r.q = key.sym->q;
          r.order = key.sym->order;
        }
        r.prefactor = coeff;
        r.gamma_pow = key.gamma_pow;
        r.msq_pow = key.msq_pow;
        rows.push_back(r);
        any = true;
      }
    }
    if (!any) rows.push_back(ClosureRow{hk.first, hk.second, {}, {}, {}, Rational(0), 0, 0});
  }
  return rows;
}

namespace {

Json opt(const std::optional<int>& v) { return v ? Json(*v) : Json(nullptr); }

std::optional<int> opt_from(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<int>();
}

std::string opt_csv(const std::optional<int>& v) { return v ? std::to_string(*v) : std::string(); }

std::optional<int> opt_from_csv(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return std::stoi(s);
}

const char* kCsvHeader = "h,k,s,q,prefactor,gamma_pow,msq_pow,order";

}  // namespace

Json rows_to_json(const std::vector<ClosureRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    out.push_back(Json{{"h", r.h},
                       {"k", r.k},
                       {"s", opt(r.s)},
                       {"q", opt(r.q)},
                       {"prefactor", to_string(r.prefactor)},
                       {"gamma_pow", r.gamma_pow},
                       {"msq_pow", r.msq_pow},
                       {"order", opt(r.order)}});
  }
  return out;
}

std::vector<ClosureRow> rows_from_json(const Json& j) {
  std::vector<ClosureRow> rows;
  for (const auto& r : j) {
    rows.push_back(ClosureRow{r.at("h").get<int>(), r.at("k").get<int>(), opt_from(r.at("s")), opt_from(r.at("q")),
                              opt_from(r.at("order")), parse_rational(r.at("prefactor").get<std::string>()),
                              r.at("gamma_pow").get<int>(), r.at("msq_pow").get<int>()});
  }
  return rows;
}

std::string rows_to_csv(const std::vector<ClosureRow>& rows) {
  std::ostringstream os;
  os << kCsvHeader << '\n';
  for (const auto& r : rows) {
    os << r.h << ',' << r.k << ',' << opt_csv(r.s) << ',' << opt_csv(r.q) << ',' << to_string(r.prefactor) << ','
       << r.gamma_pow << ',' << r.msq_pow << ',' << opt_csv(r.order) << '\n';
  }
  return os.str();
}

std::vector<ClosureRow> rows_from_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line != kCsvHeader) throw DomainError("unexpected closure csv header");
  std::vector<ClosureRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) f.push_back(cell);
    if (line.back() == ',') f.emplace_back();
    if (f.size() != 8) throw DomainError("closure csv row needs 8 fields");
    rows.push_back(ClosureRow{std::stoi(f[0]), std::stoi(f[1]), opt_from_csv(f[2]), opt_from_csv(f[3]),
                              opt_from_csv(f[7]), parse_rational(f[4]), std::stoi(f[5]), std::stoi(f[6])});
  }
  return rows;
}

}  // namespace etclosure

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "etclosure/closure.hpp"
#include "etclosure/f_family.hpp"
#include "etclosure/scalar_expr.hpp"
#include "etclosure/tensor_dense.hpp"

namespace etclosure {

using Json = nlohmann::ordered_json;

Json to_json(const ScalarExpr& e);
ScalarExpr scalar_from_json(const Json& j);

Json to_json(const FFamilyElement& f);
FFamilyElement family_from_json(const Json& j);

Json to_json(const DenseSymTensor& t);
Json to_json(const ExactSymTensor& t);  // values as "p/q" strings
DenseSymTensor tensor_from_json(const Json& j);

Json to_json(const Vec4& v);

// One term of one closure coefficient. A vanishing tensor gets a single row
// with s, q and order unset and prefactor "0".
struct ClosureRow {
  int h = 0;
  int k = 0;
  std::optional<int> s;
  std::optional<int> q;
  std::optional<int> order;
  Rational prefactor;
  int gamma_pow = 0;
  int msq_pow = 0;

  friend bool operator==(const ClosureRow&, const ClosureRow&) = default;
};

std::vector<ClosureRow> closure_rows(const ClosureTensorSet& set);
Json rows_to_json(const std::vector<ClosureRow>& rows);
std::vector<ClosureRow> rows_from_json(const Json& j);
std::string rows_to_csv(const std::vector<ClosureRow>& rows);
std::vector<ClosureRow> rows_from_csv(const std::string& text);

}  // namespace etclosure

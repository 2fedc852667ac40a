#pragma once

#include <json.hpp>

#include "hermiwitt/endo.hpp"
#include "hermiwitt/morita.hpp"
#include "hermiwitt/wittclass.hpp"

namespace hermiwitt {

using json = nlohmann::json;

// F-values: {"base":"F","val":v,"digits":[d0,...]} (little endian, base p),
// or an integer / "num" / "num/den" string. A zero is written with empty
// digits and val = its absolute precision.
Padic padic_from_json(const FieldContext& ctx, const json& j);
json to_json(const Padic& x);

// L-values: {"a": F, "b": F} for a + b u
QuadElem l_from_json(const FieldContext& ctx, const json& j);
json to_json(const QuadElem& x);

// D-values: {"a": L, "b": L} for a + b pi_D
Quat quat_from_json(const FieldContext& ctx, const json& j);
json to_json(const Quat& x);

DMatrix dmatrix_from_json(const FieldContext& ctx, const json& j);
json to_json(const DMatrix& m);

// {"epsilon": e, "gram": [[D, ...], ...]}
HermitianForm form_from_json(const FieldContext& ctx, const json& j);
json to_json(const HermitianForm& h);

json to_json(const WittClassD& c);
WittClassD witt_class_from_json(int epsilon, const json& j);
json to_json(const WittClassE& c);

// endo documents
EndoParameter endo_parameter_from_json(const json& j);
json to_json(const EndoParameter& fm);
LiftInput lift_input_from_json(const json& j);

// all malformed input surfaces as this
class MalformedInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hermiwitt

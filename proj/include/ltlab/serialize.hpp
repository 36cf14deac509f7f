#pragma once

#include "json.hpp"
#include "ltlab/residue_omega.hpp"
#include "ltlab/witt.hpp"

namespace ltlab {

using json = nlohmann::json;

// Integers are written as decimal strings. Readers also take JSON numbers and
// a few short forms (a bare integer, a coordinate array, a coefficient list).

json to_json(const RingSpec& s);
RingSpec ring_spec_from_json(const json& j);

json to_json(const BaseElem& a);
json to_json(const ResidueElem& a);
// {"coords", "prec"}, an integer, or a coordinate array; prec defaults to `prec`
BaseElem elem_from_json(const BaseRing& R, const json& j, int prec);
ResidueElem residue_elem_from_json(const BaseRing& R, const json& j);

json to_json(const LaurentSeries& f);
json to_json(const ResidueSeries& f);
// the full encoding, {"low", "coeffs"}, or a coefficient list starting at low;
// short forms are padded with zeros to high
LaurentSeries series_from_json(const BaseRing& R, const json& j, int prec, int low, int high);
ResidueSeries residue_series_from_json(const BaseRing& R, const json& j, int low, int high);

json to_json(const Rational& r);
Rational rational_from_json(const BaseRing& R, const json& j);
json to_json(const RationalSeries& f);
RationalSeries rational_series_from_json(const BaseRing& R, const json& j);

json to_json(const Bivariate& F);

json to_json(const DiffForm& w);
DiffForm form_from_json(const BaseRing& R, const json& j, int prec, int low, int high);

json to_json(const TorsionClass& t);
TorsionClass torsion_from_json(const BaseRing& R, const json& j);

json to_json(const WittVec& x);
// full encoding, or a bare component list read in domain d
WittVec witt_from_json(const BaseRing& R, const json& j, WittDomain d, int prec, int low, int high);

}  // namespace ltlab

#pragma once

#include <json.hpp>

#include "lomega/extend.hpp"
#include "lomega/fpengine.hpp"
#include "lomega/maps.hpp"
#include "lomega/minmod.hpp"
#include "lomega/modulus.hpp"
#include "lomega/spaces.hpp"

namespace lomega {

using json = nlohmann::ordered_json;

json to_json(const Point& p);
Point point_from_json(const json& j);

json to_json(const Modulus& m);           // custom moduli are densely tabulated
Modulus modulus_from_json(const json& j);

json to_json(const GridSpec& g);
GridSpec grid_from_json(const json& j);

json to_json(const Flag& f);
json to_json(const DeltaOmegaResult& d);
json to_json(const OsgoodResult& o);
json to_json(const ModulusReport& r);
json to_json(const EmpiricalModulus& e);
json to_json(const WorstPair& w);
json to_json(const Certificate& c);
json to_json(const DomainSpec& d);
json to_json(const MapMetadata& m);
json map_summary(const MapInstance& m);
json to_json(const DisplacementReport& r);
json to_json(const AFPSequence& s);
json to_json(const DiametralProfile& p);
json to_json(const BreneisState& s);
json to_json(const FpfWitness& w);

json to_json(const PiecewiseFunction& f);
PiecewiseFunction piecewise_from_json(const json& j);

}  // namespace lomega

#pragma once

#include <iosfwd>
#include <json.hpp>
#include <string>

#include "gtd/geometry.hpp"
#include "gtd/isothermal.hpp"
#include "gtd/thermo.hpp"

namespace gtd {

/// %.17g; "nan"/"inf"/"-inf" for non-finite values.
std::string format_double(double x);

/// Pretty JSON with sorted keys and a trailing newline. NaN becomes null.
std::string dump_json(const nlohmann::json& j);

nlohmann::json to_json(const CurvatureReport& r);
nlohmann::json to_json(const EinsteinScan& s);
nlohmann::json summary_json(const RadiusProfile& p);
nlohmann::json to_json(const Classification& c);
nlohmann::json to_json(const LogLinearCoords& c);

/// Header u,v,R2 then one row per grid point.
void write_radius_csv(std::ostream& os, const RadiusProfile& p);

/// Header q1,q2,x,y,r1,r2,r3 with residuals against phi at every node.
void write_coord_csv(std::ostream& os, const Expr& phi, const CoordField& field);

/// Reads q1,q2,x,y columns (others ignored) of a full rectangular grid.
/// Throws InvalidInput.
CoordField read_coord_csv(std::istream& is);

}  // namespace gtd

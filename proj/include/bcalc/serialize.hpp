#pragma once

#include "bcalc/b_calculus.hpp"
#include "bcalc/bmaps.hpp"
#include "bcalc/corner_geometry.hpp"
#include "bcalc/index_algebra.hpp"
#include "bcalc/lattice.hpp"
#include "bcalc/phg_numeric.hpp"
#include "bcalc/transport.hpp"

#include <json.hpp>

namespace bcalc {

using Json = nlohmann::ordered_json;

/// Rounded to 12 significant digits so reports are byte-stable.
double round12(double v);

Json to_json(const ExactComplex& z);
ExactComplex complex_from_json(const Json& j);

Json to_json(const IndexEntry& e);
Json to_json(const EntryList& entries);
/// {"generators": [{"re", "im", "p"}]}
Json to_json(const IndexSet& e);
/// Accepts {"generators": [...]} or a bare list of generators; completes.
IndexSet index_set_from_json(const Json& j);

Json to_json(const IndexFamily& f);
IndexFamily family_from_json(const Json& j);

/// {"dim", "bhs", "faces", "annotations"}
Json to_json(const FaceLattice& z);
FaceLattice lattice_from_json(const Json& j);

/// {"source", "target", "e", "fibration_faces"}
Json to_json(const BMapDescriptor& f);
BMapDescriptor bmap_from_json(const Json& j);

Json to_json(const BlowupRecord& r);

/// {"coeffs": [[series of a_0], ...], "truncation": N}
Json to_json(const BDiffOp& p);
BDiffOp operator_from_json(const Json& j);

/// {"order", "E_lb", "E_rb"}
Json to_json(const FullCalcDescriptor& d);
FullCalcDescriptor descriptor_from_json(const Json& j);

Json to_json(const IndicialData& d);
Json to_json(const ModelKernel& k);
Json to_json(const HalflineReport& r);
Json to_json(const TransportReport& r);
Json to_json(const BFibrationReport& r);
Json to_json(const ParametrixReport& r);
Json to_json(const HsReport& r);
Json to_json(const ApplyCheckReport& r);
/// {"terms": [{z, p, coeff}], "residual", ..., "prediction": {contained, missing, extra}}
Json to_json(const PhgExpansion& fit, const PredictionCheck* check = nullptr);

}  // namespace bcalc

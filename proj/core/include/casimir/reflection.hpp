#pragma once

#include "casimir/graphene.hpp"
#include "casimir/materials.hpp"

#include <optional>

namespace casimir::reflection {

// Reflection coefficients on the imaginary frequency axis.  Both are real;
// tm is the transverse-magnetic and te the transverse-electric coefficient.
struct ReflectionPair {
    double tm = 0.0;
    double te = 0.0;
};

// Convention for the TE reflection of metals at the zero Matsubara
// frequency: with `drude` the relaxation kills eps*xi^2 and r_TE(0) = 0,
// with `plasma` the limit keeps eps*xi^2 -> wp^2 and r_TE(0) is finite.
// Non-metallic materials are unaffected.
enum class TeZeroMode { drude, plasma };

// One side of the cavity: a bare half-space, a graphene-coated half-space
// (vacuum substrate = freestanding sheet), or an ideal metal (r = 1 in both
// polarizations at every frequency; debugging reference).
class BoundarySpec {
public:
    enum class Type { bare, coated, ideal_metal };

    static BoundarySpec bare(materials::PermittivityModel substrate);
    static BoundarySpec coated(materials::PermittivityModel substrate,
                               graphene::GrapheneSheet sheet);
    static BoundarySpec freestanding(graphene::GrapheneSheet sheet);
    static BoundarySpec ideal_metal();

    Type type() const { return type_; }
    const materials::PermittivityModel& substrate() const { return substrate_; }
    bool has_sheet() const { return sheet_.has_value(); }
    const graphene::GrapheneSheet& sheet() const { return *sheet_; }

private:
    BoundarySpec() : substrate_(materials::PermittivityModel::vacuum()) {}
    Type type_ = Type::bare;
    materials::PermittivityModel substrate_;
    std::optional<graphene::GrapheneSheet> sheet_;
};

// Fresnel coefficients of a bare half-space.  At xi = 0 the longitudinal
// momentum uses lim eps*xi^2 (zero for all kinds except plasma-like metals
// under the `plasma` convention), so metallic TM reaches 1 within 1e-6 via
// the capped permittivity while TE follows the chosen convention.
ReflectionPair fresnel(const graphene::SpectralContext& ctx,
                       const materials::PermittivityModel& m,
                       TeZeroMode te_mode = TeZeroMode::drude);

// Graphene-dressed coefficients of a coated half-space, for a polarization
// tensor evaluated elsewhere.  Requires kperp > 0 (the kperp = 0 corner of
// the integration domain is never sampled).
ReflectionPair graphene_dressed(const graphene::SpectralContext& ctx,
                                const materials::PermittivityModel& substrate,
                                const graphene::PolarizationPair& pt,
                                TeZeroMode te_mode = TeZeroMode::drude);

// Dispatch on the boundary type; coated boundaries evaluate the tensor by
// `route` (Matsubara contexts) or the zero-temperature tensor (l = -1).
ReflectionPair boundary_reflection(const graphene::SpectralContext& ctx,
                                   const BoundarySpec& b,
                                   graphene::TensorRoute route,
                                   double quad_tol = 1e-9,
                                   TeZeroMode te_mode = TeZeroMode::drude);

// max |r_TE| at the zero Matsubara frequency over a logarithmic kperp grid,
// used to verify that the TE zero mode of graphene systems is negligible.
double te_zero_mode_magnitude(const BoundarySpec& b, double temperature_k,
                              double kperp_lo_nm = 1e-4,
                              double kperp_hi_nm = 1e-1,
                              int n_grid = 50,
                              TeZeroMode te_mode = TeZeroMode::drude);

} // namespace casimir::reflection

#pragma once

#include <span>

#include "ff/tensor.hpp"

namespace ff {

/// Schouten-Nijenhuis self-bracket of a bivector, as the trivector with
/// coefficients (for i < j < k)
///
///   [pi,pi]^{ijk} = 2 sum_l ( pi^{il} d_l pi^{jk}
///                           + pi^{jl} d_l pi^{ki}
///                           + pi^{kl} d_l pi^{ij} ).
///
/// The normalization is fixed so that [pi,pi](df, dg, dh) equals twice the
/// Jacobiator of the induced bracket. Requires Exact coefficients.
MultivectorField schouten_self_bracket(const MultivectorField& pi);

/// {f,g} for the bracket induced by a bivector. Exact whenever pi, f, g are
/// all Exact; otherwise a Smooth field built from the evaluators.
ScalarField bivector_bracket(const MultivectorField& pi, const ScalarField& f,
                             const ScalarField& g);

/// Jacobiator {f,{g,h}} + {g,{h,f}} + {h,{f,g}} via nested brackets. This is
/// deliberately an independent computation path from schouten_self_bracket.
ScalarField jacobiator(const MultivectorField& pi, const ScalarField& f, const ScalarField& g,
                       const ScalarField& h);

/// T(df, dg, dh) for a trivector T, as a field.
ScalarField trivector_on_gradients(const MultivectorField& t, const ScalarField& f,
                                   const ScalarField& g, const ScalarField& h);

/// Numeric Jacobiator at a point, computed as (1/2)[pi,pi](df,dg,dh) from
/// coefficient gradients. Works for Smooth backends, where the exact route is
/// unavailable; needs only first derivatives of coefficients and arguments.
double jacobiator_numeric(const MultivectorField& pi, const ScalarField& f, const ScalarField& g,
                          const ScalarField& h, std::span<const double> x);

}  // namespace ff

#pragma once

#include "emlab/field.hpp"

namespace emlab {

// Spectral derivative operators (multiplication by i*xi).
Field ddx(const Field& f);
Field ddy(const Field& f);
Field laplacian(const Field& f);

// Leray projection P = Id - Delta^{-1} grad div onto divergence-free fields.
// Exact per mode; the zero mode is untouched (fields are zero-mean).
Field2 leray_project(const Field2& v);

// Spectral divergence i xi . vhat, and curl_2(u) = d1 u2 - d2 u1.
Field divergence(const Field2& v);
Field curl2(const Field2& v);

// Velocity from vorticity: u = grad^perp Delta^{-1} omega, div u = 0,
// curl2 u = omega. Throws if omega has a nonzero mean.
Field2 biot_savart(const Field& omega);

// Normal-structure cross product (u1,u2,0) x (0,0,b) = (u2 b, -u1 b, 0),
// computed pseudospectrally with 2/3-rule dealiasing.
Field2 cross_normal(const Field2& u, const Field& b);

// Advection term u . grad f, dealiased.
Field grad_dot(const Field2& u, const Field& f);

// Pointwise product with dealiasing (helper for the above).
Field multiply_dealiased(const Field& a, const Field& b);
// Pointwise product with no truncation (used where exact pointwise identities
// are asserted, e.g. Bony reconstruction).
Field multiply_raw(const Field& a, const Field& b);

// Rectangle-rule L^p norm over the torus; p = infinity gives the grid max.
// Spectrally accurate for smooth periodic integrands. Requires p >= 1.
double lp_norm(const Field& f, double p);
double lp_norm(const Field2& f, double p);

// L^2 inner product via quadrature on the grid.
double inner_l2(const Field& a, const Field& b);

// max_k |xi . vhat(k)| — spectral divergence sup norm (constraint monitor).
double divergence_sup_spectral(const Field2& v);

}  // namespace emlab

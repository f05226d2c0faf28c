#pragma once

// Magnetic-moment pipeline: the spherical-symmetry vector reduction, the
// self-energy substitution chain, the expansion of the second-order term
// into its seven printed groups, and the assembly of the (g-2)/2 table
// through order alpha^2 with the vacuum-polarization adjustment.

#include "gmoment/audit.hpp"
#include "gmoment/fw.hpp"
#include "gmoment/op_expr.hpp"

namespace gmoment {

struct ParticleConfig {
  std::string name;
  SymbolId mass_symbol;
  Rational mass_ratio_to_electron;
  static ParticleConfig electron();
  static ParticleConfig muon();  // mass ratio 1034/5
};

// Self-energy of the four-dimensionally spread charge: dm is formal until
// bound to i e^2/(8 pi^2 eps0 r0) with r0 = pi/mass.
struct SelfEnergyModel {
  bool enabled = true;  // dm -> 0 when disabled
  ScalarCoeff delta_m_closed_form() const;
  // substitution chain dm -> ..., r0 -> pi/mass, e^2 -> 4 pi eps0 alpha,
  // kappa -> -2 pi i; the engine mass symbol is rebound to the particle's
  ScalarCoeff bind(const ScalarCoeff& c, const ParticleConfig& p) const;
};

// --- spherical reduction (the A = B x r / 2, E = -(phi/r^2) r configuration)
// Applies the vector bindings inside the structural Cross/Vec atoms and the
// dot-product symbols, expands triple products, and (optionally) applies the
// averaging rule that drops every term carrying a (B . r) factor.
OpExpr spherical_reduction(const OpExpr& expr, bool averaging = true, Audit* audit = nullptr);

// structural -> concrete expansion: Cross(u,v,k) and dot symbols become
// sums over concrete field atoms (Avec, Evec, Bvec, ...)
OpExpr expand_structural(const OpExpr& expr);

// Vec(B,k) -> Bvec_k etc. after a reduction pass
OpExpr materialize_vec_fields(const OpExpr& expr);

// e * phi -> beta * dm (gamma^0 right-multiplied into the matrix part);
// consumes the phi field atom or the phi symbol, whichever is present
OpExpr bind_self_energy_fields(const OpExpr& expr);

// --- second-order machinery
struct V2Groups {
  std::array<OpExpr, 7> groups;  // (a) .. (g), printed forms
  OpExpr double_commutator;      // [[gamma d, gamma A], gamma(i d + e A)]
};

// Expands the second-order double commutator and partitions it into the
// seven printed groups; throws with the leftover terms if the partition
// does not cover the expansion (verified under the source-free field rule).
V2Groups expand_v2_terms();

struct Contribution {
  std::string label;         // derivation-step tag, e.g. "Eq.419 first order"
  ScalarCoeff delta_h;       // coefficient of (e/2m) beta sigma.B in delta H
  ScalarCoeff anomaly;       // contribution to (g-2)/2 after binding
};

struct MomentReport {
  ParticleConfig particle;
  int order = 1;
  bool vacuum_polarization = false;
  ScalarCoeff baseline;  // coefficient of (e/2m) beta sigma.B in H^FW (= -1, g = 2)
  std::vector<Contribution> contributions;
  ScalarCoeff total;     // (g-2)/2, exact in alpha and pi
  Audit audit;
};

Contribution first_order_correction(const ParticleConfig& p, const SelfEnergyModel& se,
                                    Audit* audit = nullptr);
std::vector<Contribution> second_order_correction(const ParticleConfig& p,
                                                  const SelfEnergyModel& se,
                                                  Audit* audit = nullptr);
std::vector<Contribution> vacuum_polarization_adjust(const ParticleConfig& p);

MomentReport compute_moment(const ParticleConfig& p, int order, bool vacuum_polarization,
                            const SelfEnergyModel& se = {});

}  // namespace gmoment

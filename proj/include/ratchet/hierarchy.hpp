#pragma once

#include <vector>

#include "ratchet/bath.hpp"
#include "ratchet/liouvillian.hpp"

namespace ratchet {

struct HierarchyIndex {
  int n = 0;
  std::vector<int> j;  // Matsubara tiers, size K

  bool operator==(const HierarchyIndex&) const = default;
};

// All indices with n + sum(j) <= depth in lexicographic order, plus flat
// neighbor offsets (-1 where the neighbor falls outside the truncation).
// Element 0 is always (0, 0..0), the physical distribution.
struct HierarchyLayout {
  int depth = 0;
  int k_matsubara = 0;
  std::vector<HierarchyIndex> indices;
  std::vector<int> up_gamma;
  std::vector<int> down_gamma;
  std::vector<int> up_j;    // [e * k_matsubara + k]
  std::vector<int> down_j;  // [e * k_matsubara + k]
  std::vector<char> boundary;  // n + sum(j) == depth

  static HierarchyLayout build(int depth, int k_matsubara);

  int size() const { return static_cast<int>(indices.size()); }
  int find(const HierarchyIndex& idx) const;  // -1 when absent
};

struct HierarchyState {
  double time = 0.0;
  std::vector<GridField> elements;  // one per layout slot
};

HierarchyState make_state(const HierarchyLayout& lay, const PhaseGrid& g,
                          double time = 0.0);

struct HierarchyWorkspace {
  std::vector<GridField> ddp;  // per element, shared by all couplings
  GridField ddq, up, down, d2, pw, ddpw;
  std::vector<double> force;  // per-column potential factor
  void resize(int n_elements, int nq, int np);
};

// Time derivative of the full hierarchy. Interior tiers couple up through
// d/dp, down through the drift-diffusion operators; tiers on the truncation
// surface evolve by the terminator closure instead.
void rhs_quantum_into(const HierarchyState& s, const HierarchyLayout& lay,
                      const PhaseGrid& g, const SystemSpec& sys,
                      const BathSpec& bath, const HeomCoefficients& co,
                      const DriveState& d, HierarchyWorkspace& ws,
                      HierarchyState& out);

void rhs_classical_into(const HierarchyState& s, const HierarchyLayout& lay,
                        const PhaseGrid& g, const SystemSpec& sys,
                        const BathSpec& bath, const HeomCoefficients& co,
                        const DriveState& d, HierarchyWorkspace& ws,
                        HierarchyState& out);

// Dispatch on sys.mode.
void rhs_into(const HierarchyState& s, const HierarchyLayout& lay,
              const PhaseGrid& g, const SystemSpec& sys, const BathSpec& bath,
              const HeomCoefficients& co, const DriveState& d,
              HierarchyWorkspace& ws, HierarchyState& out);

}  // namespace ratchet

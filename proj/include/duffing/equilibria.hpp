#pragma once

#include "duffing/model.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace duffing {

/// Thrown when eigenvalues of a non-existing equilibrium are requested.
class MissingEquilibrium : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

enum class EquilibriumKind {
  SaddlePoint,
  StableNode,
  UnstableNode,
  StableFocus,
  UnstableFocus,
  Center,
  Degenerate,
};

/// Collapsed view used for table comparison: focus/node merge into
/// stable/unstable.
enum class CoarseKind { Stable, Unstable, Saddle, Center, Degenerate };

CoarseKind coarse(EquilibriumKind kind);
const char* to_string(EquilibriumKind kind);
const char* to_string(CoarseKind kind);

enum class EquilibriumLabel { Origin, EPlus, EMinus };
const char* to_string(EquilibriumLabel label);

struct Equilibrium {
  PlaneState location{0.0, 0.0};
  std::array<Complex, 2> eigenvalues{};  ///< plus-branch root first
  EquilibriumKind kind = EquilibriumKind::Degenerate;
  EquilibriumLabel label = EquilibriumLabel::Origin;
};

/// True when the labeled rest point exists for p: the origin always,
/// E+ for m even or (m odd, sigma*epsilon < 0), E- only for m odd with
/// sigma*epsilon < 0. Nonzero rest points vanish at sigma = 0.
bool equilibrium_exists(const Parameters& p, EquilibriumLabel label);

/// x-coordinate of the labeled rest point when it exists. For m even E+ is
/// the unique real odd root of -sigma/epsilon and may be negative.
std::optional<double> equilibrium_abscissa(const Parameters& p, EquilibriumLabel label);

/// All finite rest points, sorted by x-coordinate.
std::vector<Equilibrium> finite_equilibria(const Parameters& p);

/// Closed-form eigenvalue pair of the Jacobian at the labeled rest point.
std::array<Complex, 2> eigenvalues_at(const Parameters& p, EquilibriumLabel label);

/// Kind from the closed-form eigenvalues; equality boundaries (zero
/// discriminant, zero stiffness) come back Degenerate rather than guessed.
EquilibriumKind classify_finite(const Parameters& p, const Equilibrium& e);

/// Purely-imaginary-eigenvalue predicate per label; requires m > 1.
bool purely_imaginary_at(const Parameters& p, EquilibriumLabel label);

struct CenterVerdict {
  bool is_local_center = false;
  bool is_global_center = false;
  std::string witness;  ///< names the clause that decided the verdict
};

/// Local verdict: alpha = 0 and origin stiffness > 0 (epsilon+sigma for
/// m = 1, sigma for m > 1). Global verdict additionally requires m odd with
/// sigma, epsilon > 0 when m > 1; even degrees never have a global center.
CenterVerdict center_at_origin(const Parameters& p);

/// m = 1 always; m > 1 exactly when m is odd and sigma*epsilon > 0.
bool has_unique_finite_equilibrium(const Parameters& p);

}  // namespace duffing
